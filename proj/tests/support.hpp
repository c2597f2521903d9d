#ifndef OSCSUM_TESTS_SUPPORT_HPP
#define OSCSUM_TESTS_SUPPORT_HPP

// Routes a literal through a volatile so bitwise-equality tests compare two
// runtime evaluations. With compile-time-known arguments the compiler folds
// libm calls to correctly-rounded results, which can differ from the runtime
// libm by an ulp and make one side of the comparison artificially exact.
inline double opaque(double x) {
    volatile double v = x;
    return v;
}

#endif // OSCSUM_TESTS_SUPPORT_HPP
