#ifndef OSCSUM_MODEL_HPP
#define OSCSUM_MODEL_HPP

// Parameter domain, summation windows, and phase decomposition for the
// oscillating Poisson-weighted sums
//
//   Z(A,B,N) = e^{-N} sum_{n>=0} N^n/n! exp{ i S_N(n) },
//   S_N(n)  = A n / sqrt(N) + B n^2 / (2 sqrt(N)^3).
//
// Substituting n = N + x sqrt(N) splits the phase exactly:
//
//   S_N(N + x sqrt(N)) = sqrt(N) (A + B/2)  +  (A+B) x + B x^2 / (2 sqrt(N)).
//
// The first piece is the global phase. At N = 1e23 it is ~3e11 radians, so
// forming it in double and reducing mod 2pi throws away every meaningful
// digit of angle. phase_decomposed() therefore carries sqrt(N) and (A + B/2)
// as two-part (hi + lo) doubles, multiplies them in double-double arithmetic,
// and reduces against a 106-bit 2pi. The residual is accurate to ~1e-19
// radians for N up to ~1e30, and the local piece is small and harmless.

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

namespace oscsum {

using complex = std::complex<double>;

// largest N for which direct-summation oracles are considered feasible
inline constexpr double default_oracle_n_limit = 1e8;
// below this N the O(1/N) closed forms are only indicative
inline constexpr double asymptotics_n_floor = 10.0;

// Parameters of Z(A,B,N). N is a real intensity: oracles sum over integer n,
// the closed forms never need N to be an integer.
struct SumParams {
    double A = 0.0;
    double B = 0.0;
    double N = 1.0;
    bool oracle_eligible = true;         // small enough for direct summation
    bool asymptotics_unreliable = false; // N < asymptotics_n_floor
};

// Parameters of the double sum with phase
//   (a1 m + a2 n)/sqrt(N) + (b1 m^2 + b2 n^2 + 2 b3 m n)/(2 sqrt(N)^3).
struct DoubleSumParams {
    double a1 = 0.0, a2 = 0.0;
    double b1 = 0.0, b2 = 0.0, b3 = 0.0;
    double N = 1.0;
    bool oracle_eligible = true;
};

inline SumParams validate(double A, double B, double N) {
    if (!std::isfinite(A) || !std::isfinite(B) || !std::isfinite(N))
        throw std::invalid_argument("oscsum: A, B, N must be finite");
    if (!(N > 0.0))
        throw std::invalid_argument("oscsum: N must be positive");
    SumParams p;
    p.A = A;
    p.B = B;
    p.N = N;
    p.oracle_eligible = N <= default_oracle_n_limit;
    p.asymptotics_unreliable = N < asymptotics_n_floor;
    return p;
}

inline DoubleSumParams validate_double(double a1, double a2, double b1, double b2,
                                       double b3, double N) {
    if (!std::isfinite(a1) || !std::isfinite(a2) || !std::isfinite(b1) ||
        !std::isfinite(b2) || !std::isfinite(b3) || !std::isfinite(N))
        throw std::invalid_argument("oscsum: a1..b3, N must be finite");
    if (!(N > 0.0))
        throw std::invalid_argument("oscsum: N must be positive");
    DoubleSumParams p;
    p.a1 = a1;
    p.a2 = a2;
    p.b1 = b1;
    p.b2 = b2;
    p.b3 = b3;
    p.N = N;
    p.oracle_eligible = N <= default_oracle_n_limit;
    return p;
}

// Integer summation window B_N = [N - w h, N + w h], h = sqrt(2 N log N),
// clamped below at 0. Window mass misses O(1/N) of the distribution.
struct Window {
    std::int64_t n_lo = 0;
    std::int64_t n_hi = 0;
};

// Image of the window under x = (n - N)/sqrt(N). For the canonical window
// (widen = 1, no clamping) this is [-sqrt(2 log N), +sqrt(2 log N)].
struct ScaledDomain {
    double x_lo = 0.0;
    double x_hi = 0.0;
};

struct WindowedRange {
    Window window;
    ScaledDomain domain;
};

inline WindowedRange window(double N, double widen = 1.0) {
    if (!std::isfinite(N) || !(N > 0.0))
        throw std::invalid_argument("oscsum: window needs finite N > 0");
    if (!std::isfinite(widen) || !(widen > 0.0) || widen > 8.0)
        throw std::invalid_argument("oscsum: widen must be in (0, 8]");
    // log N clamps at 0 so the window degenerates gracefully for N <= 1
    const double a = std::sqrt(2.0 * std::max(std::log(N), 0.0));
    const double half = widen * a * std::sqrt(N);
    WindowedRange r;
    r.window.n_lo = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(N - half)));
    r.window.n_hi = std::max(r.window.n_lo, static_cast<std::int64_t>(std::floor(N + half)));
    const double sq = std::sqrt(N);
    r.domain.x_lo = std::max(-widen * a, -sq); // n >= 0 means x >= -sqrt(N)
    r.domain.x_hi = widen * a;
    return r;
}

inline double scale_index(double n, double N) { return (n - N) / std::sqrt(N); }

// Raw phase S_N(n). Fine for moderate n (the n^2 rounding contributes
// ~B/N^{3/2} radians); the decomposed form below is the one that scales.
inline double phase(double n, const SumParams& p) {
    const double sq = std::sqrt(p.N);
    return p.A * n / sq + p.B * n * n / (2.0 * p.N * sq);
}

namespace detail {

struct dd {
    double hi = 0.0;
    double lo = 0.0;
};

inline dd two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline dd two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd dd_add(dd a, dd b) {
    const dd s = two_sum(a.hi, b.hi);
    return two_sum(s.hi, a.lo + b.lo + s.lo);
}

inline dd dd_mul(dd a, dd b) {
    const dd p = two_prod(a.hi, b.hi);
    return two_sum(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi + a.lo * b.lo);
}

inline dd dd_neg(dd a) { return {-a.hi, -a.lo}; }

// sqrt(n) to ~2^-104: one exact-residual Newton correction of the double root
inline dd dd_sqrt(double n) {
    const double s = std::sqrt(n);
    const double resid = std::fma(-s, s, n); // n - s^2, exact
    return {s, resid / (2.0 * s)};
}

// 2pi to 106 bits
inline constexpr double two_pi_hi = 6.283185307179586;
inline constexpr double two_pi_lo = 2.4492935982947064e-16;
inline constexpr double pi_hi = 3.141592653589793;

inline void ensure_finite(std::complex<double> v, const char* who) {
    if (!(std::isfinite(v.real()) && std::isfinite(v.imag())))
        throw std::runtime_error(std::string("oscsum: non-finite result in ") + who);
}

// Reduce a double-double angle to [-pi, pi] (nearest multiple of 2pi).
// Nearest-k keeps reduce(-phi) == -reduce(phi) exactly, which in turn keeps
// conjugation symmetry bit-exact downstream.
inline double dd_mod_2pi(dd phi) {
    const double k = std::nearbyint(phi.hi / two_pi_hi);
    dd r = dd_add(phi, dd_neg(two_prod(k, two_pi_hi)));
    r = dd_add(r, dd_neg(two_prod(k, two_pi_lo)));
    if (r.hi > pi_hi) {
        r = dd_add(r, dd{-two_pi_hi, -two_pi_lo});
    } else if (r.hi < -pi_hi) {
        r = dd_add(r, dd{two_pi_hi, two_pi_lo});
    }
    return r.hi + r.lo;
}

} // namespace detail

// S_N(N + x sqrt(N)) split into (global mod 2pi) + local, exactly as in the
// header comment. The identity with phase() holds modulo 2pi.
struct PhaseParts {
    double global_mod_2pi = 0.0; // in [-pi, pi]
    double local = 0.0;
};

// Global phase sqrt(N)(A + B/2) reduced mod 2pi in double-double arithmetic.
inline double global_phase_mod_2pi(const SumParams& p) {
    const detail::dd c = detail::two_sum(p.A, 0.5 * p.B); // A + B/2, exact
    return detail::dd_mod_2pi(detail::dd_mul(detail::dd_sqrt(p.N), c));
}

// Small per-term phase left after the global factor is pulled out:
// (A+B)x + Bx^2/(2 sqrt(N)), at most ~2 log N * max coefficient on D_N.
inline double local_phase(double x, const SumParams& p) {
    return (p.A + p.B) * x + p.B * x * x / (2.0 * std::sqrt(p.N));
}

inline PhaseParts phase_decomposed(double x, const SumParams& p) {
    PhaseParts parts;
    parts.global_mod_2pi = global_phase_mod_2pi(p);
    parts.local = local_phase(x, p);
    return parts;
}

// Global phase sqrt(N) sigma(a,b), sigma = a1 + a2 + b3 + (b1 + b2)/2, for the
// double sum; same two-part reduction.
inline double global_phase_mod_2pi(const DoubleSumParams& p) {
    detail::dd sigma = detail::two_sum(p.a1, p.a2);
    sigma = detail::dd_add(sigma, detail::dd{p.b3, 0.0});
    sigma = detail::dd_add(sigma, detail::two_sum(0.5 * p.b1, 0.5 * p.b2));
    return detail::dd_mod_2pi(detail::dd_mul(detail::dd_sqrt(p.N), sigma));
}

// How an Evaluation was produced.
enum class Method {
    full_sum,
    windowed_sum,
    closed_form,
    stage,
    quadrature,
};

inline const char* method_name(Method m) {
    switch (m) {
        case Method::full_sum: return "full-sum";
        case Method::windowed_sum: return "windowed-sum";
        case Method::closed_form: return "closed-form";
        case Method::stage: return "stage";
        case Method::quadrature: return "quadrature";
    }
    return "unknown";
}

// Parameter echo for quadrature-style evaluations (profile integrals).
struct ZfParams {
    double q = 0.0;
    double N = 1.0;
    double p_min = 0.0;
    double p_max = 0.0;
    std::size_t samples = 0;
};

// A computed value plus whatever honest error statement exists. error_bound
// is absent when only unquantified heuristics apply.
struct Evaluation {
    complex value{};
    std::optional<double> error_bound{};
    Method method = Method::closed_form;
    std::variant<SumParams, DoubleSumParams, ZfParams> params{};
};

} // namespace oscsum

#endif // OSCSUM_MODEL_HPP
