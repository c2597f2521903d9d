#ifndef OSCSUM_QUADRATURE_HPP
#define OSCSUM_QUADRATURE_HPP

// Compensated accumulation and an adaptive composite-Simpson driver.
//
// The sums in this library routinely cancel to ~1e-16 of their term
// magnitudes, so every series and every quadrature goes through a Neumaier
// accumulator rather than a bare +=.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>

#include "model.hpp"

namespace oscsum {

namespace detail {

// Neumaier variant of Kahan summation: also compensates when the running sum
// is smaller than the incoming term.
class Accumulator {
  public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class ComplexAccumulator {
  public:
    void add(complex z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    complex value() const { return {re_.value(), im_.value()}; }

  private:
    Accumulator re_;
    Accumulator im_;
};

} // namespace detail

struct QuadratureResult {
    complex value{};
    double last_delta = 0.0; // |value - previous refinement|
    std::size_t panels = 0;
    bool converged = false;
};

// Composite Simpson over [lo, hi] with panel doubling until successive
// refinements differ by less than tol, or max_panels is reached. seed_panels
// fixes the coarsest grid; callers align it with any interior structure
// (sample breakpoints, oscillation scale) so refinement only ever subdivides.
inline QuadratureResult simpson_refine(const std::function<complex(double)>& f,
                                       double lo, double hi,
                                       std::size_t seed_panels, double tol,
                                       std::size_t max_panels = 1u << 14) {
    if (!(hi > lo))
        throw std::invalid_argument("oscsum: simpson_refine needs hi > lo");
    if (seed_panels == 0 || seed_panels > max_panels)
        throw std::invalid_argument("oscsum: simpson_refine bad panel counts");

    auto evaluate = [&](std::size_t panels) {
        const double h = (hi - lo) / static_cast<double>(2 * panels);
        detail::ComplexAccumulator acc;
        acc.add(f(lo));
        acc.add(f(hi));
        detail::ComplexAccumulator odd, even;
        for (std::size_t j = 1; j < 2 * panels; ++j) {
            const double x = lo + h * static_cast<double>(j);
            (j % 2 == 1 ? odd : even).add(f(x));
        }
        acc.add(4.0 * odd.value());
        acc.add(2.0 * even.value());
        return acc.value() * (h / 3.0);
    };

    QuadratureResult r;
    r.panels = seed_panels;
    r.value = evaluate(r.panels);
    while (r.panels < max_panels) {
        const std::size_t next = std::min(max_panels, r.panels * 2);
        const complex refined = evaluate(next);
        r.last_delta = std::abs(refined - r.value);
        r.value = refined;
        r.panels = next;
        if (r.last_delta < tol) {
            r.converged = true;
            break;
        }
    }
    return r;
}

} // namespace oscsum

#endif // OSCSUM_QUADRATURE_HPP
