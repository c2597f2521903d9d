#ifndef OSCSUM_POISSON_HPP
#define OSCSUM_POISSON_HPP

// Poisson mass function in log space, the truncated Stirling expansion it is
// tested against, the corrected Gaussian density, and the derivative-ratio
// estimates used by the error bounds.
//
// The mass function is the accuracy bottleneck for the whole library: the
// direct form -N + y ln N - lgamma(y+1) cancels ~N ln N down to O(ln N), so
// at N = 1e6 it keeps only ~9 good digits of the log. The saddle-point form
//
//   log P = -stirlerr(y) - bd0(y, N) - log(2 pi y)/2
//
// (Loader's decomposition) evaluates every piece at its own scale and stays
// near 1 ulp of the log for all y of interest.

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "model.hpp"
#include "quadrature.hpp"

namespace oscsum {
namespace poisson {

struct PmfValue {
    double log_p = 0.0;
    double p = 0.0; // exp(log_p); underflows to 0 with log_p still carrying the value
};

namespace detail {

constexpr double pi() { return 3.141592653589793238462643383279502884; }

// stirlerr(y) = ln y! - ln( sqrt(2 pi y) (y/e)^y ), y >= 15.
// Coefficients are the Bernoulli series 1/12y - 1/360y^3 + ...; the tier
// thresholds keep the truncation below 1 ulp of the value.
inline double stirlerr_large(double y) {
    constexpr double S0 = 1.0 / 12.0;
    constexpr double S1 = 1.0 / 360.0;
    constexpr double S2 = 1.0 / 1260.0;
    constexpr double S3 = 1.0 / 1680.0;
    constexpr double S4 = 1.0 / 1188.0;
    const double y1 = 1.0 / y;
    const double y2 = y1 * y1;
    if (y > 500.0) return (S0 - S1 * y2) * y1;
    if (y > 80.0) return (S0 - (S1 - S2 * y2) * y2) * y1;
    if (y > 35.0) return (S0 - (S1 - (S2 - S3 * y2) * y2) * y2) * y1;
    return (S0 - (S1 - (S2 - (S3 - S4 * y2) * y2) * y2) * y2) * y1;
}

// bd0(y, N) = y ln(y/N) + N - y, the Kullback-Leibler deviance term.
// Near y = N both summands are ~N while the result is ~(y-N)^2/2N, so the
// direct form is replaced by the series in v = (y-N)/(y+N).
inline double bd0(double y, double N) {
    if (std::abs(y - N) < 0.1 * (y + N)) {
        const double v = (y - N) / (y + N);
        double s = (y - N) * v;
        double ej = 2.0 * y * v;
        const double vv = v * v;
        for (int j = 1;; ++j) {
            ej *= vv;
            const double s1 = s + ej / (2 * j + 1);
            if (s1 == s) return s1;
            s = s1;
        }
    }
    return y * std::log(y / N) + N - y;
}

inline double log_pmf_positive(double y, double N) {
    // below the stirlerr regime the direct form is safe: terms are O(y ln N)
    if (y < 15.0) return -N + y * std::log(N) - std::lgamma(y + 1.0);
    return -stirlerr_large(y) - bd0(y, N) - 0.5 * std::log(2.0 * pi() * y);
}

inline PmfValue make_pmf(double log_p) {
    PmfValue v;
    v.log_p = log_p;
    v.p = std::exp(log_p);
    return v;
}

} // namespace detail

inline PmfValue log_pmf(double n, double N) {
    if (!std::isfinite(n) || !std::isfinite(N) || !(N > 0.0))
        throw std::invalid_argument("oscsum: log_pmf needs finite n, N > 0");
    if (n < 0.0 || n != std::floor(n))
        throw std::invalid_argument("oscsum: log_pmf needs integer n >= 0");
    if (n == 0.0) return detail::make_pmf(-N);
    return detail::make_pmf(detail::log_pmf_positive(n, N));
}

// Continuous interpolation e^{-N} N^y / Gamma(y+1); matches log_pmf at
// integer y by construction (same code path).
inline PmfValue pmf_continuous(double y, double N) {
    if (!std::isfinite(y) || !std::isfinite(N) || !(N > 0.0))
        throw std::invalid_argument("oscsum: pmf_continuous needs finite y, N > 0");
    if (!(y > 0.0))
        throw std::domain_error("oscsum: pmf_continuous needs y > 0");
    return detail::make_pmf(detail::log_pmf_positive(y, N));
}

// ln of the three-term Stirling approximation
//   Gamma(x+1) ~= (x/e)^x sqrt(2 pi x) (1 + 1/12x + 1/288x^2).
// Exists to measure the expansion itself; the pmf never routes through it.
inline double stirling_gamma_log(double x) {
    if (!std::isfinite(x) || !(x > 0.0))
        throw std::invalid_argument("oscsum: stirling_gamma_log needs x > 0");
    const double x1 = 1.0 / x;
    return x * (std::log(x) - 1.0) + 0.5 * std::log(2.0 * detail::pi() * x) +
           std::log1p(x1 / 12.0 + x1 * x1 / 288.0);
}

// Corrected Gaussian density on the scaled axis x = (n-N)/sqrt(N):
//
//   e^{-x^2/2}/sqrt(2 pi N) * e^{x^3/(6 sqrt N) - x^4/(12 N)}
//     / (1 + x/(2 sqrt N) + 1/(12 N)).
//
// The cubic/quartic exponent and the linear denominator term carry the
// Poisson skew that a plain Gaussian misses; with them the relative error
// against the true pmf is O(N^{-3/2}) near the mode.
inline double corrected_gaussian_density(double x, double N) {
    if (!std::isfinite(x) || !std::isfinite(N) || !(N > 0.0))
        throw std::invalid_argument("oscsum: corrected_gaussian_density needs finite x, N > 0");
    const double sq = std::sqrt(N);
    if (std::abs(x) > 0.5 * sq)
        throw std::domain_error("oscsum: corrected_gaussian_density outside |x| <= sqrt(N)/2");
    const double x2 = x * x;
    const double shape = std::exp(-0.5 * x2 + x2 * x / (6.0 * sq) - x2 * x2 / (12.0 * N));
    return shape / (std::sqrt(2.0 * detail::pi() * N) *
                    (1.0 + x / (2.0 * sq) + 1.0 / (12.0 * N)));
}

// P'(y)/P(y) to leading orders: ln(N/y) - 1/(2y). One sign change near the
// mode; magnitude O(sqrt(log N / N)) on the window.
inline double pmf_d1_ratio(double y, double N) {
    if (!std::isfinite(y) || !std::isfinite(N) || !(y > 0.0) || !(N > 0.0))
        throw std::invalid_argument("oscsum: pmf_d1_ratio needs y > 0, N > 0");
    return std::log(N / y) - 0.5 / y;
}

// |P''(y)/P(y)| magnitude estimate: (P'/P)^2 plus the 1/y curvature floor
// that dominates at the mode where the first-order term vanishes.
inline double pmf_d2_ratio(double y, double N) {
    const double d1 = pmf_d1_ratio(y, N);
    return d1 * d1 + 1.0 / y;
}

// Window sum of P(n) |P''/P|(n): computable surrogate for sum |P''| over the
// window, observed ~2/N. Feeds the quadrature error budget.
inline double second_derivative_sum_bound(double N) {
    if (!std::isfinite(N) || !(N >= 10.0))
        throw std::invalid_argument("oscsum: second_derivative_sum_bound needs N >= 10");
    const WindowedRange r = window(N);
    oscsum::detail::Accumulator acc;
    // window lower edge stays >= 1 for N >= 10, so y > 0 holds throughout
    for (std::int64_t n = r.window.n_lo; n <= r.window.n_hi; ++n) {
        const double y = static_cast<double>(n);
        acc.add(log_pmf(y, N).p * std::abs(pmf_d2_ratio(y, N)));
    }
    return acc.value();
}

} // namespace poisson
} // namespace oscsum

#endif // OSCSUM_POISSON_HPP
