#ifndef OSCSUM_ASYMPTOTICS_HPP
#define OSCSUM_ASYMPTOTICS_HPP

// Closed-form asymptotic evaluators, the complex Gaussian moment integrals
// they are built from, the Fourier-profile quadrature, and the stage-wise
// approximation pipeline that exhibits each step of the derivation.
//
// Every closed form here costs O(1), which is the whole point: the direct
// sums stop being computable around N ~ 1e8, the formulas keep working at
// N = 1e23 because the only N-sensitive step (the global phase mod 2pi) is
// done in two-part arithmetic.

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "bounds.hpp"
#include "model.hpp"
#include "oracle.hpp"
#include "poisson.hpp"
#include "quadrature.hpp"

namespace oscsum {
namespace asymptotics {

// (1/sqrt(2 pi)) int x^k e^{-a x^2/2 + i b x} dx for Re(a) > 0, principal
// branch of sqrt(a):
//   k=0:  a^{-1/2} e^{-b^2/2a}
//   k=1:  (i b / a^{3/2}) e^{-b^2/2a}
//   k=3:  i b (3a - b^2) / a^{7/2} e^{-b^2/2a}
inline complex gaussian_moment(complex a, double b, int k) {
    if (k != 0 && k != 1 && k != 3)
        throw std::invalid_argument("oscsum: gaussian_moment supports k in {0,1,3}");
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || !std::isfinite(b))
        throw std::invalid_argument("oscsum: gaussian_moment needs finite a, b");
    if (!(a.real() > 0.0))
        throw std::domain_error("oscsum: gaussian_moment needs Re(a) > 0");
    const complex ra = std::sqrt(a);
    const complex e = std::exp(-(b * b) / (2.0 * a));
    if (k == 0) return e / ra;
    if (k == 1) return complex(0.0, b) / (a * ra) * e;
    return complex(0.0, b) * (3.0 * a - b * b) / (a * a * a * ra) * e;
}

namespace detail {

// Value-only core of the Theorem-3.1 form; shared by z_closed, the Z_F
// kernel, and stage 4 of the pipeline (which must match z_closed bitwise).
inline complex z_closed_value(const SumParams& p) {
    const double g = global_phase_mod_2pi(p);
    const double sq = std::sqrt(p.N);
    const complex D(1.0, -p.B / sq);
    const double b = p.A + p.B;
    const complex gauss = std::exp(-(b * b) / (2.0 * D));
    const complex cubic(1.0, -b * b * b / (6.0 * sq));
    return complex(std::cos(g), std::sin(g)) * (gauss / std::sqrt(D)) * cubic;
}

inline bool budget_applicable(const SumParams& p) {
    return p.oracle_eligible && p.N >= 10.0;
}

} // namespace detail

// Z ~= e^{i sqrt(N)(A+B/2)} / sqrt(D) e^{-(A+B)^2/(2D)} (1 - i(A+B)^3/(6 sqrt N)),
// D = 1 - iB/sqrt(N). Exact 1 at A=B=0; reduces to the pure-Gaussian damping
// e^{iA sqrt N} e^{-A^2/2}(1 - iA^3/(6 sqrt N)) when B=0.
inline Evaluation z_closed(const SumParams& p) {
    Evaluation ev;
    ev.value = detail::z_closed_value(p);
    oscsum::detail::ensure_finite(ev.value, "z_closed");
    if (detail::budget_applicable(p)) ev.error_bound = bounds::error_budget(p);
    ev.method = Method::closed_form;
    ev.params = p;
    return ev;
}

// Z_s ~= N^s e^{i s A / sqrt N} Z; the neglected terms are O(N^{s-1}), which
// scales the budget by N^s.
inline Evaluation zs_closed(const SumParams& p, int s) {
    if (s != 1 && s != 2)
        throw std::invalid_argument("oscsum: zs_closed supports s in {1,2}");
    const double phase_s = s * p.A / std::sqrt(p.N);
    Evaluation ev;
    ev.value = std::pow(p.N, s) * complex(std::cos(phase_s), std::sin(phase_s)) *
               detail::z_closed_value(p);
    oscsum::detail::ensure_finite(ev.value, "zs_closed");
    if (detail::budget_applicable(p))
        ev.error_bound = std::pow(p.N, s) * bounds::error_budget(p);
    ev.method = Method::closed_form;
    ev.params = p;
    return ev;
}

// Z-tilde closed form with G = 1 + iA/(4 sqrt N):
//
//   e^{i sqrt N (A+B/2)} / sqrt(G) e^{-(A+B)^2/(8G)} (1 - i(A+B)^3/(48 sqrt N)).
//
// The 1/4 in G comes from collecting the x^2 terms of
// A sqrt(N + x sqrt N) = A(sqrt N + x/2 - x^2/(8 sqrt N)) together with the
// Gaussian completion of the (A+B)x/2 linear part; the saddle shift
// contributes the other half of -A/(8 sqrt N), giving +A/4 net. No error
// bound: the budget machinery models Z, not Z-tilde.
inline Evaluation ztilde_closed(const SumParams& p) {
    const double g = global_phase_mod_2pi(p);
    const double sq = std::sqrt(p.N);
    const complex G(1.0, p.A / (4.0 * sq));
    const double b = p.A + p.B;
    const complex gauss = std::exp(-(b * b) / (8.0 * G));
    const complex cubic(1.0, -b * b * b / (48.0 * sq));
    Evaluation ev;
    ev.value = complex(std::cos(g), std::sin(g)) * (gauss / std::sqrt(G)) * cubic;
    oscsum::detail::ensure_finite(ev.value, "ztilde_closed");
    ev.method = Method::closed_form;
    ev.params = p;
    return ev;
}

// Double-sum closed form: with beta_1 = a1+b1+b3, beta_2 = a2+b2+b3,
// R = 1 - i(b1+b2)/sqrt(N), sigma = a1+a2+b3+(b1+b2)/2,
//
//   e^{i sqrt N sigma - Theta} / sqrt(R) (1 - i(beta1^3+beta2^3)/(6 sqrt N)),
//   Theta = (beta1^2 + beta2^2)/(2 sqrt R) + i b3 beta1 beta2 / sqrt N.
//
// Expressions are parenthesized so that swapping (a1,b1) <-> (a2,b2) walks
// the identical rounding path (the swap symmetry is exact, not approximate).
// When b1 != b2 the form deviates from the factorized product at
// O(N^{-1/2}) with coefficient (b1-b2)(beta1^2-beta2^2)/4; at b1 = b2 it is
// O(N^{-1}) like the single-sum form.
inline Evaluation zdouble_closed(const DoubleSumParams& d) {
    const double g = global_phase_mod_2pi(d);
    const double sq = std::sqrt(d.N);
    const complex R(1.0, -(d.b1 + d.b2) / sq);
    const double beta1 = d.a1 + d.b1 + d.b3;
    const double beta2 = d.a2 + d.b2 + d.b3;
    const complex sqrtR = std::sqrt(R);
    const complex theta = (beta1 * beta1 + beta2 * beta2) / (2.0 * sqrtR) +
                          complex(0.0, d.b3 * (beta1 * beta2) / sq);
    const complex cubic(1.0, -(beta1 * beta1 * beta1 + beta2 * beta2 * beta2) / (6.0 * sq));
    Evaluation ev;
    ev.value = std::exp(complex(0.0, g) - theta) / sqrtR * cubic;
    oscsum::detail::ensure_finite(ev.value, "zdouble_closed");
    ev.method = Method::closed_form;
    ev.params = d;
    return ev;
}

// Uniformly sampled finitely supported transform F-tilde(p); the implied
// function is F(x) = (1/sqrt(2 pi)) int F-tilde(p) e^{ipx} dp.
struct FourierProfile {
    double p_min = 0.0;
    double p_max = 0.0;
    std::vector<complex> values;

    double step() const {
        return (p_max - p_min) / static_cast<double>(values.size() - 1);
    }
};

inline void validate_profile(const FourierProfile& f) {
    if (f.values.size() < 2)
        throw std::invalid_argument("oscsum: profile needs at least 2 samples");
    if (!std::isfinite(f.p_min) || !std::isfinite(f.p_max) || !(f.p_min < f.p_max))
        throw std::invalid_argument("oscsum: profile needs finite p_min < p_max");
    for (const complex& v : f.values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("oscsum: profile values must be finite");
}

// The closed-form kernel is trustworthy only while the phase coefficients
// seen by it stay inside the Gaussian regime.
inline bool zf_regime_ok(const FourierProfile& f, double q, double N) {
    const double diam = f.p_max - f.p_min;
    const double r = diam + std::abs(q);
    return r * r < std::log(N);
}

namespace detail {

inline complex interp_profile(const FourierProfile& f, double p) {
    const double t = (p - f.p_min) / f.step();
    std::size_t j = static_cast<std::size_t>(std::max(0.0, std::floor(t)));
    if (j > f.values.size() - 2) j = f.values.size() - 2;
    const double frac = t - static_cast<double>(j);
    return f.values[j] + frac * (f.values[j + 1] - f.values[j]);
}

} // namespace detail

// Z_F = (1/sqrt(2 pi)) int F-tilde(p) K(p) dp with the Theorem-3.1 kernel
// K(p) = z_closed(p, q, N). Simpson panels are seeded on the sample grid so
// interpolation kinks never sit inside a panel; refinement doubles until the
// change drops below 1e-10. A refinement that stalls at maximum depth is not
// an error: the final refinement gap is reported as the error bound.
inline Evaluation zf_quadrature(const FourierProfile& f, double q, double N) {
    validate_profile(f);
    if (!std::isfinite(q) || !std::isfinite(N) || !(N > 0.0))
        throw std::invalid_argument("oscsum: zf_quadrature needs finite q, N > 0");
    SumParams kp = validate(0.0, q, N);
    const auto integrand = [&](double p) {
        kp.A = p;
        return detail::interp_profile(f, p) * detail::z_closed_value(kp);
    };
    const std::size_t seed = f.values.size() - 1;
    const std::size_t max_panels = std::max<std::size_t>(std::size_t{1} << 14, 4 * seed);
    const QuadratureResult qr =
        simpson_refine(integrand, f.p_min, f.p_max, seed, 1e-10, max_panels);
    const double scale = 1.0 / std::sqrt(2.0 * poisson::detail::pi());
    Evaluation ev;
    ev.value = scale * qr.value;
    oscsum::detail::ensure_finite(ev.value, "zf_quadrature");
    ev.error_bound = scale * qr.last_delta;
    ev.method = Method::quadrature;
    ZfParams zp;
    zp.q = q;
    zp.N = N;
    zp.p_min = f.p_min;
    zp.p_max = f.p_max;
    zp.samples = f.values.size();
    ev.params = zp;
    return ev;
}

// The four approximation stages laid side by side:
//   1. the windowed sum itself;
//   2. the window integral of the exact continuous mass times the local phase;
//   3. the same integral with the mass replaced by the expanded Gaussian
//      e^{-x^2/2}(1 - (3x - x^3)/(6 sqrt N))/sqrt(2 pi);
//   4. the closed form.
// Consecutive deltas isolate where accuracy is spent: sum-to-integral,
// Stirling expansion, and domain extension to the whole axis.
struct StageReport {
    complex windowed_sum{};
    complex integral_exact{};
    complex integral_expanded{};
    complex closed_form{};
    double delta_12 = 0.0;
    double delta_23 = 0.0;
    double delta_34 = 0.0;
};

inline StageReport stage_pipeline(const SumParams& p,
                                  const oracle::OracleConfig& cfg = {}) {
    if (!p.oracle_eligible || p.N < 10.0)
        throw std::invalid_argument("oscsum: stage_pipeline needs oracle-eligible N >= 10");
    StageReport rep;
    rep.windowed_sum = oracle::sum_z_windowed(p, cfg).value;

    const WindowedRange r = window(p.N, cfg.widen);
    const double sq = std::sqrt(p.N);
    // keep the continuous mass argument at y >= 1; the excluded sliver only
    // matters for tiny N under heavy widening and carries e^{-N}-scale mass
    const double x_lo = std::max(r.domain.x_lo, -sq + 1.0 / sq);
    const double x_hi = r.domain.x_hi;
    const double g = global_phase_mod_2pi(p);
    const complex E(std::cos(g), std::sin(g));
    const double root_2pi = std::sqrt(2.0 * poisson::detail::pi());

    const auto exact = [&](double x) {
        const double amp = sq * poisson::pmf_continuous(p.N + x * sq, p.N).p;
        const double s = local_phase(x, p);
        return complex(amp * std::cos(s), amp * std::sin(s));
    };
    const auto expanded = [&](double x) {
        const double amp =
            std::exp(-0.5 * x * x) * (1.0 - (3.0 * x - x * x * x) / (6.0 * sq)) / root_2pi;
        const double s = local_phase(x, p);
        return complex(amp * std::cos(s), amp * std::sin(s));
    };

    const double a = std::sqrt(2.0 * std::log(p.N));
    const std::size_t seed = 4 * static_cast<std::size_t>(
        std::ceil(a * std::max(1.0, std::abs(p.A + p.B))));
    rep.integral_exact = E * simpson_refine(exact, x_lo, x_hi, seed, 1e-10).value;
    rep.integral_expanded = E * simpson_refine(expanded, x_lo, x_hi, seed, 1e-10).value;
    rep.closed_form = detail::z_closed_value(p);

    rep.delta_12 = std::abs(rep.integral_exact - rep.windowed_sum);
    rep.delta_23 = std::abs(rep.integral_expanded - rep.integral_exact);
    rep.delta_34 = std::abs(rep.closed_form - rep.integral_expanded);
    return rep;
}

} // namespace asymptotics
} // namespace oscsum

#endif // OSCSUM_ASYMPTOTICS_HPP
