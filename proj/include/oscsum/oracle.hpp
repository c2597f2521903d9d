#ifndef OSCSUM_ORACLE_HPP
#define OSCSUM_ORACLE_HPP

// Ground-truth evaluation by direct summation. Everything here is exact up
// to rounding and a declared tail truncation: no asymptotic shortcuts.
//
// The windowed oracles factor the global phase e^{i sqrt(N)(A+B/2)} out of
// every term (applied once at the end), so per-term phases stay small and
// the nearest-multiple mod-2pi reduction makes conjugation bit-exact:
// every per-term quantity negates exactly under (A,B) -> (-A,-B).

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bounds.hpp"
#include "model.hpp"
#include "poisson.hpp"
#include "quadrature.hpp"

namespace oscsum {
namespace oracle {

// Direct summation stays honest only while term counts are sane: the full
// and double sums walk ~N and ~8 N log N terms respectively.
inline constexpr double full_sum_n_limit = 1e6;
inline constexpr double double_sum_n_limit = 1e6;

struct OracleConfig {
    double tail_eps = 1e-12;  // auto-tail stopping threshold for full sums
    std::int64_t n_max = 0;   // explicit full-sum cap; 0 selects auto-tail
    double widen = 1.0;       // window half-width multiplier
    double oracle_n_limit = default_oracle_n_limit;
};

namespace detail {

inline void check_config(const OracleConfig& cfg) {
    if (!(cfg.tail_eps > 0.0) || cfg.tail_eps > 1e-6)
        throw std::invalid_argument("oscsum: oracle tail_eps must be in (0, 1e-6]");
    if (cfg.n_max < 0)
        throw std::invalid_argument("oscsum: oracle n_max must be >= 1 (or 0 for auto)");
    if (!std::isfinite(cfg.widen) || cfg.widen < 1.0)
        throw std::invalid_argument("oscsum: oracle widen must be >= 1");
    if (!(cfg.oracle_n_limit >= 1.0))
        throw std::invalid_argument("oscsum: oracle_n_limit must be >= 1");
}

// Auto-tail cap N + k sqrt(N), k grown until the Chernoff-style tail bound
// e^{-k^2/3} drops below eps.
inline std::int64_t full_sum_cap(double N, const OracleConfig& cfg) {
    if (cfg.n_max > 0) return cfg.n_max;
    double k = 1.0;
    while (std::exp(-k * k / 3.0) >= cfg.tail_eps) k += 1.0;
    return static_cast<std::int64_t>(std::ceil(N + k * std::sqrt(N)));
}

} // namespace detail

// Z by term-by-term summation from n = 0. Raw phase per term (safe: n stays
// below ~1e6 where S_N carries ~1e-13 rad of rounding). error_bound is the
// Poisson mass left beyond the cap.
inline Evaluation sum_z_full(const SumParams& p, const OracleConfig& cfg = {}) {
    detail::check_config(cfg);
    if (p.N > full_sum_n_limit)
        throw std::invalid_argument("oscsum: sum_z_full needs N <= 1e6");
    const std::int64_t n_max = detail::full_sum_cap(p.N, cfg);
    oscsum::detail::ComplexAccumulator acc;
    oscsum::detail::Accumulator mass;
    for (std::int64_t n = 0; n <= n_max; ++n) {
        const double y = static_cast<double>(n);
        const double P = poisson::log_pmf(y, p.N).p;
        const double s = phase(y, p);
        acc.add(complex(P * std::cos(s), P * std::sin(s)));
        mass.add(P);
    }
    Evaluation ev;
    ev.value = acc.value();
    oscsum::detail::ensure_finite(ev.value, "sum_z_full");
    ev.error_bound = std::max(0.0, 1.0 - mass.value());
    ev.method = Method::full_sum;
    ev.params = p;
    return ev;
}

// Z restricted to the window, global phase factored. error_bound is the
// computable tail chain bound (absent below its N >= 10 domain).
inline Evaluation sum_z_windowed(const SumParams& p, const OracleConfig& cfg = {}) {
    detail::check_config(cfg);
    if (p.N > cfg.oracle_n_limit)
        throw std::invalid_argument("oscsum: sum_z_windowed exceeds oracle_n_limit");
    const WindowedRange r = window(p.N, cfg.widen);
    oscsum::detail::ComplexAccumulator acc;
    for (std::int64_t n = r.window.n_lo; n <= r.window.n_hi; ++n) {
        const double y = static_cast<double>(n);
        const double P = poisson::log_pmf(y, p.N).p;
        const double s = local_phase(scale_index(y, p.N), p);
        acc.add(complex(P * std::cos(s), P * std::sin(s)));
    }
    const double g = global_phase_mod_2pi(p);
    Evaluation ev;
    ev.value = complex(std::cos(g), std::sin(g)) * acc.value();
    oscsum::detail::ensure_finite(ev.value, "sum_z_windowed");
    if (p.N >= 10.0) ev.error_bound = bounds::tail_weight_bound(p.N);
    ev.method = Method::windowed_sum;
    ev.params = p;
    return ev;
}

// Z_s: windowed sum with weight n^s folded into log space. The bound uses
// n^s <= (2N)^s on the region where tail mass is non-negligible.
inline Evaluation sum_zs(const SumParams& p, int s, const OracleConfig& cfg = {}) {
    detail::check_config(cfg);
    if (s != 1 && s != 2)
        throw std::invalid_argument("oscsum: sum_zs supports s in {1,2}");
    if (p.N > cfg.oracle_n_limit)
        throw std::invalid_argument("oscsum: sum_zs exceeds oracle_n_limit");
    const WindowedRange r = window(p.N, cfg.widen);
    oscsum::detail::ComplexAccumulator acc;
    for (std::int64_t n = r.window.n_lo; n <= r.window.n_hi; ++n) {
        if (n == 0) continue; // weight 0^s kills the term
        const double y = static_cast<double>(n);
        const double W = std::exp(poisson::log_pmf(y, p.N).log_p + s * std::log(y));
        const double ph = local_phase(scale_index(y, p.N), p);
        acc.add(complex(W * std::cos(ph), W * std::sin(ph)));
    }
    const double g = global_phase_mod_2pi(p);
    Evaluation ev;
    ev.value = complex(std::cos(g), std::sin(g)) * acc.value();
    oscsum::detail::ensure_finite(ev.value, "sum_zs");
    if (p.N >= 10.0)
        ev.error_bound = std::pow(2.0 * p.N, s) * bounds::tail_weight_bound(p.N);
    ev.method = Method::windowed_sum;
    ev.params = p;
    return ev;
}

// Z-tilde: phase A sqrt(n) + B n / (2 sqrt(N)). Shares the global phase
// sqrt(N)(A + B/2) with Z; the local remainder uses the exact identity
// sqrt(n) - sqrt(N) = (n - N)/(sqrt(n) + sqrt(N)), no series truncation.
inline Evaluation sum_ztilde(const SumParams& p, const OracleConfig& cfg = {}) {
    detail::check_config(cfg);
    if (p.N > cfg.oracle_n_limit)
        throw std::invalid_argument("oscsum: sum_ztilde exceeds oracle_n_limit");
    const WindowedRange r = window(p.N, cfg.widen);
    const double sq = std::sqrt(p.N);
    oscsum::detail::ComplexAccumulator acc;
    for (std::int64_t n = r.window.n_lo; n <= r.window.n_hi; ++n) {
        const double y = static_cast<double>(n);
        const double P = poisson::log_pmf(y, p.N).p;
        const double x = scale_index(y, p.N);
        const double s = p.A * (y - p.N) / (std::sqrt(y) + sq) + 0.5 * p.B * x;
        acc.add(complex(P * std::cos(s), P * std::sin(s)));
    }
    const double g = global_phase_mod_2pi(p);
    Evaluation ev;
    ev.value = complex(std::cos(g), std::sin(g)) * acc.value();
    oscsum::detail::ensure_finite(ev.value, "sum_ztilde");
    if (p.N >= 10.0) ev.error_bound = bounds::tail_weight_bound(p.N);
    ev.method = Method::windowed_sum;
    ev.params = p;
    return ev;
}

// Double sum over the window square, row-major in (m, n). Per-term phase
// splits into separable m- and n-parts plus the cross rotation
// e^{i b3 x y / sqrt(N)}; the global phase sqrt(N) sigma multiplies once.
inline Evaluation sum_zdouble(const DoubleSumParams& d, const OracleConfig& cfg = {}) {
    detail::check_config(cfg);
    if (d.N > double_sum_n_limit)
        throw std::invalid_argument("oscsum: sum_zdouble needs N <= 1e6");
    const WindowedRange r = window(d.N, cfg.widen);
    const double sq = std::sqrt(d.N);
    const double beta1 = d.a1 + d.b1 + d.b3;
    const double beta2 = d.a2 + d.b2 + d.b3;
    const std::size_t count = static_cast<std::size_t>(r.window.n_hi - r.window.n_lo + 1);
    std::vector<complex> row(count);   // P(n) e^{i(beta2 y + b2 y^2 / 2 sqrt N)}
    std::vector<double> xs(count);
    for (std::size_t j = 0; j < count; ++j) {
        const double y = static_cast<double>(r.window.n_lo + static_cast<std::int64_t>(j));
        const double x = scale_index(y, d.N);
        const double P = poisson::log_pmf(y, d.N).p;
        const double s = beta2 * x + 0.5 * d.b2 * x * x / sq;
        row[j] = complex(P * std::cos(s), P * std::sin(s));
        xs[j] = x;
    }
    oscsum::detail::ComplexAccumulator acc;
    for (std::size_t i = 0; i < count; ++i) {
        const double x = xs[i];
        const double y_m = static_cast<double>(r.window.n_lo + static_cast<std::int64_t>(i));
        const double Pm = poisson::log_pmf(y_m, d.N).p;
        const double sm = beta1 * x + 0.5 * d.b1 * x * x / sq;
        const complex um(Pm * std::cos(sm), Pm * std::sin(sm));
        const double c = d.b3 * x / sq;
        oscsum::detail::ComplexAccumulator inner;
        for (std::size_t j = 0; j < count; ++j) {
            const double cross = c * xs[j];
            inner.add(row[j] * complex(std::cos(cross), std::sin(cross)));
        }
        acc.add(um * inner.value());
    }
    const double g = global_phase_mod_2pi(d);
    Evaluation ev;
    ev.value = complex(std::cos(g), std::sin(g)) * acc.value();
    oscsum::detail::ensure_finite(ev.value, "sum_zdouble");
    if (d.N >= 10.0) ev.error_bound = 2.0 * bounds::tail_weight_bound(d.N);
    ev.method = Method::windowed_sum;
    ev.params = d;
    return ev;
}

// T_N = 1 - (window mass), by direct summation.
inline double tail_weight_exact(double N, const OracleConfig& cfg = {}) {
    detail::check_config(cfg);
    if (!std::isfinite(N) || !(N > 0.0))
        throw std::invalid_argument("oscsum: tail_weight_exact needs N > 0");
    if (N > cfg.oracle_n_limit)
        throw std::invalid_argument("oscsum: tail_weight_exact exceeds oracle_n_limit");
    const WindowedRange r = window(N, cfg.widen);
    oscsum::detail::Accumulator mass;
    for (std::int64_t n = r.window.n_lo; n <= r.window.n_hi; ++n)
        mass.add(poisson::log_pmf(static_cast<double>(n), N).p);
    return 1.0 - mass.value();
}

} // namespace oracle
} // namespace oscsum

#endif // OSCSUM_ORACLE_HPP
