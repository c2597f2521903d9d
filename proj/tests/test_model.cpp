#include <catch2/catch_amalgamated.hpp>

#include <oscsum/model.hpp>

#include <cmath>
#include <limits>
#include <string>

#include "support.hpp"

using namespace oscsum;
using Catch::Approx;

namespace {
constexpr double two_pi = 6.283185307179586;
}

TEST_CASE("validate echoes parameters and annotates feasibility") {
    const SumParams p = validate(0.5, -0.3, 1e4);
    CHECK(p.A == 0.5);
    CHECK(p.B == -0.3);
    CHECK(p.N == 1e4);
    CHECK(p.oracle_eligible);
    CHECK_FALSE(p.asymptotics_unreliable);

    CHECK(validate(0, 0, 1e8).oracle_eligible);
    CHECK_FALSE(validate(0, 0, 1e9).oracle_eligible);
    CHECK_FALSE(validate(0, 0, 1e23).oracle_eligible);
    CHECK(validate(0, 0, 5.0).asymptotics_unreliable);
    CHECK_FALSE(validate(0, 0, 10.0).asymptotics_unreliable);
}

TEST_CASE("validate rejects malformed parameters") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(validate(nan, 0, 10), std::invalid_argument);
    CHECK_THROWS_AS(validate(0, inf, 10), std::invalid_argument);
    CHECK_THROWS_AS(validate(0, 0, nan), std::invalid_argument);
    CHECK_THROWS_AS(validate(0, 0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(validate(0, 0, -5.0), std::invalid_argument);

    CHECK_THROWS_AS(validate_double(0, 0, 0, 0, 0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(validate_double(nan, 0, 0, 0, 0, 10), std::invalid_argument);
    CHECK_THROWS_AS(validate_double(0, 0, 0, 0, inf, 10), std::invalid_argument);
    CHECK(validate_double(0.3, 0.2, 0.1, 0.1, 0.05, 1e4).oracle_eligible);
    CHECK_FALSE(validate_double(0, 0, 0, 0, 0, 1e9).oracle_eligible);
}

TEST_CASE("scale_index is the standardized offset") {
    CHECK(scale_index(1e4, 1e4) == 0.0);
    CHECK(scale_index(1e4 + 100.0, 1e4) == 1.0);
    CHECK(scale_index(9900.0, 1e4) == -1.0);
    CHECK(scale_index(0.0, 100.0) == -10.0);
}

TEST_CASE("window at N = 1e4 matches the independently computed edges") {
    const WindowedRange r = window(1e4);
    CHECK(r.window.n_lo == 9571);
    CHECK(r.window.n_hi == 10429);
    CHECK(r.domain.x_hi == Approx(4.2919320525786945).margin(1e-14));
    CHECK(r.domain.x_lo == -r.domain.x_hi);
}

TEST_CASE("window clamps at n = 0 and x = -sqrt(N)") {
    const WindowedRange r = window(2.0, 8.0);
    CHECK(r.window.n_lo == 0);
    CHECK(r.domain.x_lo == Approx(-std::sqrt(2.0)).margin(1e-15));
    CHECK(r.domain.x_hi > 0.0);

    // log N clamp: the window degenerates to the single point n = 1 at N = 1
    const WindowedRange one = window(1.0);
    CHECK(one.window.n_lo == 1);
    CHECK(one.window.n_hi == 1);
    CHECK(one.domain.x_lo == 0.0);
    CHECK(one.domain.x_hi == 0.0);
}

TEST_CASE("window grows with N and with widen") {
    const auto width = [](const WindowedRange& r) { return r.window.n_hi - r.window.n_lo; };
    CHECK(width(window(1e3)) < width(window(1e4)));
    CHECK(width(window(1e4)) < width(window(1e5)));
    const WindowedRange w1 = window(1e4);
    const WindowedRange w2 = window(1e4, 2.0);
    CHECK(w2.window.n_lo < w1.window.n_lo);
    CHECK(w2.window.n_hi > w1.window.n_hi);
    CHECK(w2.domain.x_hi == Approx(2.0 * w1.domain.x_hi).margin(1e-13));
}

TEST_CASE("window rejects bad arguments") {
    CHECK_THROWS_AS(window(-3.0), std::invalid_argument);
    CHECK_THROWS_AS(window(0.0), std::invalid_argument);
    CHECK_THROWS_AS(window(1e4, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(window(1e4, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(window(1e4, 9.0), std::invalid_argument);
}

TEST_CASE("raw phase special values") {
    const SumParams linear = validate(1.0, 0.0, 100.0);
    CHECK(phase(0.0, linear) == 0.0);
    CHECK(phase(100.0, linear) == Approx(10.0).margin(1e-13));

    const SumParams quad = validate(0.0, 2.0, 100.0);
    CHECK(phase(100.0, quad) == Approx(10.0).margin(1e-13));
}

TEST_CASE("local phase and decomposition") {
    const SumParams p = validate(2.0, 3.0, 1e4);
    CHECK(local_phase(0.0, p) == 0.0);
    CHECK(local_phase(1.5, p) == Approx(7.53375).margin(1e-13));

    const PhaseParts parts = phase_decomposed(1.5, p);
    CHECK(parts.global_mod_2pi == global_phase_mod_2pi(p));
    CHECK(parts.local == local_phase(1.5, p));
}

TEST_CASE("decomposed phase agrees with the raw phase mod 2pi") {
    const SumParams p = validate(opaque(2.0), opaque(3.0), opaque(1e4));
    // n on the window grid; raw phase is ~350 rad here, still fine in double
    for (double n : {9571.0, 9999.0, 10000.0, 10050.0, 10429.0}) {
        const double raw = phase(n, p);
        const PhaseParts parts = phase_decomposed(scale_index(n, p.N), p);
        const double diff =
            std::remainder(raw - parts.global_mod_2pi - parts.local, two_pi);
        CHECK(std::abs(diff) < 1e-9);
    }
}

TEST_CASE("global phase matches extended-precision reductions") {
    // sqrt(4225) * 1 = 65; 65 - 10*2pi reduced by a 50-digit oracle
    CHECK(global_phase_mod_2pi(validate(opaque(1.0), opaque(0.0), opaque(4225.0))) ==
          2.1681469282041352);
    // sqrt(1e23)*(0.5 + 0.3/2): ~2e11 rad reduced to 17 correct digits
    CHECK(global_phase_mod_2pi(validate(opaque(0.5), opaque(0.3), opaque(1e23))) ==
          -0.52419910018934257);
}

TEST_CASE("global phase reconstructs the raw product at moderate N") {
    const double cases[][3] = {
        {0.7, -0.4, 144.0}, {1.3, 0.9, 1e4}, {-2.1, 0.6, 12345.0}, {3.0, 3.0, 1e6}};
    for (const auto& c : cases) {
        const double raw = std::sqrt(c[2]) * (c[0] + 0.5 * c[1]);
        const double g = global_phase_mod_2pi(validate(c[0], c[1], c[2]));
        CHECK(std::abs(g) <= 3.1415926535897940);
        CHECK(std::abs(std::remainder(raw - g, two_pi)) < 1e-8);
    }
}

TEST_CASE("global phase negates exactly under conjugation") {
    const double cases[][3] = {
        {0.5, 0.3, 1e4}, {1.7, -0.9, 777.0}, {2.5, 1.5, 1e23}, {0.3, 0.0, 65536.0}};
    for (const auto& c : cases) {
        const double g = global_phase_mod_2pi(validate(opaque(c[0]), opaque(c[1]), opaque(c[2])));
        const double gm =
            global_phase_mod_2pi(validate(opaque(-c[0]), opaque(-c[1]), opaque(c[2])));
        CHECK(gm == -g);
    }
}

TEST_CASE("double-sum global phase") {
    // sigma = 0.5 + 0.25 = 0.75 exactly; sqrt(4225) = 65 exactly
    const double g =
        global_phase_mod_2pi(validate_double(opaque(0.5), opaque(0.25), 0, 0, 0, opaque(4225.0)));
    CHECK(g == Approx(std::remainder(48.75, two_pi)).margin(1e-13));

    // single-sum embedding a1 = A, b1 = B reproduces sqrt(N)(A + B/2)
    const double gd =
        global_phase_mod_2pi(validate_double(opaque(0.5), 0, opaque(0.3), 0, 0, opaque(1e4)));
    const double gs = global_phase_mod_2pi(validate(opaque(0.5), opaque(0.3), opaque(1e4)));
    CHECK(gd == Approx(gs).margin(1e-15));

    // conjugation
    const DoubleSumParams d = validate_double(opaque(0.3), opaque(0.2), opaque(0.1),
                                              opaque(0.1), opaque(0.05), opaque(1e4));
    const DoubleSumParams dm = validate_double(opaque(-0.3), opaque(-0.2), opaque(-0.1),
                                               opaque(-0.1), opaque(-0.05), opaque(1e4));
    CHECK(global_phase_mod_2pi(dm) == -global_phase_mod_2pi(d));
}

TEST_CASE("method names") {
    CHECK(std::string(method_name(Method::full_sum)) == "full-sum");
    CHECK(std::string(method_name(Method::windowed_sum)) == "windowed-sum");
    CHECK(std::string(method_name(Method::closed_form)) == "closed-form");
    CHECK(std::string(method_name(Method::stage)) == "stage");
    CHECK(std::string(method_name(Method::quadrature)) == "quadrature");
}
