#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "core/complexfn.hpp"
#include "core/errors.hpp"
#include "core/rate.hpp"

using namespace lgp::rate;

namespace {
// References from a 30-digit mpmath root solve / quadrature, cross-checked
// against an independent scipy implementation to 1e-13.
constexpr double kB_05_03 = 3.71150131311748281;
constexpr double kF_05_03 = -0.624224533761950764;
constexpr double kB_06_02 = 3.0465600519030435;
constexpr double kB_08_03 = 1.73598726287669129;
constexpr double kF_08_03 = -0.0815814766856399722;
constexpr double kBigF_05_03 = 0.09273588138788061;
constexpr double kPsi2_02 = -251.47803611443593306; // psi''(0.2)
} // namespace

TEST_CASE("s_star endpoints and closed values") {
    CHECK(s_star(0.0) == 1.0);
    CHECK(s_star(1e-6) == doctest::Approx(1.0).epsilon(2e-5));
    // -0.5 psi(0.5) = (gamma + 2 log 2)/2
    CHECK(s_star(0.5) == doctest::Approx(0.98175501301071828).epsilon(1e-14));
    // -psi(1) = gamma
    CHECK(s_star(1.0) == doctest::Approx(0.57721566490153286).epsilon(1e-14));
    CHECK_THROWS_AS(s_star(1.5), lgp::Error);
    CHECK_THROWS_AS(s_star(-0.1), lgp::Error);
}

TEST_CASE("solve_b matches the zero-temperature closed form at tiny theta") {
    for (double s : {0.3, 0.5, 0.7}) {
        double want = 2.0 * std::sqrt(1.0 / (s * s) - 1.0);
        BSolve got = solve_b(s, 1e-6, {});
        CAPTURE(s);
        CHECK(std::abs(got.b / want - 1.0) < 1e-3);
        CHECK(std::abs(got.residual) <= 1e-10);
    }
    CHECK(solve_b(0.5, 1e-6, {}).b == doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-3));
}

TEST_CASE("solve_b against high-precision references") {
    CHECK(solve_b(0.5, 0.3, {}).b == doctest::Approx(kB_05_03).epsilon(1e-10));
    CHECK(solve_b(0.6, 0.2, {}).b == doctest::Approx(kB_06_02).epsilon(1e-10));
    CHECK(solve_b(0.8, 0.3, {}).b == doctest::Approx(kB_08_03).epsilon(1e-10));
}

TEST_CASE("b is strictly decreasing in s") {
    double theta = 0.3;
    double prev = 1e300;
    for (double s : {0.2, 0.35, 0.5, 0.65, 0.8, 0.95}) {
        double b = solve_b(s, theta, {}).b;
        CHECK(b < prev);
        prev = b;
    }
}

TEST_CASE("H is strictly increasing in b (solver bracket premise)") {
    // Sampled via the solver internals: residual of a shifted b must have the
    // sign of the shift.
    std::mt19937 gen(4242);
    std::uniform_real_distribution<double> us(0.2, 0.9), ut(0.05, 0.5);
    for (int k = 0; k < 25; ++k) {
        double s = us(gen), theta = ut(gen);
        if (s >= s_star(theta)) continue;
        double b = solve_b(s, theta, {}).b;
        // f at inflated b is larger than f at deflated b in the H sense:
        // monotonicity surfaces as sign of f_value'(b) ... use direct check via
        // the defining integrand through f_value at b +- delta.
        double f_lo = f_value(s, theta, 0.9 * b, {});
        double f_hi = f_value(s, theta, 1.1 * b, {});
        CAPTURE(s);
        CAPTURE(theta);
        CHECK(f_lo < 0.0);   // below the root the mean of ih' is negative
        CHECK(f_hi > f_lo);  // and grows with b near the root
    }
}

TEST_CASE("edge asymptotics of b at theta = 0.2") {
    double theta = 0.2;
    double sst = s_star(theta);
    double s = sst - 1e-3;
    double b = solve_b(s, theta, {}).b;
    double asym = 4.0 * std::sqrt((s - sst) / (theta * theta * theta * kPsi2_02));
    CHECK(b / asym == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("f against references and the zero-temperature limit") {
    CHECK(f_value(0.5, 0.3, kB_05_03, {}) == doctest::Approx(kF_05_03).epsilon(1e-11));
    CHECK(f_value(0.8, 0.3, kB_08_03, {}) == doctest::Approx(kF_08_03).epsilon(1e-11));
    // theta -> 0: f -> 2 - s - 1/s
    double b = solve_b(0.5, 1e-6, {}).b;
    CHECK(f_value(0.5, 1e-6, b, {}) == doctest::Approx(-0.5).epsilon(1e-3));
    // s -> s*: b -> 0 forces f -> 0
    double theta = 0.3;
    double s_hi = s_star(theta) - 1e-6;
    double b_hi = solve_b(s_hi, theta, {}).b;
    CHECK(std::abs(f_value(s_hi, theta, b_hi, {})) < 1e-3);
}

TEST_CASE("big_F matches the zero-temperature rate function at tiny theta") {
    for (double s : {0.3, 0.5, 0.7}) {
        double want = -s * s / 2.0 - 1.5 + 2.0 * s - std::log(s);
        RateResult r = big_F(s, 1e-3, {});
        CAPTURE(s);
        CHECK(std::abs(r.F - want) < 1e-2);
        CHECK(std::abs(r.b - zero_temp_closed_forms(s).b0) < 1e-2 * zero_temp_closed_forms(s).b0);
    }
    RateResult r = big_F(0.5, 1e-3, {});
    CHECK(r.F == doctest::Approx(0.0681472).epsilon(0.02));
}

TEST_CASE("big_F against the high-precision reference at theta = 0.3") {
    RateResult r = big_F(0.5, 0.3, {});
    CHECK(r.F == doctest::Approx(kBigF_05_03).epsilon(1e-8));
    CHECK(r.refine_delta < 1e-8);
}

TEST_CASE("F cubic tail near s*") {
    double theta = 0.2;
    double sst = s_star(theta);
    double s = sst - 1e-2;
    double Fasym = 2.0 / (3.0 * theta * theta * theta * kPsi2_02) * std::pow(s - sst, 3);
    RateResult r = big_F(s, theta, {});
    CHECK(r.F / Fasym == doctest::Approx(1.0).epsilon(0.10));
}

TEST_CASE("F vanishes at the right endpoint") {
    double theta = 0.3;
    RateResult r = big_F(s_star(theta), theta, {});
    CHECK(r.F == 0.0);
    CHECK(r.b == 0.0);
}

TEST_CASE("quadrature doubling stability") {
    QuadratureSpec base;
    QuadratureSpec fine;
    fine.m_cheb1 *= 2;
    fine.m_cheb2 *= 2;
    fine.m_legendre *= 2;
    for (double s : {0.4, 0.7}) {
        double b1 = solve_b(s, 0.3, base).b, b2 = solve_b(s, 0.3, fine).b;
        CHECK(std::abs(b1 - b2) / b1 < 1e-8);
        double f1 = f_value(s, 0.3, b1, base), f2 = f_value(s, 0.3, b2, fine);
        CHECK(std::abs(f1 - f2) / std::abs(f1) < 1e-8);
        RateResult r = big_F(s, 0.3, base);
        CHECK(r.refine_delta / std::abs(r.F) < 1e-8);
    }
}

TEST_CASE("zero-temperature closed forms") {
    ZeroTemp zt = zero_temp_closed_forms(0.5);
    CHECK(zt.b0 == doctest::Approx(3.4641016151377544).epsilon(1e-14));
    CHECK(zt.f0 == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(zt.F0 == doctest::Approx(0.06814718055994529).epsilon(1e-14));
    ZeroTemp one = zero_temp_closed_forms(1.0);
    CHECK(one.b0 == 0.0);
    CHECK(one.f0 == 0.0);
    CHECK(one.F0 == 0.0);
    CHECK_THROWS_AS(zero_temp_closed_forms(1.5), lgp::Error);
    CHECK_THROWS_AS(zero_temp_closed_forms(0.0), lgp::Error);
    // F0'(s) = f0(s): differentiating F = -int_s^{s*} f flips the sign back
    double h = 1e-5;
    double dF = (zero_temp_closed_forms(0.7 + h).F0 - zero_temp_closed_forms(0.7 - h).F0) /
                (2.0 * h);
    CHECK(std::abs(dF - zero_temp_closed_forms(0.7).f0) < 1e-6);
}

TEST_CASE("solver failure modes") {
    CHECK_THROWS_AS(solve_b(1.2, 0.3, {}), lgp::Error); // beyond s*
    CHECK_THROWS_AS(solve_b(-0.1, 0.3, {}), lgp::Error);
    QuadratureSpec bad;
    bad.m_cheb1 = 4;
    CHECK_THROWS_AS(solve_b(0.5, 0.3, bad), lgp::Error);
    try {
        solve_b(1.2, 0.3, {});
    } catch (const lgp::Error& e) {
        CHECK(e.code() == lgp::ErrorCode::no_root);
    }
}

TEST_CASE("rate_table rows, monotonicity and positivity") {
    std::vector<double> grid;
    for (int k = 0; k < 8; ++k) grid.push_back(0.2 + k * 0.1);
    auto rows = rate_table(grid, 0.3, {});
    REQUIRE(rows.size() == 8);
    double prev_b = 1e300, prev_F = 1e300;
    for (const auto& row : rows) {
        REQUIRE(row.ok);
        CHECK(row.result.F > 0.0);
        CHECK(row.result.b < prev_b);
        CHECK(row.result.F < prev_F);
        prev_b = row.result.b;
        prev_F = row.result.F;
    }
    // grid touching s*: degenerate zero row, flagged ok
    auto edge = rate_table({s_star(0.3)}, 0.3, {});
    REQUIRE(edge.size() == 1);
    CHECK(edge[0].ok);
    CHECK(edge[0].result.F == 0.0);
    // out-of-window rows are flagged, not fatal
    auto bad = rate_table({0.5, 1.4}, 0.3, {});
    CHECK(bad[0].ok);
    CHECK_FALSE(bad[1].ok);
    CHECK_FALSE(bad[1].error.empty());
}

TEST_CASE("f is nonpositive across the window") {
    // exact at theta = 0 via the closed form; numerically for theta <= 0.3
    for (double s = 0.05; s < 1.0; s += 0.05)
        CHECK(zero_temp_closed_forms(s).f0 <= 0.0);
    for (double theta : {0.1, 0.3}) {
        for (double s = 0.1; s < s_star(theta); s += 0.1) {
            double b = solve_b(s, theta, {}).b;
            CHECK(f_value(s, theta, b, {}) <= 1e-12);
        }
    }
}

TEST_CASE("three-point table at tiny theta matches closed forms") {
    std::vector<double> grid{0.3, 0.5, 0.8};
    auto rows = rate_table(grid, 1e-3, {});
    for (size_t k = 0; k < grid.size(); ++k) {
        REQUIRE(rows[k].ok);
        ZeroTemp zt = zero_temp_closed_forms(grid[k]);
        CHECK(std::abs(rows[k].result.F - zt.F0) < 1e-2);
        CHECK(std::abs(rows[k].result.b - zt.b0) < 1e-2 * zt.b0);
        CHECK(std::abs(rows[k].result.f - zt.f0) < 1e-2);
    }
}
