#include "rate.hpp"

#include <cmath>

#include "complexfn.hpp"
#include "errors.hpp"
#include "phase.hpp"
#include "quadrature.hpp"

namespace lgp::rate {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kThetaMax = 1.0;
constexpr double kBisectWidth = 1e-12;
constexpr double kResidualCap = 1e-9;

void check_quad(const QuadratureSpec& q) {
    require(q.m_cheb1 >= 8 && q.m_cheb2 >= 8 && q.m_legendre >= 8 && q.panels >= 1,
            ErrorCode::invalid_argument, "quadrature spec: node counts >= 8 required");
}

void check_theta(double theta) {
    require(theta >= 0.0 && theta <= kThetaMax, ErrorCode::invalid_argument,
            "theta must lie in [0, 1]");
}

// i h'(b u; s, theta) = (theta/2)[psi(theta(1 - i b u/2)) + psi(theta(1 + i b u/2))] + s,
// real for real arguments by conjugate symmetry.
double ihp_real(double bu, double s, double theta, double& imag_max) {
    cplx arg = theta * cplx(1.0, -bu / 2.0);
    cplx v = theta / 2.0 * (digamma(arg) + digamma(std::conj(arg))) + s;
    imag_max = std::max(imag_max, std::abs(v.imag()));
    return v.real();
}

// H(b) = integral_0^1 i h'(b u)/sqrt(1-u^2) du via Gauss-Chebyshev; the
// integrand is even in u, so the symmetric rule is folded onto [0, 1].
double H_of_b(double b, double s, double theta, int m) {
    quad::Rule cheb = quad::chebyshev1(m);
    double imag_max = 0.0;
    double acc = 0.0;
    for (int k = 0; k < m; ++k) acc += ihp_real(b * cheb.x[k], s, theta, imag_max);
    if (imag_max > kResidualCap)
        fail(ErrorCode::quadrature, "H(b): imaginary residual above 1e-9");
    return 0.5 * kPi / m * acc;
}

// H'(b) = integral_0^1 u * i h''(b u)/sqrt(1-u^2) du, used for Newton polish.
double dH_of_b(double b, double s, double theta, int m) {
    quad::Rule cheb = quad::chebyshev1(m);
    phase::PhaseParams p{s, theta};
    double acc = 0.0;
    for (int k = 0; k < m; ++k) {
        double u = cheb.x[k];
        cplx ihpp = cplx(0.0, 1.0) * phase::h_eval(2, cplx(b * u, 0.0), p);
        acc += u * ihpp.real(); // ih'' is odd, so u*ih'' is even in u
    }
    return 0.5 * kPi / m * acc;
}

double edge_b_asymptotic(double s, double theta) {
    double psi2 = polygamma(2, cplx(theta, 0.0)).real();
    double sst = s_star(theta);
    return 4.0 * std::sqrt((s - sst) / (theta * theta * theta * psi2));
}

BSolve solve_b_impl(double s, double theta, const QuadratureSpec& q) {
    double sst = s_star(theta);
    if (sst - s < 1e-8) {
        // b -> 0 makes H flat; switch to the edge asymptotic.
        double b = s >= sst ? 0.0 : edge_b_asymptotic(s, theta);
        return {b, 0.0};
    }

    double lo = 0.0, hi = 4.0;
    while (H_of_b(hi, s, theta, q.m_cheb1) < 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e6)
            fail(ErrorCode::no_root, "solve_b: no sign change up to b = 1e6 "
                                     "(s outside (0, s*))");
    }
    while (hi - lo > kBisectWidth) {
        double mid = 0.5 * (lo + hi);
        if (H_of_b(mid, s, theta, q.m_cheb1) < 0.0) lo = mid;
        else hi = mid;
    }
    double b = 0.5 * (lo + hi);
    for (int it = 0; it < 2; ++it) {
        double H = H_of_b(b, s, theta, q.m_cheb1);
        double dH = dH_of_b(b, s, theta, q.m_cheb1);
        if (dH <= 0.0) break;
        double bn = b - H / dH;
        if (bn > lo && bn < hi) b = bn;
    }
    return {b, std::abs(H_of_b(b, s, theta, q.m_cheb1))};
}

double f_value_impl(double s, double theta, double b, const QuadratureSpec& q) {
    quad::Rule cheb = quad::chebyshev2(q.m_cheb2);
    double imag_max = 0.0;
    double acc = 0.0;
    for (int k = 0; k < q.m_cheb2; ++k)
        acc += cheb.w[k] * ihp_real(b * cheb.x[k], s, theta, imag_max);
    if (imag_max > kResidualCap)
        fail(ErrorCode::quadrature, "f_value: imaginary residual above 1e-9");
    // (theta psi + theta psi + 2s) = 2 ih', and the integrand is even in u,
    // so folding the symmetric rule onto [0,1] cancels the factor 2.
    return b * b / (2.0 * kPi) * acc;
}

double f_at(double t, double theta, const QuadratureSpec& q) {
    BSolve bs = solve_b_impl(t, theta, q);
    return f_value_impl(t, theta, bs.b, q);
}

double F_quadrature(double s, double theta, const QuadratureSpec& q) {
    double sst = s_star(theta);
    if (s >= sst) return 0.0;
    double w = std::min(0.1 * (sst - s), 1e-2);
    double main_end = sst - w;
    std::vector<double> edges;
    edges.reserve(q.panels + 1);
    for (int p = 0; p <= q.panels; ++p)
        edges.push_back(s + (main_end - s) * p / q.panels);
    quad::Rule rule = quad::composite(edges, q.m_legendre);
    quad::Rule last = quad::gauss_legendre_on(q.m_legendre, main_end, sst);
    rule.x.insert(rule.x.end(), last.x.begin(), last.x.end());
    rule.w.insert(rule.w.end(), last.w.begin(), last.w.end());
    double acc = 0.0;
    for (size_t k = 0; k < rule.x.size(); ++k)
        acc += rule.w[k] * f_at(rule.x[k], theta, q);
    return -acc;
}

} // namespace

double s_star(double theta) {
    check_theta(theta);
    if (theta == 0.0) return 1.0;
    return -theta * digamma(cplx(theta, 0.0)).real();
}

BSolve solve_b(double s, double theta, const QuadratureSpec& q) {
    check_quad(q);
    check_theta(theta);
    if (theta == 0.0) {
        ZeroTemp zt = zero_temp_closed_forms(s);
        return {zt.b0, 0.0};
    }
    require(s > 0.0, ErrorCode::no_root, "solve_b: s > 0 required");
    require(s <= s_star(theta), ErrorCode::no_root, "solve_b: s beyond s*(theta)");
    return solve_b_impl(s, theta, q);
}

double f_value(double s, double theta, double b, const QuadratureSpec& q) {
    check_quad(q);
    check_theta(theta);
    if (theta == 0.0) return zero_temp_closed_forms(s).f0;
    return f_value_impl(s, theta, b, q);
}

RateResult big_F(double s, double theta, const QuadratureSpec& q) {
    check_quad(q);
    check_theta(theta);
    RateResult r;
    r.s_star = s_star(theta);
    if (theta == 0.0) {
        ZeroTemp zt = zero_temp_closed_forms(s);
        return {zt.b0, zt.f0, zt.F0, 1.0, 0.0, 0.0};
    }
    require(s > 0.0, ErrorCode::no_root, "big_F: s > 0 required");
    require(s <= r.s_star, ErrorCode::no_root, "big_F: s beyond s*(theta)");
    BSolve bs = solve_b_impl(s, theta, q);
    r.b = bs.b;
    r.residual_H = bs.residual;
    r.f = f_value_impl(s, theta, bs.b, q);
    r.F = F_quadrature(s, theta, q);
    QuadratureSpec fine = q;
    fine.m_cheb1 *= 2;
    fine.m_cheb2 *= 2;
    fine.m_legendre *= 2;
    r.refine_delta = std::abs(F_quadrature(s, theta, fine) - r.F);
    return r;
}

ZeroTemp zero_temp_closed_forms(double s) {
    require(s > 0.0 && s <= 1.0, ErrorCode::domain,
            "zero-temperature closed forms need s in (0, 1]");
    if (s == 1.0) return {0.0, 0.0, 0.0};
    double b0 = 2.0 * std::sqrt(1.0 / (s * s) - 1.0);
    double f0 = 2.0 - s - 1.0 / s;
    double F0 = -s * s / 2.0 - 1.5 + 2.0 * s - std::log(s);
    return {b0, f0, F0};
}

std::vector<RateRow> rate_table(const std::vector<double>& s_grid, double theta,
                                const QuadratureSpec& q) {
    std::vector<RateRow> rows;
    rows.reserve(s_grid.size());
    for (double s : s_grid) {
        RateRow row;
        row.s = s;
        row.theta = theta;
        try {
            row.result = big_F(s, theta, q);
            row.ok = true;
        } catch (const Error& e) {
            row.ok = false;
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace lgp::rate
