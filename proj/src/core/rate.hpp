#ifndef LGPOLY_RATE_HPP
#define LGPOLY_RATE_HPP

#include <string>
#include <vector>

namespace lgp::rate {

struct QuadratureSpec {
    int m_cheb1 = 64;    // nodes for weight 1/sqrt(1-u^2)
    int m_cheb2 = 64;    // nodes for weight sqrt(1-u^2)
    int m_legendre = 32; // nodes per panel of the t-integral
    int panels = 8;
};

struct RateResult {
    double b = 0.0;
    double f = 0.0;
    double F = 0.0;
    double s_star = 0.0;
    double residual_H = 0.0;
    double refine_delta = 0.0;
};

// Right endpoint of the admissible window: s*(theta) = -theta psi(theta),
// with the limiting value 1 at theta = 0.
double s_star(double theta);

struct BSolve {
    double b;
    double residual;
};

// Unique positive root of H(b) = integral_0^1 i h'(b u; s, theta)/sqrt(1-u^2) du.
// Bracket doubling from [0, 4], bisection to width 1e-12, two Newton steps.
// theta = 0 routes to the closed form 2 sqrt(1/s^2 - 1).
BSolve solve_b(double s, double theta, const QuadratureSpec& q = {});

// f(s,theta) = (b^2/(2 pi)) integral_0^1 (theta psi(theta + i u theta b/2)
//              + theta psi(theta - i u theta b/2) + 2 s) sqrt(1-u^2) du.
double f_value(double s, double theta, double b, const QuadratureSpec& q = {});

// F(s,theta) = -integral_s^{s*} f(t,theta) dt by composite Gauss-Legendre;
// refine_delta reports the change under doubling of every node count.
RateResult big_F(double s, double theta, const QuadratureSpec& q = {});

struct ZeroTemp {
    double b0;
    double f0;
    double F0;
};

// Closed forms on 0 < s < 1 (s = 1 returns the degenerate zeros):
//   b0 = 2 sqrt(1/s^2 - 1), f0 = 2 - s - 1/s, F0 = -s^2/2 - 3/2 + 2 s - log s.
ZeroTemp zero_temp_closed_forms(double s);

struct RateRow {
    double s = 0.0;
    double theta = 0.0;
    RateResult result;
    bool ok = false;
    std::string error;
};

// One RateResult per grid point; failures are flagged per row, not fatal.
std::vector<RateRow> rate_table(const std::vector<double>& s_grid, double theta,
                                const QuadratureSpec& q = {});

} // namespace lgp::rate

#endif
