#ifndef LGPOLY_PHASE_HPP
#define LGPOLY_PHASE_HPP

#include <cstdint>
#include <vector>

#include "complexfn.hpp"

namespace lgp::phase {

struct PhaseParams {
    double s = 0.0;
    double theta = 0.0; // theta == 0 selects the closed-form limit branch
};

// Phase function h(zeta; s, theta) and its first two derivatives.
//   h   = logGamma(theta(1 - i zeta/2)) - logGamma(theta(1 + i zeta/2)) - i s zeta
//   h'  = -(i theta/2) [psi(theta(1 - i zeta/2)) + psi(theta(1 + i zeta/2))] - i s
//   h'' = (theta^2/4) [psi'(theta(1 + i zeta/2)) - psi'(theta(1 - i zeta/2))]
// The theta = 0 branch is h = log(2 + i zeta) - log(2 - i zeta) - i s zeta,
// analytic off the rays +-i [2, infinity) and vanishing at zeta = 0.
cplx h_eval(int order, cplx zeta, const PhaseParams& p);

struct SignGrid {
    double re_min, re_max, im_min, im_max;
    int nx, ny;
    std::vector<std::int8_t> cells; // row-major, -1/0/+1 = sign(Re h(zeta; s, 0))
};

// Sign of Re h(zeta; s, 0) on a rectangular grid; |Re h| below tol maps to 0.
// Nodes within 1e-9 of the branch points +-2i are nudged off them.
SignGrid sign_grid(double s, double re_min, double re_max, double im_min,
                   double im_max, int nx, int ny, double tol = 1e-9);

// a(zeta) = ((zeta - b)(zeta + b))^{1/2}, analytic off [-b, b], a ~ zeta at
// infinity; boundary value from above on the cut is i sqrt(b^2 - u^2).
cplx a_branch(cplx zeta, double b);

// Scalar function with additive jump h across [-b, b]:
//   g(zeta) = a(zeta) * integral_{-b}^{b} h(u)/(a_+(u)(u - zeta)) du/(2 pi i),
// evaluated by Gauss-Chebyshev quadrature with m nodes (m >= 16). Points near
// the cut are handled by removing the Cauchy pole analytically.
cplx g_eval(cplx zeta, double s, double theta, double b, int m);

// q = g - h/2.
cplx q_eval(cplx zeta, double s, double theta, double b, int m);

// Closed form q'(zeta; s, 0) = i s zeta a(zeta) / (2 (zeta^2 + 4)).
cplx q_prime_zero_temp(cplx zeta, double s, double b);

} // namespace lgp::phase

#endif
