#ifndef LGPOLY_FREDHOLM_HPP
#define LGPOLY_FREDHOLM_HPP

#include <string>
#include <vector>

#include "complexfn.hpp"

namespace lgp::fredholm {

struct DetResult {
    cplx value{1.0, 0.0};
    double imag_residual = 0.0;
    double refine_delta = 0.0;
    int dims = 0;
};

// det(I + K_n^{u,theta}) on a circle around -theta; equals E exp(-u Z_n(theta)).
// Sigma is a positively oriented circle of radius < theta around -theta, the
// inner integral runs over a vertical line strictly between Sigma and theta.
struct LaplaceOpts {
    double radius = 0.0;  // 0 -> theta/2
    double line_re = 0.0; // 0 -> -theta + (radius + theta)/2 ... see .cpp
    bool line_re_set = false;
    double v_cut = 40.0;
    int m_circle = 64;
    int m_line_panel = 24;
};
DetResult laplace_det(double u, int n, double theta, const LaplaceOpts& opts = {});

// Contour configuration for the rescaled kernel. The u-side is a circle of
// radius < 2n around -2n; the v-side is a wedge with apex on (1, 2n) opening
// to the right, which keeps the integrand exponentially small at the
// truncation point for every y in the grid.
struct KernelOpts {
    double circle_radius = 0.0;   // 0 -> n
    int m_circle = 0;             // 0 -> max(64, 8n)
    double wedge_apex = 0.0;      // 0 -> min(2.5, 1 + n/2)
    double wedge_angle_deg = 60.0;
    int m_wedge_panel = 24;
    double tail_tol = 1e-16;
    int max_panels = 600;
};

// Pointwise rescaled kernel; theta = 0 uses the rational integrand.
cplx rescaled_kernel(double y, double y_prime, int n, double theta,
                     const KernelOpts& opts = {});

// y-grid controls shared by the step and smoothed determinants.
struct GridOpts {
    double y_cut = 0.0;        // 0 -> s + 4 (length of the domain past s)
    int m_panel = 16;
    double bulk_width = 0.0;   // 0 -> auto from n
    double sigmoid_eps = 1e-14;
    double neg_clip = 6.0;     // left domain end >= -neg_clip * theta/(2n)
};

// Q_n^theta(s) = det(1 - L)_{L^2(s, infinity)}.
DetResult step_det(double s, int n, double theta, const GridOpts& grid = {},
                   const KernelOpts& kernel = {});

// Smoothed variant: det(1 - sigma_{s,n,theta} L) with the Fermi factor
// sigma(y) = 1/(1 + exp(-(2n/theta)(y - s))) folded into the weights.
DetResult smoothed_det(double s, int n, double theta, const GridOpts& grid = {},
                       const KernelOpts& kernel = {});

struct GapRow {
    int n = 0;
    double log_q = 0.0;
    double log_q_tilde = 0.0;
    double gap_over_n2 = 0.0;
    bool ok = false;
    std::string error;
};

// log Q, log Q-tilde and their gap over n^2 for each lattice size.
std::vector<GapRow> ansatz_gap(double s, double theta, const std::vector<int>& n_list,
                               const GridOpts& grid = {}, const KernelOpts& kernel = {});

// Determinant of a dense complex matrix, in place (LU, partial pivoting).
cplx det_inplace(std::vector<cplx>& a, int n);

} // namespace lgp::fredholm

#endif
