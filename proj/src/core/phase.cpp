#include "phase.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "quadrature.hpp"

namespace lgp::phase {

namespace {

const cplx kI(0.0, 1.0);

// Distance from zeta to the pole/branch-point set of h(.; s, theta):
// {-2i - 2ik/theta} and {+2i + 2ik/theta} for theta > 0, {+-2i} for theta = 0.
double singularity_distance(cplx zeta, double theta) {
    double y = std::abs(zeta.imag());
    double d = std::min(std::abs(zeta - cplx(0.0, 2.0)), std::abs(zeta + cplx(0.0, 2.0)));
    if (theta > 0.0 && y > 2.0) {
        double k = std::floor((y - 2.0) * theta / 2.0 + 0.5);
        for (double kk : {k - 1.0, k, k + 1.0}) {
            if (kk < 0.0) continue;
            double py = 2.0 + 2.0 * kk / theta;
            d = std::min({d, std::abs(zeta - cplx(0.0, py)), std::abs(zeta + cplx(0.0, py))});
        }
    }
    return d;
}

cplx h0(cplx zeta, double s) {
    return std::log(2.0 + kI * zeta) - std::log(2.0 - kI * zeta) - kI * s * zeta;
}

} // namespace

cplx h_eval(int order, cplx zeta, const PhaseParams& p) {
    require(order >= 0 && order <= 2, ErrorCode::invalid_argument,
            "h_eval: order must be 0, 1 or 2");
    require(p.theta >= 0.0, ErrorCode::invalid_argument, "h_eval: theta >= 0 required");
    if (singularity_distance(zeta, p.theta) < 1e-12)
        fail(ErrorCode::singularity, "h_eval: zeta at a singular point");

    if (p.theta == 0.0) {
        cplx z2 = zeta * zeta + 4.0;
        switch (order) {
            case 0: return h0(zeta, p.s);
            case 1: return 4.0 * kI / z2 - kI * p.s;
            default: return -8.0 * kI * zeta / (z2 * z2);
        }
    }
    cplx zm = p.theta * (1.0 - kI * zeta / 2.0);
    cplx zp = p.theta * (1.0 + kI * zeta / 2.0);
    switch (order) {
        case 0:
            return log_gamma(zm) - log_gamma(zp) - kI * p.s * zeta;
        case 1:
            return -kI * p.theta / 2.0 * (digamma(zm) + digamma(zp)) - kI * p.s;
        default:
            return p.theta * p.theta / 4.0 * (polygamma(1, zp) - polygamma(1, zm));
    }
}

SignGrid sign_grid(double s, double re_min, double re_max, double im_min,
                   double im_max, int nx, int ny, double tol) {
    require(nx >= 2 && ny >= 2, ErrorCode::invalid_argument, "sign_grid: nx, ny >= 2");
    require(re_max > re_min && im_max > im_min, ErrorCode::invalid_argument,
            "sign_grid: empty bounds");
    SignGrid grid{re_min, re_max, im_min, im_max, nx, ny, {}};
    grid.cells.resize(static_cast<size_t>(nx) * ny);
    PhaseParams p{s, 0.0};
    for (int j = 0; j < ny; ++j) {
        double y = im_min + (im_max - im_min) * j / (ny - 1.0);
        for (int i = 0; i < nx; ++i) {
            double x = re_min + (re_max - re_min) * i / (nx - 1.0);
            cplx zeta(x, y);
            if (std::abs(zeta - cplx(0.0, 2.0)) < 1e-9 ||
                std::abs(zeta + cplx(0.0, 2.0)) < 1e-9)
                zeta += 1e-9;
            double re_h = h_eval(0, zeta, p).real();
            std::int8_t sign = 0;
            if (re_h > tol) sign = 1;
            else if (re_h < -tol) sign = -1;
            grid.cells[static_cast<size_t>(j) * nx + i] = sign;
        }
    }
    return grid;
}

cplx a_branch(cplx zeta, double b) {
    return std::sqrt(zeta - b) * std::sqrt(zeta + b);
}

namespace {

double cut_distance(cplx zeta, double b) {
    double x = zeta.real(), y = zeta.imag();
    if (std::abs(x) <= b) return std::abs(y);
    return std::hypot(std::abs(x) - b, y);
}

} // namespace

cplx g_eval(cplx zeta, double s, double theta, double b, int m) {
    require(b > 0.0, ErrorCode::invalid_argument, "g_eval: b > 0 required");
    require(m >= 16, ErrorCode::invalid_argument, "g_eval: m >= 16 required");
    if (zeta.imag() == 0.0 && std::abs(zeta.real()) <= b)
        fail(ErrorCode::domain, "g_eval: zeta on the cut [-b, b]");

    PhaseParams p{s, theta};
    double dist = cut_distance(zeta, b);
    if (dist < 0.05 * b) m *= 2;

    quad::Rule cheb = quad::chebyshev1(m);
    cplx a = a_branch(zeta, b);

    if (dist >= 0.5 * b) {
        // Plain Gauss-Chebyshev sum; spectrally accurate away from the cut.
        cplx acc(0.0, 0.0);
        for (int k = 0; k < m; ++k) {
            double u = b * cheb.x[k];
            acc += h_eval(0, cplx(u, 0.0), p) / (u - zeta);
        }
        return -a / (2.0 * m) * acc;
    }

    // Near the cut: remove the Cauchy pole to second order.
    //   int h(u)/(sqrt(b^2-u^2)(u-z)) du
    //     = -pi h(z)/a(z) + pi h'(z) + int phi(u)/sqrt(b^2-u^2) du,
    //   phi(u) = (h(u) - h(z) - h'(z)(u-z))/(u-z),
    // so g(z) = h(z)/2 - a(z) h'(z)/2 - a(z)/(2m) sum phi(u_k).
    cplx hz = h_eval(0, zeta, p);
    cplx hpz = h_eval(1, zeta, p);
    cplx acc(0.0, 0.0);
    for (int k = 0; k < m; ++k) {
        double u = b * cheb.x[k];
        cplx du = u - zeta;
        acc += (h_eval(0, cplx(u, 0.0), p) - hz - hpz * du) / du;
    }
    return hz / 2.0 - a * hpz / 2.0 - a / (2.0 * m) * acc;
}

cplx q_eval(cplx zeta, double s, double theta, double b, int m) {
    return g_eval(zeta, s, theta, b, m) - 0.5 * h_eval(0, zeta, PhaseParams{s, theta});
}

cplx q_prime_zero_temp(cplx zeta, double s, double b) {
    require(b > 0.0, ErrorCode::invalid_argument, "q_prime_zero_temp: b > 0 required");
    if (zeta.imag() == 0.0 && std::abs(zeta.real()) <= b)
        fail(ErrorCode::domain, "q_prime_zero_temp: zeta on the cut [-b, b]");
    if (std::abs(zeta - cplx(0.0, 2.0)) < 1e-12 || std::abs(zeta + cplx(0.0, 2.0)) < 1e-12)
        fail(ErrorCode::singularity, "q_prime_zero_temp: zeta at +-2i");
    return kI * s * zeta * a_branch(zeta, b) / (2.0 * (zeta * zeta + 4.0));
}

} // namespace lgp::phase
