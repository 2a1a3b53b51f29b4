#include "fredholm.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "rate.hpp"

namespace lgp::fredholm {

namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx kI(0.0, 1.0);
constexpr int kMaxDims = 4096;

struct Contour {
    std::vector<cplx> nodes;
    std::vector<cplx> weights; // orientation/parametrization factors included
};

Contour circle_contour(cplx center, double radius, int m) {
    Contour c;
    c.nodes.resize(m);
    c.weights.resize(m);
    for (int k = 0; k < m; ++k) {
        double phi = 2.0 * kPi * k / m;
        cplx e(std::cos(phi), std::sin(phi));
        c.nodes[k] = center + radius * e;
        c.weights[k] = kI * radius * e * (2.0 * kPi / m);
    }
    return c;
}

cplx det_inplace_impl(std::vector<cplx>& a, int n) {
    // LU with partial pivoting; determinant accumulated in log space so that
    // strongly contracting determinants (Q_n far in the tail) keep relative
    // accuracy.
    cplx log_det(0.0, 0.0);
    double sign = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(a[static_cast<size_t>(k) * n + k]);
        for (int i = k + 1; i < n; ++i) {
            double m = std::abs(a[static_cast<size_t>(i) * n + k]);
            if (m > best) {
                best = m;
                piv = i;
            }
        }
        if (best == 0.0) return cplx(0.0, 0.0);
        if (piv != k) {
            for (int j = k; j < n; ++j)
                std::swap(a[static_cast<size_t>(piv) * n + j], a[static_cast<size_t>(k) * n + j]);
            sign = -sign;
        }
        cplx pivot = a[static_cast<size_t>(k) * n + k];
        log_det += std::log(pivot);
        for (int i = k + 1; i < n; ++i) {
            cplx f = a[static_cast<size_t>(i) * n + k] / pivot;
            if (f == cplx(0.0, 0.0)) continue;
            a[static_cast<size_t>(i) * n + k] = f;
            const cplx* src = &a[static_cast<size_t>(k) * n];
            cplx* dst = &a[static_cast<size_t>(i) * n];
            for (int j = k + 1; j < n; ++j) dst[j] -= f * src[j];
        }
    }
    return sign * std::exp(log_det);
}

// ---------------------------------------------------------------------------
// Rescaled kernel machinery
// ---------------------------------------------------------------------------

// log W-hat(z), the z-dependent Gamma-ratio exponent of the rescaled kernel.
cplx log_w_rescaled(cplx z, int n, double theta) {
    double two_n = 2.0 * n;
    if (theta == 0.0)
        return static_cast<double>(n) *
               (std::log(1.0 + z / two_n) - std::log(1.0 - z / two_n));
    return static_cast<double>(n) * (log_gamma(theta * (1.0 - z / two_n)) -
                                     log_gamma(theta * (1.0 + z / two_n)));
}

struct KernelConfig {
    double circle_radius;
    int m_circle;
    double apex;
    double angle;
};

KernelConfig resolve_kernel_opts(int n, double theta, const KernelOpts& opts) {
    KernelConfig cfg;
    cfg.circle_radius = opts.circle_radius > 0.0 ? opts.circle_radius : static_cast<double>(n);
    require(cfg.circle_radius > 0.0 && cfg.circle_radius < 2.0 * n, ErrorCode::contour,
            "rescaled kernel: circle radius must lie in (0, 2n)");
    cfg.m_circle = opts.m_circle > 0 ? opts.m_circle : std::max(64, 8 * n);
    cfg.apex = opts.wedge_apex > 0.0 ? opts.wedge_apex : std::min(2.5, 1.0 + 0.5 * n);
    double apex_max = 2.0 * n;
    if (theta > 0.0) apex_max = std::min(apex_max, 2.0 * n * (1.0 - theta) / theta);
    require(cfg.apex > 1.0 && cfg.apex < apex_max, ErrorCode::contour,
            "rescaled kernel: line abscissa must lie in (1, min(2n, 2n(1-theta)/theta))");
    require(opts.wedge_angle_deg > 5.0 && opts.wedge_angle_deg < 90.0, ErrorCode::contour,
            "rescaled kernel: wedge angle must lie in (5, 90) degrees");
    cfg.angle = opts.wedge_angle_deg * kPi / 180.0;
    return cfg;
}

// Precomputed contour data for one (n, theta); assembles Nystrom matrices for
// arbitrary y-grids.
struct RescaledKernel {
    int n;
    double theta;
    Contour u_circle;
    Contour v_wedge; // conjugate-symmetric pair of rays
    std::vector<cplx> log_w_v;
    std::vector<cplx> log_w_u;

    RescaledKernel(int n_, double theta_, const KernelOpts& opts, double y_lo,
                   double y_hi)
        : n(n_), theta(theta_) {
        require(n >= 1, ErrorCode::invalid_argument, "rescaled kernel: n >= 1");
        require(theta >= 0.0 && theta < 1.0, ErrorCode::invalid_argument,
                "rescaled kernel: theta in [0, 1) required");
        if (theta == 0.0)
            require(y_lo > 0.0, ErrorCode::domain,
                    "rescaled kernel: theta = 0 requires y > 0");
        KernelConfig cfg = resolve_kernel_opts(n, theta, opts);
        u_circle = circle_contour(cplx(-2.0 * n, 0.0), cfg.circle_radius, cfg.m_circle);
        build_wedge(cfg, opts, y_lo, y_hi);
        log_w_u.resize(u_circle.nodes.size());
        for (size_t b = 0; b < u_circle.nodes.size(); ++b)
            log_w_u[b] = log_w_rescaled(u_circle.nodes[b], n, theta);
        log_w_v.resize(v_wedge.nodes.size());
        for (size_t a = 0; a < v_wedge.nodes.size(); ++a)
            log_w_v[a] = log_w_rescaled(v_wedge.nodes[a], n, theta);
    }

    void build_wedge(const KernelConfig& cfg, const KernelOpts& opts, double y_lo,
                     double y_hi) {
        const double phi = cfg.angle;
        const cplx dir(std::cos(phi), std::sin(phi));
        // Panel width limited by the e^{-v y} oscillation along the ray.
        double freq = std::max(std::abs(y_lo), std::abs(y_hi)) * std::sin(phi) + 0.5;
        double width = std::clamp(8.0 / freq, 0.25, 2.5);
        double grow_after = theta > 0.0 ? 4.0 * n / theta + 10.0 : 1e300;

        auto envelope = [&](double t) {
            cplx v = cfg.apex + t * dir;
            double lw = log_w_rescaled(v, n, theta).real();
            return std::max(lw - v.real() * y_lo, lw - v.real() * y_hi);
        };

        double env_max = envelope(0.0);
        double log_tol = std::log(opts.tail_tol);
        double t = 0.0;
        std::vector<double> edges{0.0};
        int panels = 0;
        for (;;) {
            double w = t > grow_after ? width * std::pow(2.0, (t - grow_after) / 50.0 + 1.0)
                                      : width;
            t += w;
            edges.push_back(t);
            ++panels;
            double e = envelope(t);
            env_max = std::max(env_max, e);
            if (e < env_max + log_tol && panels >= 4) break;
            if (panels > opts.max_panels)
                fail(ErrorCode::truncation,
                     "rescaled kernel: wedge tail did not decay within panel budget");
        }

        quad::Rule rule = quad::composite(edges, opts.m_wedge_panel);
        size_t m = rule.x.size();
        v_wedge.nodes.resize(2 * m);
        v_wedge.weights.resize(2 * m);
        for (size_t k = 0; k < m; ++k) {
            cplx v = cfg.apex + rule.x[k] * dir;
            cplx w_up = rule.w[k] * dir;
            v_wedge.nodes[k] = v;
            v_wedge.weights[k] = w_up;
            // lower ray runs from e^{-i phi} infinity up to the apex
            v_wedge.nodes[m + k] = std::conj(v);
            v_wedge.weights[m + k] = -std::conj(w_up);
        }
    }

    // Pointwise evaluation: exponent assembled per node pair.
    cplx eval(double y, double y_prime) const {
        const double pref = -1.0 / (4.0 * kPi * kPi); // 1/(2 pi i)^2
        cplx acc(0.0, 0.0);
        for (size_t a = 0; a < v_wedge.nodes.size(); ++a) {
            const cplx va = v_wedge.nodes[a];
            const cplx lwa = log_w_v[a];
            cplx inner(0.0, 0.0);
            for (size_t b = 0; b < u_circle.nodes.size(); ++b) {
                cplx expo = lwa - log_w_u[b] - va * y + u_circle.nodes[b] * y_prime;
                if (expo.real() > 700.0)
                    fail(ErrorCode::overflow,
                         "rescaled kernel: integrand exponent above 700 (contour misplacement)");
                inner += std::exp(expo) * u_circle.weights[b] / (va - u_circle.nodes[b]);
            }
            acc += v_wedge.weights[a] * inner;
        }
        return pref * acc;
    }

    // F_ij = s_i L(y_i, y_j) s_j with s_i = sqrt(w_i sigma_i), dense row-major.
    std::vector<cplx> assemble(const std::vector<double>& ys,
                               const std::vector<double>& ws,
                               const std::vector<double>& sigma) const {
        const size_t N = ys.size(), mv = v_wedge.nodes.size(), mu = u_circle.nodes.size();
        const double pref = -1.0 / (4.0 * kPi * kPi);

        // A_ia = exp(logW(v_a) - v_a y_i) w_a, B_jb = exp(u_b y_j - logW(u_b)) w_b
        std::vector<cplx> A(N * mv), B(N * mu);
        double max_expo = 0.0;
        for (size_t i = 0; i < N; ++i) {
            for (size_t a = 0; a < mv; ++a) {
                cplx expo = log_w_v[a] - v_wedge.nodes[a] * ys[i];
                max_expo = std::max(max_expo, expo.real());
                A[i * mv + a] = std::exp(expo) * v_wedge.weights[a];
            }
            for (size_t b = 0; b < mu; ++b) {
                cplx expo = u_circle.nodes[b] * ys[i] - log_w_u[b];
                max_expo = std::max(max_expo, expo.real());
                B[i * mu + b] = std::exp(expo) * u_circle.weights[b];
            }
        }
        if (max_expo > 700.0)
            fail(ErrorCode::overflow,
                 "rescaled kernel: integrand exponent above 700 (contour misplacement)");

        // C = A * P with P_ab = 1/(v_a - u_b), then F = pref * C * B^T.
        std::vector<cplx> C(N * mu);
        parallel_chunks(static_cast<std::int64_t>(N), [&](std::int64_t i) {
            for (size_t b = 0; b < mu; ++b) {
                const cplx ub = u_circle.nodes[b];
                cplx s(0.0, 0.0);
                const cplx* arow = &A[static_cast<size_t>(i) * mv];
                for (size_t a = 0; a < mv; ++a) s += arow[a] / (v_wedge.nodes[a] - ub);
                C[static_cast<size_t>(i) * mu + b] = s;
            }
        });
        std::vector<cplx> F(N * N);
        parallel_chunks(static_cast<std::int64_t>(N), [&](std::int64_t i) {
            double si = std::sqrt(ws[i] * sigma[i]);
            for (size_t j = 0; j < N; ++j) {
                cplx s(0.0, 0.0);
                const cplx* crow = &C[static_cast<size_t>(i) * mu];
                const cplx* brow = &B[j * mu];
                for (size_t b = 0; b < mu; ++b) s += crow[b] * brow[b];
                F[static_cast<size_t>(i) * N + j] =
                    pref * si * std::sqrt(ws[j] * sigma[j]) * s;
            }
        });
        return F;
    }
};

// ---------------------------------------------------------------------------
// y-grids for the step/smoothed determinants
// ---------------------------------------------------------------------------

struct YGrid {
    std::vector<double> y;
    std::vector<double> w;
};

double spectral_edge(double theta) {
    return theta == 0.0 ? 1.0 : rate::s_star(theta);
}

// Panels from `lo` to `hi`: uniform through the oscillatory bulk, doubling
// widths past the spectral edge, exponential map on the final panel.
YGrid build_grid(double lo, double hi, double bulk_end, double bulk_width,
                 double sig_end, double sig_width, int m_panel) {
    std::vector<double> edges{lo};
    double t = lo;
    while (t < sig_end - 1e-12 && sig_width > 0.0) {
        t = std::min(t + sig_width, sig_end);
        edges.push_back(t);
    }
    while (t < bulk_end - 1e-12) {
        t = std::min(t + bulk_width, bulk_end);
        edges.push_back(t);
    }
    double w = bulk_width;
    while (t < hi - 1e-12 && (hi - t) > 4.0 * w) {
        w *= 2.0;
        t = std::min(t + w, hi);
        edges.push_back(t);
    }
    YGrid grid;
    quad::Rule rule = quad::composite(edges, m_panel);
    grid.y = rule.x;
    grid.w = rule.w;
    if (t < hi - 1e-12) {
        quad::Rule last = quad::exp_mapped_panel(t, hi, m_panel);
        grid.y.insert(grid.y.end(), last.x.begin(), last.x.end());
        grid.w.insert(grid.w.end(), last.w.begin(), last.w.end());
    }
    return grid;
}

double stable_sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    double e = std::exp(x);
    return e / (1.0 + e);
}

DetResult determinant_from_grid(const RescaledKernel& kernel, const YGrid& grid,
                                const std::vector<double>& sigma) {
    int N = static_cast<int>(grid.y.size());
    require(N <= kMaxDims, ErrorCode::invalid_argument,
            "determinant grid exceeds the dimension cap");
    std::vector<cplx> F = kernel.assemble(grid.y, grid.w, sigma);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            cplx v = -F[static_cast<size_t>(i) * N + j];
            if (i == j) v += 1.0;
            F[static_cast<size_t>(i) * N + j] = v;
        }
    DetResult r;
    r.value = det_inplace_impl(F, N);
    r.imag_residual = std::abs(r.value.imag());
    r.dims = N;
    return r;
}

struct GridSpec {
    double lo, hi, bulk_end, bulk_width, sig_end, sig_width;
};

DetResult refined_determinant(int n, double theta, const GridSpec& gs,
                              const KernelOpts& kernel_opts, int m_panel,
                              double s, bool smoothed) {
    RescaledKernel kernel(n, theta, kernel_opts, gs.lo, gs.hi);
    DetResult coarse, fine;
    for (int pass = 0; pass < 2; ++pass) {
        int m = pass == 0 ? m_panel : 2 * m_panel;
        YGrid grid = build_grid(gs.lo, gs.hi, gs.bulk_end, gs.bulk_width, gs.sig_end,
                                gs.sig_width, m);
        std::vector<double> sigma(grid.y.size(), 1.0);
        if (smoothed) {
            double rate_2n = 2.0 * n / theta;
            for (size_t i = 0; i < grid.y.size(); ++i)
                sigma[i] = stable_sigmoid(rate_2n * (grid.y[i] - s));
        }
        (pass == 0 ? coarse : fine) = determinant_from_grid(kernel, grid, sigma);
    }
    fine.refine_delta = std::abs(fine.value - coarse.value);
    return fine;
}

GridSpec step_grid_spec(double s, int n, double theta, const GridOpts& grid) {
    GridSpec gs;
    gs.lo = s;
    double y_cut = grid.y_cut > 0.0 ? grid.y_cut : s + 4.0;
    gs.hi = s + y_cut;
    gs.bulk_width = grid.bulk_width > 0.0
                        ? grid.bulk_width
                        : std::clamp(10.0 / (kPi * n), 0.1, 1.0);
    gs.bulk_end = std::min(gs.hi, spectral_edge(theta) + 0.75);
    if (gs.bulk_end <= gs.lo) gs.bulk_end = std::min(gs.hi, gs.lo + 2.0 * gs.bulk_width);
    gs.sig_end = gs.lo;
    gs.sig_width = 0.0;
    return gs;
}

} // namespace

cplx det_inplace(std::vector<cplx>& a, int n) { return det_inplace_impl(a, n); }

cplx rescaled_kernel(double y, double y_prime, int n, double theta,
                     const KernelOpts& opts) {
    RescaledKernel kernel(n, theta, opts, std::min(y, y_prime), std::max(y, y_prime));
    return kernel.eval(y, y_prime);
}

DetResult step_det(double s, int n, double theta, const GridOpts& grid,
                   const KernelOpts& kernel) {
    require(s > 0.0, ErrorCode::invalid_argument, "step_det: s > 0 required");
    require(n >= 1, ErrorCode::invalid_argument, "step_det: n >= 1 required");
    return refined_determinant(n, theta, step_grid_spec(s, n, theta, grid), kernel,
                               grid.m_panel, s, false);
}

DetResult smoothed_det(double s, int n, double theta, const GridOpts& grid,
                       const KernelOpts& kernel) {
    require(s > 0.0, ErrorCode::invalid_argument, "smoothed_det: s > 0 required");
    require(n >= 1, ErrorCode::invalid_argument, "smoothed_det: n >= 1 required");
    require(theta > 0.0, ErrorCode::invalid_argument,
            "smoothed_det: theta > 0 required (theta = 0 is the step determinant)");
    GridSpec gs = step_grid_spec(s, n, theta, grid);
    double pad = theta / (2.0 * n) * std::log(1.0 / grid.sigmoid_eps);
    gs.lo = std::max(s - pad, -grid.neg_clip * theta / (2.0 * n));
    gs.sig_end = std::min(s + pad, gs.hi);
    gs.sig_width = std::max({theta / n, (gs.sig_end - gs.lo) / 24.0, 1e-3});
    gs.bulk_end = std::max(gs.bulk_end, gs.sig_end);
    return refined_determinant(n, theta, gs, kernel, grid.m_panel, s, true);
}

std::vector<GapRow> ansatz_gap(double s, double theta, const std::vector<int>& n_list,
                               const GridOpts& grid, const KernelOpts& kernel) {
    std::vector<GapRow> rows;
    rows.reserve(n_list.size());
    for (int n : n_list) {
        GapRow row;
        row.n = n;
        try {
            DetResult q = step_det(s, n, theta, grid, kernel);
            DetResult qt = smoothed_det(s, n, theta, grid, kernel);
            require(q.value.real() > 0.0 && qt.value.real() > 0.0, ErrorCode::domain,
                    "ansatz_gap: determinant not positive, cannot take log");
            row.log_q = std::log(q.value.real());
            row.log_q_tilde = std::log(qt.value.real());
            row.gap_over_n2 = std::abs(row.log_q_tilde - row.log_q) /
                              (static_cast<double>(n) * n);
            row.ok = true;
        } catch (const Error& e) {
            row.ok = false;
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Laplace-transform determinant det(I + K_n^{u,theta})
// ---------------------------------------------------------------------------

namespace {

DetResult laplace_det_pass(double u, int n, double theta, double radius, double line_re,
                           double v_cut, int m_circle, int m_line_panel) {
    Contour sigma = circle_contour(cplx(-theta, 0.0), radius, m_circle);

    // Vertical line c + i t, t symmetric; panel edges geometric in |t|.
    std::vector<double> edges{0.0};
    double e = 1.0;
    while (e < v_cut) {
        edges.push_back(e);
        e *= 2.0;
    }
    edges.push_back(v_cut);
    quad::Rule half = quad::composite(edges, m_line_panel);
    Contour line;
    size_t mh = half.x.size();
    line.nodes.resize(2 * mh);
    line.weights.resize(2 * mh);
    for (size_t k = 0; k < mh; ++k) {
        line.nodes[k] = cplx(line_re, half.x[k]);
        line.weights[k] = kI * half.w[k];
        line.nodes[mh + k] = cplx(line_re, -half.x[k]);
        line.weights[mh + k] = kI * half.w[k];
    }

    auto log_w = [&](cplx z) {
        return static_cast<double>(n) * (log_gamma(theta - z) - log_gamma(theta + z));
    };
    std::vector<cplx> lw_line(line.nodes.size()), lw_circle(sigma.nodes.size());
    for (size_t k = 0; k < line.nodes.size(); ++k) lw_line[k] = log_w(line.nodes[k]);
    for (size_t k = 0; k < sigma.nodes.size(); ++k) lw_circle[k] = log_w(sigma.nodes[k]);

    const double log_u = std::log(u);
    const double pref = -1.0 / (4.0 * kPi * kPi);
    const size_t M = sigma.nodes.size(), W = line.nodes.size();

    // phi_{iw} = weight_w pi u^{w - v_i} (W(w)/W(v_i)) / sin(pi (v_i - w))
    std::vector<cplx> phi(M * W);
    double env_max = -1e300, env_tail = -1e300;
    for (size_t i = 0; i < M; ++i) {
        const cplx vi = sigma.nodes[i];
        for (size_t k = 0; k < W; ++k) {
            cplx expo = (line.nodes[k] - vi) * log_u + lw_line[k] - lw_circle[i];
            cplx sp = std::sin(kPi * (vi - line.nodes[k]));
            require(std::abs(sp) > 1e-12, ErrorCode::contour,
                    "laplace_det: sin pole on the contour (integer v - w)");
            cplx val = std::exp(expo) * kPi / sp;
            double mag = expo.real() - kPi * std::abs((vi - line.nodes[k]).imag());
            env_max = std::max(env_max, mag);
            if (std::abs(line.nodes[k].imag()) > 0.9 * v_cut)
                env_tail = std::max(env_tail, mag);
            phi[i * W + k] = line.weights[k] * val;
        }
    }
    if (env_tail > env_max + std::log(1e-10))
        fail(ErrorCode::truncation,
             "laplace_det: integrand tail above 1e-10 of peak at v_cut");

    std::vector<cplx> A(M * M);
    std::vector<cplx> sw(M);
    for (size_t i = 0; i < M; ++i) sw[i] = std::sqrt(sigma.weights[i]);
    parallel_chunks(static_cast<std::int64_t>(M), [&](std::int64_t i) {
        for (size_t j = 0; j < M; ++j) {
            cplx acc(0.0, 0.0);
            const cplx* prow = &phi[static_cast<size_t>(i) * W];
            for (size_t k = 0; k < W; ++k) acc += prow[k] / (line.nodes[k] - sigma.nodes[j]);
            A[static_cast<size_t>(i) * M + j] = pref * sw[i] * acc * sw[j];
        }
    });
    for (size_t i = 0; i < M; ++i) A[i * M + i] += 1.0;
    DetResult r;
    r.value = det_inplace_impl(A, static_cast<int>(M));
    r.imag_residual = std::abs(r.value.imag());
    r.dims = static_cast<int>(M);
    return r;
}

} // namespace

DetResult laplace_det(double u, int n, double theta, const LaplaceOpts& opts) {
    require(u > 0.0, ErrorCode::invalid_argument, "laplace_det: u > 0 required");
    require(n >= 1, ErrorCode::invalid_argument, "laplace_det: n >= 1 required");
    require(theta > 0.0 && theta < 1.0, ErrorCode::invalid_argument,
            "laplace_det: theta in (0, 1) required");
    double radius = opts.radius > 0.0 ? opts.radius : theta / 2.0;
    require(radius > 0.0 && radius < theta, ErrorCode::contour,
            "laplace_det: circle radius must lie in (0, theta)");
    double line_re = opts.line_re_set ? opts.line_re : 0.5 * (-theta + radius + theta);
    require(line_re > -theta + radius && line_re < theta, ErrorCode::contour,
            "laplace_det: line must lie strictly between the circle and theta");
    // Integer gaps v - w hit the sin poles; reject contours admitting them.
    double gap_lo = -theta - radius - line_re, gap_hi = -theta + radius - line_re;
    for (int k = -3; k <= 3; ++k) {
        if (k == 0) continue;
        require(!(gap_lo - 1e-9 <= k && k <= gap_hi + 1e-9), ErrorCode::contour,
                "laplace_det: contours admit an integer v - w (sin pole)");
    }
    require(opts.v_cut >= 8.0, ErrorCode::invalid_argument, "laplace_det: v_cut >= 8");

    DetResult coarse = laplace_det_pass(u, n, theta, radius, line_re, opts.v_cut,
                                        opts.m_circle, opts.m_line_panel);
    DetResult fine = laplace_det_pass(u, n, theta, radius, line_re, opts.v_cut,
                                      2 * opts.m_circle, 2 * opts.m_line_panel);
    fine.refine_delta = std::abs(fine.value - coarse.value);
    return fine;
}

} // namespace lgp::fredholm
