#include "quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "errors.hpp"

namespace lgp::quad {

namespace {

constexpr double kPi = 3.14159265358979323846;

Rule compute_gauss_legendre(int m) {
    Rule r;
    r.x.resize(m);
    r.w.resize(m);
    // Newton iteration on P_m; standard symmetric construction.
    for (int k = 0; k < (m + 1) / 2; ++k) {
        double x = std::cos(kPi * (k + 0.75) / (m + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= m; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pp = m * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1.0, p1 = x;
        for (int j = 2; j <= m; ++j) {
            double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
            p0 = p1;
            p1 = p2;
        }
        pp = m * (x * p1 - p0) / (x * x - 1.0);
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.x[k] = -x;
        r.w[k] = w;
        r.x[m - 1 - k] = x;
        r.w[m - 1 - k] = w;
    }
    return r;
}

std::map<int, Rule> g_gl_cache;
std::mutex g_gl_mutex;

} // namespace

const Rule& gauss_legendre(int m) {
    require(m >= 1, ErrorCode::invalid_argument, "gauss_legendre: m >= 1 required");
    std::lock_guard<std::mutex> lk(g_gl_mutex);
    auto it = g_gl_cache.find(m);
    if (it == g_gl_cache.end()) it = g_gl_cache.emplace(m, compute_gauss_legendre(m)).first;
    return it->second;
}

Rule gauss_legendre_on(int m, double a, double b) {
    const Rule& base = gauss_legendre(m);
    Rule r = base;
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int k = 0; k < m; ++k) {
        r.x[k] = mid + half * base.x[k];
        r.w[k] = half * base.w[k];
    }
    return r;
}

Rule chebyshev1(int m) {
    require(m >= 1, ErrorCode::invalid_argument, "chebyshev1: m >= 1 required");
    Rule r;
    r.x.resize(m);
    r.w.assign(m, kPi / m);
    for (int k = 0; k < m; ++k) r.x[k] = std::cos((2.0 * k + 1.0) * kPi / (2.0 * m));
    return r;
}

Rule chebyshev2(int m) {
    require(m >= 1, ErrorCode::invalid_argument, "chebyshev2: m >= 1 required");
    Rule r;
    r.x.resize(m);
    r.w.resize(m);
    for (int k = 1; k <= m; ++k) {
        double t = k * kPi / (m + 1.0);
        r.x[k - 1] = std::cos(t);
        double s = std::sin(t);
        r.w[k - 1] = kPi / (m + 1.0) * s * s;
    }
    return r;
}

Rule composite(const std::vector<double>& edges, int m_per_panel) {
    require(edges.size() >= 2, ErrorCode::invalid_argument, "composite: need >= 2 edges");
    Rule r;
    for (size_t p = 0; p + 1 < edges.size(); ++p) {
        Rule panel = gauss_legendre_on(m_per_panel, edges[p], edges[p + 1]);
        r.x.insert(r.x.end(), panel.x.begin(), panel.x.end());
        r.w.insert(r.w.end(), panel.w.begin(), panel.w.end());
    }
    return r;
}

Rule exp_mapped_panel(double a, double b, int m, double k) {
    const Rule& base = gauss_legendre(m);
    Rule r;
    r.x.resize(m);
    r.w.resize(m);
    double denom = std::expm1(k);
    for (int j = 0; j < m; ++j) {
        double t = 0.5 * (base.x[j] + 1.0);
        double e = std::exp(k * t);
        r.x[j] = a + (b - a) * (e - 1.0) / denom;
        r.w[j] = 0.5 * base.w[j] * (b - a) * k * e / denom;
    }
    return r;
}

} // namespace lgp::quad
