#include "polymer.hpp"

#include <cmath>
#include <vector>

#include "errors.hpp"
#include "parallel.hpp"

namespace lgp::polymer {

namespace {

constexpr int kMaxN = 4096;
constexpr std::int64_t kMaxSamples = 100000000;
constexpr std::int64_t kChunk = 1024;

void check_config(int n, std::int64_t samples) {
    require(n >= 1 && n <= kMaxN, ErrorCode::invalid_argument,
            "lattice size n must lie in [1, 4096]");
    require(samples >= 1 && samples <= kMaxSamples, ErrorCode::invalid_argument,
            "samples must lie in [1, 1e8]");
}

inline std::uint64_t site_code(int i, int j) {
    return (static_cast<std::uint64_t>(i) << 16) | static_cast<std::uint64_t>(j);
}

// log(e^a + e^b) by max shift; beyond a gap of 40 the smaller term is below
// 4e-18 relative and is dropped.
inline double logaddexp(double a, double b) {
    double hi = a > b ? a : b;
    double lo = a > b ? b : a;
    double d = hi - lo;
    if (d > 40.0) return hi;
    return hi + std::log1p(std::exp(-d));
}

// log of a Gamma(shape, 1) draw by Marsaglia-Tsang.
double sample_log_gamma(double shape, rng::SiteStream& st) {
    double boost = 0.0;
    double a = shape;
    if (a < 1.0) {
        boost = std::log(st.u01()) / a;
        a += 1.0;
    }
    double d = a - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = st.normal();
        double v = 1.0 + c * x;
        if (v <= 0.0) continue;
        v = v * v * v;
        double u = st.u01();
        if (u < 1.0 - 0.0331 * x * x * x * x ||
            std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v))
            return std::log(d) + std::log(v) + boost;
    }
}

template <typename PerSample>
SimSummary accumulate(std::int64_t samples, PerSample&& value) {
    std::int64_t n_chunks = (samples + kChunk - 1) / kChunk;
    std::vector<double> sum(n_chunks, 0.0), sumsq(n_chunks, 0.0);
    parallel_chunks(n_chunks, [&](std::int64_t c) {
        std::int64_t lo = c * kChunk;
        std::int64_t hi = std::min(samples, lo + kChunk);
        double s = 0.0, s2 = 0.0;
        for (std::int64_t m = lo; m < hi; ++m) {
            double v = value(m);
            s += v;
            s2 += v * v;
        }
        sum[c] = s;
        sumsq[c] = s2;
    });
    double s = 0.0, s2 = 0.0;
    for (std::int64_t c = 0; c < n_chunks; ++c) {
        s += sum[c];
        s2 += sumsq[c];
    }
    SimSummary out;
    out.samples_used = samples;
    out.mean_logZ = s / samples;
    out.var_logZ = samples > 1 ? std::max(0.0, (s2 - s * s / samples) / (samples - 1))
                               : 0.0;
    out.stderr_mean = std::sqrt(out.var_logZ / samples);
    return out;
}

} // namespace

double sample_log_inverse_gamma(double theta, rng::SiteStream& stream) {
    require(theta > 0.0, ErrorCode::invalid_argument, "theta > 0 required");
    return -sample_log_gamma(2.0 * theta, stream);
}

double sample_inverse_gamma(double theta, rng::SiteStream& stream) {
    return std::exp(sample_log_inverse_gamma(theta, stream));
}

double log_partition(int n, double theta, std::uint64_t seed, std::int64_t sample_index) {
    check_config(n, 1);
    require(theta > 0.0, ErrorCode::invalid_argument, "theta > 0 required");
    std::vector<double> row(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            rng::SiteStream st(seed, kTagPolymer, static_cast<std::uint64_t>(sample_index),
                               site_code(i, j));
            double logw = sample_log_inverse_gamma(theta, st);
            double prev;
            if (i == 0 && j == 0) prev = 0.0;
            else if (i == 0) prev = row[j - 1];
            else if (j == 0) prev = row[j];
            else prev = logaddexp(row[j], row[j - 1]);
            row[j] = logw + prev;
        }
    }
    return row[n - 1];
}

double lpp_time(int n, std::uint64_t seed, std::int64_t sample_index) {
    check_config(n, 1);
    std::vector<double> row(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            rng::SiteStream st(seed, kTagLpp, static_cast<std::uint64_t>(sample_index),
                               site_code(i, j));
            double w = -std::log(st.u01()); // Exp(1)
            double prev;
            if (i == 0 && j == 0) prev = 0.0;
            else if (i == 0) prev = row[j - 1];
            else if (j == 0) prev = row[j];
            else prev = std::max(row[j], row[j - 1]);
            row[j] = w + prev;
        }
    }
    return row[n - 1];
}

SimSummary mc_summary(const SimConfig& cfg) {
    check_config(cfg.n, cfg.samples);
    require(cfg.theta > 0.0, ErrorCode::invalid_argument, "theta > 0 required");
    return accumulate(cfg.samples, [&](std::int64_t m) {
        return log_partition(cfg.n, cfg.theta, cfg.seed, m);
    });
}

McLaplace mc_laplace(int n, double theta, double u, std::int64_t samples,
                     std::uint64_t seed) {
    check_config(n, samples);
    require(theta > 0.0, ErrorCode::invalid_argument, "theta > 0 required");
    require(u >= 0.0, ErrorCode::invalid_argument, "u >= 0 required");
    if (u == 0.0) return {1.0, 0.0};
    double log_u = std::log(u);
    SimSummary acc = accumulate(samples, [&](std::int64_t m) {
        double t = log_u + log_partition(n, theta, seed, m);
        if (t > 700.0) return 0.0;   // e^{-exp(t)} underflows to 0
        if (t < -745.0) return 1.0;  // exp(t) underflows to 0
        return std::exp(-std::exp(t));
    });
    return {acc.mean_logZ, acc.stderr_mean};
}

} // namespace lgp::polymer
