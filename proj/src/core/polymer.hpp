#ifndef LGPOLY_POLYMER_HPP
#define LGPOLY_POLYMER_HPP

#include <cstdint>

#include "philox.hpp"

namespace lgp::polymer {

struct SimConfig {
    int n = 1;
    double theta = 0.5;
    std::int64_t samples = 1;
    std::uint64_t seed = 0;
};

struct SimSummary {
    double mean_logZ = 0.0;
    double var_logZ = 0.0;
    double stderr_mean = 0.0;
    std::int64_t samples_used = 0;
};

struct McLaplace {
    double estimate = 0.0;
    double stderr = 0.0;
};

// log of an inverse-Gamma(2 theta) draw, i.e. -log G with G ~ Gamma(2 theta, 1).
// Marsaglia-Tsang, with the U^{1/shape} boost below shape 1; stays finite in
// log space down to very small theta.
double sample_log_inverse_gamma(double theta, rng::SiteStream& stream);

// exp of the above; overflows to +inf only when the draw itself does.
double sample_inverse_gamma(double theta, rng::SiteStream& stream);

// log Z_n(theta) for one environment realization: log-space up-right recursion
// over the n x n lattice of inverse-Gamma weights.
double log_partition(int n, double theta, std::uint64_t seed, std::int64_t sample_index);

// Zero-temperature analogue: max-plus recursion with Exp(1) weights.
double lpp_time(int n, std::uint64_t seed, std::int64_t sample_index);

// Mean/variance of log Z over cfg.samples independent environments.
// Deterministic for fixed (seed, samples) regardless of thread count.
SimSummary mc_summary(const SimConfig& cfg);

// Monte Carlo estimate of E exp(-u Z_n(theta)).
McLaplace mc_laplace(int n, double theta, double u, std::int64_t samples,
                     std::uint64_t seed);

// Stream tags so polymer weights, LPP weights and any future consumers draw
// from disjoint Philox streams.
inline constexpr std::uint64_t kTagPolymer = 0x706f6c79ULL; // "poly"
inline constexpr std::uint64_t kTagLpp = 0x6c7070ULL;       // "lpp"

} // namespace lgp::polymer

#endif
