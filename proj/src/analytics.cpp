#include "dcbsim/analytics.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "dcbsim/rng.hpp"

namespace dcbsim::analytics {

double pfc_trigger_probability(double threshold_bytes, double mean_size_bytes,
                               double rho) {
    if (!(rho > 0.0 && rho < 1.0))
        throw std::invalid_argument("pfc_trigger_probability: rho outside (0,1)");
    if (threshold_bytes < 0 || mean_size_bytes <= 0)
        throw std::invalid_argument("pfc_trigger_probability: bad K or S");
    return std::exp(-(threshold_bytes / mean_size_bytes) * (1.0 - rho));
}

double congestion_tree_threshold(const ModelParams& p, int hops) {
    if (hops < 1)
        throw std::invalid_argument("congestion_tree_threshold: hops < 1");
    double level = std::pow(static_cast<double>(p.ports), hops - 1) *
                   p.threshold_bytes;
    for (int i = 1; i <= hops - 1; ++i)
        level += std::pow(static_cast<double>(p.ports), i - 1) *
                 (p.threshold_bytes + p.headroom_bytes);
    return level;
}

double congestion_tree_probability(const ModelParams& p, int hops) {
    // Written so that hops == 1 evaluates the exact same expression as
    // pfc_trigger_probability (the loop contributes nothing and n^0 == 1).
    double level = congestion_tree_threshold(p, hops);
    if (!(p.rho > 0.0 && p.rho < 1.0))
        throw std::invalid_argument("congestion_tree_probability: rho outside (0,1)");
    return std::exp(-(level / p.mean_size_bytes) * (1.0 - p.rho));
}

double rate_decrease_probability(double mean_size_bytes, double growth_rate_Bps,
                                 double lambda, InterarrivalDist dist) {
    if (growth_rate_Bps <= 0)
        throw std::invalid_argument("rate_decrease_probability: r <= 0");
    if (lambda <= 0 || mean_size_bytes <= 0)
        throw std::invalid_argument("rate_decrease_probability: bad lambda or S");
    const double lm = lambda * mean_size_bytes; // bytes/s of offered work
    switch (dist) {
    case InterarrivalDist::Exponential:
        // P{tau < S/r} with tau ~ Exp(lambda), S ~ Exp(mean).
        return lm / (growth_rate_Bps + lm);
    case InterarrivalDist::Deterministic:
        // tau fixed at 1/lambda: P{S > r/lambda}.
        return std::exp(-growth_rate_Bps / lm);
    }
    return 0.0;
}

double rate_decrease_probability_exact(double mean_size_bytes,
                                       double growth_rate_Bps, double lambda) {
    if (growth_rate_Bps <= 0)
        throw std::invalid_argument("rate_decrease_probability_exact: r <= 0");
    double lm = lambda * mean_size_bytes;
    return lm / (growth_rate_Bps + lm);
}

namespace {

TailEstimate wilson(std::uint64_t hits, std::uint64_t n) {
    TailEstimate e;
    e.hits = hits;
    e.samples = n;
    if (n == 0) return e;
    double phat = static_cast<double>(hits) / static_cast<double>(n);
    e.p = phat;
    const double z = 1.959963984540054; // 95%
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (phat + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    e.ci_lo = center - half;
    e.ci_hi = center + half;
    return e;
}

// Two-sided 97.5% Student-t quantile, coarse steps (always >= the true
// value for the df between steps, so intervals err conservative).
double t975(int df) {
    if (df <= 1) return 12.71;
    if (df <= 2) return 4.30;
    if (df <= 3) return 3.18;
    if (df <= 4) return 2.78;
    if (df <= 6) return 2.57;
    if (df <= 8) return 2.36;
    if (df <= 12) return 2.23;
    if (df <= 20) return 2.09;
    if (df <= 40) return 2.02;
    return 2.00;
}

// Queue arrivals are autocorrelated, so a Bernoulli interval on the pooled
// count would be far too narrow. Each chunk is an independent replication;
// the interval comes from the spread of the chunk means instead.
TailEstimate from_replications(const std::vector<std::uint64_t>& hits,
                               std::uint64_t per) {
    const int c = static_cast<int>(hits.size());
    std::uint64_t total = 0;
    for (auto h : hits) total += h;
    if (c < 2) return wilson(total, per * static_cast<std::uint64_t>(c));

    TailEstimate e;
    e.hits = total;
    e.samples = per * static_cast<std::uint64_t>(c);
    e.p = static_cast<double>(total) / static_cast<double>(e.samples);
    double var = 0;
    for (auto h : hits) {
        const double d = static_cast<double>(h) / static_cast<double>(per) - e.p;
        var += d * d;
    }
    var /= (c - 1);
    const double half = t975(c - 1) * std::sqrt(var / c);
    e.ci_lo = std::max(0.0, e.p - half);
    e.ci_hi = std::min(1.0, e.p + half);
    return e;
}

// Lindley recursion over one independent stream. Counts arrivals whose
// post-admission workload exceeds the threshold. The first ~1% of samples
// are burned to wash out the empty-system start.
std::uint64_t mm1_chunk(double lambda, double mean_size, double capacity,
                        double threshold, std::uint64_t samples,
                        std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> interarrival(lambda);
    std::exponential_distribution<double> size(1.0 / mean_size);
    std::uint64_t burn = samples / 100;
    double backlog = 0; // bytes awaiting service just before an arrival
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < burn + samples; ++i) {
        double admitted = backlog + size(rng);
        if (i >= burn && admitted > threshold) ++hits;
        backlog = admitted - capacity * interarrival(rng);
        if (backlog < 0) backlog = 0;
    }
    return hits;
}

std::uint64_t pair_chunk(double mean_size, double r, double lambda,
                         std::uint64_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> interarrival(lambda);
    std::exponential_distribution<double> size(1.0 / mean_size);
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        double tau = interarrival(rng);
        double s = size(rng);
        if (tau < s / r) ++hits;
    }
    return hits;
}

} // namespace

TailEstimate mm1_tail_estimate(double lambda, double mean_size_bytes,
                               double capacity_Bps, double threshold_bytes,
                               std::uint64_t samples, std::uint64_t seed,
                               int chunks) {
    if (lambda * mean_size_bytes >= capacity_Bps)
        throw std::invalid_argument("mm1_tail_estimate: lambda >= mu, no steady state");
    if (chunks < 1) chunks = 1;
    std::uint64_t per = samples / chunks;
    if (per == 0) { per = samples; chunks = 1; }
    std::vector<std::uint64_t> hits(chunks, 0);
#pragma omp parallel for schedule(dynamic)
    for (int c = 0; c < chunks; ++c) {
        hits[c] = mm1_chunk(lambda, mean_size_bytes, capacity_Bps,
                            threshold_bytes, per, derive_seed(seed, 0x6d6d31u, c));
    }
    return from_replications(hits, per);
}

TailEstimate mm1_tail_estimate_serial(double lambda, double mean_size_bytes,
                                      double capacity_Bps,
                                      double threshold_bytes,
                                      std::uint64_t samples,
                                      std::uint64_t seed, int chunks) {
    if (lambda * mean_size_bytes >= capacity_Bps)
        throw std::invalid_argument("mm1_tail_estimate: lambda >= mu, no steady state");
    if (chunks < 1) chunks = 1;
    std::uint64_t per = samples / chunks;
    if (per == 0) { per = samples; chunks = 1; }
    std::vector<std::uint64_t> hits(chunks, 0);
    for (int c = 0; c < chunks; ++c) {
        hits[c] = mm1_chunk(lambda, mean_size_bytes, capacity_Bps,
                            threshold_bytes, per, derive_seed(seed, 0x6d6d31u, c));
    }
    return from_replications(hits, per);
}

TailEstimate rate_decrease_estimate(double mean_size_bytes,
                                    double growth_rate_Bps, double lambda,
                                    std::uint64_t samples, std::uint64_t seed,
                                    int chunks) {
    if (chunks < 1) chunks = 1;
    std::uint64_t per = samples / chunks;
    if (per == 0) { per = samples; chunks = 1; }
    std::vector<std::uint64_t> hits(chunks, 0);
#pragma omp parallel for schedule(dynamic)
    for (int c = 0; c < chunks; ++c) {
        hits[c] = pair_chunk(mean_size_bytes, growth_rate_Bps, lambda, per,
                             derive_seed(seed, 0x747153u, c));
    }
    std::uint64_t total = 0;
    for (auto h : hits) total += h;
    return wilson(total, per * static_cast<std::uint64_t>(chunks));
}

} // namespace dcbsim::analytics
