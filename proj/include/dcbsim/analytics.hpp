#ifndef DCBSIM_ANALYTICS_HPP
#define DCBSIM_ANALYTICS_HPP

#include <cstdint>
#include <stdexcept>

namespace dcbsim::analytics {

// Inputs for the closed-form queueing expressions. Sizes and thresholds in
// bytes, rho = lambda/mu in (0,1), n = ingress port count.
struct ModelParams {
    double threshold_bytes = 25057;  // K
    double headroom_bytes = 24095;   // K0
    double mean_size_bytes = 2048;   // S
    double rho = 0.2;
    int ports = 32;                  // n
};

// Probability that an arriving flow pushes the ingress backlog past K:
// exp(-(K/S)(1-rho)).
double pfc_trigger_probability(double threshold_bytes, double mean_size_bytes,
                               double rho);

// Probability of the backlog exceeding the level that pauses j ingress
// ports at once: the threshold grows to n^(j-1)*K + sum_{i=1}^{j-1}
// n^(i-1)*(K+K0). Reduces exactly to the single-port form at j = 1.
double congestion_tree_probability(const ModelParams& p, int hops);

// The backlog level used by congestion_tree_probability, in bytes.
double congestion_tree_threshold(const ModelParams& p, int hops);

enum class InterarrivalDist { Exponential, Deterministic };

// Probability that the transient queue growth rate exceeds r: P{tau < S/r}
// with exponential flow sizes (mean E[S]) and the given interarrival
// distribution at rate lambda. Exponential interarrivals give
// lambda*E[S] / (r + lambda*E[S]); deterministic interarrivals give
// exp(-r / (lambda*E[S])), strictly smaller — burstier arrival processes
// trigger rate decreases more often.
double rate_decrease_probability(double mean_size_bytes, double growth_rate_Bps,
                                 double lambda, InterarrivalDist dist);

// The exponential/exponential case spelled out for cross-checks.
double rate_decrease_probability_exact(double mean_size_bytes,
                                       double growth_rate_Bps, double lambda);

struct TailEstimate {
    double p = 0;          // point estimate
    double ci_lo = 0;      // 95% interval (replication means, or Wilson
    double ci_hi = 0;      // when samples are independent)
    std::uint64_t hits = 0;
    std::uint64_t samples = 0;

    bool covers(double q) const { return ci_lo <= q && q <= ci_hi; }
};

// Monte-Carlo M/M/1 oracle: Poisson flow arrivals at `lambda` (1/s),
// exponential sizes with mean `mean_size_bytes`, service at `capacity_Bps`
// bytes/s. Counts arrivals whose admission pushes the workload backlog past
// `threshold_bytes` (the arriving flow's own bytes included, matching the
// occupancy-after-enqueue trigger rule). Requires lambda < mu.
//
// The sampling splits into `chunks` independent replications with derived
// seeds; queue arrivals are autocorrelated, so the confidence interval is
// built from the spread of the chunk means. The parallel kernel distributes
// chunks over OpenMP threads and returns results bit-identical to the
// serial reference below, for any thread count.
TailEstimate mm1_tail_estimate(double lambda, double mean_size_bytes,
                               double capacity_Bps, double threshold_bytes,
                               std::uint64_t samples, std::uint64_t seed,
                               int chunks = 64);

// Plain-loop reference implementation of the same estimator, kept for
// testing the parallel kernel (identical output, including the interval).
TailEstimate mm1_tail_estimate_serial(double lambda, double mean_size_bytes,
                                      double capacity_Bps,
                                      double threshold_bytes,
                                      std::uint64_t samples,
                                      std::uint64_t seed, int chunks = 64);

// Monte-Carlo check of the rate-decrease probability: samples (tau, S)
// pairs and counts tau < S/r. Chunked and OpenMP-parallel like the M/M/1
// kernel.
TailEstimate rate_decrease_estimate(double mean_size_bytes,
                                    double growth_rate_Bps, double lambda,
                                    std::uint64_t samples, std::uint64_t seed,
                                    int chunks = 64);

} // namespace dcbsim::analytics

#endif
