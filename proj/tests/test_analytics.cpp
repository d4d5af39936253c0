#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include <omp.h>

#include "dcbsim/analytics.hpp"

using namespace dcbsim::analytics;

// 24.47KB threshold, 2KB mean size as bytes (1KB == 1024B).
constexpr double K_REF = 25057.0;
constexpr double S_REF = 2048.0;

TEST_CASE("pause-trigger tail at the reference operating point") {
    // Frozen: exp(-(25057/2048) * 0.8) = 5.612e-5, i.e. 5.61e-5 to three
    // significant digits.
    const double p = pfc_trigger_probability(K_REF, S_REF, 0.2);
    CHECK(p == doctest::Approx(5.612e-5).epsilon(1e-3));
    CHECK(p >= 5.60e-5);
    CHECK(p <= 5.62e-5);

    // Frozen: exp(-12) with K = 48KB, S = 2KB, rho = 0.5.
    CHECK(pfc_trigger_probability(49152, 2048, 0.5) ==
          doctest::Approx(6.14421e-6).epsilon(1e-4));

    CHECK_THROWS(pfc_trigger_probability(K_REF, S_REF, 0.0));
    CHECK_THROWS(pfc_trigger_probability(K_REF, S_REF, 1.0));
    CHECK_THROWS(pfc_trigger_probability(K_REF, -1.0, 0.2));
}

TEST_CASE("tail is monotone in threshold and load") {
    double prev = 1.0;
    for (double k = 1024; k <= 65536; k += 1024) {
        const double p = pfc_trigger_probability(k, S_REF, 0.3);
        CHECK(p < prev);
        prev = p;
    }
    prev = 0.0;
    for (double rho = 0.05; rho < 1.0; rho += 0.05) {
        const double p = pfc_trigger_probability(K_REF, S_REF, rho);
        CHECK(p > prev);
        prev = p;
    }
}

TEST_CASE("congestion-tree threshold arithmetic") {
    ModelParams mp;
    mp.threshold_bytes = K_REF;
    mp.headroom_bytes = 24095;
    mp.mean_size_bytes = S_REF;
    mp.rho = 0.2;
    mp.ports = 32;

    CHECK(congestion_tree_threshold(mp, 1) == doctest::Approx(K_REF));
    // Frozen: 32*25057 + (25057 + 24095) = 850976.
    CHECK(congestion_tree_threshold(mp, 2) == doctest::Approx(850976.0));
    // Frozen: 1024*25057 + 33*49152 = 27280384.
    CHECK(congestion_tree_threshold(mp, 3) == doctest::Approx(27280384.0));
    CHECK_THROWS(congestion_tree_threshold(mp, 0));
}

TEST_CASE("one-hop tree probability collapses to the single-queue tail") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> uk(2048, 262144);
    std::uniform_real_distribution<double> us(512, 8192);
    std::uniform_real_distribution<double> ur(0.05, 0.95);
    std::uniform_int_distribution<int> un(2, 64);
    for (int i = 0; i < 100; ++i) {
        ModelParams mp;
        mp.threshold_bytes = uk(rng);
        mp.mean_size_bytes = us(rng);
        mp.rho = ur(rng);
        mp.ports = un(rng);
        mp.headroom_bytes = uk(rng);
        const double one_hop = congestion_tree_probability(mp, 1);
        const double direct = pfc_trigger_probability(
            mp.threshold_bytes, mp.mean_size_bytes, mp.rho);
        CHECK(one_hop == doctest::Approx(direct).epsilon(1e-15));
    }
}

TEST_CASE("two-hop tree probability is astronomically small at fan-in 32") {
    ModelParams mp;
    mp.threshold_bytes = K_REF;
    mp.headroom_bytes = 24095;
    mp.mean_size_bytes = S_REF;
    mp.rho = 0.2;
    mp.ports = 32;
    const double p = congestion_tree_probability(mp, 2);
    CHECK(p < 1e-100);
    CHECK(p >= 0.0);
}

TEST_CASE("rate-decrease probability: closed forms") {
    // Frozen: lambda*S = 4.096e6 B/s against r = 2.5e7 B/s.
    const double exact = rate_decrease_probability_exact(2048, 2.5e7, 2000);
    CHECK(exact == doctest::Approx(4.096e6 / (2.5e7 + 4.096e6)));
    CHECK(rate_decrease_probability(2048, 2.5e7, 2000,
                                    InterarrivalDist::Exponential) ==
          doctest::Approx(exact));

    // Deterministic interarrivals: P{S > r/lambda} = exp(-r/(lambda*E[S])).
    const double det = rate_decrease_probability(2048, 2.5e7, 2000,
                                                 InterarrivalDist::Deterministic);
    CHECK(det == doctest::Approx(std::exp(-2.5e7 / 4.096e6)));

    // Burstier arrivals trigger decreases more often at equal rate.
    for (double r : {1e6, 1e7, 1e8})
        for (double l : {500.0, 2000.0, 8000.0})
            CHECK(rate_decrease_probability(2048, r, l,
                                            InterarrivalDist::Exponential) >
                  rate_decrease_probability(2048, r, l,
                                            InterarrivalDist::Deterministic));

    CHECK_THROWS(rate_decrease_probability(2048, 0, 100,
                                           InterarrivalDist::Exponential));
    CHECK_THROWS(rate_decrease_probability(2048, 1e7, -1,
                                           InterarrivalDist::Exponential));
}

TEST_CASE("rate-decrease probability is monotone over a 5x5x5 grid") {
    const double lambdas[] = {100, 500, 2000, 10000, 50000};
    const double sizes[] = {512, 1024, 2048, 8192, 65536};
    const double rates[] = {1e6, 1e7, 1e8, 1e9, 1e10};
    for (double s : sizes)
        for (double r : rates)
            for (int i = 1; i < 5; ++i)
                CHECK(rate_decrease_probability_exact(s, r, lambdas[i]) >
                      rate_decrease_probability_exact(s, r, lambdas[i - 1]));
    for (double l : lambdas)
        for (double r : rates)
            for (int i = 1; i < 5; ++i)
                CHECK(rate_decrease_probability_exact(sizes[i], r, l) >
                      rate_decrease_probability_exact(sizes[i - 1], r, l));
    for (double l : lambdas)
        for (double s : sizes)
            for (int i = 1; i < 5; ++i)
                CHECK(rate_decrease_probability_exact(s, rates[i], l) <
                      rate_decrease_probability_exact(s, rates[i - 1], l));
}

TEST_CASE("rate-decrease Monte-Carlo agrees with the exact form within 2 sigma") {
    const double S = 2048, r = 2.5e7, lambda = 2000;
    const double exact = rate_decrease_probability_exact(S, r, lambda);
    const std::uint64_t n = 1'000'000;
    const TailEstimate est = rate_decrease_estimate(S, r, lambda, n, 4242);
    const double sigma = std::sqrt(exact * (1.0 - exact) / n);
    CHECK(std::abs(est.p - exact) <= 2.0 * sigma);
    CHECK(est.covers(exact));
}

TEST_CASE("workload-tail Monte-Carlo covers the closed form") {
    // Parameter sets chosen so the closed-form tail spans [1e-3, 0.5];
    // derived from random (rho, target) pairs with K solved from the tail
    // formula. 95% intervals: allow one miss in six.
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> urho(0.2, 0.85);
    std::uniform_real_distribution<double> ulogp(std::log(1e-3), std::log(0.5));
    const double C = 1.25e9;
    int covered = 0;
    for (int i = 0; i < 6; ++i) {
        const double rho = urho(rng);
        const double target = std::exp(ulogp(rng));
        const double S = 2048;
        const double K = -S * std::log(target) / (1.0 - rho);
        const double lambda = rho * C / S;
        const double closed = pfc_trigger_probability(K, S, rho);
        const TailEstimate est =
            mm1_tail_estimate(lambda, S, C, K, 800'000, 1000 + i);
        if (est.covers(closed)) ++covered;
    }
    CHECK(covered >= 5);
}

TEST_CASE("parallel kernel is bit-identical to the serial reference") {
    const double S = 2048, C = 1.25e9, rho = 0.5;
    const double lambda = rho * C / S;
    const int max_threads = omp_get_max_threads();

    const TailEstimate ref =
        mm1_tail_estimate_serial(lambda, S, C, 20000, 320'000, 5, 16);
    omp_set_num_threads(1);
    const TailEstimate one =
        mm1_tail_estimate(lambda, S, C, 20000, 320'000, 5, 16);
    omp_set_num_threads(max_threads);
    const TailEstimate many =
        mm1_tail_estimate(lambda, S, C, 20000, 320'000, 5, 16);

    CHECK(ref.hits == one.hits);
    CHECK(ref.hits == many.hits);
    CHECK(ref.samples == many.samples);
    CHECK(ref.p == many.p);
    CHECK(ref.ci_lo == many.ci_lo);
    CHECK(ref.ci_hi == many.ci_hi);
}

TEST_CASE("serial reference estimator agrees with its own closed form") {
    const double S = 2048, C = 1.25e9, rho = 0.6;
    const double lambda = rho * C / S;
    const double K = 25057;
    const double closed = pfc_trigger_probability(K, S, rho);
    const TailEstimate est =
        mm1_tail_estimate_serial(lambda, S, C, K, 640'000, 31);
    CHECK(est.covers(closed));
    CHECK(est.samples == 640'000);
}

TEST_CASE("estimator rejects an unstable queue") {
    CHECK_THROWS(mm1_tail_estimate(1e9, 2048, 1e9, 10000, 1000, 1));
    CHECK_THROWS(mm1_tail_estimate_serial(1e9, 2048, 1e9, 10000, 1000, 1));
}

TEST_CASE("Wilson interval basics") {
    const TailEstimate none = rate_decrease_estimate(1, 1e12, 1e-9, 1000, 7);
    CHECK(none.hits == 0);
    CHECK(none.ci_lo == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(none.ci_hi > 0.0);
    CHECK(none.ci_hi < 0.01);
}
