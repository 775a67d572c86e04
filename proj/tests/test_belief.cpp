#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "persuasion/belief.hpp"
#include "persuasion/catalog.hpp"

using namespace persuasion;
using persuasion::testing::Rng;

TEST_CASE("belief construction normalizes and validates") {
    const Belief drifted({0.25, 0.75 + 3e-10});
    CHECK(std::abs(drifted[0] + drifted[1] - 1.0) <= 1e-15);
    CHECK_THROWS_AS(Belief({0.3, 0.8}), ValidationError);
    CHECK_THROWS_AS(Belief({-0.1, 1.1}), ValidationError);
    CHECK_THROWS_AS(Belief(std::vector<double>{}), ValidationError);
    CHECK(Belief::vertex(3, 1)[1] == 1.0);
    CHECK(Belief::uniform(4)[2] == 0.25);
}

TEST_CASE("experiment rows must be stochastic") {
    CHECK_THROWS_AS(Experiment({"a", "b"}, {{0.6, 0.6}, {0.5, 0.5}}), ValidationError);
    CHECK_THROWS_AS(Experiment({"a", "a"}, {{0.5, 0.5}}), ValidationError);
    CHECK_THROWS_AS(Experiment({"a", "b"}, {{0.5, 0.4, 0.1}}), DimensionMismatch);
    const Experiment reveal = Experiment::fully_revealing(2);
    CHECK(reveal.prob(0, 0) == 1.0);
    CHECK(reveal.prob(0, 1) == 0.0);
}

TEST_CASE("bias parameter domain") {
    CHECK_THROWS_AS(BiasParam(1.0), ValidationError);
    CHECK_THROWS_AS(BiasParam(-0.1), ValidationError);
    CHECK(BiasParam(0.0).value() == 0.0);
}

TEST_CASE("bayes posterior on the symmetric experiment") {
    const Experiment exp = symmetric_binary_experiment(0.75);
    const Belief flat = Belief::uniform(2);
    const Belief up = bayes_posterior(flat, exp, "x1");
    CHECK(up[1] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(up[0] == doctest::Approx(0.25).epsilon(1e-12));

    // Hand Bayes: 0.625 * 0.75 / (0.625 * 0.75 + 0.375 * 0.25) = 5/6.
    const Belief tilted = bayes_posterior(Belief({0.375, 0.625}), exp, "x1");
    CHECK(tilted[1] == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("bayes posterior edge cases") {
    const Experiment reveal = Experiment::fully_revealing(2);
    const Belief posterior = bayes_posterior(Belief({0.3, 0.7}), reveal, "x1");
    CHECK(posterior[0] == 0.0);
    CHECK(posterior[1] == 1.0);

    // Signal that can never realize under this prior.
    const Experiment lopsided({"a", "b"}, {{1.0, 0.0}, {1.0, 0.0}});
    CHECK_THROWS_AS(bayes_posterior(Belief::uniform(2), lopsided, "b"), ZeroLikelihoodSignal);
    CHECK_THROWS_AS(bayes_posterior(Belief::uniform(3), lopsided, "a"), DimensionMismatch);
}

TEST_CASE("signal marginals") {
    const Experiment exp = symmetric_binary_experiment(0.75);
    const auto m = signal_marginal(Belief::uniform(2), exp);
    CHECK(m[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(m[1] == doctest::Approx(0.5).epsilon(1e-12));

    const Experiment skew({"a", "b"}, {{0.2, 0.8}, {0.9, 0.1}});
    const auto degenerate = signal_marginal(Belief({1.0, 0.0}), skew);
    CHECK(degenerate[0] == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(degenerate[1] == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("bias application and inversion") {
    const BiasParam half(0.5);
    const Belief anchor = Belief::uniform(2);
    const Belief bayes({0.25, 0.75});

    const Belief biased = apply_bias(half, anchor, bayes);
    CHECK(biased[0] == doctest::Approx(0.375).epsilon(1e-14));
    CHECK(biased[1] == doctest::Approx(0.625).epsilon(1e-14));

    // alpha = 0 is the identity; a fixed point stays put.
    CHECK(approx_equal(apply_bias(BiasParam(0.0), anchor, bayes), bayes));
    CHECK(approx_equal(apply_bias(half, anchor, anchor), anchor));

    const Belief recovered = invert_bias(half, anchor, biased);
    CHECK(approx_equal(recovered, bayes, 1e-14));

    const Belief boundary = invert_bias(half, anchor, Belief({0.25, 0.75}));
    CHECK(boundary[0] == 0.0);
    CHECK(boundary[1] == 1.0);

    CHECK_THROWS_AS(invert_bias(half, anchor, Belief({0.2, 0.8})), InfeasibleBiasedPosterior);
}

TEST_CASE("feasible set membership") {
    const BiasParam half(0.5);
    const Belief flat = Belief::uniform(2);
    CHECK(is_feasible_biased_posterior(half, flat, Belief({0.25, 0.75})));
    CHECK_FALSE(is_feasible_biased_posterior(half, flat, Belief({0.2, 0.8})));

    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        const Belief prior = testing::random_belief(rng, 3);
        const Belief candidate = testing::random_belief(rng, 3);
        CHECK(is_feasible_biased_posterior(BiasParam(0.0), prior, candidate));
    }
}

TEST_CASE("experiment from posteriors reproduces the canonical kernels") {
    const Belief flat = Belief::uniform(2);

    // Targets listed high-state-first, so signal s0 plays the role of x1.
    const Experiment sym = experiment_from_posteriors(
        flat, {{Belief({0.25, 0.75}), 0.5}, {Belief({0.75, 0.25}), 0.5}});
    CHECK(sym.prob(1, 0) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(sym.prob(0, 0) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(sym.prob(1, 1) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(sym.prob(0, 1) == doctest::Approx(0.75).epsilon(1e-12));

    const Experiment null_exp =
        experiment_from_posteriors(Belief({0.3, 0.7}), {{Belief({0.3, 0.7}), 1.0}});
    CHECK(null_exp.n_signals() == 1);
    CHECK(null_exp.prob(0, 0) == doctest::Approx(1.0).epsilon(1e-12));

    const Experiment reveal = experiment_from_posteriors(
        flat, {{Belief({1.0, 0.0}), 0.5}, {Belief({0.0, 1.0}), 0.5}});
    CHECK(reveal.prob(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(reveal.prob(1, 1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("experiment from posteriors rejects bad targets") {
    const Belief flat = Belief::uniform(2);
    CHECK_THROWS_AS(
        experiment_from_posteriors(flat, {{Belief({0.2, 0.8}), 0.5}, {Belief({0.6, 0.4}), 0.5}}),
        NotBayesPlausible);
    CHECK_THROWS_AS(experiment_from_posteriors(Belief({1.0, 0.0}), {{Belief({1.0, 0.0}), 1.0}}),
                    ZeroPriorState);
    // Zero-probability targets are dropped from the realization.
    const Experiment dropped = experiment_from_posteriors(
        flat, {{Belief({0.9, 0.1}), 0.0}, {Belief({0.5, 0.5}), 1.0}});
    CHECK(dropped.n_signals() == 1);
}

TEST_CASE("property: one-step biased posteriors form a martingale inside F") {
    Rng rng(2026);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t n = 2 + trial % 3;
        const Belief prior = testing::random_interior_belief(rng, n);
        const BiasParam alpha(0.97 * std::generate_canonical<double, 53>(rng));
        const Experiment exp = testing::random_experiment(rng, n, 2 + trial % 2);
        const auto marginal = signal_marginal(prior, exp);
        std::vector<double> mean(n, 0.0);
        for (std::size_t x = 0; x < exp.n_signals(); ++x) {
            if (marginal[x] <= 0.0) continue;
            const Belief biased = apply_bias(alpha, prior, bayes_posterior(prior, exp, x));
            REQUIRE(is_feasible_biased_posterior(alpha, prior, biased));
            for (std::size_t s = 0; s < n; ++s) mean[s] += marginal[x] * biased[s];
        }
        for (std::size_t s = 0; s < n; ++s) {
            REQUIRE(std::abs(mean[s] - prior[s]) <= 1e-9);
        }
    }
}

TEST_CASE("property: invert_bias is a left inverse of apply_bias") {
    Rng rng(11);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t n = 2 + trial % 4;
        const Belief anchor = testing::random_belief(rng, n);
        const Belief bayes = testing::random_belief(rng, n);
        const BiasParam alpha(0.95 * std::generate_canonical<double, 53>(rng));
        const Belief round_trip = invert_bias(alpha, anchor, apply_bias(alpha, anchor, bayes));
        REQUIRE(approx_equal(round_trip, bayes, 1e-12));
    }
}

TEST_CASE("property: experiment_from_posteriors round-trips its targets") {
    Rng rng(13);
    int tested = 0;
    for (int trial = 0; trial < 800; ++trial) {
        const std::size_t n = 2 + trial % 3;
        const Belief prior = testing::random_interior_belief(rng, n);
        const double w = 0.2 + 0.6 * std::generate_canonical<double, 53>(rng);
        const Belief raw = testing::random_belief(rng, n);
        // Pull the left point halfway toward the prior so the complement has
        // a chance of staying inside the simplex.
        std::vector<double> left(n), right(n);
        bool valid = true;
        for (std::size_t s = 0; s < n; ++s) {
            left[s] = prior[s] + 0.5 * (raw[s] - prior[s]);
            right[s] = (prior[s] - w * left[s]) / (1.0 - w);
            if (right[s] < 0.0) valid = false;
        }
        if (!valid) continue;
        ++tested;
        const Belief mu_left(left);
        const Belief mu_right(right);
        const Experiment exp =
            experiment_from_posteriors(prior, {{mu_left, w}, {mu_right, 1.0 - w}});
        const auto marginal = signal_marginal(prior, exp);
        REQUIRE(marginal[0] == doctest::Approx(w).epsilon(1e-9));
        REQUIRE(approx_equal(bayes_posterior(prior, exp, std::size_t{0}), mu_left, 1e-9));
        REQUIRE(approx_equal(bayes_posterior(prior, exp, std::size_t{1}), mu_right, 1e-9));
    }
    CHECK(tested > 300);
}
