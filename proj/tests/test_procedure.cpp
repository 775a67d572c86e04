#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "generators.hpp"
#include "persuasion/catalog.hpp"
#include "persuasion/procedure.hpp"

using namespace persuasion;
using persuasion::testing::Rng;

namespace {

ProcedureState run_signals(UpdateProcedure procedure, double alpha, const Belief& prior,
                           const Experiment& exp, const std::vector<std::string>& signals) {
    ProcedureState state = make_procedure_state(procedure, BiasParam(alpha), prior);
    for (const std::string& signal : signals) state = step(state, exp, signal);
    return state;
}

} // namespace

TEST_CASE("new-prior anchoring after two confirming signals") {
    const Experiment exp = symmetric_binary_experiment(0.75);
    const ProcedureState state =
        run_signals(UpdateProcedure::PbpN, 0.5, Belief::uniform(2), exp, {"x1", "x1"});
    // 0.5*0.625 + 0.5*(0.625*0.75)/(0.625*0.75 + 0.375*0.25) = 35/48.
    CHECK(state.current_biased[1] == doctest::Approx(35.0 / 48.0).epsilon(1e-12));
    CHECK(finalize(state)[1] == doctest::Approx(35.0 / 48.0).epsilon(1e-12));
}

TEST_CASE("new-prior anchoring is order dependent on mixed signals") {
    const Experiment exp = symmetric_binary_experiment(0.75);
    const Belief up_down =
        finalize(run_signals(UpdateProcedure::PbpN, 0.5, Belief::uniform(2), exp, {"x1", "x0"}));
    const Belief down_up =
        finalize(run_signals(UpdateProcedure::PbpN, 0.5, Belief::uniform(2), exp, {"x0", "x1"}));
    CHECK(up_down[1] == doctest::Approx(55.0 / 112.0).epsilon(1e-12));
    CHECK(down_up[1] == doctest::Approx(57.0 / 112.0).epsilon(1e-12));
    CHECK(std::abs(up_down[1] - down_up[1]) > 1e-3);
}

TEST_CASE("original-prior anchoring pulls the posterior back") {
    const Experiment exp = symmetric_binary_experiment(0.75);
    const ProcedureState state =
        run_signals(UpdateProcedure::PbpO, 0.5, Belief::uniform(2), exp, {"x1", "x1"});
    // 0.5*0.5 + 0.5*(0.625*0.75)/(0.625*0.75 + 0.375*0.25) = 2/3.
    CHECK(state.current_biased[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("last-period bias defers the distortion to finalize") {
    const Experiment exp = symmetric_binary_experiment(0.75);
    ProcedureState state =
        make_procedure_state(UpdateProcedure::Lp, BiasParam(0.5), Belief::uniform(2));
    state = step(state, exp, "x1");
    // Mid-process the held belief is still the prior.
    CHECK(state.current_biased[1] == doctest::Approx(0.5).epsilon(1e-12));
    state = step(state, exp, "x1");
    CHECK(state.current_biased[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(state.current_bayes[1] == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(finalize(state)[1] == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("plain bayes procedure") {
    const Experiment exp = symmetric_binary_experiment(0.75);
    const ProcedureState state =
        run_signals(UpdateProcedure::Bayes, 0.5, Belief::uniform(2), exp, {"x1", "x1"});
    CHECK(state.current_biased[1] == doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("no signals leaves the prior") {
    const ProcedureState state =
        make_procedure_state(UpdateProcedure::PbpN, BiasParam(0.5), Belief({0.3, 0.7}));
    CHECK(approx_equal(finalize(state), Belief({0.3, 0.7})));
}

TEST_CASE("zero-likelihood signals are rejected") {
    const Experiment reveal = Experiment::fully_revealing(2);
    ProcedureState state =
        make_procedure_state(UpdateProcedure::Bayes, BiasParam(0.0), Belief::uniform(2));
    state = step(state, reveal, "x0");
    CHECK_THROWS_AS(step(state, reveal, "x1"), ZeroLikelihoodSignal);
}

TEST_CASE("property: all procedures collapse at alpha = 0") {
    Rng rng(41);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t n = 2 + trial % 3;
        const Belief prior = testing::random_interior_belief(rng, n);
        const Experiment exp = testing::random_experiment(rng, n, 2);
        std::vector<std::string> signals;
        for (int k = 0; k < 3; ++k) {
            signals.push_back(exp.signal(rng() % exp.n_signals()));
        }
        const Belief bayes =
            finalize(run_signals(UpdateProcedure::Bayes, 0.0, prior, exp, signals));
        for (UpdateProcedure p :
             {UpdateProcedure::PbpN, UpdateProcedure::PbpO, UpdateProcedure::Lp}) {
            REQUIRE(approx_equal(finalize(run_signals(p, 0.0, prior, exp, signals)), bayes,
                                 1e-12));
        }
    }
}

TEST_CASE("property: last-period bias is order invariant") {
    Rng rng(43);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t n = 2 + trial % 3;
        const Belief prior = testing::random_interior_belief(rng, n);
        const Experiment exp = testing::random_experiment(rng, n, 3);
        std::vector<std::string> signals;
        for (int k = 0; k < 4; ++k) signals.push_back(exp.signal(rng() % 3));
        std::vector<std::string> shuffled = signals;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const double alpha = 0.9 * std::generate_canonical<double, 53>(rng);
        const Belief a = finalize(run_signals(UpdateProcedure::Lp, alpha, prior, exp, signals));
        const Belief b = finalize(run_signals(UpdateProcedure::Lp, alpha, prior, exp, shuffled));
        REQUIRE(approx_equal(a, b, 1e-12));
    }
}

TEST_CASE("property: period-by-period beliefs stay interior") {
    Rng rng(47);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t n = 2 + trial % 3;
        const Belief prior = testing::random_interior_belief(rng, n);
        const double alpha = 0.05 + 0.9 * std::generate_canonical<double, 53>(rng);
        const Experiment exp = testing::random_experiment(rng, n, 2);
        for (UpdateProcedure p : {UpdateProcedure::PbpN, UpdateProcedure::PbpO}) {
            ProcedureState state = make_procedure_state(p, BiasParam(alpha), prior);
            for (int k = 0; k < 5; ++k) {
                state = step(state, exp, exp.signal(rng() % exp.n_signals()));
                REQUIRE(state.current_biased.full_support());
            }
        }
    }
}

TEST_CASE("property: confinement under original-prior anchoring") {
    Rng rng(53);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t n = 2 + trial % 3;
        const Belief prior = testing::random_interior_belief(rng, n);
        const BiasParam alpha(0.9 * std::generate_canonical<double, 53>(rng));
        const Experiment exp = testing::random_experiment(rng, n, 2);
        ProcedureState state = make_procedure_state(UpdateProcedure::PbpO, alpha, prior);
        for (int k = 0; k < 6; ++k) {
            state = step(state, exp, exp.signal(rng() % exp.n_signals()));
            REQUIRE(is_feasible_biased_posterior(alpha, prior, finalize(state)));
        }
    }
}
