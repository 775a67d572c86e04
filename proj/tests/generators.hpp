// Deterministic random-instance generators shared by the property-style
// suites. Everything is seeded explicitly so failures replay exactly.
#pragma once

#include <random>
#include <vector>

#include "persuasion/belief.hpp"
#include "persuasion/decision.hpp"
#include "persuasion/strategy.hpp"

namespace persuasion::testing {

using Rng = std::mt19937_64;

inline Belief random_belief(Rng& rng, std::size_t n_states, double floor = 0.0) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> w(n_states);
    double sum = 0.0;
    for (double& x : w) {
        x = floor + unit(rng);
        sum += x;
    }
    for (double& x : w) x /= sum;
    return Belief(std::move(w));
}

inline Belief random_interior_belief(Rng& rng, std::size_t n_states) {
    return random_belief(rng, n_states, 0.05);
}

inline Experiment random_experiment(Rng& rng, std::size_t n_states, std::size_t n_signals) {
    std::uniform_real_distribution<double> unit(0.01, 1.0);
    std::vector<std::string> signals;
    for (std::size_t x = 0; x < n_signals; ++x) signals.push_back("x" + std::to_string(x));
    std::vector<std::vector<double>> kernel(n_states, std::vector<double>(n_signals));
    for (auto& row : kernel) {
        double sum = 0.0;
        for (double& p : row) {
            p = unit(rng);
            sum += p;
        }
        for (double& p : row) p /= sum;
    }
    return Experiment(std::move(signals), std::move(kernel));
}

inline DecisionProblem random_finite_problem(Rng& rng, std::size_t n_states,
                                             std::size_t n_actions) {
    std::uniform_real_distribution<double> util(-1.0, 1.0);
    FiniteActions model;
    for (std::size_t a = 0; a < n_actions; ++a) model.actions.push_back("a" + std::to_string(a));
    model.receiver_u.assign(n_states, std::vector<double>(n_actions));
    model.sender_v.assign(n_states, std::vector<double>(n_actions));
    for (std::size_t s = 0; s < n_states; ++s) {
        for (std::size_t a = 0; a < n_actions; ++a) {
            model.receiver_u[s][a] = util(rng);
            model.sender_v[s][a] = util(rng);
        }
    }
    std::vector<std::string> labels;
    for (std::size_t s = 0; s < n_states; ++s) labels.push_back("w" + std::to_string(s));
    return make_decision_problem(std::move(labels), random_interior_belief(rng, n_states),
                                 std::move(model));
}

inline StrategyNode random_strategy(Rng& rng, std::size_t n_states, std::size_t max_depth) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (max_depth == 0 || unit(rng) < 0.3) return StrategyNode::stop();
    std::uniform_int_distribution<std::size_t> signal_count(2, 3);
    Experiment exp = random_experiment(rng, n_states, signal_count(rng));
    std::vector<StrategyNode> children;
    for (std::size_t x = 0; x < exp.n_signals(); ++x) {
        children.push_back(random_strategy(rng, n_states, max_depth - 1));
    }
    return StrategyNode::continue_with(std::move(exp), std::move(children));
}

} // namespace persuasion::testing
