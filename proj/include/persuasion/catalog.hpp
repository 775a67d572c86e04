#pragma once

#include "persuasion/decision.hpp"
#include "persuasion/strategy.hpp"

namespace persuasion {

/// Two states {innocent, guilty} with prior 0.3 on guilty; the receiver
/// matches the state, the sender wants conviction regardless.
DecisionProblem prosecutor_problem();

/// Two states {low, high} with a uniform prior; the receiver plays the
/// posterior mean, the sender's payoff is the action itself (beta = 1).
DecisionProblem linear_sender_problem();

/// Quadratic-loss pair on states {0, 1} with uniform prior and sender bias b.
DecisionProblem quadratic_pair_problem(double sender_bias_b = 0.1);

/// Common-preference matching: both agents get 1 when the action matches the
/// state, uniform prior over two states.
DecisionProblem matching_problem();

/// Symmetric binary experiment: the signal matches the state with
/// probability beta. Signals "x0", "x1".
Experiment symmetric_binary_experiment(double beta);

/// The two-period strategy releasing the same symmetric experiment twice,
/// regardless of history.
StrategyNode two_period_symmetric_strategy(double beta);

} // namespace persuasion
