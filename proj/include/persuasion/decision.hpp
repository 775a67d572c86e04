#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "persuasion/belief.hpp"

namespace persuasion {

// Ties in the receiver's expected utility closer than this are broken in the
// sender's favor. Concavification optima sit exactly on indifference
// boundaries, so the tie rule must fire reliably under floating-point noise.
inline constexpr double kIndifferenceTolerance = 1e-9;

/// Finite action set with utility matrices u(state, action) for the receiver
/// and v(state, action) for the sender.
struct FiniteActions {
    std::vector<std::string> actions;
    std::vector<std::vector<double>> receiver_u; // [state][action]
    std::vector<std::vector<double>> sender_v;   // [state][action]

    bool operator==(const FiniteActions&) const = default;
};

/// Real-valued action, receiver loss -(a - w)^2, sender loss -(a - (w + b))^2.
/// The receiver's best response is the posterior mean of the state values.
struct QuadraticCs {
    std::vector<double> state_values;
    double sender_bias_b = 0.0;

    bool operator==(const QuadraticCs&) const = default;
};

/// States are points in R^k, the receiver plays the posterior mean and the
/// sender's payoff is linear in that action: v(a) = beta . a.
struct MeanActionLinear {
    std::vector<std::vector<double>> state_vectors; // [state][k]
    std::vector<double> sender_beta;

    bool operator==(const MeanActionLinear&) const = default;
};

using ActionModel = std::variant<FiniteActions, QuadraticCs, MeanActionLinear>;

/// States, full-support prior and the action model tying utilities together.
struct DecisionProblem {
    std::vector<std::string> state_labels;
    Belief prior;
    ActionModel action_model;

    std::size_t n_states() const { return state_labels.size(); }

    bool operator==(const DecisionProblem&) const = default;
};

/// Validates dimensions and the full-support prior; throws ValidationError.
DecisionProblem make_decision_problem(std::vector<std::string> state_labels, Belief prior,
                                      ActionModel action_model);

/// What the receiver plays: an index into FiniteActions::actions, the scalar
/// posterior mean (QuadraticCs), or the vector posterior mean (MeanActionLinear).
using Action = std::variant<std::size_t, double, std::vector<double>>;

/// The receiver's optimal action at belief mu. Finite ties within 1e-9 are
/// broken toward the sender's expected payoff, then toward the lowest index,
/// so the result is a deterministic function of (problem, mu).
Action best_response(const DecisionProblem& problem, const Belief& mu);

/// Sender's expected payoff E_{w~mu}[v(w, a)] at a fixed action.
double sender_value(const DecisionProblem& problem, const Belief& mu, const Action& action);

/// Receiver's expected payoff E_{w~mu}[u(w, a)] at a fixed action.
double receiver_value(const DecisionProblem& problem, const Belief& mu, const Action& action);

/// Sender's payoff when sender and receiver both hold mu.
double v_hat(const DecisionProblem& problem, const Belief& mu);

/// Sender's payoff when the sender holds the Bayesian mu and the receiver
/// acts at the distorted belief alpha*prior + (1-alpha)*mu.
double v_hat_alpha(const DecisionProblem& problem, const Belief& mu, const BiasParam& alpha);

/// Expected sender payoff under full revelation to an unbiased receiver:
/// sum over states of prior(w) * max_a v(w, a). Unbounded for
/// MeanActionLinear, which throws PreconditionError.
double full_information_payoff(const DecisionProblem& problem);

/// True when the sender's utility does not depend on the state (within 1e-12
/// for finite matrices). MeanActionLinear is transparent by construction,
/// QuadraticCs never is.
bool transparent_motives(const DecisionProblem& problem);

struct GainCondition {
    bool holds = false;
    std::optional<std::size_t> witness_state;
};

/// Common-preference sufficient condition for a sequential gain: some state
/// whose optimal actions are never optimal anywhere on a grid of the feasible
/// set F(prior, alpha). Requires a FiniteActions problem with u == v.
GainCondition common_preference_gain_condition(const DecisionProblem& problem,
                                               const BiasParam& alpha,
                                               int grid_resolution = 200);

} // namespace persuasion
