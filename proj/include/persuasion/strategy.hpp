#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "persuasion/belief.hpp"
#include "persuasion/decision.hpp"
#include "persuasion/procedure.hpp"

namespace persuasion {

// Branches whose cumulative probability (under the sender's belief) falls
// below this are pruned: conditioning on measure-zero histories is undefined
// and their payoff contribution is far below reporting precision.
inline constexpr double kBranchPruneThreshold = 1e-15;

/// A finite sequential persuasion strategy: either STOP, or an experiment
/// together with one continuation subtree per signal (in signal order).
class StrategyNode {
  public:
    static StrategyNode stop();
    static StrategyNode continue_with(Experiment experiment, std::vector<StrategyNode> children);

    bool is_stop() const { return !experiment_.has_value(); }
    const Experiment& experiment() const { return *experiment_; }
    const StrategyNode& child(std::size_t signal) const { return children_[signal]; }
    const std::vector<StrategyNode>& children() const { return children_; }

    std::size_t depth() const;
    std::size_t leaf_count() const;

    bool operator==(const StrategyNode& other) const {
        return experiment_ == other.experiment_ && children_ == other.children_;
    }

  private:
    StrategyNode() = default;
    std::optional<Experiment> experiment_;
    std::vector<StrategyNode> children_;
};

/// Whose belief the sender plans with: their own Bayesian posterior, or the
/// receiver's biased belief when both agents are distorted the same way.
/// The biased-sender mode requires the PbpN or PbpO procedure.
enum class SenderModel { Bayesian, BiasedSameAsReceiver };

/// Guard rails for exact enumeration; the caps count the strategy tree's
/// structural depth and leaves, before probability pruning.
struct EnumerationLimits {
    std::size_t max_depth = 32;
    std::size_t max_leaves = 1'000'000;
};

/// One terminal history of a strategy: its realized signal sequence, its
/// probability under the sender's belief model, and both agents' final beliefs.
struct TerminalOutcome {
    std::vector<std::string> history;
    double probability = 0.0;
    Belief sender_belief;
    Belief receiver_belief;
};

/// Depth-first exact enumeration of every positive-probability terminal
/// history. The receiver's belief evolves by the given procedure; the
/// sender's by their own model. Branch probabilities always come from the
/// sender's current belief.
std::vector<TerminalOutcome> enumerate_outcomes(const StrategyNode& strategy,
                                                const DecisionProblem& problem,
                                                const BiasParam& alpha,
                                                UpdateProcedure procedure, SenderModel sender,
                                                const EnumerationLimits& limits = {});

/// Sum over terminal outcomes of probability times the sender's expected
/// payoff when the receiver best-responds to their own final belief.
/// Accumulated in enumeration order, so bit-reproducible across runs.
double sender_expected_payoff(const StrategyNode& strategy, const DecisionProblem& problem,
                              const BiasParam& alpha, UpdateProcedure procedure,
                              SenderModel sender, const EnumerationLimits& limits = {});

/// The single experiment inducing the same distribution over terminal
/// histories: one signal per terminal history, kernel entries the product of
/// per-period conditional probabilities along the path. Histories impossible
/// in every state are dropped. n_states fixes the kernel height (a bare STOP
/// carries no state information of its own).
Experiment one_shot_equivalent(const StrategyNode& strategy, std::size_t n_states,
                               const EnumerationLimits& limits = {});

/// Merges a belief-weighted list by coordinatewise proximity: entries within
/// tol of a cluster are pooled (probability-weighted mean representative).
/// Output sorted lexicographically by belief.
std::vector<std::pair<Belief, double>> merge_belief_distribution(
    std::vector<std::pair<Belief, double>> entries, double tol = 1e-9);

/// The sender-probability-weighted distribution of the receiver's terminal
/// beliefs, merged within 1e-9.
std::vector<std::pair<Belief, double>> receiver_posterior_distribution(
    const StrategyNode& strategy, const DecisionProblem& problem, const BiasParam& alpha,
    UpdateProcedure procedure, SenderModel sender = SenderModel::Bayesian,
    const EnumerationLimits& limits = {});

/// Sender's payoff from releasing a single experiment to a receiver who
/// distorts the resulting posterior once: sum over signals of marginal
/// probability times v_hat_alpha at the Bayesian posterior.
double one_shot_payoff(const DecisionProblem& problem, const Experiment& exp,
                       const BiasParam& alpha);

} // namespace persuasion
