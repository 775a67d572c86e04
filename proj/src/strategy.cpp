#include "persuasion/strategy.hpp"

#include <algorithm>
#include <sstream>

namespace persuasion {

StrategyNode StrategyNode::stop() { return StrategyNode(); }

StrategyNode StrategyNode::continue_with(Experiment experiment,
                                         std::vector<StrategyNode> children) {
    if (children.size() != experiment.n_signals()) {
        throw ValidationError("StrategyNode: one child per signal required");
    }
    StrategyNode node;
    node.experiment_ = std::move(experiment);
    node.children_ = std::move(children);
    return node;
}

std::size_t StrategyNode::depth() const {
    if (is_stop()) return 0;
    std::size_t deepest = 0;
    for (const StrategyNode& child : children_) {
        deepest = std::max(deepest, child.depth());
    }
    return 1 + deepest;
}

std::size_t StrategyNode::leaf_count() const {
    if (is_stop()) return 1;
    std::size_t leaves = 0;
    for (const StrategyNode& child : children_) {
        leaves += child.leaf_count();
    }
    return leaves;
}

namespace {

void check_limits(const StrategyNode& strategy, const EnumerationLimits& limits) {
    std::size_t depth = strategy.depth();
    if (depth > limits.max_depth) {
        std::ostringstream msg;
        msg << "strategy depth " << depth << " exceeds cap " << limits.max_depth;
        throw DepthCapExceeded(msg.str());
    }
    std::size_t leaves = strategy.leaf_count();
    if (leaves > limits.max_leaves) {
        std::ostringstream msg;
        msg << "strategy leaf count " << leaves << " exceeds cap " << limits.max_leaves;
        throw LeafCapExceeded(msg.str());
    }
}

struct Walker {
    SenderModel sender;
    std::vector<TerminalOutcome>& out;
    std::vector<std::string> history;

    // sender_bayes is the sender's own Bayesian posterior, tracked only in
    // the Bayesian sender model; a biased sender shares the receiver's state.
    void walk(const StrategyNode& node, const ProcedureState& receiver, Belief sender_bayes,
              double path_prob) {
        if (node.is_stop()) {
            Belief receiver_final = finalize(receiver);
            Belief sender_final =
                sender == SenderModel::Bayesian ? std::move(sender_bayes) : receiver_final;
            out.push_back(TerminalOutcome{history, path_prob, std::move(sender_final),
                                          std::move(receiver_final)});
            return;
        }
        const Experiment& exp = node.experiment();
        const Belief& sender_current =
            sender == SenderModel::Bayesian ? sender_bayes : receiver.current_biased;
        const std::vector<double> marginal = signal_marginal(sender_current, exp);
        for (std::size_t x = 0; x < exp.n_signals(); ++x) {
            const double branch_prob = path_prob * marginal[x];
            if (branch_prob < kBranchPruneThreshold) continue;
            history.push_back(exp.signal(x));
            ProcedureState next_receiver = step(receiver, exp, x);
            Belief next_sender_bayes = sender == SenderModel::Bayesian
                                           ? bayes_posterior(sender_bayes, exp, x)
                                           : sender_bayes;
            walk(node.child(x), next_receiver, std::move(next_sender_bayes), branch_prob);
            history.pop_back();
        }
    }
};

} // namespace

std::vector<TerminalOutcome> enumerate_outcomes(const StrategyNode& strategy,
                                                const DecisionProblem& problem,
                                                const BiasParam& alpha,
                                                UpdateProcedure procedure, SenderModel sender,
                                                const EnumerationLimits& limits) {
    if (sender == SenderModel::BiasedSameAsReceiver && procedure != UpdateProcedure::PbpN &&
        procedure != UpdateProcedure::PbpO) {
        throw ValidationError(
            "a biased sender requires the pbp-n or pbp-o procedure, got " + to_string(procedure));
    }
    check_limits(strategy, limits);

    std::vector<TerminalOutcome> out;
    Walker walker{sender, out, {}};
    walker.walk(strategy, make_procedure_state(procedure, alpha, problem.prior), problem.prior,
                1.0);
    return out;
}

double sender_expected_payoff(const StrategyNode& strategy, const DecisionProblem& problem,
                              const BiasParam& alpha, UpdateProcedure procedure,
                              SenderModel sender, const EnumerationLimits& limits) {
    double payoff = 0.0;
    for (const TerminalOutcome& o :
         enumerate_outcomes(strategy, problem, alpha, procedure, sender, limits)) {
        const Action action = best_response(problem, o.receiver_belief);
        payoff += o.probability * sender_value(problem, o.sender_belief, action);
    }
    return payoff;
}

namespace {

void collect_state_conditionals(const StrategyNode& node, std::vector<std::string>& history,
                                std::vector<double>& conditional,
                                std::vector<std::string>& labels,
                                std::vector<std::vector<double>>& columns) {
    if (node.is_stop()) {
        const double peak = *std::max_element(conditional.begin(), conditional.end());
        if (peak < kBranchPruneThreshold) return; // impossible in every state
        std::string label;
        for (std::size_t i = 0; i < history.size(); ++i) {
            if (i > 0) label += '|';
            label += history[i];
        }
        labels.push_back(history.empty() ? "\xe2\x88\x85" : label); // empty history -> "∅"
        columns.push_back(conditional);
        return;
    }
    const Experiment& exp = node.experiment();
    for (std::size_t x = 0; x < exp.n_signals(); ++x) {
        std::vector<double> next(conditional.size());
        for (std::size_t s = 0; s < conditional.size(); ++s) {
            next[s] = conditional[s] * exp.prob(s, x);
        }
        history.push_back(exp.signal(x));
        collect_state_conditionals(node.child(x), history, next, labels, columns);
        history.pop_back();
    }
}

} // namespace

Experiment one_shot_equivalent(const StrategyNode& strategy, std::size_t n_states,
                               const EnumerationLimits& limits) {
    check_limits(strategy, limits);
    if (strategy.is_stop()) {
        return Experiment::uninformative(n_states);
    }
    if (strategy.experiment().n_states() != n_states) {
        throw DimensionMismatch("one_shot_equivalent: state count mismatch");
    }
    std::vector<std::string> history;
    std::vector<double> conditional(n_states, 1.0);
    std::vector<std::string> labels;
    std::vector<std::vector<double>> columns;
    collect_state_conditionals(strategy, history, conditional, labels, columns);

    std::vector<std::vector<double>> kernel(n_states, std::vector<double>(labels.size(), 0.0));
    for (std::size_t h = 0; h < labels.size(); ++h) {
        for (std::size_t s = 0; s < n_states; ++s) {
            kernel[s][h] = columns[h][s];
        }
    }
    return Experiment(std::move(labels), std::move(kernel));
}

std::vector<std::pair<Belief, double>> merge_belief_distribution(
    std::vector<std::pair<Belief, double>> entries, double tol) {
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first.weights() < b.first.weights(); });
    std::vector<std::pair<Belief, double>> merged;
    for (auto& [belief, prob] : entries) {
        if (!merged.empty() && approx_equal(merged.back().first, belief, tol)) {
            auto& [rep, mass] = merged.back();
            // Probability-weighted mean keeps the representative stable under
            // floating drift between analytically identical histories.
            const double total = mass + prob;
            if (total > 0.0) {
                std::vector<double> w(rep.size());
                for (std::size_t s = 0; s < rep.size(); ++s) {
                    w[s] = (mass * rep[s] + prob * belief[s]) / total;
                }
                rep = Belief(std::move(w));
            }
            mass = total;
        } else {
            merged.emplace_back(std::move(belief), prob);
        }
    }
    return merged;
}

std::vector<std::pair<Belief, double>> receiver_posterior_distribution(
    const StrategyNode& strategy, const DecisionProblem& problem, const BiasParam& alpha,
    UpdateProcedure procedure, SenderModel sender, const EnumerationLimits& limits) {
    std::vector<std::pair<Belief, double>> entries;
    for (TerminalOutcome& o :
         enumerate_outcomes(strategy, problem, alpha, procedure, sender, limits)) {
        entries.emplace_back(std::move(o.receiver_belief), o.probability);
    }
    return merge_belief_distribution(std::move(entries));
}

double one_shot_payoff(const DecisionProblem& problem, const Experiment& exp,
                       const BiasParam& alpha) {
    const std::vector<double> marginal = signal_marginal(problem.prior, exp);
    double payoff = 0.0;
    for (std::size_t x = 0; x < exp.n_signals(); ++x) {
        if (marginal[x] < kBranchPruneThreshold) continue;
        payoff += marginal[x] * v_hat_alpha(problem, bayes_posterior(problem.prior, exp, x), alpha);
    }
    return payoff;
}

} // namespace persuasion
