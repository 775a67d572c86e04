#include "persuasion/catalog.hpp"

namespace persuasion {

DecisionProblem prosecutor_problem() {
    FiniteActions model;
    model.actions = {"acquit", "convict"};
    model.receiver_u = {{1.0, 0.0}, {0.0, 1.0}};
    model.sender_v = {{0.0, 1.0}, {0.0, 1.0}};
    return make_decision_problem({"innocent", "guilty"}, Belief({0.7, 0.3}), model);
}

DecisionProblem linear_sender_problem() {
    MeanActionLinear model;
    model.state_vectors = {{0.0}, {1.0}};
    model.sender_beta = {1.0};
    return make_decision_problem({"low", "high"}, Belief::uniform(2), model);
}

DecisionProblem quadratic_pair_problem(double sender_bias_b) {
    QuadraticCs model;
    model.state_values = {0.0, 1.0};
    model.sender_bias_b = sender_bias_b;
    return make_decision_problem({"low", "high"}, Belief::uniform(2), model);
}

DecisionProblem matching_problem() {
    FiniteActions model;
    model.actions = {"a0", "a1"};
    model.receiver_u = {{1.0, 0.0}, {0.0, 1.0}};
    model.sender_v = model.receiver_u;
    return make_decision_problem({"w0", "w1"}, Belief::uniform(2), model);
}

Experiment symmetric_binary_experiment(double beta) {
    if (!(beta >= 0.0 && beta <= 1.0)) {
        throw ValidationError("symmetric_binary_experiment: beta must lie in [0, 1]");
    }
    return Experiment({"x0", "x1"}, {{beta, 1.0 - beta}, {1.0 - beta, beta}});
}

StrategyNode two_period_symmetric_strategy(double beta) {
    const Experiment exp = symmetric_binary_experiment(beta);
    std::vector<StrategyNode> leaves;
    leaves.push_back(StrategyNode::stop());
    leaves.push_back(StrategyNode::stop());
    StrategyNode second = StrategyNode::continue_with(exp, std::move(leaves));
    std::vector<StrategyNode> children;
    children.push_back(second);
    children.push_back(second);
    return StrategyNode::continue_with(exp, std::move(children));
}

} // namespace persuasion
