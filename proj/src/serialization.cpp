#include "persuasion/serialization.hpp"

namespace persuasion {

namespace {

using nlohmann::json;

const json& require(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw ValidationError(path + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ValidationError(path + ": missing field '" + key + "'");
    return *it;
}

double as_number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ValidationError(path + ": expected a number");
    return j.get<double>();
}

std::string as_string(const json& j, const std::string& path) {
    if (!j.is_string()) throw ValidationError(path + ": expected a string");
    return j.get<std::string>();
}

std::vector<double> as_number_array(const json& j, const std::string& path) {
    if (!j.is_array()) throw ValidationError(path + ": expected an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(as_number(j[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

std::vector<std::vector<double>> as_matrix(const json& j, const std::string& path) {
    if (!j.is_array()) throw ValidationError(path + ": expected an array of rows");
    std::vector<std::vector<double>> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(as_number_array(j[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

std::vector<std::string> as_string_array(const json& j, const std::string& path) {
    if (!j.is_array()) throw ValidationError(path + ": expected an array of strings");
    std::vector<std::string> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(as_string(j[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

ActionModel parse_action_model(const json& j, const std::string& path) {
    const std::string type = as_string(require(j, "type", path), path + ".type");
    if (type == "finite") {
        FiniteActions model;
        model.actions = as_string_array(require(j, "actions", path), path + ".actions");
        model.receiver_u = as_matrix(require(j, "receiver_u", path), path + ".receiver_u");
        model.sender_v = as_matrix(require(j, "sender_v", path), path + ".sender_v");
        return model;
    }
    if (type == "quadratic-cs") {
        QuadraticCs model;
        model.state_values =
            as_number_array(require(j, "state_values", path), path + ".state_values");
        model.sender_bias_b =
            as_number(require(j, "sender_bias_b", path), path + ".sender_bias_b");
        return model;
    }
    if (type == "mean-action-linear") {
        MeanActionLinear model;
        model.state_vectors =
            as_matrix(require(j, "state_vectors", path), path + ".state_vectors");
        model.sender_beta =
            as_number_array(require(j, "sender_beta", path), path + ".sender_beta");
        return model;
    }
    throw ValidationError(path + ".type: unknown action model '" + type + "'");
}

json action_model_to_json(const ActionModel& model) {
    json j;
    if (const auto* fin = std::get_if<FiniteActions>(&model)) {
        j["type"] = "finite";
        j["actions"] = fin->actions;
        j["receiver_u"] = fin->receiver_u;
        j["sender_v"] = fin->sender_v;
    } else if (const auto* cs = std::get_if<QuadraticCs>(&model)) {
        j["type"] = "quadratic-cs";
        j["state_values"] = cs->state_values;
        j["sender_bias_b"] = cs->sender_bias_b;
    } else {
        const auto& lin = std::get<MeanActionLinear>(model);
        j["type"] = "mean-action-linear";
        j["state_vectors"] = lin.state_vectors;
        j["sender_beta"] = lin.sender_beta;
    }
    return j;
}

} // namespace

UpdateProcedure procedure_from_string(const std::string& name) {
    if (name == "bayes") return UpdateProcedure::Bayes;
    if (name == "pbp-n") return UpdateProcedure::PbpN;
    if (name == "pbp-o") return UpdateProcedure::PbpO;
    if (name == "lp") return UpdateProcedure::Lp;
    throw ValidationError("procedure: expected one of bayes|pbp-n|pbp-o|lp, got '" + name + "'");
}

SenderModel sender_model_from_string(const std::string& name) {
    if (name == "bayesian") return SenderModel::Bayesian;
    if (name == "biased") return SenderModel::BiasedSameAsReceiver;
    throw ValidationError("sender_model: expected bayesian|biased, got '" + name + "'");
}

std::string to_string(SenderModel sender) {
    return sender == SenderModel::Bayesian ? "bayesian" : "biased";
}

Scenario parse_scenario(const json& j) {
    const std::string path = "scenario";
    std::vector<std::string> states = as_string_array(require(j, "states", path), path + ".states");
    std::vector<double> prior = as_number_array(require(j, "prior", path), path + ".prior");
    const double alpha = as_number(require(j, "alpha", path), path + ".alpha");
    const std::string procedure =
        as_string(require(j, "procedure", path), path + ".procedure");
    const std::string sender =
        as_string(require(j, "sender_model", path), path + ".sender_model");
    ActionModel model =
        parse_action_model(require(j, "action_model", path), path + ".action_model");

    Scenario scenario{
        make_decision_problem(std::move(states), Belief(std::move(prior)), std::move(model)),
        BiasParam(alpha), procedure_from_string(procedure), sender_model_from_string(sender)};
    return scenario;
}

json scenario_to_json(const Scenario& scenario) {
    json j;
    j["states"] = scenario.problem.state_labels;
    j["prior"] = scenario.problem.prior.weights();
    j["alpha"] = scenario.alpha.value();
    j["procedure"] = to_string(scenario.procedure);
    j["sender_model"] = to_string(scenario.sender);
    j["action_model"] = action_model_to_json(scenario.problem.action_model);
    return j;
}

Experiment parse_experiment(const json& j, const std::string& path) {
    std::vector<std::string> signals =
        as_string_array(require(j, "signals", path), path + ".signals");
    std::vector<std::vector<double>> kernel =
        as_matrix(require(j, "kernel", path), path + ".kernel");
    return Experiment(std::move(signals), std::move(kernel));
}

json experiment_to_json(const Experiment& exp) {
    json j;
    j["signals"] = exp.signals();
    j["kernel"] = exp.kernel();
    return j;
}

json belief_to_json(const Belief& mu) { return json(mu.weights()); }

namespace {

StrategyNode parse_strategy_node(const json& j, const std::string& path) {
    if (!j.is_object()) throw ValidationError(path + ": expected an object");
    if (j.contains("stop")) {
        if (!j["stop"].is_boolean() || !j["stop"].get<bool>()) {
            throw ValidationError(path + ".stop: must be true when present");
        }
        return StrategyNode::stop();
    }
    Experiment exp = parse_experiment(require(j, "experiment", path), path + ".experiment");
    const json& children_json = require(j, "children", path);
    if (!children_json.is_object()) {
        throw ValidationError(path + ".children: expected an object keyed by signal");
    }
    if (children_json.size() != exp.n_signals()) {
        throw ValidationError(path + ".children: need exactly one child per signal");
    }
    std::vector<StrategyNode> children;
    children.reserve(exp.n_signals());
    for (const std::string& signal : exp.signals()) {
        auto it = children_json.find(signal);
        if (it == children_json.end()) {
            throw ValidationError(path + ".children: missing child for signal '" + signal + "'");
        }
        children.push_back(parse_strategy_node(*it, path + ".children." + signal));
    }
    return StrategyNode::continue_with(std::move(exp), std::move(children));
}

} // namespace

StrategyNode parse_strategy(const json& j) { return parse_strategy_node(j, "strategy"); }

json strategy_to_json(const StrategyNode& node) {
    json j;
    if (node.is_stop()) {
        j["stop"] = true;
        return j;
    }
    j["experiment"] = experiment_to_json(node.experiment());
    json children = json::object();
    for (std::size_t x = 0; x < node.experiment().n_signals(); ++x) {
        children[node.experiment().signal(x)] = strategy_to_json(node.child(x));
    }
    j["children"] = children;
    return j;
}

} // namespace persuasion
