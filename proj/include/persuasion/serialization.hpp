#pragma once

#include <string>

#include <json.hpp>

#include "persuasion/decision.hpp"
#include "persuasion/procedure.hpp"
#include "persuasion/strategy.hpp"

namespace persuasion {

/// Everything a scenario file carries: the decision problem plus the bias,
/// updating procedure and sender belief model in force.
struct Scenario {
    DecisionProblem problem;
    BiasParam alpha;
    UpdateProcedure procedure = UpdateProcedure::PbpN;
    SenderModel sender = SenderModel::Bayesian;
};

/// Parses a scenario object; error messages carry the offending field path.
Scenario parse_scenario(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& scenario);

/// {"stop": true} or {"experiment": {...}, "children": {signal: node}}.
StrategyNode parse_strategy(const nlohmann::json& j);
nlohmann::json strategy_to_json(const StrategyNode& node);

Experiment parse_experiment(const nlohmann::json& j, const std::string& path = "experiment");
nlohmann::json experiment_to_json(const Experiment& exp);

nlohmann::json belief_to_json(const Belief& mu);

UpdateProcedure procedure_from_string(const std::string& name);
SenderModel sender_model_from_string(const std::string& name);
std::string to_string(SenderModel sender);

} // namespace persuasion
