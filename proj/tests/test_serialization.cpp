#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "persuasion/catalog.hpp"
#include "persuasion/constructions.hpp"
#include "persuasion/serialization.hpp"

using namespace persuasion;
using nlohmann::json;

namespace {

const char* kProsecutorScenario = R"({
  "states": ["innocent", "guilty"],
  "prior": [0.7, 0.3],
  "alpha": 0.5,
  "procedure": "pbp-n",
  "sender_model": "bayesian",
  "action_model": {
    "type": "finite",
    "actions": ["acquit", "convict"],
    "receiver_u": [[1, 0], [0, 1]],
    "sender_v": [[0, 1], [0, 1]]
  }
})";

} // namespace

TEST_CASE("scenario files parse into validated problems") {
    const Scenario scenario = parse_scenario(json::parse(kProsecutorScenario));
    CHECK(scenario.problem == prosecutor_problem());
    CHECK(scenario.alpha.value() == 0.5);
    CHECK(scenario.procedure == UpdateProcedure::PbpN);
    CHECK(scenario.sender == SenderModel::Bayesian);
}

TEST_CASE("scenario round trip is the identity") {
    const Scenario first = parse_scenario(json::parse(kProsecutorScenario));
    const Scenario second = parse_scenario(scenario_to_json(first));
    CHECK(first.problem == second.problem);
    CHECK(first.alpha.value() == second.alpha.value());
    CHECK(first.procedure == second.procedure);
    CHECK(first.sender == second.sender);
    // And the JSON fixes itself after one round.
    CHECK(scenario_to_json(first) == scenario_to_json(second));
}

TEST_CASE("parametric scenarios round trip") {
    json j;
    j["states"] = {"low", "high"};
    j["prior"] = {0.5, 0.5};
    j["alpha"] = 0.25;
    j["procedure"] = "lp";
    j["sender_model"] = "bayesian";
    j["action_model"] = {{"type", "quadratic-cs"},
                         {"state_values", {0.0, 1.0}},
                         {"sender_bias_b", 0.1}};
    const Scenario scenario = parse_scenario(j);
    CHECK(scenario.problem == quadratic_pair_problem(0.1));
    CHECK(parse_scenario(scenario_to_json(scenario)).problem == scenario.problem);

    j["action_model"] = {{"type", "mean-action-linear"},
                         {"state_vectors", {{0.0}, {1.0}}},
                         {"sender_beta", {1.0}}};
    j["procedure"] = "pbp-o";
    j["sender_model"] = "biased";
    const Scenario linear = parse_scenario(j);
    CHECK(linear.problem == linear_sender_problem());
    CHECK(linear.sender == SenderModel::BiasedSameAsReceiver);
    CHECK(parse_scenario(scenario_to_json(linear)).problem == linear.problem);
}

TEST_CASE("scenario diagnostics name the offending field") {
    json j = json::parse(kProsecutorScenario);
    j.erase("prior");
    CHECK_THROWS_WITH_AS(parse_scenario(j), "scenario: missing field 'prior'", ValidationError);

    j = json::parse(kProsecutorScenario);
    j["procedure"] = "period-by-period";
    CHECK_THROWS_AS(parse_scenario(j), ValidationError);

    j = json::parse(kProsecutorScenario);
    j["action_model"]["receiver_u"] = {{1, 0}};
    CHECK_THROWS_AS(parse_scenario(j), DimensionMismatch);

    j = json::parse(kProsecutorScenario);
    j["prior"] = {0.2, 0.2};
    CHECK_THROWS_AS(parse_scenario(j), ValidationError);

    j = json::parse(kProsecutorScenario);
    j["alpha"] = 1.5;
    CHECK_THROWS_AS(parse_scenario(j), ValidationError);
}

TEST_CASE("strategy trees round trip") {
    const StrategyNode chain = state_revelation_chain(2, 1, 3);
    const StrategyNode parsed = parse_strategy(strategy_to_json(chain));
    CHECK(parsed == chain);

    const StrategyNode stop = parse_strategy(json::parse(R"({"stop": true})"));
    CHECK(stop.is_stop());

    const StrategyNode sym = two_period_symmetric_strategy(0.75);
    CHECK(parse_strategy(strategy_to_json(sym)) == sym);
}

TEST_CASE("strategy diagnostics") {
    CHECK_THROWS_AS(parse_strategy(json::parse(R"({"stop": false})")), ValidationError);
    CHECK_THROWS_AS(parse_strategy(json::parse(R"({})")), ValidationError);

    // A child per signal is mandatory.
    json j;
    j["experiment"] = {{"signals", {"a", "b"}}, {"kernel", {{0.5, 0.5}, {0.5, 0.5}}}};
    j["children"] = {{"a", {{"stop", true}}}};
    CHECK_THROWS_AS(parse_strategy(j), ValidationError);

    j["children"]["c"] = {{"stop", true}};
    CHECK_THROWS_AS(parse_strategy(j), ValidationError);

    // Non-stochastic kernels are rejected on construction.
    j["experiment"]["kernel"] = {{0.5, 0.6}, {0.5, 0.5}};
    j["children"] = {{"a", {{"stop", true}}}, {"b", {{"stop", true}}}};
    CHECK_THROWS_AS(parse_strategy(j), ValidationError);
}

TEST_CASE("experiments round trip") {
    const Experiment exp = symmetric_binary_experiment(0.75);
    CHECK(parse_experiment(experiment_to_json(exp)) == exp);
}
