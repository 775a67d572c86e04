// persuade: command-line front end for the sequential persuasion toolkit.
//
// Exit codes are a stable contract:
//   0 success, 1 repro failure, 2 validation, 3 zero-likelihood signal,
//   4 enumeration cap exceeded, 5 solver/construction precondition.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "persuasion/catalog.hpp"
#include "persuasion/concavify.hpp"
#include "persuasion/constructions.hpp"
#include "persuasion/repro.hpp"
#include "persuasion/serialization.hpp"

namespace {

using nlohmann::json;
using namespace persuasion;

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ValidationError("file '" + path + "' is not valid JSON: " + e.what());
    }
    return j;
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw ValidationError("cannot open output file '" + out_path + "'");
    out << text;
}

EnumerationLimits limits_from_env() {
    EnumerationLimits limits;
    // Deep enough for every bundled construction (the booster runs 40 boost
    // periods after its first stage); the leaf cap still bounds the work.
    limits.max_depth = 64;
    if (const char* cap = std::getenv("PERSUADE_LEAF_CAP")) {
        try {
            limits.max_leaves = std::stoull(cap);
        } catch (const std::exception&) {
            throw ValidationError("PERSUADE_LEAF_CAP is not a valid integer");
        }
    }
    return limits;
}

Scenario load_scenario(const std::string& path, const std::optional<double>& alpha_override) {
    Scenario scenario = parse_scenario(read_json_file(path));
    if (alpha_override.has_value()) scenario.alpha = BiasParam(*alpha_override);
    return scenario;
}

json support_to_json(const std::vector<std::pair<Belief, double>>& support) {
    json rows = json::array();
    for (const auto& [belief, probability] : support) {
        rows.push_back({{"belief", belief.weights()}, {"probability", probability}});
    }
    return rows;
}

int cmd_update(const std::string& scenario_path, const std::vector<std::string>& experiment_paths,
               const std::vector<std::string>& signals,
               const std::optional<double>& alpha_override, const std::string& out_path) {
    const Scenario scenario = load_scenario(scenario_path, alpha_override);
    std::vector<Experiment> experiments;
    for (const std::string& path : experiment_paths) {
        experiments.push_back(parse_experiment(read_json_file(path)));
    }
    if (!signals.empty() && experiments.empty()) {
        throw ValidationError("update: signals given but no --experiment file");
    }

    std::ostringstream out;
    ProcedureState state =
        make_procedure_state(scenario.procedure, scenario.alpha, scenario.problem.prior);
    Belief bayes_track = scenario.problem.prior;
    json line;
    line["period"] = 0;
    line["bayesian"] = belief_to_json(bayes_track);
    line["biased"] = belief_to_json(finalize(state));
    out << line.dump() << '\n';
    for (std::size_t n = 0; n < signals.size(); ++n) {
        const Experiment& exp =
            n < experiments.size() ? experiments[n] : experiments.back();
        state = step(state, exp, signals[n]);
        bayes_track = bayes_posterior(bayes_track, exp, signals[n]);
        line = json();
        line["period"] = n + 1;
        line["signal"] = signals[n];
        line["bayesian"] = belief_to_json(bayes_track);
        line["biased"] = belief_to_json(finalize(state));
        out << line.dump() << '\n';
    }
    write_output(out_path, out.str());
    return 0;
}

int cmd_eval(const std::string& scenario_path, const std::string& strategy_path,
             const std::optional<double>& alpha_override, const std::string& out_path) {
    const Scenario scenario = load_scenario(scenario_path, alpha_override);
    const StrategyNode strategy = parse_strategy(read_json_file(strategy_path));
    const EnumerationLimits limits = limits_from_env();

    const auto outcomes = enumerate_outcomes(strategy, scenario.problem, scenario.alpha,
                                             scenario.procedure, scenario.sender, limits);
    double payoff = 0.0;
    json outcome_rows = json::array();
    for (const TerminalOutcome& o : outcomes) {
        const Action action = best_response(scenario.problem, o.receiver_belief);
        payoff += o.probability * sender_value(scenario.problem, o.sender_belief, action);
        outcome_rows.push_back({{"history", o.history},
                                {"probability", o.probability},
                                {"sender_belief", o.sender_belief.weights()},
                                {"receiver_belief", o.receiver_belief.weights()}});
    }
    std::vector<std::pair<Belief, double>> entries;
    for (const TerminalOutcome& o : outcomes) entries.emplace_back(o.receiver_belief, o.probability);

    json report;
    report["payoff"] = payoff;
    report["outcomes"] = outcome_rows;
    report["receiver_posterior_distribution"] =
        support_to_json(merge_belief_distribution(std::move(entries)));
    write_output(out_path, report.dump(2));
    return 0;
}

int cmd_solve(const std::string& scenario_path, const std::string& program, int grid_resolution,
              const std::optional<double>& alpha_override, const std::string& out_path) {
    const Scenario scenario = load_scenario(scenario_path, alpha_override);
    const GridSpec grid{grid_resolution, true};

    json report;
    report["program"] = program;
    if (program == "sup-F") {
        const FeasibleSupremum sup = sup_over_feasible(scenario.problem, scenario.alpha, grid);
        report["value"] = sup.value;
        report["argmax"] = sup.argmax.weights();
    } else {
        ConcavificationResult result;
        if (program == "V") {
            result = solve_V(scenario.problem, grid);
        } else if (program == "V-alpha") {
            result = solve_V_alpha(scenario.problem, scenario.alpha, grid);
        } else if (program == "V-alpha-biased") {
            result = solve_V_alpha_biased(scenario.problem, scenario.alpha, grid);
        } else if (program == "transparent") {
            result = solve_transparent(scenario.problem, scenario.alpha, grid);
        } else {
            throw ValidationError("solve: unknown program '" + program +
                                  "'; expected V, V-alpha, V-alpha-biased, transparent or sup-F");
        }
        report["value"] = result.value;
        report["support"] = support_to_json(result.support);
        report["certificate_gap"] = result.certificate_gap;
    }
    write_output(out_path, report.dump(2));
    return 0;
}

Belief parse_target(const std::string& csv) {
    std::vector<double> weights;
    std::stringstream stream(csv);
    std::string token;
    while (std::getline(stream, token, ',')) {
        try {
            weights.push_back(std::stod(token));
        } catch (const std::exception&) {
            throw ValidationError("construct: bad --target coordinate '" + token + "'");
        }
    }
    if (weights.empty()) throw ValidationError("construct: empty --target");
    return Belief(std::move(weights));
}

int cmd_construct(const std::string& scenario_path, const std::string& construction,
                  std::size_t periods, double epsilon, const std::string& target_csv,
                  const std::optional<double>& gamma, int grid_resolution,
                  const std::optional<double>& alpha_override, const std::string& out_path) {
    const Scenario scenario = load_scenario(scenario_path, alpha_override);
    StrategyNode strategy = StrategyNode::stop();
    if (construction == "repeated-full-revelation") {
        strategy = repeated_full_revelation(scenario.problem, periods);
    } else if (construction == "cs-two-stage") {
        strategy = cs_two_stage(scenario.problem);
    } else if (construction == "linear-two-stage") {
        strategy = linear_two_stage(scenario.problem);
    } else if (construction == "two-action-booster") {
        const ConcavificationResult base =
            solve_transparent(scenario.problem, scenario.alpha, GridSpec{grid_resolution, true});
        strategy = two_action_booster(scenario.problem, scenario.alpha, base, epsilon, periods);
    } else if (construction == "pbpo-geometric") {
        if (target_csv.empty()) {
            throw ValidationError("construct: pbpo-geometric requires --target");
        }
        const Belief target = parse_target(target_csv);
        const double gamma_bar =
            gamma.value_or(find_gamma_bar(scenario.problem.prior, target, scenario.alpha));
        strategy = pbpo_geometric(scenario.problem, scenario.alpha, target, gamma_bar, periods);
    } else {
        throw ValidationError(
            "construct: unknown construction '" + construction +
            "'; expected repeated-full-revelation, cs-two-stage, linear-two-stage, "
            "two-action-booster or pbpo-geometric");
    }
    write_output(out_path, strategy_to_json(strategy).dump(2));
    return 0;
}

int cmd_repro(const std::string& name, const std::string& out_path) {
    const ReproReport report = run_repro_suite(name);
    for (const ReproCheck& check : report.checks) {
        std::cout << (check.passed ? "PASS" : "FAIL") << ": " << report.suite << ": "
                  << check.name << " — " << check.details << '\n';
    }
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw ValidationError("cannot open output file '" + out_path + "'");
        out << render_csv(report.figure_data);
    }
    if (!report.all_passed()) {
        std::cout << "FAILED: " << report.suite << ": first failing check: "
                  << report.first_failure() << '\n';
        return 1;
    }
    std::cout << "OK: " << report.suite << ": " << report.checks.size() << " checks passed\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sequential persuasion toolkit for conservatively Bayesian receivers"};
    app.require_subcommand(1);

    std::string scenario_path, strategy_path, out_path, program, construction, target_csv;
    std::vector<std::string> experiment_paths, signals;
    std::optional<double> alpha_override, gamma;
    int grid_resolution = 201;
    std::size_t periods = 2;
    double epsilon = 0.1;
    std::string repro_name;

    CLI::App* update = app.add_subcommand("update", "Run a belief trajectory through signals");
    update->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    update
        ->add_option("--experiment", experiment_paths,
                     "Experiment JSON file, repeatable; the last one is reused")
        ->allow_extra_args(false);
    update->add_option("--alpha", alpha_override, "Override the scenario's bias parameter");
    update->add_option("--out", out_path, "Write the trajectory here instead of stdout");
    update->add_option("signals", signals, "Realized signal labels, in order");

    CLI::App* eval = app.add_subcommand("eval", "Evaluate a strategy tree");
    eval->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    eval->add_option("--strategy", strategy_path, "Strategy JSON file")->required();
    eval->add_option("--alpha", alpha_override, "Override the scenario's bias parameter");
    eval->add_option("--out", out_path, "Write the report here instead of stdout");

    CLI::App* solve = app.add_subcommand("solve", "Solve a one-shot value program");
    solve->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    solve->add_option("--program", program, "V, V-alpha, V-alpha-biased, transparent or sup-F")
        ->required();
    solve->add_option("--grid", grid_resolution, "Grid points per simplex edge (default 201)");
    solve->add_option("--alpha", alpha_override, "Override the scenario's bias parameter");
    solve->add_option("--out", out_path, "Write the report here instead of stdout");

    CLI::App* construct = app.add_subcommand("construct", "Build a named strategy");
    construct->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    construct
        ->add_option("--construction", construction,
                     "repeated-full-revelation, cs-two-stage, linear-two-stage, "
                     "two-action-booster or pbpo-geometric")
        ->required();
    CLI::Option* periods_opt = construct->add_option(
        "--periods", periods, "Horizon where applicable (default 2; booster default 40)");
    construct->add_option("--epsilon", epsilon, "Boost experiment noise (default 0.1)");
    construct->add_option("--target", target_csv, "Target belief, comma-separated coordinates");
    construct->add_option("--gamma", gamma, "Two-point split ratio (default: maximal feasible)");
    construct->add_option("--grid", grid_resolution, "Grid used to solve the booster base");
    construct->add_option("--alpha", alpha_override, "Override the scenario's bias parameter");
    construct->add_option("--out", out_path, "Write the strategy here instead of stdout");

    CLI::App* repro = app.add_subcommand("repro", "Run a reproduction suite");
    repro->add_option("name", repro_name, "example1, example2, prop2, prop4, prop5 or prop6")
        ->required();
    repro->add_option("--out", out_path, "Write figure data CSV here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (update->parsed()) {
            return cmd_update(scenario_path, experiment_paths, signals, alpha_override, out_path);
        }
        if (eval->parsed()) {
            return cmd_eval(scenario_path, strategy_path, alpha_override, out_path);
        }
        if (solve->parsed()) {
            return cmd_solve(scenario_path, program, grid_resolution, alpha_override, out_path);
        }
        if (construct->parsed()) {
            if (construction == "two-action-booster" && periods_opt->count() == 0) {
                periods = 40;
            }
            return cmd_construct(scenario_path, construction, periods, epsilon, target_csv, gamma,
                                 grid_resolution, alpha_override, out_path);
        }
        if (repro->parsed()) {
            return cmd_repro(repro_name, out_path);
        }
    } catch (const ZeroLikelihoodSignal& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 5;
    } catch (const PersuasionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
