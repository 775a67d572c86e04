// End-to-end checks of the persuade binary: exit-code contract, JSON output
// values, determinism, and round-tripping of the bundled scenario files.
// argv[1] = path to the persuade binary, argv[2] = scenarios directory.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "persuasion/serialization.hpp"

using nlohmann::json;

namespace {

std::string g_binary;
std::string g_scenarios;
int g_failures = 0;

struct RunResult {
    int exit_code = -1;
    std::string stdout_text;
};

RunResult run(const std::string& args, const std::string& env = "") {
    const std::string out_path = "cli_test_stdout.tmp";
    const std::string command =
        env + (env.empty() ? "" : " ") + g_binary + " " + args + " > " + out_path + " 2>cli_test_stderr.tmp";
    const int raw = std::system(command.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream in(out_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    result.stdout_text = buffer.str();
    return result;
}

void check(bool condition, const std::string& what) {
    if (condition) {
        std::printf("ok: %s\n", what.c_str());
    } else {
        std::printf("FAIL: %s\n", what.c_str());
        ++g_failures;
    }
    std::fflush(stdout);
}

// Parse JSON output defensively so a misbehaving command shows up as a
// failed check instead of a crashed harness.
json parse_or_null(const std::string& text) {
    return json::parse(text, nullptr, false);
}

double number_at(const json& j, const std::string& key) {
    if (j.is_discarded() || !j.contains(key) || !j[key].is_number()) return -1e300;
    return j[key].get<double>();
}

void check_near(double actual, double expected, double tol, const std::string& what) {
    std::ostringstream label;
    label.precision(12);
    label << what << " (expected " << expected << ", got " << actual << ")";
    check(std::abs(actual - expected) <= tol, label.str());
}

std::string scenario(const std::string& name) { return g_scenarios + "/" + name; }

} // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: test_cli <persuade-binary> <scenarios-dir>\n");
        return 2;
    }
    g_binary = argv[1];
    g_scenarios = argv[2];

    // solve: prosecutor values through every program.
    {
        const RunResult v = run("solve --scenario " + scenario("prosecutor.json") +
                                " --program V");
        check(v.exit_code == 0, "solve V exits 0");
        check_near(number_at(parse_or_null(v.stdout_text), "value"), 0.6, 1e-6,
                   "solve V value");

        const RunResult va = run("solve --scenario " + scenario("prosecutor.json") +
                                 " --program V-alpha-biased");
        check_near(number_at(parse_or_null(va.stdout_text), "value"), 3.0 / 7.0, 1e-5,
                   "solve V-alpha-biased value");

        const RunResult sup = run("solve --scenario " + scenario("prosecutor.json") +
                                  " --program sup-F");
        check_near(number_at(parse_or_null(sup.stdout_text), "value"), 1.0, 1e-9,
                   "solve sup-F value");

        const RunResult repeat = run("solve --scenario " + scenario("prosecutor.json") +
                                     " --program V");
        check(repeat.stdout_text == v.stdout_text, "solve output is bit-identical across runs");
    }

    // update: the two-period trajectory and its original-prior-anchored variant.
    {
        const RunResult traj = run("update --scenario " + scenario("linear.json") +
                                   " --experiment " + scenario("symmetric-experiment.json") +
                                   " x1 x1");
        check(traj.exit_code == 0, "update exits 0");
        std::istringstream lines(traj.stdout_text);
        std::string line, last;
        int count = 0;
        while (std::getline(lines, line)) {
            if (!line.empty()) {
                last = line;
                ++count;
            }
        }
        check(count == 3, "update prints prior plus one line per signal");
        json parsed = parse_or_null(last);
        check_near(parsed.is_discarded() ? -1.0 : parsed["biased"][1].get<double>(), 0.7292,
                   5e-5, "update final biased belief");

        const RunResult pbpo = run("update --scenario " + scenario("linear-pbpo.json") +
                                   " --experiment " + scenario("symmetric-experiment.json") +
                                   " x1 x1");
        std::istringstream pbpo_lines(pbpo.stdout_text);
        while (std::getline(pbpo_lines, line)) {
            if (!line.empty()) last = line;
        }
        parsed = parse_or_null(last);
        check_near(parsed.is_discarded() ? -1.0 : parsed["biased"][1].get<double>(), 0.6667,
                   5e-5, "update final biased belief under the original-prior anchor");

        const RunResult empty = run("update --scenario " + scenario("linear.json"));
        std::istringstream empty_lines(empty.stdout_text);
        count = 0;
        while (std::getline(empty_lines, line)) {
            if (!line.empty()) ++count;
        }
        check(empty.exit_code == 0 && count == 1, "empty signal sequence prints the prior only");
    }

    // eval: the bundled two-stage revelation strategy.
    {
        const RunResult biased = run("eval --scenario " + scenario("linear.json") +
                                     " --strategy " +
                                     scenario("two-stage-reveal-strategy.json"));
        check(biased.exit_code == 0, "eval exits 0");
        check_near(number_at(parse_or_null(biased.stdout_text), "payoff"), 0.5625, 1e-12,
                   "eval payoff");

        const RunResult unbiased = run("eval --scenario " + scenario("linear.json") +
                                       " --strategy " +
                                       scenario("two-stage-reveal-strategy.json") +
                                       " --alpha 0");
        check_near(number_at(parse_or_null(unbiased.stdout_text), "payoff"), 0.5, 1e-12,
                   "eval payoff without bias");
    }

    // construct | eval round trip through a file.
    {
        const RunResult made = run("construct --scenario " +
                                   scenario("prosecutor-pbpo-biased.json") +
                                   " --construction pbpo-geometric --target 0.5,0.5"
                                   " --gamma 1.75 --periods 20 --out cli_test_strategy.json");
        check(made.exit_code == 0, "construct exits 0");
        const RunResult eval = run("eval --scenario " + scenario("prosecutor-pbpo-biased.json") +
                                   " --strategy cli_test_strategy.json");
        check_near(number_at(parse_or_null(eval.stdout_text), "payoff"),
                   1.0 - (4.0 / 7.0) * std::pow(11.0 / 14.0, 19.0), 1e-9,
                   "constructed strategy payoff");
        std::remove("cli_test_strategy.json");
    }

    // Exit-code contract.
    {
        check(run("solve --scenario no-such-file.json --program V").exit_code == 2,
              "missing scenario file exits 2");
        check(run("update --scenario " + scenario("linear.json") + " --experiment " +
                  scenario("symmetric-experiment.json") + " nope")
                      .exit_code == 2,
              "unknown signal label exits 2");

        std::ofstream reveal("cli_test_reveal.json");
        reveal << R"({"signals": ["x0", "x1"], "kernel": [[1.0, 0.0], [0.0, 1.0]]})";
        reveal.close();
        check(run("update --scenario " + scenario("linear.json") + " --experiment " +
                  "cli_test_reveal.json x0 x1")
                      .exit_code == 3,
              "zero-likelihood signal exits 3");
        std::remove("cli_test_reveal.json");

        check(run("eval --scenario " + scenario("linear.json") + " --strategy " +
                      scenario("two-stage-reveal-strategy.json"),
                  "PERSUADE_LEAF_CAP=1")
                      .exit_code == 4,
              "leaf cap exits 4");

        check(run("solve --scenario " + scenario("quadratic.json") + " --program transparent")
                      .exit_code == 5,
              "transparent program on a state-dependent sender exits 5");

        check(run("repro example2").exit_code == 0, "repro example2 exits 0");
    }

    // Bundled scenario files round trip through parse -> serialize -> parse.
    {
        const std::vector<std::string> files{"prosecutor.json",
                                             "linear.json",
                                             "linear-pbpo.json",
                                             "quadratic.json",
                                             "matching.json",
                                             "prosecutor-pbpo-biased.json"};
        bool all_ok = true;
        for (const std::string& name : files) {
            std::ifstream in(scenario(name));
            json j;
            in >> j;
            const persuasion::Scenario first = persuasion::parse_scenario(j);
            const persuasion::Scenario second =
                persuasion::parse_scenario(persuasion::scenario_to_json(first));
            all_ok &= first.problem == second.problem &&
                      first.alpha.value() == second.alpha.value() &&
                      first.procedure == second.procedure && first.sender == second.sender;
        }
        check(all_ok, "bundled scenario files round trip");
    }

    std::remove("cli_test_stdout.tmp");
    std::remove("cli_test_stderr.tmp");
    if (g_failures == 0) std::printf("all cli checks passed\n");
    return g_failures;
}
