#include "persuasion/repro.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "persuasion/catalog.hpp"
#include "persuasion/concavify.hpp"
#include "persuasion/constructions.hpp"
#include "persuasion/strategy.hpp"

namespace persuasion {

bool ReproReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const ReproCheck& c) { return c.passed; });
}

std::string ReproReport::first_failure() const {
    for (const ReproCheck& c : checks) {
        if (!c.passed) return c.name;
    }
    return {};
}

const std::vector<std::string>& repro_suite_names() {
    static const std::vector<std::string> names{"example1", "example2", "prop2",
                                                "prop4",    "prop5",    "prop6"};
    return names;
}

std::string render_csv(const std::vector<CsvRow>& rows) {
    std::ostringstream out;
    out.precision(17);
    out << "series,x,y\n";
    for (const CsvRow& row : rows) {
        out << row.series << ',' << row.x << ',' << row.y << '\n';
    }
    return out.str();
}

namespace {

void check(ReproReport& report, const std::string& name, bool passed,
           const std::string& details) {
    report.checks.push_back(ReproCheck{name, passed, details});
}

void check_close(ReproReport& report, const std::string& name, double actual, double expected,
                 double tol) {
    std::ostringstream details;
    details.precision(12);
    details << "expected " << expected << ", got " << actual << " (tol " << tol << ")";
    check(report, name, std::abs(actual - expected) <= tol, details.str());
}

// Mass at the distribution entry whose coordinate-1 value lands within tol of
// x; negative when no entry is close enough.
double mass_at(const std::vector<std::pair<Belief, double>>& dist, double x, double tol) {
    for (const auto& [belief, mass] : dist) {
        if (std::abs(belief[1] - x) <= tol) return mass;
    }
    return -1.0;
}

ReproReport repro_example1() {
    ReproReport report{"example1", {}, {}};
    const DecisionProblem problem = linear_sender_problem();
    const BiasParam alpha(0.5);
    const StrategyNode strategy = two_period_symmetric_strategy(0.75);

    const auto outcomes = enumerate_outcomes(strategy, problem, alpha, UpdateProcedure::PbpN,
                                             SenderModel::Bayesian);
    std::vector<std::pair<Belief, double>> sender_entries;
    for (const auto& o : outcomes) sender_entries.emplace_back(o.sender_belief, o.probability);
    const auto sender_dist = merge_belief_distribution(std::move(sender_entries));
    const auto receiver_dist =
        receiver_posterior_distribution(strategy, problem, alpha, UpdateProcedure::PbpN);

    const std::vector<std::pair<double, double>> expected_sender{
        {0.1, 0.3125}, {0.5, 0.375}, {0.9, 0.3125}};
    const std::vector<std::pair<double, double>> expected_receiver{
        {0.2708, 0.3125}, {0.4911, 0.1875}, {0.5089, 0.1875}, {0.7292, 0.3125}};

    check(report, "sender distribution has 3 atoms", sender_dist.size() == 3,
          "got " + std::to_string(sender_dist.size()));
    for (const auto& [x, p] : expected_sender) {
        std::ostringstream name;
        name << "sender mass at " << x;
        const double mass = mass_at(sender_dist, x, 5e-5);
        check_close(report, name.str(), mass, p, 5e-5);
    }
    check(report, "receiver distribution has 4 atoms", receiver_dist.size() == 4,
          "got " + std::to_string(receiver_dist.size()));
    for (const auto& [x, p] : expected_receiver) {
        std::ostringstream name;
        name << "receiver mass at " << x;
        const double mass = mass_at(receiver_dist, x, 5e-5);
        check_close(report, name.str(), mass, p, 5e-5);
    }

    // The order-dependence witness: the two mixed histories share the
    // Bayesian posterior but not the biased one.
    const TerminalOutcome* up_down = nullptr;
    const TerminalOutcome* down_up = nullptr;
    for (const auto& o : outcomes) {
        if (o.history == std::vector<std::string>{"x1", "x0"}) up_down = &o;
        if (o.history == std::vector<std::string>{"x0", "x1"}) down_up = &o;
    }
    if (up_down == nullptr || down_up == nullptr) {
        check(report, "mixed histories present", false, "missing (x1,x0) or (x0,x1)");
    } else {
        check(report, "mixed histories share the Bayesian posterior",
              approx_equal(up_down->sender_belief, down_up->sender_belief, 1e-12),
              "sender beliefs differ");
        const double gap = std::abs(up_down->receiver_belief[1] - down_up->receiver_belief[1]);
        std::ostringstream details;
        details << "biased gap " << gap;
        check(report, "mixed histories separate the biased posterior", gap >= 1e-3,
              details.str());
    }

    for (const auto& [belief, mass] : sender_dist) {
        report.figure_data.push_back(CsvRow{"bayesian", belief[1], mass});
    }
    for (const auto& [belief, mass] : receiver_dist) {
        report.figure_data.push_back(CsvRow{"biased", belief[1], mass});
    }
    return report;
}

ReproReport repro_example2() {
    ReproReport report{"example2", {}, {}};
    const DecisionProblem problem = linear_sender_problem();
    const BiasParam alpha(0.5);

    const StrategyNode two_period = state_revelation_chain(2, 1, 2);
    const double payoff2 = sender_expected_payoff(two_period, problem, alpha,
                                                  UpdateProcedure::PbpN, SenderModel::Bayesian);
    check_close(report, "two-period payoff", payoff2, 0.5625, 1e-12);

    const double unbiased = sender_expected_payoff(two_period, problem, BiasParam(0.0),
                                                   UpdateProcedure::PbpN, SenderModel::Bayesian);
    check_close(report, "payoff without bias", unbiased, 0.5, 1e-12);

    double payoff25 = 0.0;
    for (std::size_t n = 1; n <= 25; ++n) {
        const StrategyNode chain = state_revelation_chain(2, 1, n);
        const double payoff = sender_expected_payoff(chain, problem, alpha,
                                                     UpdateProcedure::PbpN,
                                                     SenderModel::Bayesian);
        report.figure_data.push_back(CsvRow{"payoff", static_cast<double>(n), payoff});
        if (n == 25) payoff25 = payoff;
    }
    check_close(report, "25-period payoff approaches 5/8", payoff25, 0.625, 1e-6);
    return report;
}

ReproReport repro_prop2() {
    ReproReport report{"prop2", {}, {}};
    const DecisionProblem problem = quadratic_pair_problem(0.1);
    const BiasParam alpha(0.5);

    const std::size_t grid_points = 10000;
    double worst_second_difference = 0.0;
    double previous = 0.0, current = 0.0;
    for (std::size_t k = 0; k < grid_points; ++k) {
        const double t = static_cast<double>(k) / (grid_points - 1);
        const double value = v_hat_alpha(problem, Belief({1.0 - t, t}), alpha);
        if (k >= 2) {
            worst_second_difference =
                std::min(worst_second_difference, value - 2.0 * current + previous);
        }
        previous = current;
        current = value;
        if (k % 100 == 0) {
            report.figure_data.push_back(CsvRow{"vhat_alpha", t, value});
        }
    }
    {
        std::ostringstream details;
        details << "worst second difference " << worst_second_difference;
        check(report, "vhat_alpha is discretely convex", worst_second_difference >= -1e-9,
              details.str());
    }

    const ConcavificationResult one_shot = solve_V_alpha(problem, alpha);
    check_close(report, "one-shot value", one_shot.value, -0.0725, 1e-6);
    bool full_revelation = one_shot.support.size() == 2;
    if (full_revelation) {
        for (const auto& [belief, mass] : one_shot.support) {
            full_revelation &= std::abs(belief[0] - 1.0) < 1e-9 || std::abs(belief[1] - 1.0) < 1e-9;
            (void)mass;
        }
    }
    check(report, "one-shot optimum is full revelation", full_revelation,
          "support is not the pair of vertices");

    const double two_stage = sender_expected_payoff(cs_two_stage(problem), problem, alpha,
                                                    UpdateProcedure::PbpN, SenderModel::Bayesian);
    check_close(report, "two-stage payoff", two_stage, -0.0365625, 1e-9);
    {
        std::ostringstream details;
        details << "two-stage " << two_stage << " vs one-shot " << one_shot.value;
        check(report, "two-stage beats one-shot", two_stage > one_shot.value + 1e-6,
              details.str());
    }
    return report;
}

ReproReport repro_prop4() {
    ReproReport report{"prop4", {}, {}};
    const DecisionProblem problem = prosecutor_problem();
    const BiasParam alpha(0.5);
    const double epsilon = 0.1;
    const std::size_t boost_periods = 40;
    const EnumerationLimits limits{64, 1'000'000};

    const ConcavificationResult base = solve_transparent(problem, alpha);
    check_close(report, "one-shot transparent value", base.value, 3.0 / 7.0, 1e-6);

    const StrategyNode booster = two_action_booster(problem, alpha, base, epsilon, boost_periods);
    const double payoff = sender_expected_payoff(booster, problem, alpha, UpdateProcedure::PbpN,
                                                 SenderModel::Bayesian, limits);
    {
        std::ostringstream details;
        details << "payoff " << payoff << " vs base " << base.value;
        check(report, "booster beats the one-shot optimum by 1e-4",
              payoff >= 3.0 / 7.0 + 1e-4, details.str());
    }

    const StrategyNode unboosted = two_action_booster(problem, alpha, base, epsilon, 0);
    const double base_payoff = sender_expected_payoff(unboosted, problem, alpha,
                                                      UpdateProcedure::PbpN,
                                                      SenderModel::Bayesian, limits);
    check_close(report, "zero boost periods reproduce the base value", base_payoff, base.value,
                1e-12);

    // Follow the boosting branch and ride the favorable-signal spine.
    ProcedureState state = make_procedure_state(UpdateProcedure::PbpN, alpha, problem.prior);
    const Experiment& stage_one = booster.experiment();
    std::size_t boost_branch = stage_one.n_signals();
    for (std::size_t x = 0; x < stage_one.n_signals(); ++x) {
        const ProcedureState next = step(state, stage_one, x);
        if (std::get<std::size_t>(best_response(problem, next.current_biased)) == 0) {
            boost_branch = x;
            break;
        }
    }
    if (boost_branch == stage_one.n_signals()) {
        check(report, "a boosting branch exists", false, "every branch already converts");
        return report;
    }
    state = step(state, stage_one, boost_branch);
    const StrategyNode* node = &booster.child(boost_branch);
    bool increasing = true;
    double last = state.current_biased[1];
    std::size_t period = 0;
    report.figure_data.push_back(CsvRow{"xbar_path_belief", 0.0, last});
    while (!node->is_stop()) {
        const std::size_t xbar = node->experiment().signal_index("xbar");
        state = step(state, node->experiment(), xbar);
        const double belief = state.current_biased[1];
        increasing &= belief > last;
        last = belief;
        ++period;
        report.figure_data.push_back(CsvRow{"xbar_path_belief", static_cast<double>(period),
                                            belief});
        node = &node->child(xbar);
    }
    {
        std::ostringstream details;
        details << period << " boost periods, final belief " << last;
        check(report, "all-xbar belief path is strictly increasing",
              increasing && period == boost_periods, details.str());
    }
    return report;
}

ReproReport repro_prop5() {
    ReproReport report{"prop5", {}, {}};
    const DecisionProblem problem = prosecutor_problem();
    const BiasParam alpha(0.5);
    const BarycentricFrame frame({Belief({0.95, 0.05}), Belief({0.5, 0.5})});
    const std::vector<double> weights{4.0 / 9.0, 5.0 / 9.0};
    const std::size_t periods = 200;

    const MarkovRunResult run =
        markov_absorbing_run(frame, alpha, weights, problem.prior, periods, problem);

    double absorbed_total = 0.0;
    for (double a : run.absorbed) absorbed_total += a;
    double tv = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        tv += std::abs(run.absorbed[i] / absorbed_total - weights[i]);
    }
    tv *= 0.5;
    {
        std::ostringstream details;
        details << "total variation " << tv;
        check(report, "absorbed distribution reaches the target weights", tv <= 1e-4,
              details.str());
    }

    // Geometric escape bound from the frame geometry: k_bar is the first
    // horizon at which a repeatedly drawn frame point becomes reachable from
    // anywhere, delta_bar the worst-case chance of drawing it that often.
    double c_min = 1.0;
    for (const Belief& mu : frame.support()) c_min = std::min(c_min, mu.min_coordinate());
    const double a = alpha.value();
    std::size_t k_bar = 1;
    while (std::pow(a, k_bar) / (1.0 - a + std::pow(a, k_bar)) >= c_min) ++k_bar;
    const double delta_bar = std::pow((1.0 - a) / frame.size(), k_bar);
    const double bound = std::pow(1.0 - delta_bar, std::floor(static_cast<double>(periods) / k_bar));
    {
        std::ostringstream details;
        details << "unabsorbed " << run.unabsorbed_mass << " vs bound " << bound << " (k_bar "
                << k_bar << ", delta_bar " << delta_bar << ")";
        check(report, "unabsorbed mass respects the geometric bound",
              run.unabsorbed_mass <= bound + 1e-12, details.str());
    }

    check_close(report, "sender payoff", run.payoff, 5.0 / 9.0, 1e-4);

    for (std::size_t t = 0; t < run.payoff_trace.size(); ++t) {
        report.figure_data.push_back(
            CsvRow{"payoff_trace", static_cast<double>(t), run.payoff_trace[t]});
    }
    return report;
}

ReproReport repro_prop6() {
    ReproReport report{"prop6", {}, {}};
    const DecisionProblem problem = prosecutor_problem();
    const BiasParam alpha(0.5);
    const Belief target({0.5, 0.5});
    const double gamma_bar = 1.75;
    const std::size_t periods = 20;

    check_close(report, "maximal gamma", find_gamma_bar(problem.prior, target, alpha), gamma_bar,
                1e-6);

    const double t1 = (gamma_bar - 1.0) / gamma_bar;
    const double t2 = alpha.value() * t1;
    std::vector<double> low(2);
    for (std::size_t s = 0; s < 2; ++s) {
        low[s] = gamma_bar * problem.prior[s] + (1.0 - gamma_bar) * target[s];
    }
    const Belief mu_low(low);
    double residual_a = 0.0, residual_b = 0.0;
    for (std::size_t s = 0; s < 2; ++s) {
        residual_a = std::max(residual_a,
                              std::abs(t1 * target[s] + (1.0 - t1) * mu_low[s] -
                                       problem.prior[s]));
        residual_b = std::max(
            residual_b,
            std::abs(t2 * target[s] + (1.0 - t2) * mu_low[s] -
                     (alpha.value() * problem.prior[s] + (1.0 - alpha.value()) * mu_low[s])));
    }
    {
        std::ostringstream details;
        details << "residuals " << residual_a << ", " << residual_b;
        check(report, "two-point split identities hold to 1e-12",
              residual_a <= 1e-12 && residual_b <= 1e-12, details.str());
    }

    double engine20 = 0.0;
    for (std::size_t n = 1; n <= periods; ++n) {
        const StrategyNode strategy = pbpo_geometric(problem, alpha, target, gamma_bar, n);
        const double engine = sender_expected_payoff(strategy, problem, alpha,
                                                     UpdateProcedure::PbpO,
                                                     SenderModel::BiasedSameAsReceiver);
        const double residual_mass = (1.0 - t1) * std::pow(1.0 - t2, static_cast<double>(n) - 1.0);
        const double closed_form =
            (1.0 - residual_mass) * v_hat(problem, target) + residual_mass * v_hat(problem, mu_low);
        report.figure_data.push_back(CsvRow{"engine", static_cast<double>(n), engine});
        report.figure_data.push_back(CsvRow{"closed_form", static_cast<double>(n), closed_form});
        if (n == periods) {
            engine20 = engine;
            check_close(report, "engine matches the closed form at N=20", engine, closed_form,
                        1e-9);
        }
    }
    check(report, "payoff exceeds 0.99 at N=20", engine20 > 0.99,
          "payoff " + std::to_string(engine20));
    return report;
}

} // namespace

ReproReport run_repro_suite(const std::string& name) {
    if (name == "example1") return repro_example1();
    if (name == "example2") return repro_example2();
    if (name == "prop2") return repro_prop2();
    if (name == "prop4") return repro_prop4();
    if (name == "prop5") return repro_prop5();
    if (name == "prop6") return repro_prop6();
    throw ValidationError("unknown repro suite '" + name + "'; expected one of example1, "
                          "example2, prop2, prop4, prop5, prop6");
}

} // namespace persuasion
