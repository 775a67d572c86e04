#include "persuasion/decision.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "persuasion/simplex_grid.hpp"

namespace persuasion {

namespace {

void validate_matrix(const std::vector<std::vector<double>>& m, std::size_t rows,
                     std::size_t cols, const char* what) {
    if (m.size() != rows) {
        throw DimensionMismatch(std::string(what) + ": wrong number of rows");
    }
    for (const auto& row : m) {
        if (row.size() != cols) {
            throw DimensionMismatch(std::string(what) + ": ragged or wrong-width row");
        }
        for (double x : row) {
            if (!std::isfinite(x)) throw ValidationError(std::string(what) + ": non-finite entry");
        }
    }
}

std::vector<double> posterior_mean(const std::vector<std::vector<double>>& vectors,
                                   const Belief& mu) {
    std::vector<double> mean(vectors.front().size(), 0.0);
    for (std::size_t s = 0; s < mu.size(); ++s) {
        for (std::size_t j = 0; j < mean.size(); ++j) {
            mean[j] += mu[s] * vectors[s][j];
        }
    }
    return mean;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

std::size_t rank_with_tolerance(std::vector<std::vector<double>> a, double tol) {
    const std::size_t rows = a.size();
    const std::size_t cols = a.empty() ? 0 : a[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        }
        if (std::abs(a[pivot][col]) < tol) continue;
        std::swap(a[pivot], a[rank]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank) continue;
            const double factor = a[r][col] / a[rank][col];
            for (std::size_t k = col; k < cols; ++k) a[r][k] -= factor * a[rank][k];
        }
        ++rank;
    }
    return rank;
}

} // namespace

DecisionProblem make_decision_problem(std::vector<std::string> state_labels, Belief prior,
                                      ActionModel action_model) {
    const std::size_t n = state_labels.size();
    if (n == 0) throw ValidationError("DecisionProblem: no states");
    if (prior.size() != n) throw DimensionMismatch("DecisionProblem: prior size != state count");
    if (!prior.full_support()) {
        throw ValidationError("DecisionProblem: prior must have full support");
    }
    if (const auto* fin = std::get_if<FiniteActions>(&action_model)) {
        if (fin->actions.empty()) throw ValidationError("FiniteActions: no actions");
        validate_matrix(fin->receiver_u, n, fin->actions.size(), "receiver_u");
        validate_matrix(fin->sender_v, n, fin->actions.size(), "sender_v");
    } else if (const auto* cs = std::get_if<QuadraticCs>(&action_model)) {
        if (cs->state_values.size() != n) {
            throw DimensionMismatch("QuadraticCs: state_values size != state count");
        }
    } else if (const auto* lin = std::get_if<MeanActionLinear>(&action_model)) {
        if (lin->state_vectors.size() != n) {
            throw DimensionMismatch("MeanActionLinear: state_vectors size != state count");
        }
        const std::size_t k = lin->sender_beta.size();
        if (k == 0) throw ValidationError("MeanActionLinear: empty sender_beta");
        validate_matrix(lin->state_vectors, n, k, "state_vectors");
        if (dot(lin->sender_beta, lin->sender_beta) == 0.0) {
            throw ValidationError("MeanActionLinear: sender_beta must be non-zero");
        }
        // The state cloud must span all k dimensions: the augmented
        // [vector ; 1] columns need rank k + 1.
        std::vector<std::vector<double>> augmented(k + 1, std::vector<double>(n));
        for (std::size_t s = 0; s < n; ++s) {
            for (std::size_t j = 0; j < k; ++j) augmented[j][s] = lin->state_vectors[s][j];
            augmented[k][s] = 1.0;
        }
        if (rank_with_tolerance(std::move(augmented), 1e-9) != k + 1) {
            throw ValidationError(
                "MeanActionLinear: state_vectors do not span a full-dimensional hull");
        }
    }
    return DecisionProblem{std::move(state_labels), std::move(prior), std::move(action_model)};
}

Action best_response(const DecisionProblem& problem, const Belief& mu) {
    if (mu.size() != problem.n_states()) {
        throw DimensionMismatch("best_response: belief size != state count");
    }
    if (const auto* fin = std::get_if<FiniteActions>(&problem.action_model)) {
        const std::size_t n_actions = fin->actions.size();
        std::vector<double> eu(n_actions, 0.0), ev(n_actions, 0.0);
        for (std::size_t s = 0; s < mu.size(); ++s) {
            for (std::size_t a = 0; a < n_actions; ++a) {
                eu[a] += mu[s] * fin->receiver_u[s][a];
                ev[a] += mu[s] * fin->sender_v[s][a];
            }
        }
        const double best_u = *std::max_element(eu.begin(), eu.end());
        std::size_t chosen = n_actions;
        double chosen_v = -std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < n_actions; ++a) {
            if (eu[a] < best_u - kIndifferenceTolerance) continue;
            if (chosen == n_actions || ev[a] > chosen_v + kIndifferenceTolerance) {
                chosen = a;
                chosen_v = ev[a];
            }
        }
        return chosen;
    }
    if (const auto* cs = std::get_if<QuadraticCs>(&problem.action_model)) {
        double mean = 0.0;
        for (std::size_t s = 0; s < mu.size(); ++s) mean += mu[s] * cs->state_values[s];
        return mean;
    }
    const auto& lin = std::get<MeanActionLinear>(problem.action_model);
    return posterior_mean(lin.state_vectors, mu);
}

double sender_value(const DecisionProblem& problem, const Belief& mu, const Action& action) {
    if (const auto* fin = std::get_if<FiniteActions>(&problem.action_model)) {
        const std::size_t a = std::get<std::size_t>(action);
        double acc = 0.0;
        for (std::size_t s = 0; s < mu.size(); ++s) acc += mu[s] * fin->sender_v[s][a];
        return acc;
    }
    if (const auto* cs = std::get_if<QuadraticCs>(&problem.action_model)) {
        const double a = std::get<double>(action);
        double acc = 0.0;
        for (std::size_t s = 0; s < mu.size(); ++s) {
            const double d = a - (cs->state_values[s] + cs->sender_bias_b);
            acc -= mu[s] * d * d;
        }
        return acc;
    }
    const auto& lin = std::get<MeanActionLinear>(problem.action_model);
    return dot(lin.sender_beta, std::get<std::vector<double>>(action));
}

double receiver_value(const DecisionProblem& problem, const Belief& mu, const Action& action) {
    if (const auto* fin = std::get_if<FiniteActions>(&problem.action_model)) {
        const std::size_t a = std::get<std::size_t>(action);
        double acc = 0.0;
        for (std::size_t s = 0; s < mu.size(); ++s) acc += mu[s] * fin->receiver_u[s][a];
        return acc;
    }
    if (const auto* cs = std::get_if<QuadraticCs>(&problem.action_model)) {
        const double a = std::get<double>(action);
        double acc = 0.0;
        for (std::size_t s = 0; s < mu.size(); ++s) {
            const double d = a - cs->state_values[s];
            acc -= mu[s] * d * d;
        }
        return acc;
    }
    // The mean-action model posits the receiver's behavior directly; the
    // quadratic loss around the posterior mean is the canonical rationale.
    const auto& lin = std::get<MeanActionLinear>(problem.action_model);
    const auto& a = std::get<std::vector<double>>(action);
    double acc = 0.0;
    for (std::size_t s = 0; s < mu.size(); ++s) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            const double d = a[j] - lin.state_vectors[s][j];
            acc -= mu[s] * d * d;
        }
    }
    return acc;
}

double v_hat(const DecisionProblem& problem, const Belief& mu) {
    return sender_value(problem, mu, best_response(problem, mu));
}

double v_hat_alpha(const DecisionProblem& problem, const Belief& mu, const BiasParam& alpha) {
    const Belief distorted = apply_bias(alpha, problem.prior, mu);
    return sender_value(problem, mu, best_response(problem, distorted));
}

double full_information_payoff(const DecisionProblem& problem) {
    if (const auto* fin = std::get_if<FiniteActions>(&problem.action_model)) {
        double acc = 0.0;
        for (std::size_t s = 0; s < problem.n_states(); ++s) {
            acc += problem.prior[s] *
                   *std::max_element(fin->sender_v[s].begin(), fin->sender_v[s].end());
        }
        return acc;
    }
    if (std::holds_alternative<QuadraticCs>(problem.action_model)) {
        // The per-state maximum of -(a - (w + b))^2 over a in R is zero.
        return 0.0;
    }
    throw PreconditionError(
        "full_information_payoff: unbounded for MeanActionLinear (linear payoff over R^k)");
}

bool transparent_motives(const DecisionProblem& problem) {
    if (const auto* fin = std::get_if<FiniteActions>(&problem.action_model)) {
        for (std::size_t a = 0; a < fin->actions.size(); ++a) {
            for (std::size_t s = 1; s < problem.n_states(); ++s) {
                if (std::abs(fin->sender_v[s][a] - fin->sender_v[0][a]) > kBeliefTolerance) {
                    return false;
                }
            }
        }
        return true;
    }
    return std::holds_alternative<MeanActionLinear>(problem.action_model);
}

GainCondition common_preference_gain_condition(const DecisionProblem& problem,
                                               const BiasParam& alpha, int grid_resolution) {
    const auto* fin = std::get_if<FiniteActions>(&problem.action_model);
    if (fin == nullptr) {
        throw NotCommonPreferences("common_preference_gain_condition: requires a finite action model");
    }
    for (std::size_t s = 0; s < problem.n_states(); ++s) {
        for (std::size_t a = 0; a < fin->actions.size(); ++a) {
            if (std::abs(fin->receiver_u[s][a] - fin->sender_v[s][a]) > kBeliefTolerance) {
                throw NotCommonPreferences("common_preference_gain_condition: u != v");
            }
        }
    }

    const std::size_t n_actions = fin->actions.size();
    const std::vector<Belief> grid =
        feasible_set_grid_points(problem.prior, alpha, grid_resolution);

    // Argmax sets over the feasible grid, one bitmask per grid point.
    std::vector<std::vector<bool>> grid_opt(grid.size(), std::vector<bool>(n_actions, false));
    for (std::size_t g = 0; g < grid.size(); ++g) {
        std::vector<double> eu(n_actions, 0.0);
        for (std::size_t s = 0; s < problem.n_states(); ++s) {
            for (std::size_t a = 0; a < n_actions; ++a) {
                eu[a] += grid[g][s] * fin->receiver_u[s][a];
            }
        }
        const double best = *std::max_element(eu.begin(), eu.end());
        for (std::size_t a = 0; a < n_actions; ++a) {
            grid_opt[g][a] = eu[a] >= best - kIndifferenceTolerance;
        }
    }

    for (std::size_t witness = 0; witness < problem.n_states(); ++witness) {
        const auto& row = fin->receiver_u[witness];
        const double best = *std::max_element(row.begin(), row.end());
        std::vector<bool> state_opt(n_actions);
        for (std::size_t a = 0; a < n_actions; ++a) {
            state_opt[a] = row[a] >= best - kIndifferenceTolerance;
        }
        bool empty_everywhere = true;
        for (std::size_t g = 0; g < grid.size() && empty_everywhere; ++g) {
            for (std::size_t a = 0; a < n_actions; ++a) {
                if (state_opt[a] && grid_opt[g][a]) {
                    empty_everywhere = false;
                    break;
                }
            }
        }
        if (empty_everywhere) {
            return GainCondition{true, witness};
        }
    }
    return GainCondition{false, std::nullopt};
}

} // namespace persuasion
