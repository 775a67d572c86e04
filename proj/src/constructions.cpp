#include "persuasion/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace persuasion {

namespace {

// Confirming chain: after a state has been revealed, keep revealing it for
// `remaining` more periods; contradicted signals are zero-probability and
// terminate immediately.
StrategyNode confirm_chain(std::size_t n_states, std::size_t state, std::size_t remaining) {
    if (remaining == 0) return StrategyNode::stop();
    std::vector<StrategyNode> children;
    children.reserve(n_states);
    for (std::size_t s = 0; s < n_states; ++s) {
        children.push_back(s == state ? confirm_chain(n_states, state, remaining - 1)
                                      : StrategyNode::stop());
    }
    return StrategyNode::continue_with(Experiment::fully_revealing(n_states),
                                       std::move(children));
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

} // namespace

StrategyNode repeated_full_revelation(const DecisionProblem& problem, std::size_t periods) {
    if (periods == 0) throw ValidationError("repeated_full_revelation: periods must be >= 1");
    const std::size_t n = problem.n_states();
    std::vector<StrategyNode> children;
    children.reserve(n);
    for (std::size_t s = 0; s < n; ++s) {
        children.push_back(confirm_chain(n, s, periods - 1));
    }
    return StrategyNode::continue_with(Experiment::fully_revealing(n), std::move(children));
}

StrategyNode state_revelation_chain(std::size_t n_states, std::size_t favored_state,
                                    std::size_t periods) {
    if (periods == 0) throw ValidationError("state_revelation_chain: periods must be >= 1");
    if (favored_state >= n_states) {
        throw ValidationError("state_revelation_chain: favored state out of range");
    }
    std::vector<StrategyNode> children;
    children.reserve(n_states);
    for (std::size_t s = 0; s < n_states; ++s) {
        children.push_back(s == favored_state ? confirm_chain(n_states, favored_state, periods - 1)
                                              : StrategyNode::stop());
    }
    return StrategyNode::continue_with(Experiment::fully_revealing(n_states),
                                       std::move(children));
}

StrategyNode cs_two_stage(const DecisionProblem& problem) {
    const auto* cs = std::get_if<QuadraticCs>(&problem.action_model);
    if (cs == nullptr) {
        throw PreconditionViolated("cs_two_stage: requires the QuadraticCs action model");
    }
    std::size_t extreme = 0;
    for (std::size_t s = 1; s < cs->state_values.size(); ++s) {
        const bool better = cs->sender_bias_b >= 0.0
                                ? cs->state_values[s] > cs->state_values[extreme]
                                : cs->state_values[s] < cs->state_values[extreme];
        if (better) extreme = s;
    }
    return state_revelation_chain(problem.n_states(), extreme, 2);
}

StrategyNode linear_two_stage(const DecisionProblem& problem) {
    const auto* lin = std::get_if<MeanActionLinear>(&problem.action_model);
    if (lin == nullptr) {
        throw PreconditionViolated("linear_two_stage: requires the MeanActionLinear action model");
    }
    std::vector<double> prior_mean(lin->sender_beta.size(), 0.0);
    for (std::size_t s = 0; s < problem.n_states(); ++s) {
        for (std::size_t j = 0; j < prior_mean.size(); ++j) {
            prior_mean[j] += problem.prior[s] * lin->state_vectors[s][j];
        }
    }
    const double mean_payoff = dot(lin->sender_beta, prior_mean);
    std::size_t favored = problem.n_states();
    double favored_payoff = mean_payoff;
    for (std::size_t s = 0; s < problem.n_states(); ++s) {
        const double payoff = dot(lin->sender_beta, lin->state_vectors[s]);
        if (payoff > favored_payoff) {
            favored = s;
            favored_payoff = payoff;
        }
    }
    if (favored == problem.n_states()) {
        throw DegenerateGeometry(
            "linear_two_stage: no state beats the prior mean payoff; the states span no "
            "direction of improvement");
    }
    return state_revelation_chain(problem.n_states(), favored, 2);
}

StrategyNode two_action_booster(const DecisionProblem& problem, const BiasParam& alpha,
                                const ConcavificationResult& base, double epsilon,
                                std::size_t boost_periods) {
    const auto* fin = std::get_if<FiniteActions>(&problem.action_model);
    if (fin == nullptr) {
        throw PreconditionViolated("two_action_booster: requires a finite action model");
    }
    if (fin->actions.size() != 2) {
        throw PreconditionViolated("two_action_booster: requires exactly two actions");
    }
    if (!transparent_motives(problem)) {
        throw PreconditionViolated("two_action_booster: sender utility must be state-independent");
    }
    if (!(epsilon > 0.0 && epsilon < 0.5)) {
        throw PreconditionViolated("two_action_booster: epsilon must lie in (0, 0.5)");
    }
    const std::size_t preferred = fin->sender_v[0][0] > fin->sender_v[0][1] ? 0 : 1;
    const std::size_t fallback = 1 - preferred;
    if (!(fin->sender_v[0][preferred] > fin->sender_v[0][fallback])) {
        throw PreconditionViolated("two_action_booster: the sender must strictly rank the actions");
    }
    if (std::get<std::size_t>(best_response(problem, problem.prior)) != fallback) {
        throw PreconditionViolated(
            "two_action_booster: the receiver already plays the sender-preferred action at the "
            "prior");
    }
    // The boosting state: the preferred action must beat the fallback
    // somewhere, otherwise no belief can ever move the receiver.
    std::size_t boost_state = problem.n_states();
    double best_gap = 0.0;
    for (std::size_t s = 0; s < problem.n_states(); ++s) {
        const double gap = fin->receiver_u[s][preferred] - fin->receiver_u[s][fallback];
        if (gap > best_gap) {
            boost_state = s;
            best_gap = gap;
        }
    }
    if (boost_state == problem.n_states()) {
        throw PreconditionViolated(
            "two_action_booster: no state makes the preferred action receiver-optimal");
    }
    if (base.support.empty()) {
        throw PreconditionViolated("two_action_booster: base support is empty");
    }
    std::vector<double> mean(problem.n_states(), 0.0);
    double mass = 0.0;
    for (const auto& [mu, p] : base.support) {
        if (!is_feasible_biased_posterior(alpha, problem.prior, mu)) {
            throw PreconditionViolated(
                "two_action_booster: base support leaves the feasible set F(prior, alpha)");
        }
        mass += p;
        for (std::size_t s = 0; s < problem.n_states(); ++s) mean[s] += p * mu[s];
    }
    if (std::abs(mass - 1.0) > kRenormalizeTolerance) {
        throw PreconditionViolated("two_action_booster: base probabilities do not sum to 1");
    }
    for (std::size_t s = 0; s < problem.n_states(); ++s) {
        if (std::abs(mean[s] - problem.prior[s]) > kRenormalizeTolerance) {
            throw PreconditionViolated("two_action_booster: base support is not Bayes plausible");
        }
    }

    // Stage one realizes the base distribution of biased posteriors through
    // its Bayesian preimages.
    std::vector<std::pair<Belief, double>> bayes_targets;
    std::vector<const Belief*> kept_biased;
    for (const auto& [mu_biased, p] : base.support) {
        if (p <= 0.0) continue;
        bayes_targets.emplace_back(invert_bias(alpha, problem.prior, mu_biased), p);
        kept_biased.push_back(&mu_biased);
    }
    Experiment stage_one = experiment_from_posteriors(problem.prior, bayes_targets);

    // The boosting experiment: signal "xbar" with probability 1 - epsilon in
    // the boosting state, epsilon elsewhere. Continuation rides the xbar
    // spine only; the first off-signal stops the process.
    std::vector<std::vector<double>> kernel(problem.n_states());
    for (std::size_t s = 0; s < problem.n_states(); ++s) {
        const double p_bar = s == boost_state ? 1.0 - epsilon : epsilon;
        kernel[s] = {p_bar, 1.0 - p_bar};
    }
    const Experiment boost_exp({"xbar", "x"}, kernel);
    StrategyNode spine = StrategyNode::stop();
    for (std::size_t k = 0; k < boost_periods; ++k) {
        std::vector<StrategyNode> children;
        children.push_back(std::move(spine));
        children.push_back(StrategyNode::stop());
        spine = StrategyNode::continue_with(boost_exp, std::move(children));
    }

    std::vector<StrategyNode> children;
    children.reserve(kept_biased.size());
    for (const Belief* mu_biased : kept_biased) {
        const bool converted =
            std::get<std::size_t>(best_response(problem, *mu_biased)) == preferred;
        children.push_back(converted ? StrategyNode::stop() : spine);
    }
    return StrategyNode::continue_with(std::move(stage_one), std::move(children));
}

// --- barycentric frame ------------------------------------------------------

namespace {

// Solves the M x M system G x = rhs in place via partial-pivot elimination.
std::vector<double> solve_square(std::vector<std::vector<double>> g, std::vector<double> rhs) {
    const std::size_t m = g.size();
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < m; ++r) {
            if (std::abs(g[r][col]) > std::abs(g[pivot][col])) pivot = r;
        }
        if (std::abs(g[pivot][col]) < 1e-14) {
            throw DegenerateGeometry("barycentric solve: singular system");
        }
        std::swap(g[pivot], g[col]);
        std::swap(rhs[pivot], rhs[col]);
        for (std::size_t r = 0; r < m; ++r) {
            if (r == col) continue;
            const double factor = g[r][col] / g[col][col];
            if (factor == 0.0) continue;
            for (std::size_t k = col; k < m; ++k) g[r][k] -= factor * g[col][k];
            rhs[r] -= factor * rhs[col];
        }
    }
    for (std::size_t i = 0; i < m; ++i) rhs[i] /= g[i][i];
    return rhs;
}

std::size_t matrix_rank(std::vector<std::vector<double>> a, double tol) {
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

BarycentricFrame::BarycentricFrame(std::vector<Belief> support) : support_(std::move(support)) {
    if (support_.empty()) throw ValidationError("BarycentricFrame: empty support");
    const std::size_t n = support_[0].size();
    const std::size_t m = support_.size();
    for (const Belief& mu : support_) {
        if (mu.size() != n) throw DimensionMismatch("BarycentricFrame: mixed belief sizes");
        if (mu.min_coordinate() < 1e-9) {
            throw ValidationError("BarycentricFrame: support beliefs must be interior");
        }
    }
    // Augmented matrix [mu_i ; 1] as columns; affine independence = full
    // column rank.
    std::vector<std::vector<double>> augmented(n + 1, std::vector<double>(m));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t s = 0; s < n; ++s) augmented[s][i] = support_[i][s];
        augmented[n][i] = 1.0;
    }
    if (matrix_rank(augmented, 1e-9) != m) {
        throw ValidationError("BarycentricFrame: support beliefs are affinely dependent");
    }
    // Normal-equation coefficient solver: beta = (A^T A)^{-1} A^T [mu ; 1].
    std::vector<std::vector<double>> gram(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t r = 0; r <= n; ++r) gram[i][j] += augmented[r][i] * augmented[r][j];
        }
    }
    solver_.assign(m, std::vector<double>(n + 1, 0.0));
    for (std::size_t r = 0; r <= n; ++r) {
        std::vector<double> rhs(m);
        for (std::size_t i = 0; i < m; ++i) rhs[i] = augmented[r][i];
        const std::vector<double> col = solve_square(gram, std::move(rhs));
        for (std::size_t i = 0; i < m; ++i) solver_[i][r] = col[i];
    }
}

std::vector<double> BarycentricFrame::coefficients(const Belief& mu) const {
    const std::size_t n = support_[0].size();
    if (mu.size() != n) throw DimensionMismatch("BarycentricFrame: belief size mismatch");
    std::vector<double> beta(support_.size(), 0.0);
    for (std::size_t i = 0; i < support_.size(); ++i) {
        for (std::size_t s = 0; s < n; ++s) beta[i] += solver_[i][s] * mu[s];
        beta[i] += solver_[i][n];
    }
    // Reconstruction residual detects beliefs outside the affine hull.
    for (std::size_t s = 0; s < n; ++s) {
        double rec = 0.0;
        for (std::size_t i = 0; i < support_.size(); ++i) rec += beta[i] * support_[i][s];
        if (std::abs(rec - mu[s]) > 1e-7) {
            throw NotInHull("BarycentricFrame: belief is outside the affine hull of the support");
        }
    }
    for (double b : beta) {
        if (b < -1e-9 || b > 1.0 + 1e-9) {
            throw NotInHull("BarycentricFrame: belief is outside the convex hull of the support");
        }
    }
    return beta;
}

MarkovRunResult markov_absorbing_run(const BarycentricFrame& frame, const BiasParam& alpha,
                                     const std::vector<double>& target_weights,
                                     const Belief& mu0, std::size_t max_periods,
                                     const DecisionProblem& problem) {
    const std::size_t m = frame.size();
    if (target_weights.size() != m) {
        throw WeightMismatch("markov_absorbing_run: weight count != frame size");
    }
    const std::vector<double> beta0 = frame.coefficients(mu0); // throws NotInHull when outside
    double weight_sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        if (std::abs(target_weights[i] - beta0[i]) > 1e-7) {
            std::ostringstream msg;
            msg << "markov_absorbing_run: target weight " << i << " is " << target_weights[i]
                << " but the barycentric coefficient of the prior is " << beta0[i];
            throw WeightMismatch(msg.str());
        }
        weight_sum += target_weights[i];
    }
    if (std::abs(weight_sum - 1.0) > kRenormalizeTolerance) {
        throw WeightMismatch("markov_absorbing_run: target weights do not sum to 1");
    }

    MarkovRunResult result;
    result.absorbed.assign(m, 0.0);
    std::vector<std::pair<Belief, double>> alive{{mu0, 1.0}};

    auto record_payoff = [&]() {
        double payoff = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            payoff += result.absorbed[i] * v_hat(problem, frame.support()[i]);
        }
        for (const auto& [mu, mass] : alive) payoff += mass * v_hat(problem, mu);
        result.payoff_trace.push_back(payoff);
        result.payoff = payoff;
    };
    record_payoff(); // period 0: everything still at the prior

    for (std::size_t period = 0; period < max_periods && !alive.empty(); ++period) {
        std::vector<std::pair<Belief, double>> next;
        for (const auto& [mu, mass] : alive) {
            const std::vector<double> beta = frame.coefficients(mu);
            std::vector<char> reachable(m, 0);
            double reachable_mass = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                if (is_feasible_biased_posterior(alpha, mu, frame.support()[i])) {
                    reachable[i] = 1;
                    reachable_mass += beta[i];
                }
            }
            const double denom = 1.0 - alpha.value() * reachable_mass;

            // One-step feasibility audit of this expansion: the induced
            // posterior distribution must average back to mu and stay inside
            // F(mu, alpha).
            std::vector<double> expansion_mean(mu.size(), 0.0);
            double expansion_prob = 0.0;

            for (std::size_t i = 0; i < m; ++i) {
                if (beta[i] <= kBranchPruneThreshold) continue;
                double prob;
                Belief destination = frame.support()[i];
                if (reachable[i]) {
                    prob = (1.0 - alpha.value()) * beta[i] / denom;
                    result.absorbed[i] += mass * prob;
                } else {
                    prob = beta[i] / denom;
                    destination = apply_bias(alpha, mu, frame.support()[i]);
                    next.emplace_back(destination, mass * prob);
                }
                if (!is_feasible_biased_posterior(alpha, mu, destination)) {
                    throw PersuasionError(
                        "markov_absorbing_run: expansion left the feasible set");
                }
                expansion_prob += prob;
                for (std::size_t s = 0; s < mu.size(); ++s) {
                    expansion_mean[s] += prob * destination[s];
                }
            }
            if (std::abs(expansion_prob - 1.0) > kRenormalizeTolerance) {
                throw PersuasionError("markov_absorbing_run: expansion probabilities broke");
            }
            for (std::size_t s = 0; s < mu.size(); ++s) {
                if (std::abs(expansion_mean[s] - mu[s]) > kRenormalizeTolerance) {
                    throw PersuasionError(
                        "markov_absorbing_run: expansion is not Bayes plausible");
                }
            }
        }
        alive = merge_belief_distribution(std::move(next));
        record_payoff();
    }

    result.unabsorbed_mass = 0.0;
    result.residual.clear();
    for (auto& [mu, mass] : alive) {
        result.unabsorbed_mass += mass;
        result.residual.push_back(MarkovPersuasionState{std::move(mu), mass});
    }
    return result;
}

StrategyNode pbpo_geometric(const DecisionProblem& problem, const BiasParam& alpha,
                            const Belief& target, double gamma_bar, std::size_t periods) {
    const Belief& mu0 = problem.prior;
    if (!is_feasible_biased_posterior(alpha, mu0, target)) {
        throw TargetInfeasible("pbpo_geometric: target is outside F(prior, alpha)");
    }
    if (approx_equal(target, mu0, kBeliefTolerance)) {
        throw TargetInfeasible(
            "pbpo_geometric: target equals the prior; a bare STOP already attains v_hat(prior)");
    }
    if (!(gamma_bar > 1.0)) {
        throw GammaOutOfRange("pbpo_geometric: gamma_bar must exceed 1");
    }
    if (periods == 0) throw ValidationError("pbpo_geometric: periods must be >= 1");

    std::vector<double> low(mu0.size());
    for (std::size_t s = 0; s < mu0.size(); ++s) {
        low[s] = gamma_bar * mu0[s] + (1.0 - gamma_bar) * target[s];
        if (low[s] < alpha.value() * mu0[s] - kBeliefTolerance) {
            throw GammaOutOfRange(
                "pbpo_geometric: gamma_bar pushes the low point outside F(prior, alpha)");
        }
    }
    Belief mu_low{std::move(low)};

    const double t1 = (gamma_bar - 1.0) / gamma_bar;
    const double t2 = alpha.value() * t1;

    // Bayesian preimages relative to the original-prior anchor; the
    // continuation split is exactly Bayes plausible from mu_low.
    const Belief high_preimage = invert_bias(alpha, mu0, target);
    const Belief low_preimage = invert_bias(alpha, mu0, mu_low);
    Experiment stage_one =
        experiment_from_posteriors(mu0, {{high_preimage, t1}, {low_preimage, 1.0 - t1}});
    Experiment continuation =
        experiment_from_posteriors(mu_low, {{high_preimage, t2}, {low_preimage, 1.0 - t2}});

    StrategyNode tail = StrategyNode::stop();
    for (std::size_t k = 1; k < periods; ++k) {
        std::vector<StrategyNode> children;
        children.push_back(StrategyNode::stop()); // target reached
        children.push_back(std::move(tail));      // still at the low point
        tail = StrategyNode::continue_with(continuation, std::move(children));
    }
    std::vector<StrategyNode> children;
    children.push_back(StrategyNode::stop());
    children.push_back(std::move(tail));
    return StrategyNode::continue_with(std::move(stage_one), std::move(children));
}

double find_gamma_bar(const Belief& mu0, const Belief& target, const BiasParam& alpha) {
    if (mu0.size() != target.size()) {
        throw DimensionMismatch("find_gamma_bar: belief sizes differ");
    }
    if (!is_feasible_biased_posterior(alpha, mu0, target)) {
        throw TargetInfeasible("find_gamma_bar: target is outside F(prior, alpha)");
    }
    if (approx_equal(target, mu0, kBeliefTolerance)) {
        throw TargetInfeasible("find_gamma_bar: target equals the prior");
    }
    constexpr double kGammaCap = 1e6;
    double gamma = kGammaCap;
    for (std::size_t s = 0; s < mu0.size(); ++s) {
        // Binding constraints come from coordinates the target raises; there
        // gamma * mu0 + (1 - gamma) * target crosses alpha * mu0 first.
        if (target[s] > mu0[s]) {
            gamma = std::min(gamma, (target[s] - alpha.value() * mu0[s]) / (target[s] - mu0[s]));
        }
    }
    gamma *= 1.0 - 1e-9;
    if (!(gamma > 1.0)) {
        throw GammaOutOfRange("find_gamma_bar: no gamma > 1 keeps the low point feasible");
    }
    return gamma;
}

} // namespace persuasion
