#include "persuasion/belief.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace persuasion {

namespace {

std::vector<double> normalized_weights(std::vector<double> w, const char* what) {
    if (w.empty()) {
        throw ValidationError(std::string(what) + ": empty probability vector");
    }
    double sum = 0.0;
    for (double& x : w) {
        if (!std::isfinite(x)) {
            throw ValidationError(std::string(what) + ": non-finite coordinate");
        }
        if (x < 0.0) {
            // Tiny negatives from accumulated floating error are clamped;
            // anything larger is a genuine sign error in the caller.
            if (x < -kBeliefTolerance) {
                std::ostringstream msg;
                msg << what << ": negative coordinate " << x;
                throw ValidationError(msg.str());
            }
            x = 0.0;
        }
        sum += x;
    }
    if (std::abs(sum - 1.0) > kRenormalizeTolerance) {
        std::ostringstream msg;
        msg << what << ": coordinates sum to " << sum << ", expected 1";
        throw ValidationError(msg.str());
    }
    for (double& x : w) {
        x /= sum;
    }
    return w;
}

} // namespace

Belief::Belief(std::vector<double> weights)
    : weights_(normalized_weights(std::move(weights), "Belief")) {}

Belief Belief::uniform(std::size_t n_states) {
    if (n_states == 0) throw ValidationError("Belief::uniform: zero states");
    return Belief(std::vector<double>(n_states, 1.0 / static_cast<double>(n_states)));
}

Belief Belief::vertex(std::size_t n_states, std::size_t state) {
    if (state >= n_states) throw ValidationError("Belief::vertex: state out of range");
    std::vector<double> w(n_states, 0.0);
    w[state] = 1.0;
    return Belief(std::move(w));
}

bool Belief::full_support(double tol) const {
    return std::all_of(weights_.begin(), weights_.end(), [tol](double x) { return x > tol; });
}

double Belief::min_coordinate() const {
    return *std::min_element(weights_.begin(), weights_.end());
}

bool approx_equal(const Belief& a, const Belief& b, double tol) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i] - b[i]) > tol) return false;
    }
    return true;
}

Experiment::Experiment(std::vector<std::string> signals, std::vector<std::vector<double>> kernel)
    : signals_(std::move(signals)), kernel_(std::move(kernel)) {
    if (signals_.empty()) {
        throw ValidationError("Experiment: at least one signal required");
    }
    if (kernel_.empty()) {
        throw ValidationError("Experiment: at least one state required");
    }
    for (std::size_t s = 0; s + 1 < signals_.size(); ++s) {
        for (std::size_t t = s + 1; t < signals_.size(); ++t) {
            if (signals_[s] == signals_[t]) {
                throw ValidationError("Experiment: duplicate signal label '" + signals_[s] + "'");
            }
        }
    }
    for (auto& row : kernel_) {
        if (row.size() != signals_.size()) {
            throw DimensionMismatch("Experiment: kernel row width != number of signals");
        }
        row = normalized_weights(std::move(row), "Experiment row");
    }
}

Experiment Experiment::fully_revealing(std::size_t n_states) {
    std::vector<std::string> signals;
    std::vector<std::vector<double>> kernel(n_states, std::vector<double>(n_states, 0.0));
    signals.reserve(n_states);
    for (std::size_t s = 0; s < n_states; ++s) {
        signals.push_back("x" + std::to_string(s));
        kernel[s][s] = 1.0;
    }
    return Experiment(std::move(signals), std::move(kernel));
}

Experiment Experiment::uninformative(std::size_t n_states) {
    return Experiment({"x"}, std::vector<std::vector<double>>(n_states, {1.0}));
}

std::size_t Experiment::signal_index(const std::string& label) const {
    for (std::size_t i = 0; i < signals_.size(); ++i) {
        if (signals_[i] == label) return i;
    }
    throw ValidationError("Experiment: unknown signal label '" + label + "'");
}

BiasParam::BiasParam(double alpha) : alpha_(alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0)) {
        std::ostringstream msg;
        msg << "BiasParam: alpha must lie in [0, 1), got " << alpha;
        throw ValidationError(msg.str());
    }
}

Belief bayes_posterior(const Belief& prior, const Experiment& exp, std::size_t signal) {
    if (prior.size() != exp.n_states()) {
        throw DimensionMismatch("bayes_posterior: prior size != experiment states");
    }
    if (signal >= exp.n_signals()) {
        throw ValidationError("bayes_posterior: signal index out of range");
    }
    std::vector<double> w(prior.size());
    double marginal = 0.0;
    for (std::size_t s = 0; s < prior.size(); ++s) {
        w[s] = prior[s] * exp.prob(s, signal);
        marginal += w[s];
    }
    if (marginal <= 0.0) {
        throw ZeroLikelihoodSignal("bayes_posterior: signal '" + exp.signal(signal) +
                                   "' has zero marginal likelihood");
    }
    for (double& x : w) x /= marginal;
    return Belief(std::move(w));
}

Belief bayes_posterior(const Belief& prior, const Experiment& exp, const std::string& signal) {
    return bayes_posterior(prior, exp, exp.signal_index(signal));
}

std::vector<double> signal_marginal(const Belief& prior, const Experiment& exp) {
    if (prior.size() != exp.n_states()) {
        throw DimensionMismatch("signal_marginal: prior size != experiment states");
    }
    std::vector<double> m(exp.n_signals(), 0.0);
    for (std::size_t s = 0; s < prior.size(); ++s) {
        for (std::size_t x = 0; x < exp.n_signals(); ++x) {
            m[x] += prior[s] * exp.prob(s, x);
        }
    }
    return m;
}

Belief apply_bias(const BiasParam& alpha, const Belief& anchor, const Belief& bayes) {
    if (anchor.size() != bayes.size()) {
        throw DimensionMismatch("apply_bias: anchor and bayes sizes differ");
    }
    const double a = alpha.value();
    std::vector<double> w(anchor.size());
    for (std::size_t s = 0; s < anchor.size(); ++s) {
        w[s] = a * anchor[s] + (1.0 - a) * bayes[s];
    }
    return Belief(std::move(w));
}

Belief invert_bias(const BiasParam& alpha, const Belief& anchor, const Belief& biased) {
    if (anchor.size() != biased.size()) {
        throw DimensionMismatch("invert_bias: anchor and biased sizes differ");
    }
    const double a = alpha.value();
    std::vector<double> w(anchor.size());
    for (std::size_t s = 0; s < anchor.size(); ++s) {
        const double floor = a * anchor[s];
        if (biased[s] < floor - kBeliefTolerance) {
            std::ostringstream msg;
            msg << "invert_bias: coordinate " << s << " is " << biased[s]
                << ", below the feasibility floor alpha*anchor = " << floor;
            throw InfeasibleBiasedPosterior(msg.str());
        }
        w[s] = std::max(0.0, (biased[s] - floor) / (1.0 - a));
    }
    return Belief(std::move(w));
}

bool is_feasible_biased_posterior(const BiasParam& alpha, const Belief& prior,
                                  const Belief& candidate) {
    if (prior.size() != candidate.size()) {
        throw DimensionMismatch("is_feasible_biased_posterior: sizes differ");
    }
    for (std::size_t s = 0; s < prior.size(); ++s) {
        if (candidate[s] < alpha.value() * prior[s] - kBeliefTolerance) return false;
    }
    return true;
}

Experiment experiment_from_posteriors(const Belief& prior,
                                      const std::vector<std::pair<Belief, double>>& targets) {
    if (!prior.full_support()) {
        throw ZeroPriorState("experiment_from_posteriors: prior must have full support");
    }
    if (targets.empty()) {
        throw ValidationError("experiment_from_posteriors: no targets");
    }
    double prob_sum = 0.0;
    std::vector<double> mean(prior.size(), 0.0);
    for (const auto& [mu, p] : targets) {
        if (mu.size() != prior.size()) {
            throw DimensionMismatch("experiment_from_posteriors: target size != prior size");
        }
        if (p < -kBeliefTolerance) {
            throw ValidationError("experiment_from_posteriors: negative target probability");
        }
        prob_sum += p;
        for (std::size_t s = 0; s < prior.size(); ++s) mean[s] += p * mu[s];
    }
    if (std::abs(prob_sum - 1.0) > kRenormalizeTolerance) {
        throw ValidationError("experiment_from_posteriors: target probabilities do not sum to 1");
    }
    for (std::size_t s = 0; s < prior.size(); ++s) {
        if (std::abs(mean[s] - prior[s]) > kRenormalizeTolerance) {
            std::ostringstream msg;
            msg << "experiment_from_posteriors: targets average to " << mean[s] << " != prior "
                << prior[s] << " at state " << s;
            throw NotBayesPlausible(msg.str());
        }
    }

    // Zero-probability targets carry no signal; drop them for the minimal
    // canonical realization.
    std::vector<std::string> signals;
    std::vector<std::vector<double>> kernel(prior.size());
    std::size_t kept = 0;
    for (const auto& [mu, p] : targets) {
        if (p <= 0.0) continue;
        signals.push_back("s" + std::to_string(kept++));
        for (std::size_t s = 0; s < prior.size(); ++s) {
            kernel[s].push_back(p * mu[s] / prior[s]);
        }
    }
    if (signals.empty()) {
        throw ValidationError("experiment_from_posteriors: all targets have zero probability");
    }
    return Experiment(std::move(signals), std::move(kernel));
}

} // namespace persuasion
