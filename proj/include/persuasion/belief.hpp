#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "persuasion/errors.hpp"

namespace persuasion {

// Sum-to-one slack accepted at construction: below this the vector is
// renormalized, beyond it the input is rejected as malformed.
inline constexpr double kRenormalizeTolerance = 1e-9;
// Post-construction normalization target and the default coordinatewise
// comparison tolerance.
inline constexpr double kBeliefTolerance = 1e-12;

/// A probability distribution over the finite state set, normalized on
/// construction. The universal currency of the toolkit: priors, Bayesian
/// posteriors and biased posteriors are all Beliefs.
class Belief {
  public:
    explicit Belief(std::vector<double> weights);

    static Belief uniform(std::size_t n_states);
    static Belief vertex(std::size_t n_states, std::size_t state);

    std::size_t size() const { return weights_.size(); }
    double operator[](std::size_t state) const { return weights_[state]; }
    const std::vector<double>& weights() const { return weights_; }

    bool full_support(double tol = 0.0) const;
    double min_coordinate() const;

    bool operator==(const Belief& other) const { return weights_ == other.weights_; }

  private:
    std::vector<double> weights_;
};

/// True when the two beliefs agree coordinatewise within tol.
bool approx_equal(const Belief& a, const Belief& b, double tol = kBeliefTolerance);

/// A state-conditional distribution over a finite signal set. Row
/// `state` of the kernel is the signal distribution in that state.
class Experiment {
  public:
    Experiment(std::vector<std::string> signals, std::vector<std::vector<double>> kernel);

    /// One signal per state, kernel = identity.
    static Experiment fully_revealing(std::size_t n_states);
    /// Single signal carried with probability one in every state.
    static Experiment uninformative(std::size_t n_states);

    std::size_t n_signals() const { return signals_.size(); }
    std::size_t n_states() const { return kernel_.size(); }
    const std::vector<std::string>& signals() const { return signals_; }
    const std::string& signal(std::size_t i) const { return signals_[i]; }
    /// P(signal j | state). Exact label match; throws if the label is unknown.
    std::size_t signal_index(const std::string& label) const;
    double prob(std::size_t state, std::size_t signal) const { return kernel_[state][signal]; }
    const std::vector<std::vector<double>>& kernel() const { return kernel_; }

    bool operator==(const Experiment& other) const {
        return signals_ == other.signals_ && kernel_ == other.kernel_;
    }

  private:
    std::vector<std::string> signals_;
    std::vector<std::vector<double>> kernel_; // kernel_[state][signal]
};

/// Strength of the conservative-Bayesian distortion, alpha in [0, 1).
/// alpha = 0 is exact Bayesian updating.
class BiasParam {
  public:
    BiasParam() : alpha_(0.0) {}
    explicit BiasParam(double alpha);
    double value() const { return alpha_; }

  private:
    double alpha_;
};

/// Posterior given prior, experiment and realized signal label.
/// Throws ZeroLikelihoodSignal when the signal has zero marginal probability.
Belief bayes_posterior(const Belief& prior, const Experiment& exp, const std::string& signal);
Belief bayes_posterior(const Belief& prior, const Experiment& exp, std::size_t signal);

/// Marginal distribution over signals induced by prior and experiment.
std::vector<double> signal_marginal(const Belief& prior, const Experiment& exp);

/// The conservative distortion: alpha * anchor + (1 - alpha) * bayes.
Belief apply_bias(const BiasParam& alpha, const Belief& anchor, const Belief& bayes);

/// Unique Bayesian preimage of a biased posterior, i.e. the mu with
/// apply_bias(alpha, anchor, mu) == biased. Requires biased >= alpha * anchor
/// coordinatewise; throws InfeasibleBiasedPosterior otherwise.
Belief invert_bias(const BiasParam& alpha, const Belief& anchor, const Belief& biased);

/// Membership in the feasible set F(prior, alpha) = { mu' : mu' >= alpha * prior },
/// the biased posteriors reachable in one step. Weak inequality within 1e-12.
bool is_feasible_biased_posterior(const BiasParam& alpha, const Belief& prior,
                                  const Belief& candidate);

/// Builds the canonical experiment inducing the given Bayesian posteriors with
/// the given probabilities: one distinct signal per positive-probability target,
/// P(x_i | state) = p_i * mu_i(state) / prior(state). The targets must average
/// back to the prior (tolerance 1e-9) and the prior must have full support.
Experiment experiment_from_posteriors(const Belief& prior,
                                      const std::vector<std::pair<Belief, double>>& targets);

} // namespace persuasion
