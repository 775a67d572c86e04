#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "persuasion/belief.hpp"
#include "persuasion/concavify.hpp"
#include "persuasion/decision.hpp"
#include "persuasion/strategy.hpp"

namespace persuasion {

/// Repeats the fully revealing experiment for `periods` periods. After the
/// first revelation only the confirming signal can realize, so contradicted
/// branches STOP immediately; the built tree is payoff-identical to blind
/// repetition and stays linear in size.
StrategyNode repeated_full_revelation(const DecisionProblem& problem, std::size_t periods);

/// Full revelation, then one extra revelation on the branch of the extreme
/// state (largest state value when the sender's bias b >= 0, smallest
/// otherwise). Requires the QuadraticCs model.
StrategyNode cs_two_stage(const DecisionProblem& problem);

/// Full revelation, then one extra revelation on the branch of a state whose
/// sender payoff beats the prior mean's. Requires MeanActionLinear; throws
/// DegenerateGeometry if no state qualifies.
StrategyNode linear_two_stage(const DecisionProblem& problem);

/// Generalization of the two-stage trees: reveal fully, keep re-revealing on
/// the chosen state's branch until `periods` total periods have elapsed,
/// STOP everywhere else.
StrategyNode state_revelation_chain(std::size_t n_states, std::size_t favored_state,
                                    std::size_t periods);

/// Two-action transparent-motives booster: stage one realizes `base` (an
/// optimal distribution of biased posteriors); every branch where the
/// receiver still plays the sender-worst action appends up to `boost_periods`
/// rounds of a two-signal experiment that sends the boosting signal with
/// probability 1 - epsilon in the target state and epsilon elsewhere. The
/// boost continues only while the boosting signal keeps realizing, so the
/// tree stays linear in the horizon.
StrategyNode two_action_booster(const DecisionProblem& problem, const BiasParam& alpha,
                                const ConcavificationResult& base, double epsilon = 0.1,
                                std::size_t boost_periods = 40);

/// An interior, affinely independent set of target beliefs together with the
/// solved barycentric-coordinate map over its convex hull.
class BarycentricFrame {
  public:
    explicit BarycentricFrame(std::vector<Belief> support);

    const std::vector<Belief>& support() const { return support_; }
    std::size_t size() const { return support_.size(); }

    /// Barycentric coefficients of mu in the frame; throws NotInHull when a
    /// coefficient falls outside [-1e-9, 1 + 1e-9] or mu leaves the affine
    /// hull.
    std::vector<double> coefficients(const Belief& mu) const;

  private:
    std::vector<Belief> support_;
    // Factorized normal-equation solve for the coefficients.
    std::vector<std::vector<double>> solver_; // size M x (n_states + 1)
};

/// One period of the absorbing Markov strategy: the current belief, the mass
/// carried on it, and the absorption bookkeeping.
struct MarkovPersuasionState {
    Belief current;
    double mass = 0.0;
};

struct MarkovRunResult {
    std::vector<double> absorbed;                    // mass absorbed at each frame point
    double unabsorbed_mass = 0.0;                    // residual after the horizon
    std::vector<MarkovPersuasionState> residual;     // where the residual mass sits
    std::vector<double> payoff_trace;                // payoff valued after each period
    double payoff = 0.0;                             // final trace entry
};

/// Exact forward recursion of the absorbing Markov persuasion chain on
/// Conv(frame): from belief mu, frame point i is drawn with probability
/// (1-a) b_i / (1 - a B) when reachable (mu_i* >= a mu) and b_i / (1 - a B)
/// when not, where b are barycentric coefficients and B the reachable mass;
/// a reachable draw absorbs at mu_i*, an unreachable one moves to
/// a*mu + (1-a)*mu_i*. Beliefs are merged at 1e-9 between periods and every
/// expansion is checked for one-step feasibility.
MarkovRunResult markov_absorbing_run(const BarycentricFrame& frame, const BiasParam& alpha,
                                     const std::vector<double>& target_weights,
                                     const Belief& mu0, std::size_t max_periods,
                                     const DecisionProblem& problem);

/// The geometric two-point scheme for a biased sender anchored at the
/// original prior: stage one splits the prior between `target` (weight t1 =
/// (gamma - 1) / gamma) and the opposite point mu_low = gamma*mu0 +
/// (1-gamma)*target; each later stage stops at `target` and re-splits mu_low
/// with weight t2 = alpha * t1.
StrategyNode pbpo_geometric(const DecisionProblem& problem, const BiasParam& alpha,
                            const Belief& target, double gamma_bar, std::size_t periods);

/// Largest gamma > 1 keeping gamma*mu0 + (1-gamma)*target inside
/// F(mu0, alpha), shrunk by 1e-9 relative to stay strictly feasible and
/// capped at 1e6 for targets vanishingly close to the prior.
double find_gamma_bar(const Belief& mu0, const Belief& target, const BiasParam& alpha);

} // namespace persuasion
