#pragma once

#include <utility>
#include <vector>

#include "persuasion/belief.hpp"
#include "persuasion/decision.hpp"

namespace persuasion {

/// Discretization of the belief simplex for the one-shot value programs.
/// `resolution` is the number of points per simplex edge; with
/// refine_boundaries the solver bisects lattice segments whose endpoints
/// induce different receiver actions and inserts points on both sides of the
/// jump, pinning the optimum onto the best-response cell boundary.
struct GridSpec {
    int resolution = 201;
    bool refine_boundaries = true;
};

/// Value and an optimal finite-support posterior distribution for one of the
/// one-shot programs. Supports come from a basic solution of the linear
/// program, so they carry at most |states| + 1 points, sum to one, and
/// average back to the prior. certificate_gap is the primal value minus the
/// verified grid upper envelope at the prior (<= 0 up to solver tolerance).
struct ConcavificationResult {
    double value = 0.0;
    std::vector<std::pair<Belief, double>> support;
    double certificate_gap = 0.0;
};

/// Classic one-shot persuasion value: the concave envelope of v_hat at the
/// prior, over distributions of Bayesian posteriors.
ConcavificationResult solve_V(const DecisionProblem& problem, const GridSpec& grid = {});

/// One-shot value against a conservative receiver: same program with
/// objective v_hat_alpha. Support reported in Bayesian-posterior coordinates.
ConcavificationResult solve_V_alpha(const DecisionProblem& problem, const BiasParam& alpha,
                                    const GridSpec& grid = {});

/// One-shot value when sender and receiver share the bias: objective v_hat
/// over distributions of biased posteriors confined to F(prior, alpha).
/// Support reported in biased-posterior coordinates.
ConcavificationResult solve_V_alpha_biased(const DecisionProblem& problem, const BiasParam& alpha,
                                           const GridSpec& grid = {});

/// Transparent-motives change of variable: the restricted program over biased
/// posteriors with objective v(a_hat(mu')). Agrees with solve_V_alpha when
/// the sender's utility is state-independent; throws NotTransparentMotives
/// otherwise.
ConcavificationResult solve_transparent(const DecisionProblem& problem, const BiasParam& alpha,
                                        const GridSpec& grid = {});

struct FeasibleSupremum {
    double value = 0.0;
    Belief argmax;
};

/// Maximum of v_hat over a grid of the feasible set F(prior, alpha), with
/// boundary refinement: the sequential value ceiling for a biased sender
/// under the original-prior-anchored procedure.
FeasibleSupremum sup_over_feasible(const DecisionProblem& problem, const BiasParam& alpha,
                                   const GridSpec& grid = {});

} // namespace persuasion
