#pragma once

#include <vector>

#include "persuasion/belief.hpp"

namespace persuasion {

/// Uniform lattice on the belief simplex with `resolution` points per edge
/// (denominator resolution - 1). Deterministic lexicographic order.
std::vector<Belief> simplex_grid_points(std::size_t n_states, int resolution);

/// The same lattice mapped affinely onto F(mu0, alpha) = alpha*mu0 + (1-alpha)*simplex,
/// the set of feasible one-step biased posteriors.
std::vector<Belief> feasible_set_grid_points(const Belief& mu0, const BiasParam& alpha,
                                             int resolution);

} // namespace persuasion
