#include "persuasion/simplex_grid.hpp"

namespace persuasion {

namespace {

void compositions(std::size_t coords_left, int units_left, int denominator,
                  std::vector<double>& partial, std::vector<Belief>& out) {
    if (coords_left == 1) {
        partial.push_back(static_cast<double>(units_left) / denominator);
        out.emplace_back(partial);
        partial.pop_back();
        return;
    }
    for (int k = 0; k <= units_left; ++k) {
        partial.push_back(static_cast<double>(k) / denominator);
        compositions(coords_left - 1, units_left - k, denominator, partial, out);
        partial.pop_back();
    }
}

} // namespace

std::vector<Belief> simplex_grid_points(std::size_t n_states, int resolution) {
    if (n_states == 0) throw ValidationError("simplex_grid_points: zero states");
    if (resolution < 2) throw ValidationError("simplex_grid_points: resolution must be >= 2");
    std::vector<Belief> out;
    std::vector<double> partial;
    compositions(n_states, resolution - 1, resolution - 1, partial, out);
    return out;
}

std::vector<Belief> feasible_set_grid_points(const Belief& mu0, const BiasParam& alpha,
                                             int resolution) {
    std::vector<Belief> grid = simplex_grid_points(mu0.size(), resolution);
    if (alpha.value() == 0.0) return grid;
    std::vector<Belief> out;
    out.reserve(grid.size());
    for (const Belief& nu : grid) {
        out.push_back(apply_bias(alpha, mu0, nu));
    }
    return out;
}

} // namespace persuasion
