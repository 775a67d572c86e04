#include "persuasion/concavify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

namespace persuasion {

namespace {

constexpr double kPivotTolerance = 1e-11;
constexpr double kReducedCostTolerance = 1e-10;
constexpr double kBisectionWidth = 1e-13;

struct GridGeometry {
    std::vector<Belief> points;
    std::vector<std::size_t> vertex_index;               // vertex s of the (mapped) simplex
    std::vector<std::pair<std::size_t, std::size_t>> segments; // lattice-neighbor pairs
};

// Integer-composition lattice with `resolution` points per edge, optionally
// mapped affinely onto F(mu0, alpha). Vertex positions are recorded so the
// LP can start from the always-feasible vertex basis.
GridGeometry build_grid(std::size_t n_states, int resolution, const Belief& mu0,
                        const BiasParam& alpha, bool mapped) {
    if (resolution < 2) throw ValidationError("GridSpec: resolution must be >= 2");
    const int d = resolution - 1;

    std::vector<std::vector<int>> comps;
    std::vector<int> partial(n_states, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t coord, int left) {
        if (coord + 1 == n_states) {
            partial[coord] = left;
            comps.push_back(partial);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            partial[coord] = k;
            rec(coord + 1, left - k);
        }
    };
    rec(0, d);

    std::map<std::vector<int>, std::size_t> index;
    for (std::size_t i = 0; i < comps.size(); ++i) index[comps[i]] = i;

    GridGeometry geom;
    geom.points.reserve(comps.size());
    for (const auto& comp : comps) {
        std::vector<double> w(n_states);
        for (std::size_t s = 0; s < n_states; ++s) w[s] = static_cast<double>(comp[s]) / d;
        Belief point{std::move(w)};
        geom.points.push_back(mapped ? apply_bias(alpha, mu0, point) : std::move(point));
    }

    geom.vertex_index.assign(n_states, 0);
    for (std::size_t s = 0; s < n_states; ++s) {
        std::vector<int> comp(n_states, 0);
        comp[s] = d;
        geom.vertex_index[s] = index.at(comp);
    }

    for (std::size_t i = 0; i < comps.size(); ++i) {
        for (std::size_t p = 0; p < n_states; ++p) {
            if (comps[i][p] == 0) continue;
            for (std::size_t q = 0; q < n_states; ++q) {
                if (q == p) continue;
                std::vector<int> nb = comps[i];
                --nb[p];
                ++nb[q];
                auto it = index.find(nb);
                if (it != index.end() && it->second > i) {
                    geom.segments.emplace_back(i, it->second);
                }
            }
        }
    }
    return geom;
}

Belief lerp(const Belief& a, const Belief& b, double t) {
    std::vector<double> w(a.size());
    for (std::size_t s = 0; s < a.size(); ++s) w[s] = (1.0 - t) * a[s] + t * b[s];
    return Belief(std::move(w));
}

using ActionIdFn = std::function<std::optional<std::size_t>(const Belief&)>;

// Bisects each segment whose endpoints land in different best-response cells
// and returns evaluation points hugging the jump from both sides.
std::vector<Belief> refine_boundaries(const GridGeometry& geom, const ActionIdFn& action_id) {
    std::vector<Belief> extra;
    for (const auto& [i, j] : geom.segments) {
        const Belief& a = geom.points[i];
        const Belief& b = geom.points[j];
        const std::optional<std::size_t> ida = action_id(a);
        const std::optional<std::size_t> idb = action_id(b);
        if (!ida.has_value() || !idb.has_value()) return {}; // parametric model: no cells
        if (*ida == *idb) continue;
        double lo = 0.0, hi = 1.0;
        while (hi - lo > kBisectionWidth) {
            const double mid = 0.5 * (lo + hi);
            if (action_id(lerp(a, b, mid)) == ida) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        extra.push_back(lerp(a, b, lo));
        extra.push_back(lerp(a, b, hi));
    }
    return extra;
}

// --- dense two-phase-free simplex over the moment polytope -----------------
//
// maximize c.w  s.t.  sum_g w_g * mu_g = mu0 (first n-1 coordinates),
//                     sum_g w_g = 1,  w >= 0.
// The mapped simplex vertices always form a feasible starting basis with
// weights mu0(s), so no phase-1 artificials are needed.

struct LpResult {
    double value = 0.0;
    std::vector<std::pair<std::size_t, double>> basis_weights;
    double certificate_gap = 0.0;
};

std::vector<double> column_of(const Belief& point, std::size_t m) {
    std::vector<double> col(m);
    for (std::size_t r = 0; r + 1 < m; ++r) col[r] = point[r];
    col[m - 1] = 1.0;
    return col;
}

// Gauss-Jordan inverse with partial pivoting; throws on singular basis.
std::vector<std::vector<double>> invert(std::vector<std::vector<double>> a) {
    const std::size_t m = a.size();
    std::vector<std::vector<double>> inv(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i) inv[i][i] = 1.0;
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < m; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        }
        if (std::abs(a[pivot][col]) < kPivotTolerance) {
            throw InfeasibleGrid("simplex basis is singular");
        }
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        const double scale = a[col][col];
        for (std::size_t k = 0; k < m; ++k) {
            a[col][k] /= scale;
            inv[col][k] /= scale;
        }
        for (std::size_t r = 0; r < m; ++r) {
            if (r == col) continue;
            const double factor = a[r][col];
            if (factor == 0.0) continue;
            for (std::size_t k = 0; k < m; ++k) {
                a[r][k] -= factor * a[col][k];
                inv[r][k] -= factor * inv[col][k];
            }
        }
    }
    return inv;
}

LpResult solve_moment_lp(const std::vector<Belief>& points, const std::vector<double>& objective,
                         const Belief& mu0, const std::vector<std::size_t>& vertex_basis) {
    const std::size_t m = mu0.size();
    const std::size_t n_cols = points.size();
    std::vector<double> b = column_of(mu0, m);

    std::vector<std::size_t> basis = vertex_basis;
    std::vector<char> in_basis(n_cols, 0);
    for (std::size_t idx : basis) in_basis[idx] = 1;

    std::vector<double> x_basic(m), y(m);
    const std::size_t max_iterations = 200000;
    bool bland = false;
    std::size_t stall = 0;
    double last_value = -std::numeric_limits<double>::infinity();

    for (std::size_t iteration = 0;; ++iteration) {
        if (iteration >= max_iterations) {
            throw PersuasionError("concavification LP failed to converge");
        }
        std::vector<std::vector<double>> basis_matrix(m, std::vector<double>(m));
        for (std::size_t k = 0; k < m; ++k) {
            const std::vector<double> col = column_of(points[basis[k]], m);
            for (std::size_t r = 0; r < m; ++r) basis_matrix[r][k] = col[r];
        }
        const std::vector<std::vector<double>> binv = invert(basis_matrix);

        for (std::size_t r = 0; r < m; ++r) {
            double acc = 0.0;
            for (std::size_t k = 0; k < m; ++k) acc += binv[r][k] * b[k];
            x_basic[r] = acc;
        }
        for (std::size_t k = 0; k < m; ++k) {
            double acc = 0.0;
            for (std::size_t r = 0; r < m; ++r) acc += objective[basis[r]] * binv[r][k];
            y[k] = acc;
        }

        double value = 0.0;
        for (std::size_t r = 0; r < m; ++r) value += objective[basis[r]] * x_basic[r];
        if (value > last_value + 1e-14) {
            stall = 0;
        } else if (++stall > 200) {
            bland = true; // degenerate plateau: switch to Bland's rule for termination
        }
        last_value = std::max(last_value, value);

        // Pricing.
        std::size_t entering = n_cols;
        double best_reduced = kReducedCostTolerance;
        for (std::size_t j = 0; j < n_cols; ++j) {
            if (in_basis[j]) continue;
            const Belief& point = points[j];
            double ya = y[m - 1];
            for (std::size_t r = 0; r + 1 < m; ++r) ya += y[r] * point[r];
            const double reduced = objective[j] - ya;
            if (reduced > best_reduced) {
                entering = j;
                best_reduced = reduced;
                if (bland) break;
            }
        }
        if (entering == n_cols) {
            LpResult result;
            result.value = value;
            for (std::size_t r = 0; r < m; ++r) {
                if (x_basic[r] > 1e-12) {
                    result.basis_weights.emplace_back(basis[r], x_basic[r]);
                }
            }
            std::sort(result.basis_weights.begin(), result.basis_weights.end());
            // Residual dual violation bounds how far the reported value can
            // sit above the true grid envelope at mu0.
            double max_violation = 0.0;
            for (std::size_t j = 0; j < n_cols; ++j) {
                const Belief& point = points[j];
                double ya = y[m - 1];
                for (std::size_t r = 0; r + 1 < m; ++r) ya += y[r] * point[r];
                max_violation = std::max(max_violation, objective[j] - ya);
            }
            double dual_value = 0.0;
            for (std::size_t r = 0; r < m; ++r) dual_value += y[r] * b[r];
            result.certificate_gap = value - (dual_value + max_violation);
            return result;
        }

        const std::vector<double> a_col = column_of(points[entering], m);
        std::vector<double> direction(m);
        for (std::size_t r = 0; r < m; ++r) {
            double acc = 0.0;
            for (std::size_t k = 0; k < m; ++k) acc += binv[r][k] * a_col[k];
            direction[r] = acc;
        }
        std::size_t leaving = m;
        double best_ratio = 0.0;
        for (std::size_t r = 0; r < m; ++r) {
            if (direction[r] <= kPivotTolerance) continue;
            const double ratio = x_basic[r] / direction[r];
            if (leaving == m || ratio < best_ratio - 1e-15 ||
                (ratio < best_ratio + 1e-15 && basis[r] < basis[leaving])) {
                leaving = r;
                best_ratio = ratio;
            }
        }
        if (leaving == m) {
            throw PersuasionError("concavification LP is unbounded (corrupt constraints)");
        }
        in_basis[basis[leaving]] = 0;
        in_basis[entering] = 1;
        basis[leaving] = entering;
    }
}

using ObjectiveFn = std::function<double(const Belief&)>;

ConcavificationResult concavify(const DecisionProblem& problem, const BiasParam& alpha,
                                const GridSpec& grid, bool mapped, const ObjectiveFn& objective,
                                const ActionIdFn& action_id) {
    GridGeometry geom =
        build_grid(problem.n_states(), grid.resolution, problem.prior, alpha, mapped);
    if (grid.refine_boundaries) {
        for (Belief& extra : refine_boundaries(geom, action_id)) {
            geom.points.push_back(std::move(extra));
        }
    }
    std::vector<double> values(geom.points.size());
    for (std::size_t j = 0; j < geom.points.size(); ++j) {
        values[j] = objective(geom.points[j]);
    }
    LpResult lp = solve_moment_lp(geom.points, values, problem.prior, geom.vertex_index);

    ConcavificationResult result;
    result.value = lp.value;
    result.certificate_gap = lp.certificate_gap;
    for (const auto& [index, weight] : lp.basis_weights) {
        result.support.emplace_back(geom.points[index], weight);
    }
    return result;
}

ActionIdFn finite_action_id(const DecisionProblem& problem,
                            std::function<Belief(const Belief&)> to_receiver_belief) {
    if (!std::holds_alternative<FiniteActions>(problem.action_model)) {
        return [](const Belief&) { return std::nullopt; };
    }
    return [&problem, to_receiver_belief](const Belief& mu) -> std::optional<std::size_t> {
        return std::get<std::size_t>(best_response(problem, to_receiver_belief(mu)));
    };
}

} // namespace

ConcavificationResult solve_V(const DecisionProblem& problem, const GridSpec& grid) {
    return concavify(
        problem, BiasParam(0.0), grid, /*mapped=*/false,
        [&problem](const Belief& mu) { return v_hat(problem, mu); },
        finite_action_id(problem, [](const Belief& mu) { return mu; }));
}

ConcavificationResult solve_V_alpha(const DecisionProblem& problem, const BiasParam& alpha,
                                    const GridSpec& grid) {
    return concavify(
        problem, alpha, grid, /*mapped=*/false,
        [&problem, &alpha](const Belief& mu) { return v_hat_alpha(problem, mu, alpha); },
        finite_action_id(problem, [&problem, alpha](const Belief& mu) {
            return apply_bias(alpha, problem.prior, mu);
        }));
}

ConcavificationResult solve_V_alpha_biased(const DecisionProblem& problem, const BiasParam& alpha,
                                           const GridSpec& grid) {
    return concavify(
        problem, alpha, grid, /*mapped=*/true,
        [&problem](const Belief& mu) { return v_hat(problem, mu); },
        finite_action_id(problem, [](const Belief& mu) { return mu; }));
}

ConcavificationResult solve_transparent(const DecisionProblem& problem, const BiasParam& alpha,
                                        const GridSpec& grid) {
    if (!transparent_motives(problem)) {
        throw NotTransparentMotives("solve_transparent: sender utility depends on the state");
    }
    // With state-independent sender utility, E_{w~mu'}[v(w, a(mu'))] is
    // exactly v(a(mu')), so the restricted program coincides with the biased
    // one; only the precondition differs.
    return solve_V_alpha_biased(problem, alpha, grid);
}

FeasibleSupremum sup_over_feasible(const DecisionProblem& problem, const BiasParam& alpha,
                                   const GridSpec& grid) {
    GridGeometry geom =
        build_grid(problem.n_states(), grid.resolution, problem.prior, alpha, /*mapped=*/true);
    const ActionIdFn action_id =
        finite_action_id(problem, [](const Belief& mu) { return mu; });
    if (grid.refine_boundaries) {
        for (Belief& extra : refine_boundaries(geom, action_id)) {
            geom.points.push_back(std::move(extra));
        }
    }
    std::sort(geom.points.begin(), geom.points.end(),
              [](const Belief& a, const Belief& b) { return a.weights() < b.weights(); });
    FeasibleSupremum best{-std::numeric_limits<double>::infinity(), geom.points.front()};
    for (const Belief& point : geom.points) {
        const double value = v_hat(problem, point);
        if (value > best.value) {
            best.value = value;
            best.argmax = point;
        }
    }
    return best;
}

} // namespace persuasion
