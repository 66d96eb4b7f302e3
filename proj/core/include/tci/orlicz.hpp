#pragma once

#include <span>
#include <vector>

#include "tci/convex_gauge.hpp"
#include "tci/measure.hpp"

namespace tci {

inline constexpr double kLuxemburgTolerance = 1e-10;

/// sum_i mu_i (exp(alpha(|f_i| / lambda)) - 1); +inf as soon as one term is.
[[nodiscard]] double luxemburg_integral(const RealFunction& f, const DiscreteMeasure& mu, const ConvexGauge& alpha,
                                        double lambda);

/// inf{lambda > 0 : sum_i mu_i tau_alpha(|f_i| / lambda) <= 1} with
/// tau_alpha = exp(alpha) - 1, by bisection. The returned lambda is always
/// admissible (its integral is <= 1) and within `tolerance` of the infimum.
[[nodiscard]] double luxemburg_norm(const RealFunction& f, const DiscreteMeasure& mu, const ConvexGauge& alpha,
                                    double tolerance = kLuxemburgTolerance);

/// A bound minimized over a scale parameter delta.
struct DeltaBound {
    double value;
    double delta;
};

/// Geometric, 64 points per decade over [1e-3, 1e3].
[[nodiscard]] std::vector<double> default_delta_grid();

/// Minimizes g(delta) = (1/delta) (1 + log(sum mu exp(alpha(delta chi))) / log 2)
/// over the grid, then refines around the best grid point. Divergent deltas
/// are skipped; +inf when all diverge. Requires dom alpha = R+.
[[nodiscard]] DeltaBound luxemburg_upper_bound(const RealFunction& chi, const DiscreteMeasure& mu,
                                               const ConvexGauge& alpha, std::span<const double> delta_grid);

struct LinftyBounds {
    double lower;
    double upper;
};

/// (||chi||_inf / r_alpha, ||chi||_inf / sup{t : alpha(t) <= log 2}) for a
/// gauge with bounded domain.
[[nodiscard]] LinftyBounds luxemburg_linfty_bounds(const RealFunction& chi, const DiscreteMeasure& mu,
                                                   const ConvexGauge& alpha);

/// Minimizes an arbitrary positive function of delta over a grid and refines
/// by golden-section search between the neighbours of the best grid point.
/// Non-finite values are skipped.
template <typename F>
DeltaBound minimize_over_delta(F&& g, std::span<const double> grid);

}  // namespace tci

#include "tci/scalar_search.hpp"

template <typename F>
tci::DeltaBound tci::minimize_over_delta(F&& g, std::span<const double> grid) {
    DeltaBound best{kInf, 0.0};
    std::size_t arg = grid.size();
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double v = g(grid[k]);
        if (std::isfinite(v) && v < best.value) {
            best = {v, grid[k]};
            arg = k;
        }
    }
    if (arg == grid.size()) return best;
    const double lo = grid[arg == 0 ? 0 : arg - 1];
    const double hi = grid[std::min(arg + 1, grid.size() - 1)];
    if (hi > lo) {
        auto neg = [&](double d) {
            const double v = g(d);
            return std::isfinite(v) ? -v : -kInf;
        };
        const auto refined = search::golden_max(neg, lo, hi, 1e-14);
        if (-refined.second < best.value) best = {-refined.second, refined.first};
    }
    return best;
}
