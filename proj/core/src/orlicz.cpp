#include "tci/orlicz.hpp"

#include <algorithm>
#include <cmath>

#include "tci/convex_calc.hpp"
#include "tci/error.hpp"
#include "tci/numeric.hpp"
#include "tci/scalar_search.hpp"

namespace tci {

double luxemburg_integral(const RealFunction& f, const DiscreteMeasure& mu, const ConvexGauge& alpha, double lambda) {
    require_same_size(f.size(), mu.size(), "Luxemburg integral");
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (mu[i] == 0.0 || f[i] == 0.0) continue;
        const double a = alpha(std::abs(f[i]) / lambda);
        if (is_inf(a)) return kInf;
        acc += mu[i] * std::expm1(a);
    }
    return acc;
}

double luxemburg_norm(const RealFunction& f, const DiscreteMeasure& mu, const ConvexGauge& alpha, double tolerance) {
    require_same_size(f.size(), mu.size(), "Luxemburg norm");
    if (!(tolerance > 0.0)) throw PreconditionError("Luxemburg norm: tolerance must be positive");
    if (alpha.domain_end() == 0.0) throw DomainError("Luxemburg norm: degenerate gauge with domain {0}");
    double sup = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (mu[i] > 0.0) sup = std::max(sup, std::abs(f[i]));
    }
    if (sup == 0.0) return 0.0;

    auto admissible = [&](double lambda) { return luxemburg_integral(f, mu, alpha, lambda) <= 1.0; };

    // Every |f_i| / hi sits where alpha <= log 2, so each term is <= 1.
    const double level = generalized_inverse(alpha, kLog2, InverseSide::Upper);
    if (is_inf(level)) return 0.0;  // alpha vanishes on R+
    double hi = sup / level;
    for (int k = 0; k < 64 && !admissible(hi); ++k) hi *= 2.0;
    if (!admissible(hi)) throw DomainError("Luxemburg norm: could not bracket the norm from above");
    double lo = hi;
    for (int k = 0; k < 2100 && admissible(lo); ++k) lo *= 0.5;
    if (admissible(lo)) return 0.0;

    const double tol = std::min(tolerance, 1e-13 * hi);
    return search::bisect(lo, hi, admissible, tol).second;
}

std::vector<double> default_delta_grid() { return GridSpec::per_decade(1e-3, 1e3, 64).points(); }

DeltaBound luxemburg_upper_bound(const RealFunction& chi, const DiscreteMeasure& mu, const ConvexGauge& alpha,
                                 std::span<const double> delta_grid) {
    require_same_size(chi.size(), mu.size(), "Luxemburg upper bound");
    if (!is_inf(alpha.domain_end())) {
        throw PreconditionError("Luxemburg upper bound needs a gauge finite on all of R+");
    }
    std::vector<double> exponents(chi.size());
    auto g = [&](double delta) {
        for (std::size_t i = 0; i < chi.size(); ++i) exponents[i] = alpha(delta * std::abs(chi[i]));
        const double log_integral = log_sum_exp(mu.weights(), exponents);
        return (1.0 + log_integral / kLog2) / delta;
    };
    return minimize_over_delta(g, delta_grid);
}

LinftyBounds luxemburg_linfty_bounds(const RealFunction& chi, const DiscreteMeasure& mu, const ConvexGauge& alpha) {
    require_same_size(chi.size(), mu.size(), "Luxemburg L-infinity bounds");
    const double r = alpha.domain_end();
    if (is_inf(r)) throw PreconditionError("L-infinity bounds need a gauge with bounded domain");
    double sup = 0.0;
    for (std::size_t i = 0; i < chi.size(); ++i) {
        if (mu[i] > 0.0) sup = std::max(sup, std::abs(chi[i]));
    }
    if (sup == 0.0) return {0.0, 0.0};
    const double level = generalized_inverse(alpha, kLog2, InverseSide::Upper);
    return {sup / r, level == 0.0 ? kInf : sup / level};
}

}  // namespace tci
