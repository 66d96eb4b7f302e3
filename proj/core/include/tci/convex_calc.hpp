#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "tci/convex_gauge.hpp"
#include "tci/numeric.hpp"

namespace tci {

struct ConjugateOptions {
    /// Number of evenly spaced slopes sampled when conjugating grid data
    /// (the data's own slopes are always added).
    std::size_t grid_resolution = 1024;
};

/// s -> sup_{t >= 0} { s t - alpha(t) }.
///
/// Power, piecewise-linear, capped and linear-tail gauges are conjugated in
/// closed form; grid data goes through a discrete Legendre transform
/// refined by golden-section search around each arg-sup.
[[nodiscard]] ConvexGauge monotone_conjugate(const ConvexGauge& alpha, const ConjugateOptions& options = {});

/// The supremum sup_{t in [0, r_alpha]} { s t - alpha(t) } evaluated by direct
/// 1-D maximization. Independent of the closed forms above.
[[nodiscard]] double conjugate_at(const ConvexGauge& alpha, double s);

enum class InverseSide { Lower, Upper };

/// Lower: inf{t >= 0 : alpha(t) >= y}. Upper: sup{t >= 0 : alpha(t) <= y}.
/// Both by bisection; +inf when the set is unbounded (or empty, for Lower).
/// With tolerance 0 the bracket is shrunk to machine precision.
[[nodiscard]] double generalized_inverse(const ConvexGauge& alpha, double y, InverseSide side,
                                         double tolerance = 0.0);

enum class A1Status { Holds, Fails, Indeterminate };

struct A1Result {
    double endpoint;  ///< b = sup{s : beta(s) < inf}
    Endpoint kind;
    A1Status status;
};

/// Classifies the effective domain of a conjugate beta: (A1) holds when it
/// is [0, b) with b > 0 (b = +inf included).
[[nodiscard]] A1Result check_a1(const ConvexGauge& beta);

/// beta(s') >= c s'^2 for every grid point s' <= s.
struct SuperquadraticWitness {
    double c;
    double s;
    std::vector<double> grid;
};

/// Picks the witness (c, s) minimizing m_alpha over thresholds taken from
/// `s_grid`, with c the smallest ratio beta(s')/s'^2 up to the threshold.
/// Ties go to the larger threshold. Empty when no positive c exists.
[[nodiscard]] std::optional<SuperquadraticWitness> superquadratic_witness(const ConvexGauge& beta,
                                                                          std::span<const double> s_grid,
                                                                          double alpha_inverse_at_2);

/// Same, with alpha^{-1}(2) recovered from beta by conjugation.
[[nodiscard]] std::optional<SuperquadraticWitness> superquadratic_witness(const ConvexGauge& beta,
                                                                          std::span<const double> s_grid);

/// Default threshold grid for witness search.
[[nodiscard]] std::vector<double> default_witness_grid();

struct MAlphaResult {
    double u;
    double m_alpha;
    double slack_threshold;  ///< s sqrt(c) - u / sqrt(1 - u)
    double slack_cubic;      ///< 2 - u^3 / (1 - u)
    double alpha_inverse_at_2;
    SuperquadraticWitness witness;
};

/// Balancing parameter u and the resulting Kozachenko-Ostrovskii constant
///   m = e * max(1 / (alpha^{-1}(2) sqrt(c (1 - u))), 1 / u)
/// subject to u / sqrt(1 - u) <= s sqrt(c) and u^3 / (1 - u) <= 2.
[[nodiscard]] MAlphaResult m_alpha(const ConvexGauge& alpha, const SuperquadraticWitness& witness);

/// m_alpha evaluated for explicit (c, s, alpha^{-1}(2)).
[[nodiscard]] MAlphaResult m_alpha(double alpha_inverse_at_2, const SuperquadraticWitness& witness);

/// sup over the grid of q(2x) / q(x) (0/0 := 1); empty when the ratio is
/// infinite somewhere or still growing over the tail of the grid.
[[nodiscard]] std::optional<double> delta2_constant(const ConvexGauge& q, std::span<const double> t_grid);
[[nodiscard]] std::optional<double> delta2_constant(const std::function<double(double)>& q,
                                                    std::span<const double> t_grid);

[[nodiscard]] std::vector<double> default_delta2_grid();

/// Everything the theorem-level constants need from alpha, computed once.
struct GaugeConstants {
    ConvexGauge alpha;
    ConvexGauge conjugate;
    A1Result a1;
    MAlphaResult m;
};

/// Conjugate, (A1) check, witness and m_alpha. Throws PreconditionError when
/// (A1) or (A2) fails numerically.
[[nodiscard]] GaugeConstants gauge_constants(const ConvexGauge& alpha);

}  // namespace tci
