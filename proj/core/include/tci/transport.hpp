#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tci/convex_gauge.hpp"
#include "tci/measure.hpp"

namespace tci {

/// Cost c(x, y) = q(d(x, y)).
class CostSpec {
public:
    struct Metric {};
    struct PowerOfMetric {
        double p;
    };
    struct GaugeOfMetric {
        ConvexGauge q;
    };
    using Variant = std::variant<Metric, PowerOfMetric, GaugeOfMetric>;

    static CostSpec metric();
    static CostSpec power(double p);
    static CostSpec gauge(ConvexGauge q);

    /// q applied to a distance.
    [[nodiscard]] double apply(double d) const;
    /// The gauge q as a ConvexGauge (x, x^p or the given gauge).
    [[nodiscard]] ConvexGauge as_gauge() const;
    /// p when the cost is d^p (p = 1 for the metric), empty otherwise.
    [[nodiscard]] std::optional<double> power_exponent() const;
    [[nodiscard]] const Variant& variant() const { return v_; }
    [[nodiscard]] std::string describe() const;

private:
    explicit CostSpec(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

/// Entrywise q(d(i, j)); throws DomainError if some entry is infinite.
[[nodiscard]] Matrix cost_matrix(const FiniteMetricSpace& space, const CostSpec& spec);

struct TransportPlan {
    Matrix plan;  ///< rows carry nu, columns carry mu
    double cost = 0.0;
    /// LP dual variables: row_potential[i] + col_potential[j] <= c(i, j), with
    /// equality on the support of the plan. Zero-mass rows and columns get
    /// the largest value that keeps the constraints feasible.
    std::vector<double> row_potential;
    std::vector<double> col_potential;
    /// max(0, -min reduced cost) over all cells; 0 certifies optimality.
    double dual_infeasibility = 0.0;
    std::size_t pivots = 0;
};

/// Exact optimal transport between nu (rows) and mu (columns) by the
/// transportation simplex.
[[nodiscard]] TransportPlan ot_cost(const DiscreteMeasure& nu, const DiscreteMeasure& mu, const Matrix& cost);

struct KantorovichDual {
    double value = 0.0;        ///< <potential, nu - mu>
    RealFunction potential;    ///< 1-Lipschitz, min value 0
    double primal = 0.0;       ///< T_d(nu, mu)
    double duality_gap = 0.0;  ///< primal - value
    double lipschitz_violation = 0.0;
};

/// Kantorovich-Rubinstein dual for the metric cost.
[[nodiscard]] KantorovichDual kr_dual(const DiscreteMeasure& nu, const DiscreteMeasure& mu,
                                      const FiniteMetricSpace& space);

/// max over pairs of |phi_i - phi_j| - d(i, j), clipped at 0.
[[nodiscard]] double lipschitz_violation(const RealFunction& phi, const FiniteMetricSpace& space);

struct SandwichBounds {
    double q_of_metric_cost;  ///< q(T_d)
    double cost;              ///< T_c with c = q(d)
    double weighted_tv;       ///< sum_x chi(x) |nu - mu|(x), chi(x) = q(2 d(x, x0)) / 2
};

[[nodiscard]] SandwichBounds sandwich_bounds(const DiscreteMeasure& nu, const DiscreteMeasure& mu,
                                             const FiniteMetricSpace& space, const ConvexGauge& q, std::size_t x0);

/// x -> q(2 d(x, x0)) / 2.
[[nodiscard]] RealFunction sandwich_weight(const FiniteMetricSpace& space, const ConvexGauge& q, std::size_t x0);

}  // namespace tci
