#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tci/convex_calc.hpp"
#include "tci/convex_gauge.hpp"
#include "tci/measure.hpp"

namespace tci {

/// s -> log sum_i mu_i exp(s f_i), over the support of mu.
class LogLaplace {
public:
    LogLaplace(RealFunction f, DiscreteMeasure mu);

    /// Exactly 0 at s = 0.
    [[nodiscard]] double operator()(double s) const;
    /// Mean of f under the tilted measure mu_s.
    [[nodiscard]] double derivative(double s) const;
    [[nodiscard]] double mean() const { return mean_; }
    /// Range of f over the support of mu.
    [[nodiscard]] double min_value() const { return lo_; }
    [[nodiscard]] double max_value() const { return hi_; }
    [[nodiscard]] const RealFunction& function() const { return f_; }
    [[nodiscard]] const DiscreteMeasure& measure() const { return mu_; }

private:
    RealFunction f_;
    DiscreteMeasure mu_;
    std::vector<double> weights_;  // positive part of mu
    std::vector<double> values_;   // f on the support
    double mean_ = 0.0;
    double lo_ = 0.0;
    double hi_ = 0.0;
};

/// t -> sup_s { s t - Lambda(s) }.
class CramerTransform {
public:
    explicit CramerTransform(LogLaplace lambda) : lambda_(std::move(lambda)) {}

    /// +inf outside [min f, max f]; -log mu({f = t}) at the two ends; in
    /// between the supremum is attained where Lambda'(s) = t, found by
    /// bisection on the increasing derivative.
    [[nodiscard]] double operator()(double t) const;
    /// The maximizing s for t strictly inside the range.
    [[nodiscard]] double argmax(double t) const;
    [[nodiscard]] const LogLaplace& log_laplace() const { return lambda_; }

private:
    LogLaplace lambda_;
};

[[nodiscard]] double log_laplace(const RealFunction& f, const DiscreteMeasure& mu, double s);
[[nodiscard]] double cramer_transform(const RealFunction& f, const DiscreteMeasure& mu, double t);

/// One evaluated point of a grid check. `index` identifies the function when
/// several are checked at once.
struct Margin {
    double location;
    double value;
    double lhs;
    double rhs;
    std::size_t index = 0;
};

/// Margins sorted worst-first; min_margin = margins.front().value.
struct GridCheck {
    double min_margin = kInf;
    std::vector<Margin> margins;
};

/// {0} plus a geometric grid of 200 points over [1e-3, s_max].
[[nodiscard]] std::vector<double> default_s_grid(double s_max = 1e3);

struct DzCheck {
    double lhs;     ///< sum_i mu_i exp(eps Lambda*(f_i))
    double rhs;     ///< (1 + eps) / (1 - eps)
    double margin;  ///< rhs - lhs
    /// Tail bound 2 exp(-t) - mu(Lambda*(f) > t) on the t grid.
    GridCheck tail;
};

/// The t grid used for the tail bound: 50 points over [0, 1.05 max_i Lambda*(f_i)]
/// (at least [0, 1]).
[[nodiscard]] DzCheck dz_check(const RealFunction& f, const DiscreteMeasure& mu, double eps);

/// min over s in the grid (and -s) of conj(a s) - Lambda(s), with
/// a = sqrt(2) m_alpha ||f||_tau times `a_scale`. f must be centered.
struct KoCheck {
    double a;
    double norm;
    GridCheck check;
};
[[nodiscard]] KoCheck ko_bound_check(const RealFunction& f, const DiscreteMeasure& mu, const GaugeConstants& gauge,
                                     std::span<const double> s_grid, double a_scale = 1.0);

/// min over phi in Phi and s in the grid of s <phi, mu> + conj(a s) - Lambda_phi(s).
/// Phi must be an explicit list.
[[nodiscard]] GridCheck dual_condition_check(const DiscreteMeasure& mu, const FunctionClass& phi,
                                             const ConvexGauge& conjugate, double a, std::span<const double> s_grid);

/// min over s in the grid (and -s) of s^2/2 + 2 s^2 log(sum mu exp(f^2)) - Lambda_{f - <f,mu>}(s).
/// `rhs_scale` multiplies s inside the right-hand side (1 for the stated bound).
[[nodiscard]] GridCheck subgaussian_check(const RealFunction& f, const DiscreteMeasure& mu,
                                          std::span<const double> s_grid, double rhs_scale = 1.0);

/// Sorts by value ascending (stable) and sets min_margin.
void finalize(GridCheck& check);

}  // namespace tci
