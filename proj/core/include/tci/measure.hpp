#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace tci {

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    [[nodiscard]] std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// A real function on the points of a finite space. Entries must be finite.
class RealFunction {
public:
    RealFunction() = default;
    explicit RealFunction(std::vector<double> values);
    static RealFunction constant(std::size_t n, double c);

    [[nodiscard]] std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    [[nodiscard]] const std::vector<double>& values() const { return values_; }

    [[nodiscard]] RealFunction operator-() const;
    [[nodiscard]] RealFunction scaled(double c) const;
    [[nodiscard]] double sup_abs() const;
    friend bool operator==(const RealFunction&, const RealFunction&) = default;

private:
    std::vector<double> values_;
};

class FiniteMetricSpace {
public:
    /// Validates symmetry, zero diagonal, positivity off the diagonal and the
    /// triangle inequality over all triples; throws InvariantViolation naming
    /// the offending entry.
    FiniteMetricSpace(std::vector<std::string> labels, Matrix distances);
    explicit FiniteMetricSpace(Matrix distances);

    /// Points on the real line with d(i, j) = |x_i - x_j|.
    static FiniteMetricSpace line(std::span<const double> coordinates);
    /// Points in the plane with the Euclidean distance.
    static FiniteMetricSpace euclidean(std::span<const std::pair<double, double>> points);

    [[nodiscard]] std::size_t size() const { return labels_.size(); }
    [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
    [[nodiscard]] double distance(std::size_t i, std::size_t j) const { return dist_(i, j); }
    [[nodiscard]] const Matrix& distances() const { return dist_; }
    /// x -> d(x0, x).
    [[nodiscard]] RealFunction distance_from(std::size_t x0) const;

private:
    std::vector<std::string> labels_;
    Matrix dist_;
};

/// Probability weights on n points. Weights below 1e-15 are clamped to 0;
/// the sum must be 1 within 1e-12 and is not renormalized.
class DiscreteMeasure {
public:
    explicit DiscreteMeasure(std::vector<double> weights);
    static DiscreteMeasure uniform(std::size_t n);
    static DiscreteMeasure dirac(std::size_t n, std::size_t at);

    [[nodiscard]] std::size_t size() const { return weights_.size(); }
    double operator[](std::size_t i) const { return weights_[i]; }
    [[nodiscard]] const std::vector<double>& weights() const { return weights_; }
    [[nodiscard]] double integrate(const RealFunction& f) const;
    [[nodiscard]] double min_positive_weight() const;
    friend bool operator==(const DiscreteMeasure&, const DiscreteMeasure&) = default;

private:
    std::vector<double> weights_;
};

/// The class Phi of test functions defining a dual semi-norm.
class FunctionClass {
public:
    struct ExplicitList {
        std::vector<RealFunction> functions;
    };
    struct LipschitzBall {
        std::shared_ptr<const FiniteMetricSpace> space;
    };
    struct ChiBounded {
        RealFunction chi;
    };
    using Variant = std::variant<ExplicitList, LipschitzBall, ChiBounded>;

    /// Adds -phi for every phi not already paired with its negation.
    static FunctionClass explicit_list(std::vector<RealFunction> functions);
    static FunctionClass lipschitz_ball(const FiniteMetricSpace& space);
    /// {phi : |phi| <= chi}; chi must be nonnegative.
    static FunctionClass chi_bounded(RealFunction chi);

    [[nodiscard]] const Variant& variant() const { return v_; }

private:
    explicit FunctionClass(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

/// H(nu | mu); +inf unless nu << mu.
[[nodiscard]] double relative_entropy(const DiscreteMeasure& nu, const DiscreteMeasure& mu);

/// sup_{phi in Phi} <phi, nu - mu>. The Lipschitz ball goes through the
/// transport solver and equals the metric transport cost.
[[nodiscard]] double dual_norm(const DiscreteMeasure& nu, const DiscreteMeasure& mu, const FunctionClass& phi);

/// sum_i chi_i |nu_i - mu_i|.
[[nodiscard]] double weighted_total_variation(const DiscreteMeasure& nu, const DiscreteMeasure& mu,
                                              const RealFunction& chi);

/// Measure with weights proportional to mu_i exp(s phi_i).
[[nodiscard]] DiscreteMeasure exp_tilt(const DiscreteMeasure& mu, const RealFunction& phi, double s);

void require_same_size(std::size_t a, std::size_t b, const char* what);

}  // namespace tci
