#include "tci/measure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tci/error.hpp"
#include "tci/numeric.hpp"
#include "tci/transport.hpp"

namespace tci {
namespace {

constexpr double kClampBelow = 1e-15;
constexpr double kSumTolerance = 1e-12;

std::vector<std::string> index_labels(std::size_t n) {
    std::vector<std::string> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
    return out;
}

}  // namespace

void require_same_size(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        std::ostringstream os;
        os << what << ": dimension mismatch (" << a << " vs " << b << ")";
        throw PreconditionError(os.str());
    }
}

RealFunction::RealFunction(std::vector<double> values) : values_(std::move(values)) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw InvariantViolation("function value at point " + std::to_string(i) + " is not finite");
        }
    }
}

RealFunction RealFunction::constant(std::size_t n, double c) { return RealFunction(std::vector<double>(n, c)); }

RealFunction RealFunction::operator-() const { return scaled(-1.0); }

RealFunction RealFunction::scaled(double c) const {
    std::vector<double> out(values_);
    for (double& x : out) x *= c;
    return RealFunction(std::move(out));
}

double RealFunction::sup_abs() const {
    double m = 0.0;
    for (double x : values_) m = std::max(m, std::abs(x));
    return m;
}

FiniteMetricSpace::FiniteMetricSpace(Matrix distances)
    : FiniteMetricSpace(index_labels(distances.rows()), std::move(distances)) {}

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels, Matrix distances)
    : labels_(std::move(labels)), dist_(std::move(distances)) {
    const std::size_t n = dist_.rows();
    auto fail = [](std::size_t i, std::size_t j, const std::string& msg) {
        std::ostringstream os;
        os << "distance matrix entry (" << i << ", " << j << "): " << msg;
        throw InvariantViolation(os.str());
    };
    if (n == 0) throw InvariantViolation("metric space must have at least one point");
    if (dist_.cols() != n) throw InvariantViolation("distance matrix must be square");
    if (labels_.size() != n) throw InvariantViolation("number of labels does not match the distance matrix");
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double d = dist_(i, j);
            if (!std::isfinite(d)) fail(i, j, "must be finite");
            scale = std::max(scale, d);
        }
    }
    const double tol = 1e-12 * std::max(1.0, scale);
    for (std::size_t i = 0; i < n; ++i) {
        if (dist_(i, i) != 0.0) fail(i, i, "diagonal must be zero");
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(dist_(i, j) - dist_(j, i)) > tol) fail(i, j, "matrix is not symmetric");
            if (!(dist_(i, j) > 0.0)) fail(i, j, "distinct points must be at positive distance");
            dist_(j, i) = dist_(i, j);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                if (dist_(i, k) > dist_(i, j) + dist_(j, k) + tol) {
                    std::ostringstream os;
                    os << "triangle inequality fails through point " << j;
                    fail(i, k, os.str());
                }
            }
        }
    }
}

FiniteMetricSpace FiniteMetricSpace::line(std::span<const double> coordinates) {
    const std::size_t n = coordinates.size();
    Matrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) d(i, j) = std::abs(coordinates[i] - coordinates[j]);
    }
    return FiniteMetricSpace(std::move(d));
}

FiniteMetricSpace FiniteMetricSpace::euclidean(std::span<const std::pair<double, double>> points) {
    const std::size_t n = points.size();
    Matrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = std::hypot(points[i].first - points[j].first, points[i].second - points[j].second);
            d(i, j) = v;
            d(j, i) = v;
        }
    }
    return FiniteMetricSpace(std::move(d));
}

RealFunction FiniteMetricSpace::distance_from(std::size_t x0) const {
    const auto r = dist_.row(x0);
    return RealFunction(std::vector<double>(r.begin(), r.end()));
}

DiscreteMeasure::DiscreteMeasure(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw InvariantViolation("measure must have at least one point");
    double sum = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        double& w = weights_[i];
        if (!std::isfinite(w) || w < -kClampBelow) {
            throw InvariantViolation("weight at point " + std::to_string(i) + " must be finite and nonnegative");
        }
        if (w < kClampBelow) w = 0.0;
        sum += w;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
        std::ostringstream os;
        os.precision(17);
        os << "weights must sum to 1 within 1e-12 (sum = " << sum << ")";
        throw InvariantViolation(os.str());
    }
}

DiscreteMeasure DiscreteMeasure::uniform(std::size_t n) {
    return DiscreteMeasure(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

DiscreteMeasure DiscreteMeasure::dirac(std::size_t n, std::size_t at) {
    std::vector<double> w(n, 0.0);
    w.at(at) = 1.0;
    return DiscreteMeasure(std::move(w));
}

double DiscreteMeasure::integrate(const RealFunction& f) const {
    require_same_size(f.size(), size(), "integral");
    double acc = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
        if (weights_[i] > 0.0) acc += weights_[i] * f[i];
    }
    return acc;
}

double DiscreteMeasure::min_positive_weight() const {
    double m = kInf;
    for (double w : weights_) {
        if (w > 0.0) m = std::min(m, w);
    }
    return m;
}

FunctionClass FunctionClass::explicit_list(std::vector<RealFunction> functions) {
    std::vector<RealFunction> out;
    out.reserve(2 * functions.size());
    auto contains = [&out](const RealFunction& f) { return std::find(out.begin(), out.end(), f) != out.end(); };
    for (auto& f : functions) {
        if (!out.empty()) require_same_size(f.size(), out.front().size(), "function class");
        if (!contains(f)) out.push_back(f);
        RealFunction neg = -f;
        if (!contains(neg)) out.push_back(std::move(neg));
    }
    return FunctionClass(ExplicitList{std::move(out)});
}

FunctionClass FunctionClass::lipschitz_ball(const FiniteMetricSpace& space) {
    return FunctionClass(LipschitzBall{std::make_shared<const FiniteMetricSpace>(space)});
}

FunctionClass FunctionClass::chi_bounded(RealFunction chi) {
    for (std::size_t i = 0; i < chi.size(); ++i) {
        if (chi[i] < 0.0) throw InvariantViolation("chi must be nonnegative (point " + std::to_string(i) + ")");
    }
    return FunctionClass(ChiBounded{std::move(chi)});
}

double relative_entropy(const DiscreteMeasure& nu, const DiscreteMeasure& mu) {
    require_same_size(nu.size(), mu.size(), "relative entropy");
    double acc = 0.0;
    for (std::size_t i = 0; i < nu.size(); ++i) {
        if (nu[i] == 0.0) continue;
        if (mu[i] == 0.0) return kInf;
        acc += nu[i] * std::log(nu[i] / mu[i]);
    }
    return std::max(acc, 0.0);
}

double weighted_total_variation(const DiscreteMeasure& nu, const DiscreteMeasure& mu, const RealFunction& chi) {
    require_same_size(nu.size(), mu.size(), "weighted total variation");
    require_same_size(chi.size(), mu.size(), "weighted total variation");
    double acc = 0.0;
    for (std::size_t i = 0; i < nu.size(); ++i) acc += chi[i] * std::abs(nu[i] - mu[i]);
    return acc;
}

double dual_norm(const DiscreteMeasure& nu, const DiscreteMeasure& mu, const FunctionClass& phi) {
    require_same_size(nu.size(), mu.size(), "dual norm");
    if (const auto* list = std::get_if<FunctionClass::ExplicitList>(&phi.variant())) {
        double best = 0.0;
        for (const auto& f : list->functions) {
            require_same_size(f.size(), nu.size(), "dual norm");
            double pairing = 0.0;
            for (std::size_t i = 0; i < f.size(); ++i) pairing += f[i] * (nu[i] - mu[i]);
            best = std::max(best, pairing);
        }
        return best;
    }
    if (const auto* ball = std::get_if<FunctionClass::ChiBounded>(&phi.variant())) {
        return weighted_total_variation(nu, mu, ball->chi);
    }
    const auto& lip = std::get<FunctionClass::LipschitzBall>(phi.variant());
    require_same_size(lip.space->size(), nu.size(), "dual norm");
    return ot_cost(nu, mu, cost_matrix(*lip.space, CostSpec::metric())).cost;
}

DiscreteMeasure exp_tilt(const DiscreteMeasure& mu, const RealFunction& phi, double s) {
    require_same_size(phi.size(), mu.size(), "exponential tilt");
    double top = -kInf;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (mu[i] > 0.0) top = std::max(top, s * phi[i]);
    }
    std::vector<double> w(mu.size(), 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (mu[i] > 0.0) {
            w[i] = mu[i] * std::exp(s * phi[i] - top);
            total += w[i];
        }
    }
    for (double& x : w) x /= total;
    // Clamping tiny weights can leave the sum a hair off 1; push the drift
    // into the largest weight.
    double sum = 0.0;
    for (double& x : w) {
        if (x < kClampBelow) x = 0.0;
        sum += x;
    }
    auto biggest = std::max_element(w.begin(), w.end());
    *biggest += 1.0 - sum;
    return DiscreteMeasure(std::move(w));
}

}  // namespace tci
