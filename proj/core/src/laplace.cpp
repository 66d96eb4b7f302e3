#include "tci/laplace.hpp"

#include <algorithm>
#include <cmath>

#include "tci/error.hpp"
#include "tci/numeric.hpp"
#include "tci/orlicz.hpp"
#include "tci/scalar_search.hpp"

namespace tci {

LogLaplace::LogLaplace(RealFunction f, DiscreteMeasure mu) : f_(std::move(f)), mu_(std::move(mu)) {
    require_same_size(f_.size(), mu_.size(), "log-Laplace transform");
    lo_ = kInf;
    hi_ = -kInf;
    for (std::size_t i = 0; i < f_.size(); ++i) {
        if (mu_[i] == 0.0) continue;
        weights_.push_back(mu_[i]);
        values_.push_back(f_[i]);
        lo_ = std::min(lo_, f_[i]);
        hi_ = std::max(hi_, f_[i]);
    }
    mean_ = mu_.integrate(f_);
}

double LogLaplace::operator()(double s) const {
    if (s == 0.0) return 0.0;
    std::vector<double> exponents(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) exponents[i] = s * values_[i];
    return log_sum_exp(weights_, exponents);
}

double LogLaplace::derivative(double s) const {
    double top = -kInf;
    for (double v : values_) top = std::max(top, s * v);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const double w = weights_[i] * std::exp(s * values_[i] - top);
        num += w * values_[i];
        den += w;
    }
    return num / den;
}

double CramerTransform::argmax(double t) const {
    const double mean = lambda_.mean();
    if (t == mean) return 0.0;
    const double sign = t > mean ? 1.0 : -1.0;
    // Lambda'(sign * s) moves monotonically from the mean towards t.
    auto reached = [&](double s) { return sign * lambda_.derivative(sign * s) >= sign * t; };
    double lo = 0.0;
    double hi = 1.0;
    for (int k = 0; k < 1100 && !reached(hi); ++k) {
        lo = hi;
        hi *= 2.0;
    }
    const auto bracket = search::bisect(lo, hi, reached);
    return sign * (bracket.first + 0.5 * (bracket.second - bracket.first));
}

double CramerTransform::operator()(double t) const {
    const double lo = lambda_.min_value();
    const double hi = lambda_.max_value();
    if (std::isnan(t) || t < lo || t > hi) return kInf;
    if (lo == hi) return 0.0;
    if (t == lo || t == hi) {
        const auto& f = lambda_.function();
        const auto& mu = lambda_.measure();
        double mass = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (mu[i] > 0.0 && f[i] == t) mass += mu[i];
        }
        return std::max(0.0, -std::log(mass));
    }
    if (t == lambda_.mean()) return 0.0;
    const double s = argmax(t);
    return std::max(0.0, s * t - lambda_(s));
}

double log_laplace(const RealFunction& f, const DiscreteMeasure& mu, double s) { return LogLaplace(f, mu)(s); }

double cramer_transform(const RealFunction& f, const DiscreteMeasure& mu, double t) {
    return CramerTransform(LogLaplace(f, mu))(t);
}

void finalize(GridCheck& check) {
    std::stable_sort(check.margins.begin(), check.margins.end(),
                     [](const Margin& a, const Margin& b) { return a.value < b.value; });
    check.min_margin = check.margins.empty() ? kInf : check.margins.front().value;
}

std::vector<double> default_s_grid(double s_max) {
    std::vector<double> grid{0.0};
    if (s_max > 1e-3) {
        for (double s : GridSpec::geometric(1e-3, s_max, 200).points()) grid.push_back(s);
    }
    return grid;
}

DzCheck dz_check(const RealFunction& f, const DiscreteMeasure& mu, double eps) {
    if (!(eps >= 0.0 && eps < 1.0)) throw PreconditionError("DZ check: eps must lie in [0, 1)");
    const CramerTransform cramer(LogLaplace(f, mu));
    std::vector<double> rate(f.size(), 0.0);
    // sum mu e^{eps rate} = 1 + sum mu (e^{eps rate} - 1); the second form
    // is exact at eps = 0 and does not depend on how the weights round.
    double excess = 0.0;
    double top = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (mu[i] == 0.0) continue;
        rate[i] = cramer(f[i]);
        excess += is_inf(rate[i]) ? kInf : mu[i] * std::expm1(eps * rate[i]);
        if (std::isfinite(rate[i])) top = std::max(top, rate[i]);
    }
    DzCheck out{1.0 + excess, (1.0 + eps) / (1.0 - eps), 0.0, {}};
    out.margin = out.rhs - out.lhs;
    for (double t : GridSpec::linear(0.0, std::max(1.0, 1.05 * top), 50).points()) {
        double tail = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (mu[i] > 0.0 && rate[i] > t) tail += mu[i];
        }
        const double bound = 2.0 * std::exp(-t);
        out.tail.margins.push_back({t, bound - tail, tail, bound});
    }
    finalize(out.tail);
    return out;
}

KoCheck ko_bound_check(const RealFunction& f, const DiscreteMeasure& mu, const GaugeConstants& gauge,
                       std::span<const double> s_grid, double a_scale) {
    const double mean = mu.integrate(f);
    if (std::abs(mean) > 1e-10 * std::max(1.0, f.sup_abs())) {
        throw PreconditionError("KO bound: f must be centered under mu");
    }
    KoCheck out{};
    out.norm = luxemburg_norm(f, mu, gauge.alpha);
    out.a = kSqrt2 * gauge.m.m_alpha * out.norm * a_scale;
    const LogLaplace plus(f, mu);
    const LogLaplace minus(-f, mu);
    for (double s : s_grid) {
        const double rhs = gauge.conjugate(out.a * s);
        for (const LogLaplace* side : {&plus, &minus}) {
            const double lhs = (*side)(s);
            const double loc = side == &plus ? s : -s;
            out.check.margins.push_back({loc, is_inf(rhs) ? kInf : rhs - lhs, lhs, rhs});
            if (s == 0.0) break;
        }
    }
    finalize(out.check);
    return out;
}

GridCheck dual_condition_check(const DiscreteMeasure& mu, const FunctionClass& phi, const ConvexGauge& conjugate,
                               double a, std::span<const double> s_grid) {
    const auto* list = std::get_if<FunctionClass::ExplicitList>(&phi.variant());
    if (list == nullptr) {
        throw PreconditionError("dual condition check needs an explicit function list");
    }
    GridCheck out;
    for (std::size_t k = 0; k < list->functions.size(); ++k) {
        const LogLaplace lambda(list->functions[k], mu);
        for (double s : s_grid) {
            const double tail = conjugate(a * s);
            const double rhs = is_inf(tail) ? kInf : s * lambda.mean() + tail;
            const double lhs = lambda(s);
            out.margins.push_back({s, is_inf(rhs) ? kInf : rhs - lhs, lhs, rhs, k});
        }
    }
    finalize(out);
    return out;
}

GridCheck subgaussian_check(const RealFunction& f, const DiscreteMeasure& mu, std::span<const double> s_grid,
                            double rhs_scale) {
    std::vector<double> squares(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) squares[i] = f[i] * f[i];
    const double log_moment = log_sum_exp(mu.weights(), squares);
    const double mean = mu.integrate(f);
    std::vector<double> centered(f.values());
    for (double& x : centered) x -= mean;
    const RealFunction g(std::move(centered));
    const LogLaplace plus(g, mu);
    const LogLaplace minus(-g, mu);
    GridCheck out;
    for (double s : s_grid) {
        const double r = rhs_scale * s;
        const double rhs = 0.5 * r * r + 2.0 * r * r * log_moment;
        for (const LogLaplace* side : {&plus, &minus}) {
            const double lhs = (*side)(s);
            out.margins.push_back({side == &plus ? s : -s, rhs - lhs, lhs, rhs});
            if (s == 0.0) break;
        }
    }
    finalize(out);
    return out;
}

}  // namespace tci
