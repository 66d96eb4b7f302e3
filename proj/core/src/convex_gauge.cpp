#include "tci/convex_gauge.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tci/error.hpp"

namespace tci {
namespace {

constexpr double kPolylineTol = 1e-9;
constexpr double kGridTol = 1e-6;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::size_t finite_prefix(const std::vector<double>& values) {
    std::size_t k = 0;
    while (k < values.size() && std::isfinite(values[k])) ++k;
    return k;
}

void validate_polyline(const std::vector<double>& t, const std::vector<double>& v, double tail,
                       bool allow_trailing_inf, double tol, const char* what) {
    auto fail = [&](const std::string& msg) {
        throw InvariantViolation(std::string(what) + ": " + msg);
    };
    if (t.empty() || t.size() != v.size()) fail("abscissae and values must be non-empty and of equal length");
    if (t[0] != 0.0 || v[0] != 0.0) fail("first knot must be (0, 0)");
    if (std::isnan(tail) || tail < 0.0) fail("tail slope must be a nonnegative number or +inf");
    for (std::size_t k = 1; k < t.size(); ++k) {
        if (!std::isfinite(t[k]) || !(t[k] > t[k - 1])) fail("abscissae must be finite and strictly increasing");
    }
    const std::size_t finite = finite_prefix(v);
    if (finite < v.size()) {
        if (!allow_trailing_inf) fail("values must be finite");
        for (std::size_t k = finite; k < v.size(); ++k) {
            if (!is_inf(v[k])) fail("only trailing values may be +inf");
        }
    }
    double previous = 0.0;
    for (std::size_t k = 1; k < finite; ++k) {
        if (v[k] < 0.0) fail("values must be nonnegative");
        const double slope = (v[k] - v[k - 1]) / (t[k] - t[k - 1]);
        const double floor = k == 1 ? 0.0 : previous;
        if (slope < floor - tol * std::max(1.0, std::abs(floor))) {
            std::ostringstream os;
            os << "not convex and nondecreasing at knot " << k << " (slope " << slope << " after " << floor << ")";
            fail(os.str());
        }
        previous = std::max(slope, previous);
    }
    if (finite == v.size() && std::isfinite(tail) && tail < previous - tol * std::max(1.0, previous)) {
        fail("tail slope is smaller than the last segment slope");
    }
}

double eval_polyline(const std::vector<double>& t, const std::vector<double>& v, double tail, double x) {
    if (x < 0.0 || std::isnan(x)) return kInf;
    const auto it = std::upper_bound(t.begin(), t.end(), x);
    const auto k = static_cast<std::size_t>(it - t.begin());
    if (k == t.size()) {
        if (x == t.back()) return v.back();
        if (is_inf(tail) || is_inf(v.back())) return kInf;
        return v.back() + tail * (x - t.back());
    }
    if (x == t[k - 1]) return v[k - 1];
    if (is_inf(v[k]) || is_inf(v[k - 1])) return kInf;
    const double w = (x - t[k - 1]) / (t[k] - t[k - 1]);
    return v[k - 1] + w * (v[k] - v[k - 1]);
}

double polyline_left_derivative(const std::vector<double>& t, const std::vector<double>& v, double tail,
                                double x) {
    if (x <= 0.0) return 0.0;
    const auto it = std::lower_bound(t.begin(), t.end(), x);
    const auto k = static_cast<std::size_t>(it - t.begin());
    if (k == t.size()) return tail;
    if (is_inf(v[k])) return kInf;
    return (v[k] - v[k - 1]) / (t[k] - t[k - 1]);
}

}  // namespace

ConvexGauge ConvexGauge::power(double exponent, double scale) {
    if (!(exponent >= 1.0) || !std::isfinite(exponent)) {
        throw InvariantViolation("power gauge: exponent must be finite and >= 1 for convexity");
    }
    if (!(scale >= 0.0) || !std::isfinite(scale)) {
        throw InvariantViolation("power gauge: scale must be finite and nonnegative");
    }
    return ConvexGauge(Power{exponent, scale});
}

ConvexGauge ConvexGauge::zero() { return power(1.0, 0.0); }

ConvexGauge ConvexGauge::piecewise_linear(std::vector<double> abscissae, std::vector<double> values,
                                          double tail_slope) {
    validate_polyline(abscissae, values, tail_slope, false, kPolylineTol, "piecewise-linear gauge");
    return ConvexGauge(PiecewiseLinear{std::move(abscissae), std::move(values), tail_slope});
}

ConvexGauge ConvexGauge::grid_sampled(std::vector<double> abscissae, std::vector<double> values,
                                      double tail_slope) {
    validate_polyline(abscissae, values, tail_slope, true, kGridTol, "grid-sampled gauge");
    return ConvexGauge(GridSampled{std::move(abscissae), std::move(values), tail_slope});
}

ConvexGauge ConvexGauge::capped(const ConvexGauge& inner, double cap, bool closed) {
    if (std::isnan(cap) || cap < 0.0) throw InvariantViolation("capped gauge: cap must be nonnegative");
    if (is_inf(cap)) return inner;
    if (cap == 0.0 && !closed) throw InvariantViolation("capped gauge: [0, 0) is empty, alpha(0) must be 0");
    return ConvexGauge(DomainCapped{std::make_shared<const ConvexGauge>(inner), cap, closed});
}

ConvexGauge ConvexGauge::linear_tail(const ConvexGauge& inner, double knot, double slope) {
    if (!std::isfinite(knot) || knot < 0.0) throw InvariantViolation("linear-tail gauge: knot must be finite and >= 0");
    if (!std::isfinite(slope) || slope < 0.0) throw InvariantViolation("linear-tail gauge: slope must be finite and >= 0");
    if (!std::isfinite(inner(knot))) throw InvariantViolation("linear-tail gauge: inner gauge must be finite at the knot");
    if (knot > 0.0) {
        const double d = inner.left_derivative(knot);
        if (slope < d - kPolylineTol * std::max(1.0, d)) {
            throw InvariantViolation("linear-tail gauge: slope below the left derivative at the knot breaks convexity");
        }
    }
    return ConvexGauge(LinearTail{std::make_shared<const ConvexGauge>(inner), knot, slope});
}

double ConvexGauge::operator()(double t) const {
    return std::visit(
        Overloaded{
            [t](const Power& p) -> double {
                if (t < 0.0 || std::isnan(t)) return kInf;
                if (p.scale == 0.0 || t == 0.0) return 0.0;
                if (is_inf(t)) return kInf;
                if (p.exponent == 1.0) return p.scale * t;
                if (p.exponent == 2.0) return p.scale * t * t;
                return p.scale * std::pow(t, p.exponent);
            },
            [t](const PiecewiseLinear& g) { return eval_polyline(g.abscissae, g.values, g.tail_slope, t); },
            [t](const GridSampled& g) { return eval_polyline(g.abscissae, g.values, g.tail_slope, t); },
            [t](const DomainCapped& g) -> double {
                if (t < 0.0 || t > g.cap || (t == g.cap && !g.closed)) return kInf;
                return (*g.inner)(t);
            },
            [t](const LinearTail& g) -> double {
                if (t < 0.0 || std::isnan(t)) return kInf;
                if (t <= g.knot) return (*g.inner)(t);
                return (*g.inner)(g.knot) + g.slope * (t - g.knot);
            },
        },
        family_);
}

double ConvexGauge::domain_end() const {
    return std::visit(
        Overloaded{
            [](const Power&) { return kInf; },
            [](const PiecewiseLinear& g) { return is_inf(g.tail_slope) ? g.abscissae.back() : kInf; },
            [](const GridSampled& g) {
                const std::size_t finite = finite_prefix(g.values);
                if (finite < g.values.size()) return g.abscissae[finite - 1];
                return is_inf(g.tail_slope) ? g.abscissae.back() : kInf;
            },
            [](const DomainCapped& g) { return std::min(g.cap, g.inner->domain_end()); },
            [](const LinearTail&) { return kInf; },
        },
        family_);
}

Endpoint ConvexGauge::endpoint() const {
    return std::visit(
        Overloaded{
            [](const Power&) { return Endpoint::Unbounded; },
            [](const PiecewiseLinear& g) { return is_inf(g.tail_slope) ? Endpoint::Closed : Endpoint::Unbounded; },
            [](const GridSampled& g) {
                if (finite_prefix(g.values) < g.values.size()) return Endpoint::Unknown;
                return is_inf(g.tail_slope) ? Endpoint::Closed : Endpoint::Unbounded;
            },
            [](const DomainCapped& g) {
                const double inner_end = g.inner->domain_end();
                const Endpoint inner_kind = g.inner->endpoint();
                if (g.cap < inner_end) return g.closed ? Endpoint::Closed : Endpoint::Open;
                if (g.cap > inner_end) return inner_kind;
                if (inner_kind == Endpoint::Unknown) return Endpoint::Unknown;
                if (!g.closed || inner_kind == Endpoint::Open) return Endpoint::Open;
                return Endpoint::Closed;
            },
            [](const LinearTail&) { return Endpoint::Unbounded; },
        },
        family_);
}

double ConvexGauge::left_derivative(double t) const {
    if (t <= 0.0) return 0.0;
    return std::visit(
        Overloaded{
            [t](const Power& p) -> double {
                if (p.exponent == 1.0) return p.scale;
                return p.scale * p.exponent * std::pow(t, p.exponent - 1.0);
            },
            [t](const PiecewiseLinear& g) { return polyline_left_derivative(g.abscissae, g.values, g.tail_slope, t); },
            [t](const GridSampled& g) { return polyline_left_derivative(g.abscissae, g.values, g.tail_slope, t); },
            [t](const DomainCapped& g) { return g.inner->left_derivative(t); },
            [t](const LinearTail& g) { return t <= g.knot ? g.inner->left_derivative(t) : g.slope; },
        },
        family_);
}

double ConvexGauge::convexity_tolerance() const {
    return std::holds_alternative<GridSampled>(family_) ? kGridTol : kPolylineTol;
}

std::string ConvexGauge::describe() const {
    std::ostringstream os;
    os.precision(10);
    std::visit(Overloaded{
                   [&os](const Power& p) { os << "power(p=" << p.exponent << ", scale=" << p.scale << ")"; },
                   [&os](const PiecewiseLinear& g) {
                       os << "piecewise_linear(" << g.abscissae.size() << " knots, tail=" << g.tail_slope << ")";
                   },
                   [&os](const GridSampled& g) {
                       os << "grid(" << g.abscissae.size() << " samples, tail=" << g.tail_slope << ")";
                   },
                   [&os](const DomainCapped& g) {
                       os << "capped(" << g.inner->describe() << ", r=" << g.cap << (g.closed ? ", closed" : ", open")
                          << ")";
                   },
                   [&os](const LinearTail& g) {
                       os << "linear_tail(" << g.inner->describe() << ", knot=" << g.knot << ", slope=" << g.slope
                          << ")";
                   },
               },
               family_);
    return os.str();
}

}  // namespace tci
