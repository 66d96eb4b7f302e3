#include "tci/convex_calc.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "tci/error.hpp"
#include "tci/scalar_search.hpp"

namespace tci {
namespace {

constexpr double kUEpsilon = 1e-6;
constexpr double kTieTolerance = 1e-12;
/// Smallest allowed ratio of beta(s)/s^2 eight decades below the witness
/// grid to its value at the first grid point.
constexpr double kNearZeroDrop = 0.9;
constexpr double kHuge = 1e300;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

ConvexGauge conjugate_power(const ConvexGauge::Power& p) {
    if (p.scale == 0.0) return ConvexGauge::capped(ConvexGauge::zero(), 0.0, true);
    if (p.exponent == 1.0) return ConvexGauge::capped(ConvexGauge::zero(), p.scale, true);
    // sup_t { s t - c t^p } = (p - 1) c (c p)^{-q} s^q with q = p / (p - 1).
    const double q = p.exponent / (p.exponent - 1.0);
    const double scale = (p.exponent - 1.0) * p.scale * std::pow(p.scale * p.exponent, -q);
    return ConvexGauge::power(q, scale);
}

// Conjugate of a polyline is the max of the affine maps s -> s t_j - v_j,
// with breakpoints at the segment slopes.
ConvexGauge conjugate_polyline(const ConvexGauge::PiecewiseLinear& g) {
    const auto& t = g.abscissae;
    const auto& v = g.values;
    auto value_at = [&](double s) {
        double best = 0.0;
        for (std::size_t j = 0; j < t.size(); ++j) best = std::max(best, s * t[j] - v[j]);
        return best;
    };
    std::vector<double> knots{0.0};
    std::vector<double> values{0.0};
    for (std::size_t k = 1; k < t.size(); ++k) {
        const double slope = (v[k] - v[k - 1]) / (t[k] - t[k - 1]);
        if (slope > knots.back()) {
            knots.push_back(slope);
            values.push_back(value_at(slope));
        }
    }
    auto body = ConvexGauge::piecewise_linear(std::move(knots), std::move(values), t.back());
    if (is_inf(g.tail_slope)) return body;
    return ConvexGauge::capped(body, g.tail_slope, true);
}

ConvexGauge conjugate_grid(const ConvexGauge& alpha, const ConvexGauge::GridSampled& g,
                           const ConjugateOptions& options) {
    std::size_t finite = 0;
    while (finite < g.values.size() && std::isfinite(g.values[finite])) ++finite;
    const std::vector<double> t(g.abscissae.begin(), g.abscissae.begin() + static_cast<std::ptrdiff_t>(finite));
    const std::vector<double> v(g.values.begin(), g.values.begin() + static_cast<std::ptrdiff_t>(finite));
    const bool bounded_domain = finite < g.values.size() || is_inf(g.tail_slope);

    std::vector<double> slopes;
    for (std::size_t k = 1; k < t.size(); ++k) slopes.push_back((v[k] - v[k - 1]) / (t[k] - t[k - 1]));
    const double max_slope = slopes.empty() ? 0.0 : *std::max_element(slopes.begin(), slopes.end());
    const double s_top = bounded_domain ? max_slope : g.tail_slope;

    // Breakpoints first, then evenly spaced slopes that are not crowding one.
    std::vector<double> breaks{0.0};
    for (double s : slopes) {
        if (s > 0.0 && s <= s_top) breaks.push_back(s);
    }
    breaks.push_back(s_top);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    const double crowd = 1e-9 * std::max(1.0, s_top);
    std::vector<double> grid = breaks;
    if (s_top > 0.0 && options.grid_resolution > 1) {
        for (double s : GridSpec::linear(0.0, s_top, options.grid_resolution).points()) {
            const auto it = std::lower_bound(breaks.begin(), breaks.end(), s);
            const bool near_next = it != breaks.end() && *it - s < crowd;
            const bool near_prev = it != breaks.begin() && s - *(it - 1) < crowd;
            if (!near_next && !near_prev) grid.push_back(s);
        }
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<double> values;
    values.reserve(grid.size());
    for (double s : grid) {
        std::size_t arg = 0;
        double best = 0.0;
        for (std::size_t j = 0; j < t.size(); ++j) {
            const double val = s * t[j] - v[j];
            if (val > best) {
                best = val;
                arg = j;
            }
        }
        const double lo = t[arg == 0 ? 0 : arg - 1];
        const double hi = t[std::min(arg + 1, t.size() - 1)];
        if (hi > lo) {
            const auto refined = search::golden_max([&](double x) { return s * x - alpha(x); }, lo, hi);
            best = std::max(best, refined.second);
        }
        values.push_back(best);
    }
    if (bounded_domain) return ConvexGauge::grid_sampled(std::move(grid), std::move(values), t.back());
    if (grid.size() == 1) {
        // alpha has slope 0 on its data and a finite tail slope of 0.
        return ConvexGauge::capped(ConvexGauge::zero(), s_top, true);
    }
    return ConvexGauge::grid_sampled(std::move(grid), std::move(values), kInf);
}

struct UOptimum {
    double u;
    double value;
};

// Minimizes max(T1, T2) over the feasible u; T1 increases in u, T2 decreases.
UOptimum optimize_u(double alpha_inverse_at_2, double c, double s) {
    const double threshold = s * std::sqrt(c);
    auto feasible = [threshold](double u) {
        return u / std::sqrt(1.0 - u) <= threshold && u * u * u / (1.0 - u) <= 2.0;
    };
    double u_max = 1.0 - kUEpsilon;
    if (!feasible(u_max)) {
        u_max = search::bisect(0.0, u_max, [&](double u) { return !feasible(u); }).first;
    }
    auto objective = [&](double u) {
        const double t1 = is_inf(alpha_inverse_at_2) ? 0.0 : 1.0 / (alpha_inverse_at_2 * std::sqrt(c * (1.0 - u)));
        return std::max(t1, 1.0 / u);
    };
    const double lower = std::min(kUEpsilon, u_max);
    double u = search::ternary_min(objective, lower, u_max);
    u = std::clamp(u, lower, u_max);
    return {u, objective(u)};
}

}  // namespace

ConvexGauge monotone_conjugate(const ConvexGauge& alpha, const ConjugateOptions& options) {
    return std::visit(
        Overloaded{
            [](const ConvexGauge::Power& p) { return conjugate_power(p); },
            [](const ConvexGauge::PiecewiseLinear& g) { return conjugate_polyline(g); },
            [&](const ConvexGauge::GridSampled& g) { return conjugate_grid(alpha, g, options); },
            [&](const ConvexGauge::DomainCapped& g) -> ConvexGauge {
                const double inner_end = g.inner->domain_end();
                if (g.cap >= inner_end) return monotone_conjugate(*g.inner, options);
                if (g.cap == 0.0) return ConvexGauge::zero();
                // For s up to alpha'(r-) the arg-sup stays below the cap; beyond
                // it sticks at r and the conjugate grows with slope r.
                const ConvexGauge inner_conjugate = monotone_conjugate(*g.inner, options);
                return ConvexGauge::linear_tail(inner_conjugate, g.inner->left_derivative(g.cap), g.cap);
            },
            [&](const ConvexGauge::LinearTail& g) -> ConvexGauge {
                const ConvexGauge head = ConvexGauge::capped(*g.inner, g.knot, true);
                return ConvexGauge::capped(monotone_conjugate(head, options), g.slope, true);
            },
        },
        alpha.family());
}

double conjugate_at(const ConvexGauge& alpha, double s) {
    if (std::isnan(s) || s < 0.0) return kInf;
    auto objective = [&](double t) { return s * t - alpha(t); };
    const double r = alpha.domain_end();
    double hi = r;
    if (is_inf(r)) {
        hi = 1.0;
        while (objective(2.0 * hi) > objective(hi)) {
            hi *= 2.0;
            if (hi > kHuge) return kInf;
        }
        hi *= 2.0;
    }
    double best = 0.0;
    if (hi > 0.0) best = std::max(best, search::golden_max(objective, 0.0, hi, 1e-15).second);
    if (std::isfinite(r)) best = std::max(best, objective(r));
    return best;
}

double generalized_inverse(const ConvexGauge& alpha, double y, InverseSide side, double tolerance) {
    if (std::isnan(y) || y < 0.0) throw PreconditionError("generalized inverse: y must be >= 0");
    if (side == InverseSide::Lower) {
        auto reached = [&](double t) { return alpha(t) >= y; };
        if (reached(0.0)) return 0.0;
        double lo = 0.0;
        double hi = 1.0;
        while (!reached(hi)) {
            lo = hi;
            hi *= 2.0;
            if (hi > kHuge) return kInf;
        }
        return search::bisect(lo, hi, reached, tolerance).second;
    }
    auto exceeded = [&](double t) { return alpha(t) > y; };
    double lo = 0.0;
    double hi = 1.0;
    while (!exceeded(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > kHuge) return kInf;
    }
    return search::bisect(lo, hi, exceeded, tolerance).first;
}

A1Result check_a1(const ConvexGauge& beta) {
    A1Result out{beta.domain_end(), beta.endpoint(), A1Status::Fails};
    if (out.endpoint <= 0.0) return out;
    switch (out.kind) {
        case Endpoint::Unbounded:
        case Endpoint::Open:
            out.status = A1Status::Holds;
            break;
        case Endpoint::Unknown:
            out.status = A1Status::Indeterminate;
            break;
        case Endpoint::Closed:
            out.status = A1Status::Fails;
            break;
    }
    return out;
}

std::vector<double> default_witness_grid() { return GridSpec::per_decade(1e-4, 1e4, 40).points(); }

std::optional<SuperquadraticWitness> superquadratic_witness(const ConvexGauge& beta, std::span<const double> s_grid,
                                                            double alpha_inverse_at_2) {
    std::vector<double> grid;
    for (double s : s_grid) {
        if (s > 0.0 && std::isfinite(s)) grid.push_back(s);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    if (grid.empty()) return std::nullopt;

    // The grid cannot see below its first point. A ratio beta(s)/s^2 that is
    // still falling there (beta ~ s^q with q > 2) means no c > 0 works on the
    // whole of (0, s], so probe eight decades further down.
    const double probe = grid.front() * 1e-8;
    const double ratio_probe = beta(probe) / (probe * probe);
    const double ratio_first = beta(grid.front()) / (grid.front() * grid.front());
    if (!(ratio_probe >= kNearZeroDrop * ratio_first)) return std::nullopt;

    struct Candidate {
        double c;
        double s;
        std::size_t index;
        double m;
    };
    std::vector<Candidate> candidates;
    double running = kInf;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double s = grid[k];
        running = std::min(running, beta(s) / (s * s));
        if (running > 0.0 && std::isfinite(running)) {
            candidates.push_back({running, s, k, optimize_u(alpha_inverse_at_2, running, s).value});
        }
    }
    if (candidates.empty()) return std::nullopt;
    double best_m = kInf;
    for (const auto& cand : candidates) best_m = std::min(best_m, cand.m);
    const Candidate* chosen = nullptr;
    for (const auto& cand : candidates) {
        if (cand.m <= best_m * (1.0 + kTieTolerance)) chosen = &cand;  // keeps the largest threshold
    }
    SuperquadraticWitness witness{chosen->c, chosen->s, {}};
    witness.grid.assign(grid.begin(), grid.begin() + static_cast<std::ptrdiff_t>(chosen->index + 1));
    return witness;
}

std::optional<SuperquadraticWitness> superquadratic_witness(const ConvexGauge& beta, std::span<const double> s_grid) {
    const ConvexGauge alpha = monotone_conjugate(beta);
    return superquadratic_witness(beta, s_grid, generalized_inverse(alpha, 2.0, InverseSide::Lower));
}

MAlphaResult m_alpha(double alpha_inverse_at_2, const SuperquadraticWitness& witness) {
    if (!(alpha_inverse_at_2 > 0.0)) {
        throw DomainError("m_alpha: alpha^{-1}(2) = 0, the gauge jumps to +inf at the origin");
    }
    if (!(witness.c > 0.0) || !(witness.s > 0.0)) throw PreconditionError("m_alpha: witness must have c > 0 and s > 0");
    const UOptimum opt = optimize_u(alpha_inverse_at_2, witness.c, witness.s);
    const double u = opt.u;
    MAlphaResult out{};
    out.u = u;
    out.alpha_inverse_at_2 = alpha_inverse_at_2;
    const double t1 = is_inf(alpha_inverse_at_2) ? 0.0 : 1.0 / (alpha_inverse_at_2 * std::sqrt(witness.c * (1.0 - u)));
    out.m_alpha = kE * std::max(t1, 1.0 / u);
    out.slack_threshold = witness.s * std::sqrt(witness.c) - u / std::sqrt(1.0 - u);
    out.slack_cubic = 2.0 - u * u * u / (1.0 - u);
    out.witness = witness;
    return out;
}

MAlphaResult m_alpha(const ConvexGauge& alpha, const SuperquadraticWitness& witness) {
    return m_alpha(generalized_inverse(alpha, 2.0, InverseSide::Lower), witness);
}

std::vector<double> default_delta2_grid() { return GridSpec::per_decade(1e-3, 1e3, 100).points(); }

std::optional<double> delta2_constant(const std::function<double(double)>& q, std::span<const double> t_grid) {
    std::vector<double> ratios;
    for (double x : t_grid) {
        if (!(x > 0.0)) continue;
        const double base = q(x);
        const double doubled = q(2.0 * x);
        if (!std::isfinite(base) || !std::isfinite(doubled)) return std::nullopt;
        if (base == 0.0) {
            if (doubled != 0.0) return std::nullopt;
            ratios.push_back(1.0);
        } else {
            ratios.push_back(doubled / base);
        }
    }
    if (ratios.empty()) return std::nullopt;
    const double k = *std::max_element(ratios.begin(), ratios.end());
    // The ratio must have leveled off over the last tenth of the grid.
    const std::size_t chunk = std::max<std::size_t>(1, ratios.size() / 10);
    if (ratios.size() >= 2 * chunk) {
        const auto tail_begin = ratios.end() - static_cast<std::ptrdiff_t>(chunk);
        const double tail = *std::max_element(tail_begin, ratios.end());
        const double before = *std::max_element(tail_begin - static_cast<std::ptrdiff_t>(chunk), tail_begin);
        if (tail > before * (1.0 + 1e-3)) return std::nullopt;
    }
    return k;
}

std::optional<double> delta2_constant(const ConvexGauge& q, std::span<const double> t_grid) {
    return delta2_constant(std::function<double(double)>([&q](double x) { return q(x); }), t_grid);
}

GaugeConstants gauge_constants(const ConvexGauge& alpha) {
    ConvexGauge conjugate = monotone_conjugate(alpha);
    const A1Result a1 = check_a1(conjugate);
    if (a1.status != A1Status::Holds) {
        throw PreconditionError("gauge " + alpha.describe() +
                                " fails assumption (A1): the conjugate's domain is not of the form [0, b)");
    }
    const double inverse = generalized_inverse(alpha, 2.0, InverseSide::Lower);
    const auto grid = default_witness_grid();
    const auto witness = superquadratic_witness(conjugate, grid, inverse);
    if (!witness) {
        throw PreconditionError("gauge " + alpha.describe() +
                                " fails assumption (A2): no c > 0 with conjugate(s) >= c s^2 near 0");
    }
    MAlphaResult m = m_alpha(inverse, *witness);
    return GaugeConstants{alpha, std::move(conjugate), a1, std::move(m)};
}

}  // namespace tci
