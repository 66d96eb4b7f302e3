#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "tci/numeric.hpp"

namespace tci {

/// How the effective domain [0, r] of a gauge ends.
enum class Endpoint {
    Unbounded,  ///< finite on all of R+
    Closed,     ///< finite at r, +inf beyond
    Open,       ///< +inf at r and beyond
    Unknown,    ///< sampled data cannot tell (finite sample followed by an infinite one)
};

/// A convex, lower semi-continuous function R+ -> [0, +inf] vanishing at 0.
///
/// Values are immutable after construction; nested families share their
/// inner gauge through a shared_ptr so copies are cheap. Every factory
/// validates the invariants (alpha(0) = 0, convexity, monotonicity) and
/// throws InvariantViolation with a diagnostic when they fail.
class ConvexGauge {
public:
    /// scale * t^exponent, exponent >= 1, scale >= 0.
    struct Power {
        double exponent;
        double scale;
    };
    /// Linear interpolation through knots (abscissae[0] = 0, values[0] = 0)
    /// and a final ray of slope tail_slope; tail_slope = +inf caps the
    /// domain at the last knot (closed).
    struct PiecewiseLinear {
        std::vector<double> abscissae;
        std::vector<double> values;
        double tail_slope;
    };
    /// inner on [0, cap] (or [0, cap) when !closed), +inf beyond.
    struct DomainCapped {
        std::shared_ptr<const ConvexGauge> inner;
        double cap;
        bool closed;
    };
    /// inner on [0, knot], then the ray inner(knot) + slope * (t - knot).
    struct LinearTail {
        std::shared_ptr<const ConvexGauge> inner;
        double knot;
        double slope;
    };
    /// Same evaluation as PiecewiseLinear, but conjugated numerically and
    /// validated with the looser grid tolerance. Trailing +inf samples are
    /// allowed and mark an endpoint of unknown type.
    struct GridSampled {
        std::vector<double> abscissae;
        std::vector<double> values;
        double tail_slope;
    };

    using Family = std::variant<Power, PiecewiseLinear, DomainCapped, LinearTail, GridSampled>;

    static ConvexGauge power(double exponent, double scale = 1.0);
    static ConvexGauge zero();
    static ConvexGauge piecewise_linear(std::vector<double> abscissae, std::vector<double> values,
                                        double tail_slope);
    static ConvexGauge capped(const ConvexGauge& inner, double cap, bool closed = true);
    static ConvexGauge linear_tail(const ConvexGauge& inner, double knot, double slope);
    static ConvexGauge grid_sampled(std::vector<double> abscissae, std::vector<double> values,
                                    double tail_slope = kInf);

    /// alpha(t); +inf outside the effective domain and for t < 0.
    [[nodiscard]] double operator()(double t) const;

    /// Right end r of the effective domain (may be +inf).
    [[nodiscard]] double domain_end() const;
    [[nodiscard]] Endpoint endpoint() const;

    /// Left derivative at t in (0, domain_end()]; 0 at t <= 0.
    [[nodiscard]] double left_derivative(double t) const;

    [[nodiscard]] const Family& family() const { return family_; }
    [[nodiscard]] std::string describe() const;

    /// Relative tolerance used for the convexity check of this family.
    [[nodiscard]] double convexity_tolerance() const;

private:
    explicit ConvexGauge(Family family) : family_(std::move(family)) {}

    Family family_;
};

}  // namespace tci
