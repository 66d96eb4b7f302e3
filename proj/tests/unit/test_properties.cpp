// Randomized invariants of the convex calculus and of the measure-level
// quantities, driven by the hand-rolled generators.

#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "oracles.hpp"
#include "tci/convex_calc.hpp"
#include "tci/measure.hpp"
#include "tci/orlicz.hpp"

using namespace tci;

namespace {

/// Points inside the effective domain of g, including the endpoint when it
/// is attained.
std::vector<double> domain_points(const ConvexGauge& g, double fallback_end, int count) {
    const double end = std::isinf(g.domain_end()) ? fallback_end : g.domain_end();
    std::vector<double> out;
    for (int k = 0; k < count; ++k) out.push_back(end * k / count);
    out.push_back(end);  // end * count / count may round past the domain
    if (!std::isinf(g.domain_end()) && g.endpoint() != Endpoint::Closed) out.back() = end * (1.0 - 1e-9);
    return out;
}

}  // namespace

TEST_CASE("Young's inequality") {
    testing::Gen gen(61);
    for (int trial = 0; trial < 200; ++trial) {
        const auto alpha = gen.gauge();
        const auto beta = monotone_conjugate(alpha);
        for (int k = 0; k < 20; ++k) {
            const double t = gen.real(0.0, 4.0);
            const double s = gen.real(0.0, 6.0);
            const double a = alpha(t);
            const double b = beta(s);
            if (std::isinf(a) || std::isinf(b)) continue;
            CHECK(s * t <= a + b + 1e-9 * (1.0 + std::abs(a) + std::abs(b)));
        }
    }
}

TEST_CASE("conjugates are gauges") {
    testing::Gen gen(62);
    for (int trial = 0; trial < 200; ++trial) {
        const auto beta = monotone_conjugate(gen.gauge());
        CHECK(beta(0.0) == 0.0);
        double prev = 0.0;
        const auto pts = domain_points(beta, 8.0, 40);
        for (std::size_t k = 1; k < pts.size(); ++k) {
            const double v = beta(pts[k]);
            CHECK(v >= prev - 1e-12);
            prev = v;
            if (k + 1 < pts.size()) {
                const double mid = beta(pts[k]);
                const double around = 0.5 * (beta(pts[k - 1]) + beta(pts[k + 1]));
                CHECK(mid <= around + 1e-9 * (1.0 + around));
            }
        }
    }
}

TEST_CASE("conjugation is an involution on closed gauges") {
    testing::Gen gen(63);
    for (int trial = 0; trial < 200; ++trial) {
        const auto alpha = gen.gauge();
        const auto back = monotone_conjugate(monotone_conjugate(alpha));
        for (double t : domain_points(alpha, 5.0, 50)) {
            const double a = alpha(t);
            INFO("t = " << t);
            CHECK(std::abs(back(t) - a) / (1.0 + a) <= 1e-6);
        }
    }
}

TEST_CASE("closed forms agree with direct maximization") {
    testing::Gen gen(64);
    for (int trial = 0; trial < 150; ++trial) {
        const auto alpha = gen.gauge();
        const auto beta = monotone_conjugate(alpha);
        for (int k = 0; k < 6; ++k) {
            const double s = gen.real(0.0, 5.0);
            const double closed = beta(s);
            const double direct = conjugate_at(alpha, s);
            if (std::isinf(closed)) {
                CHECK(std::isinf(direct));
            } else {
                CHECK(closed == doctest::Approx(direct).epsilon(1e-8).scale(1.0));
            }
        }
    }
}

TEST_CASE("generalized inverses are monotone and bracket each other") {
    testing::Gen gen(65);
    for (int trial = 0; trial < 200; ++trial) {
        const auto alpha = gen.gauge();
        double prev_lower = 0.0;
        double prev_upper = 0.0;
        for (double y = 0.0; y <= 6.0; y += 0.25) {
            const double lo = generalized_inverse(alpha, y, InverseSide::Lower);
            const double hi = generalized_inverse(alpha, y, InverseSide::Upper);
            CHECK(lo >= prev_lower);
            CHECK(hi >= prev_upper);
            CHECK(lo <= hi + 1e-12 * (1.0 + hi));
            if (std::isfinite(hi) && hi > 0.0) CHECK(alpha(hi * (1.0 - 1e-9)) <= y + 1e-9);
            prev_lower = lo;
            prev_upper = hi;
        }
    }
}

TEST_CASE("m_alpha is feasible and matches the brute-force u grid") {
    testing::Gen gen(66);
    for (int trial = 0; trial < 25; ++trial) {
        const double a = gen.real(0.2, 3.0);
        const double c = gen.real(0.01, 2.0);
        const double s = gen.coin() ? gen.real(0.05, 2.0) : 1e6;
        const auto r = m_alpha(a, SuperquadraticWitness{c, s, {}});
        CHECK(r.slack_threshold >= -1e-12);
        CHECK(r.slack_cubic >= -1e-12);
        CHECK(r.u > 0.0);
        CHECK(r.u < 1.0);
        const auto [u, m] = oracle::brute_m_alpha(a, c, s, 200'000);
        CHECK(r.m_alpha <= m + 1e-12);
        CHECK(r.m_alpha == doctest::Approx(m).epsilon(1e-4));
    }
}

TEST_CASE("Luxemburg norm is a seminorm") {
    testing::Gen gen(67);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = gen.index(1, 7);
        const auto mu = gen.measure(n, gen.coin());
        const auto alpha = gen.gauge();
        const auto f = gen.function(n, -2.0, 2.0);
        const auto g = gen.function(n, -2.0, 2.0);
        std::vector<double> sum(n);
        for (std::size_t i = 0; i < n; ++i) sum[i] = f[i] + g[i];
        const double lhs = luxemburg_norm(RealFunction(sum), mu, alpha);
        const double rhs = luxemburg_norm(f, mu, alpha) + luxemburg_norm(g, mu, alpha);
        CHECK(lhs <= rhs * (1.0 + 1e-8) + 1e-12);
    }
}

TEST_CASE("entropy is jointly convex") {
    testing::Gen gen(68);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = gen.index(2, 8);
        const auto mu1 = gen.measure(n);
        const auto mu2 = gen.measure(n);
        const auto nu1 = gen.measure(n, true);
        const auto nu2 = gen.measure(n, true);
        const double w = gen.unit();
        std::vector<double> nu(n);
        std::vector<double> mu(n);
        for (std::size_t i = 0; i < n; ++i) {
            nu[i] = w * nu1[i] + (1 - w) * nu2[i];
            mu[i] = w * mu1[i] + (1 - w) * mu2[i];
        }
        const double mixed = oracle::entropy(nu, mu);
        const double split = w * relative_entropy(nu1, mu1) + (1 - w) * relative_entropy(nu2, mu2);
        CHECK(mixed <= split + 1e-12);
    }
}
