#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "oracles.hpp"
#include "tci/error.hpp"
#include "tci/laplace.hpp"
#include "tci/orlicz.hpp"

using namespace tci;

namespace {
const double kLn2 = std::log(2.0);
const DiscreteMeasure kHalf({0.5, 0.5});
const RealFunction kSign({1.0, -1.0});
}  // namespace

TEST_CASE("log-Laplace examples") {
    CHECK(log_laplace(RealFunction({3.0, -7.0}), kHalf, 0.0) == 0.0);
    CHECK(log_laplace(kSign, kHalf, 1.0) == doctest::Approx(std::log(std::cosh(1.0))).epsilon(1e-15));
    CHECK(log_laplace(RealFunction::constant(2, 1.5), kHalf, 3.0) == doctest::Approx(4.5).epsilon(1e-15));
    // max-shifted evaluation stays finite far out
    CHECK(log_laplace(kSign, kHalf, 1000.0) == doctest::Approx(1000.0 - kLn2).epsilon(1e-15));
}

TEST_CASE("log-Laplace matches the direct sum and is convex") {
    testing::Gen gen(41);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = gen.index(1, 8);
        const auto mu = gen.measure(n, gen.coin());
        const auto f = gen.function(n, -2.0, 2.0);
        const LogLaplace lambda(f, mu);
        double prev_slope = -1e300;
        for (double s = -6.0; s <= 6.0; s += 0.5) {
            CHECK(lambda(s) == doctest::Approx(oracle::log_laplace(f.values(), mu.weights(), s)).epsilon(1e-12).scale(1.0));
            const double slope = lambda.derivative(s);
            CHECK(slope >= prev_slope - 1e-12);
            prev_slope = slope;
        }
        CHECK(lambda.derivative(0.0) == doctest::Approx(mu.integrate(f)).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("Cramer transform examples") {
    CHECK(cramer_transform(kSign, kHalf, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(cramer_transform(kSign, kHalf, 1.0) == doctest::Approx(kLn2).epsilon(1e-15));
    CHECK(cramer_transform(kSign, kHalf, -1.0) == doctest::Approx(kLn2).epsilon(1e-15));
    CHECK(std::isinf(cramer_transform(kSign, kHalf, 2.0)));
    // (1 + t)/2 log(1 + t) + (1 - t)/2 log(1 - t) for the fair sign
    const double t = 0.4;
    CHECK(cramer_transform(kSign, kHalf, t) ==
          doctest::Approx(0.5 * (1 + t) * std::log1p(t) + 0.5 * (1 - t) * std::log1p(-t)).epsilon(1e-12));
    // an endpoint atom without mass is not reachable
    const DiscreteMeasure lopsided({0.0, 0.3, 0.7});
    const RealFunction f({5.0, 1.0, -1.0});
    CHECK(std::isinf(cramer_transform(f, lopsided, 5.0)));
    CHECK(cramer_transform(f, lopsided, 1.0) == doctest::Approx(-std::log(0.3)).epsilon(1e-14));
}

TEST_CASE("Cramer transform matches a dense scan") {
    testing::Gen gen(42);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = gen.index(2, 6);
        const auto mu = gen.measure(n);
        const auto f = gen.function(n, -2.0, 2.0);
        const CramerTransform cramer{LogLaplace(f, mu)};
        const double lo = cramer.log_laplace().min_value();
        const double hi = cramer.log_laplace().max_value();
        CHECK(cramer(mu.integrate(f)) == doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
        for (int k = 1; k < 8; ++k) {
            const double t = lo + (hi - lo) * k / 8.0;
            CHECK(cramer(t) == doctest::Approx(oracle::cramer(f.values(), mu.weights(), t)).epsilon(1e-7).scale(1.0));
            CHECK(cramer(t) >= 0.0);
        }
    }
}

TEST_CASE("DZ exponential moment examples") {
    const auto zero = dz_check(kSign, kHalf, 0.0);
    CHECK(zero.lhs == 1.0);
    CHECK(zero.rhs == 1.0);
    CHECK(zero.margin == 0.0);
    const auto half = dz_check(kSign, kHalf, 0.5);
    CHECK(half.lhs == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(half.rhs == doctest::Approx(3.0));
    const auto flat = dz_check(RealFunction::constant(2, 4.0), kHalf, 0.7);
    CHECK(flat.lhs == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(flat.tail.min_margin >= 0.0);
    CHECK_THROWS_AS((void)dz_check(kSign, kHalf, 1.0), PreconditionError);
}

TEST_CASE("DZ bound holds for random functions") {
    testing::Gen gen(43);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = gen.index(1, 8);
        const auto mu = gen.measure(n, gen.coin());
        const auto f = gen.function(n, -3.0, 3.0);
        for (double eps : {0.0, 0.3, 0.6, 0.9}) {
            const auto c = dz_check(f, mu, eps);
            CHECK(c.margin >= -1e-9);
            CHECK(c.tail.min_margin >= -1e-9);
        }
    }
}

TEST_CASE("KO bound examples") {
    const auto grid = default_s_grid(10.0);
    const auto zero = ko_bound_check(RealFunction({0.0, 0.0}), kHalf, gauge_constants(ConvexGauge::power(2.0)), grid);
    CHECK(zero.check.min_margin == 0.0);

    const auto sq = ko_bound_check(kSign, kHalf, gauge_constants(ConvexGauge::power(2.0)), grid);
    CHECK(sq.a == doctest::Approx(std::sqrt(2.0) * 2.0 * std::exp(1.0) / std::sqrt(kLn2)).epsilon(1e-8));
    CHECK(sq.a == doctest::Approx(9.2358).epsilon(1e-4));
    CHECK(sq.check.min_margin >= 0.0);

    const auto half = ko_bound_check(kSign, kHalf, gauge_constants(ConvexGauge::power(2.0, 0.5)), grid);
    // m = e/(sqrt 3 - 1), ||f|| = 1/sqrt(2 log 2)
    const double a = std::sqrt(2.0) * std::exp(1.0) / (std::sqrt(3.0) - 1.0) / std::sqrt(2.0 * kLn2);
    CHECK(half.a == doctest::Approx(a).epsilon(1e-8));
    CHECK(half.a == doctest::Approx(4.460).epsilon(1e-3));
    CHECK(half.check.min_margin >= 0.0);

    CHECK_THROWS_AS((void)ko_bound_check(RealFunction({1.0, 0.0}), kHalf, gauge_constants(ConvexGauge::power(2.0)), grid),
                    PreconditionError);
}

TEST_CASE("dual Laplace condition") {
    const auto beta = monotone_conjugate(ConvexGauge::power(2.0));
    const auto grid = default_s_grid(10.0);
    const auto zero = dual_condition_check(kHalf, FunctionClass::explicit_list({RealFunction({0.0, 0.0})}), beta, 1.0, grid);
    CHECK(zero.min_margin == 0.0);
    const std::vector<double> one{1.0};
    const auto weak = dual_condition_check(kHalf, FunctionClass::explicit_list({kSign}), beta, 0.1, one);
    CHECK(weak.min_margin == doctest::Approx(0.0025 - std::log(std::cosh(1.0))).epsilon(1e-12));
    CHECK(dual_condition_check(kHalf, FunctionClass::explicit_list({kSign}), beta, 2.0, grid).min_margin >= 0.0);
    const auto space = FiniteMetricSpace::line(std::vector<double>{0.0, 1.0});
    CHECK_THROWS_AS((void)dual_condition_check(kHalf, FunctionClass::lipschitz_ball(space), beta, 1.0, grid),
                    PreconditionError);
}

TEST_CASE("sub-gaussian bound") {
    const auto grid = default_s_grid(10.0);
    const auto zero = subgaussian_check(RealFunction({0.0, 0.0}), kHalf, grid);
    CHECK(zero.min_margin >= 0.0);
    CHECK(zero.margins.front().value == doctest::Approx(0.0).scale(1.0));
    testing::Gen gen(44);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = gen.index(1, 8);
        const auto f = gen.function(n, -3.0, 3.0);
        CHECK(subgaussian_check(f, gen.measure(n, gen.coin()), grid).min_margin >= -1e-9);
    }
}

TEST_CASE("the s grid") {
    const auto g = default_s_grid();
    CHECK(g.size() == 201);
    CHECK(g.front() == 0.0);
    CHECK(g[1] == doctest::Approx(1e-3));
    CHECK(g.back() == doctest::Approx(1e3));
}
