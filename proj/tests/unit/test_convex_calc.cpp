#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "tci/convex_calc.hpp"
#include "tci/error.hpp"

using namespace tci;

namespace {
const double kLn2 = std::log(2.0);
}

TEST_CASE("conjugate of power gauges matches the closed form and the dense oracle") {
    for (double p : {1.5, 2.0, 3.0, 4.5}) {
        const auto alpha = ConvexGauge::power(p);
        const auto beta = monotone_conjugate(alpha);
        for (double s : {0.0, 0.1, 0.7, 1.0, 2.0, 5.0}) {
            const double closed = (p - 1.0) * std::pow(s / p, p / (p - 1.0));
            CHECK(beta(s) == doctest::Approx(closed).epsilon(1e-12));
            const double t_star = std::pow(s / p, 1.0 / (p - 1.0));
            CHECK(oracle::dense_conjugate(alpha, s, 2.0 * t_star + 1.0) ==
                  doctest::Approx(closed).epsilon(1e-9));
        }
    }
}

TEST_CASE("self-conjugate and textbook pairs") {
    const auto half = monotone_conjugate(ConvexGauge::power(2.0, 0.5));
    CHECK(half(3.0) == doctest::Approx(4.5));
    CHECK(monotone_conjugate(ConvexGauge::power(2.0))(2.0) == doctest::Approx(1.0));

    const auto lin = monotone_conjugate(ConvexGauge::power(1.0));
    CHECK(lin(0.5) == 0.0);
    CHECK(lin(1.0) == 0.0);
    CHECK(std::isinf(lin(1.0 + 1e-9)));
    CHECK(lin.domain_end() == 1.0);
    CHECK(lin.endpoint() == Endpoint::Closed);
}

TEST_CASE("capped square has a conjugate with a linear branch") {
    const auto beta = monotone_conjugate(ConvexGauge::capped(ConvexGauge::power(2.0), 1.0));
    CHECK(beta(1.0) == doctest::Approx(0.25));
    CHECK(beta(2.0) == doctest::Approx(1.0));
    CHECK(beta(5.0) == doctest::Approx(4.0));
    CHECK(std::isinf(beta.domain_end()));
    CHECK(check_a1(beta).status == A1Status::Holds);
}

TEST_CASE("conjugate_at agrees with closed forms on every family") {
    const auto pl = ConvexGauge::piecewise_linear({0.0, 1.0, 2.0}, {0.0, 0.5, 2.0}, 3.0);
    const auto tail = ConvexGauge::linear_tail(ConvexGauge::power(2.0), 1.0, 2.5);
    const auto capped = ConvexGauge::capped(ConvexGauge::power(3.0), 1.5, false);
    for (const auto* g : {&pl, &tail, &capped}) {
        const auto beta = monotone_conjugate(*g);
        for (double s : {0.0, 0.3, 1.0, 1.7, 2.4}) {
            const double direct = conjugate_at(*g, s);
            if (std::isinf(beta(s))) {
                CHECK(std::isinf(direct));
            } else {
                CHECK(beta(s) == doctest::Approx(direct).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("grid-sampled gauges conjugate close to their closed-form twin") {
    std::vector<double> t;
    std::vector<double> v;
    for (int i = 0; i <= 400; ++i) {
        t.push_back(i * 0.01);
        v.push_back(t.back() * t.back());
    }
    const auto grid = ConvexGauge::grid_sampled(t, v, 8.0);
    const auto beta = monotone_conjugate(grid);
    const auto exact = monotone_conjugate(ConvexGauge::piecewise_linear(t, v, 8.0));
    for (double s : {0.0, 0.5, 1.3, 4.0, 7.9}) CHECK(beta(s) == doctest::Approx(exact(s)).epsilon(1e-6));
}

TEST_CASE("generalized inverses") {
    CHECK(generalized_inverse(ConvexGauge::power(2.0), 2.0, InverseSide::Lower) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(generalized_inverse(ConvexGauge::power(1.0), 0.0, InverseSide::Lower) == 0.0);
    const auto hinge = ConvexGauge::piecewise_linear({0.0, 1.0}, {0.0, 0.0}, 1.0);
    CHECK(generalized_inverse(hinge, 0.0, InverseSide::Lower) == 0.0);
    CHECK(generalized_inverse(hinge, 0.0, InverseSide::Upper) == doctest::Approx(1.0).epsilon(1e-14));
    const auto capped = ConvexGauge::capped(ConvexGauge::power(2.0), 1.0);
    // {t : alpha(t) >= 5} = (1, inf), whose infimum is the cap itself.
    CHECK(generalized_inverse(capped, 5.0, InverseSide::Lower) == doctest::Approx(1.0));
    CHECK(std::isinf(generalized_inverse(ConvexGauge::power(1.0, 0.0), 1.0, InverseSide::Lower)));
    CHECK(generalized_inverse(capped, 5.0, InverseSide::Upper) == 1.0);
    CHECK(generalized_inverse(capped, kLn2, InverseSide::Upper) == doctest::Approx(std::sqrt(kLn2)).epsilon(1e-14));
}

TEST_CASE("assumption A1 classification") {
    CHECK(check_a1(monotone_conjugate(ConvexGauge::power(2.0))).status == A1Status::Holds);
    const auto lin = check_a1(monotone_conjugate(ConvexGauge::power(1.0)));
    CHECK(lin.status == A1Status::Fails);
    CHECK(lin.endpoint == 1.0);
    // alpha with a linear tail of slope 3 has a conjugate finite on [0, 3] only.
    const auto tail = check_a1(monotone_conjugate(ConvexGauge::linear_tail(ConvexGauge::power(2.0), 1.0, 3.0)));
    CHECK(tail.status == A1Status::Fails);
    CHECK(tail.endpoint == doctest::Approx(3.0));
}

TEST_CASE("superquadratic witnesses") {
    const auto grid = default_witness_grid();
    const auto quarter = superquadratic_witness(monotone_conjugate(ConvexGauge::power(2.0)), grid);
    REQUIRE(quarter);
    CHECK(quarter->c == doctest::Approx(0.25));
    CHECK(quarter->s == grid.back());

    const auto short_grid = GridSpec::per_decade(1e-4, 1.0, 40).points();
    const auto w = superquadratic_witness(ConvexGauge::power(2.0, 0.5), short_grid);
    REQUIRE(w);
    CHECK(w->c == doctest::Approx(0.5));
    CHECK(w->s == doctest::Approx(1.0));

    CHECK_FALSE(superquadratic_witness(monotone_conjugate(ConvexGauge::power(1.0)), grid));
    // x^{3/2} has conjugate ~ s^3, which is not superquadratic near 0.
    CHECK_FALSE(superquadratic_witness(monotone_conjugate(ConvexGauge::power(1.5)), grid));
}

TEST_CASE("m_alpha for the square and the half square") {
    const auto sq = gauge_constants(ConvexGauge::power(2.0));
    CHECK(sq.m.u == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(sq.m.m_alpha == doctest::Approx(2.0 * std::exp(1.0)).epsilon(1e-9));

    const auto half = gauge_constants(ConvexGauge::power(2.0, 0.5));
    CHECK(half.m.u == doctest::Approx(std::sqrt(3.0) - 1.0).epsilon(1e-9));
    CHECK(half.m.m_alpha == doctest::Approx(std::exp(1.0) / (std::sqrt(3.0) - 1.0)).epsilon(1e-9));
    CHECK(half.m.slack_cubic >= 0.0);
}

TEST_CASE("m_alpha with a binding threshold constraint matches the brute-force u grid") {
    const SuperquadraticWitness w{0.25, 1.0, {}};
    const auto r = m_alpha(std::sqrt(2.0), w);
    const double u_closed = (std::sqrt(17.0) - 1.0) / 8.0;  // u / sqrt(1 - u) = 1/2
    CHECK(r.u == doctest::Approx(u_closed).epsilon(1e-9));
    CHECK(r.m_alpha == doctest::Approx(std::exp(1.0) / u_closed).epsilon(1e-9));
    const auto [u, m] = oracle::brute_m_alpha(std::sqrt(2.0), 0.25, 1.0);
    CHECK(r.u == doctest::Approx(u).epsilon(2e-6));
    CHECK(r.m_alpha <= m + 1e-12);
    CHECK(r.slack_threshold >= 0.0);
    CHECK(r.slack_cubic >= 0.0);
}

TEST_CASE("m_alpha rejects a degenerate inverse") {
    CHECK_THROWS_AS((void)m_alpha(0.0, SuperquadraticWitness{0.25, 1.0, {}}), DomainError);
}

TEST_CASE("gauge_constants refuses gauges without A2") {
    CHECK_THROWS_AS((void)gauge_constants(ConvexGauge::power(1.0)), PreconditionError);
    CHECK_THROWS_AS((void)gauge_constants(ConvexGauge::power(1.5)), PreconditionError);
    CHECK_NOTHROW((void)gauge_constants(ConvexGauge::power(3.0)));
}

TEST_CASE("doubling constants") {
    const auto grid = default_delta2_grid();
    CHECK(delta2_constant(ConvexGauge::power(1.0), grid).value() == doctest::Approx(2.0));
    CHECK(delta2_constant(ConvexGauge::power(2.0), grid).value() == doctest::Approx(4.0));
    CHECK(delta2_constant(ConvexGauge::power(3.0), grid).value() == doctest::Approx(8.0));
    CHECK_FALSE(delta2_constant([](double x) { return std::expm1(x); }, grid));
}

TEST_CASE("invalid gauges are rejected") {
    CHECK_THROWS_AS((void)ConvexGauge::power(0.5), InvariantViolation);
    CHECK_THROWS_AS((void)ConvexGauge::piecewise_linear({0.0, 1.0, 2.0}, {0.0, 2.0, 2.5}, 3.0), InvariantViolation);
    CHECK_THROWS_AS((void)ConvexGauge::piecewise_linear({0.0, 1.0}, {0.5, 1.0}, 1.0), InvariantViolation);
}
