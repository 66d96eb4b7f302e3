#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "tci/candidates.hpp"
#include "tci/certify.hpp"
#include "tci/error.hpp"
#include "tci/laplace.hpp"
#include "tci/random.hpp"
#include "tci/transport.hpp"

using namespace tci;

namespace {

const double kLn2 = std::log(2.0);
const DiscreteMeasure kHalf({0.5, 0.5});
const DiscreteMeasure kLeft({1.0, 0.0});

FiniteMetricSpace unit_pair() { return FiniteMetricSpace::line(std::vector<double>{0.0, 1.0}); }

std::vector<DiscreteMeasure> two_point_grid() {
    std::vector<DiscreteMeasure> out;
    for (int k = 0; k <= 20; ++k) {
        const double p = k / 20.0;
        out.emplace_back(std::vector<double>{p, 1.0 - p});
    }
    return out;
}

const CertificateReport& by_name(const std::vector<CertificateReport>& reports, const std::string& name) {
    for (const auto& r : reports) {
        if (r.inequality == name) return r;
    }
    FAIL("missing report " << name);
    throw std::logic_error("unreachable");
}

}  // namespace

TEST_CASE("report aggregation") {
    std::vector<InstanceMargin> rows(3);
    rows[0] = {"a", 1.0, 2.0, 1.0};
    rows[1] = {"b", 1.0, 0.5, -0.5};
    rows[2] = {"c", 2.0, 1.5, -0.5};
    const auto r = make_report("x", rows, 1e-9);
    CHECK_FALSE(r.pass);
    CHECK(r.status == ReportStatus::Violated);
    CHECK(r.min_margin == -0.5);
    CHECK(r.worst->id == "b");
    CHECK(r.instances == 3);

    rows[1].margin = rows[2].margin = -1e-10;
    CHECK(make_report("x", rows, 1e-9).pass);
    const auto empty = make_report("x", {}, 1e-9);
    CHECK(empty.pass);
    CHECK(std::isinf(empty.min_margin));

    auto merged = merge_reports({make_report("p", {rows[0]}, 1e-9), make_report("q", {rows[1]}, 1e-9),
                                 make_report("p", {rows[2]}, 1e-9)});
    REQUIRE(merged.size() == 2);
    CHECK(merged[0].inequality == "p");
    CHECK(merged[0].instances == 2);
    CHECK(merged[0].min_margin == -1e-10);
}

TEST_CASE("norm-entropy examples") {
    const auto chi1 = FunctionClass::chi_bounded(RealFunction({1.0, 1.0}));
    const std::vector<DiscreteMeasure> same{kHalf};
    CHECK(verify_norm_entropy(kHalf, chi1, ConvexGauge::power(2.0, 0.5), 1.0, same).min_margin == 0.0);

    const std::vector<DiscreteMeasure> left{kLeft};
    const auto pinsker = verify_norm_entropy(kHalf, chi1, ConvexGauge::power(2.0, 0.5), 1.0, left);
    CHECK(pinsker.pass);
    CHECK(pinsker.min_margin == doctest::Approx(kLn2 - 0.5).epsilon(1e-12));

    const auto tight = verify_norm_entropy(kHalf, chi1, ConvexGauge::power(2.0), 0.1, left);
    CHECK_FALSE(tight.pass);
    CHECK(tight.min_margin == doctest::Approx(kLn2 - 100.0).epsilon(1e-12));
    REQUIRE(tight.worst_nu);
    CHECK(*tight.worst_nu == kLeft);
}

TEST_CASE("forward and backward equivalence") {
    const auto zero = FunctionClass::explicit_list({RealFunction({0.0, 0.0})});
    CHECK(verify_equiv_forward(kHalf, zero, ConvexGauge::power(2.0), 1.0).pass);

    const auto sign = FunctionClass::explicit_list({RealFunction({1.0, -1.0})});
    const auto fwd = verify_equiv_forward(kHalf, sign, ConvexGauge::power(2.0, 0.5), 1.0);
    CHECK(fwd.status == ReportStatus::Certified);
    CHECK(fwd.worst->lhs == doctest::Approx(1.0 / std::sqrt(2.0 * kLn2)).epsilon(1e-9));
    CHECK(fwd.worst->rhs == 3.0);

    // a = 0.1 breaks the dual condition, so nothing is asserted
    const auto weak = verify_equiv_forward(kHalf, sign, ConvexGauge::power(2.0), 0.1);
    CHECK(weak.status == ReportStatus::HypothesisNotCertified);
    CHECK(weak.pass);

    const auto grid = two_point_grid();
    CHECK(verify_equiv_backward(kHalf, zero, ConvexGauge::power(2.0), 0.5, grid).pass);
    const auto back = verify_equiv_backward(kHalf, sign, ConvexGauge::power(2.0), 1.20113, grid);
    CHECK(back.status == ReportStatus::Certified);
    CHECK(back.constant("a").value() == doctest::Approx(9.2358).epsilon(1e-4));
    // 1.2011 is below the true norm 1/sqrt(log 2) = 1.201122...
    CHECK(verify_equiv_backward(kHalf, sign, ConvexGauge::power(2.0), 1.2011, grid).status ==
          ReportStatus::HypothesisNotCertified);

    CHECK_THROWS_AS((void)verify_equiv_forward(kHalf, FunctionClass::lipschitz_ball(unit_pair()),
                                               ConvexGauge::power(2.0), 1.0),
                    PreconditionError);
    CHECK_THROWS_AS((void)verify_equiv_backward(kHalf, sign, ConvexGauge::power(1.0), 1.0, grid), PreconditionError);
}

TEST_CASE("metric transport inequality on two points") {
    const std::vector<DiscreteMeasure> cands{kHalf, kLeft};
    const auto r = verify_tci_metric(kHalf, unit_pair(), ConvexGauge::power(2.0), cands);
    CHECK(r.pass);
    const double norm = 1.0 / std::sqrt(std::log(3.0));
    CHECK(r.constant("min_distance_norm").value() == doctest::Approx(norm).epsilon(1e-9));
    CHECK(r.constant("a").value() == doctest::Approx(2.0 * std::sqrt(2.0) * 2.0 * std::exp(1.0) * norm).epsilon(1e-9));
    CHECK(r.constant("a").value() == doctest::Approx(14.67).epsilon(1e-3));
    const double a = r.constant("a").value();
    // T_d = 1/2: only half of the mass has to move
    CHECK(r.rows[1].lhs == doctest::Approx(0.25 / (a * a)).epsilon(1e-9));
    CHECK(r.rows[0].margin == 0.0);
}

TEST_CASE("cost transport inequality with q = x^2 on three points") {
    const auto line = FiniteMetricSpace::line(std::vector<double>{0.0, 1.0, 2.0});
    const DiscreteMeasure mu({0.5, 0.25, 0.25});
    std::vector<DiscreteMeasure> cands{mu};
    for (std::size_t i = 0; i < 3; ++i) cands.push_back(DiscreteMeasure::dirac(3, i));
    const auto reports = verify_tci_cost(mu, line, ConvexGauge::power(2.0), ConvexGauge::power(2.0), cands);
    for (const auto& r : reports) {
        INFO(r.inequality);
        CHECK(r.pass);
    }
    const auto& main = by_name(reports, "tci-cost");
    CHECK(main.constant("K").value() == doctest::Approx(4.0));
    CHECK(main.rows[0].margin == 0.0);
    CHECK(by_name(reports, "tci-cost-explicit").pass);
    CHECK(by_name(reports, "sandwich").pass);
    CHECK(by_name(reports, "bolley-villani-tci-1").pass);
    CHECK(by_name(reports, "bolley-villani-tci-2").pass);
}

TEST_CASE("cost transport inequality with the metric cost also checks the comparison bound") {
    testing::Gen gen(51);
    for (int trial = 0; trial < 5; ++trial) {
        const std::size_t n = gen.index(3, 6);
        const auto space = gen.plane(n);
        const auto mu = gen.measure(n);
        const auto cands = generate_candidates(mu, space, {}, 60, 7 + trial);
        const auto reports = verify_tci_cost(mu, space, ConvexGauge::power(1.0), ConvexGauge::power(2.0), cands);
        for (const auto& name : {"tci-cost", "tci-cost-explicit", "bolley-villani-tci-2", "sandwich"}) {
            INFO(name);
            CHECK(by_name(reports, name).pass);
        }
    }
}

TEST_CASE("weighted Pinsker examples") {
    const auto grid = two_point_grid();
    const auto zero = verify_weighted_pinsker(kHalf, RealFunction({0.0, 0.0}), ConvexGauge::power(2.0), grid);
    for (const auto& row : by_name(zero, "weighted-pinsker").rows) CHECK(row.lhs == 0.0);

    const auto half = verify_weighted_pinsker(kHalf, RealFunction({1.0, 1.0}), ConvexGauge::power(2.0, 0.5), grid);
    for (const auto& r : half) {
        INFO(r.inequality);
        CHECK(r.pass);
    }
    const auto full = verify_weighted_pinsker(kHalf, RealFunction({1.0, 2.0}), ConvexGauge::power(2.0), grid);
    for (const auto& r : full) {
        INFO(r.inequality);
        CHECK(r.pass);
    }
    CHECK(by_name(full, "weighted-pinsker-necessity").pass);
}

TEST_CASE("sub-gaussian weighted Pinsker") {
    const std::vector<DiscreteMeasure> cands{kHalf, kLeft};
    const auto r = verify_improved_x2(kHalf, RealFunction({1.0, 1.0}), cands);
    const auto& imp = by_name(r, "improved-x2");
    CHECK(imp.pass);
    CHECK(imp.rows[0].lhs == 0.0);
    CHECK(imp.rows[0].rhs == 0.0);
    CHECK(imp.rows[1].lhs == doctest::Approx(1.0));
    // delta = 1 gives sqrt(5) sqrt(2 log 2); the infimum can only be lower
    CHECK(imp.rows[1].rhs <= std::sqrt(5.0) * std::sqrt(2.0 * kLn2) + 1e-12);
    CHECK(imp.rows[1].rhs >= 1.0);
    CHECK(by_name(r, "improved-vs-crude").pass);
    CHECK(by_name(r, "crude-x2").pass);
}

TEST_CASE("function-based suites") {
    const std::vector<RealFunction> fs{RealFunction({1.0, -1.0}), RealFunction({0.3, 2.0})};
    CHECK(verify_ko(kHalf, fs, ConvexGauge::power(2.0)).pass);
    CHECK(verify_ko(kHalf, fs, ConvexGauge::power(2.0, 0.5)).pass);
    for (const auto& r : verify_dz(kHalf, fs, default_eps_values())) CHECK(r.pass);
    CHECK(verify_subgaussian(kHalf, fs).pass);

    CertifyOptions shrink;
    shrink.a_scale = 0.01;
    CHECK_FALSE(verify_ko(kHalf, fs, ConvexGauge::power(2.0), shrink).pass);
    CHECK_FALSE(verify_subgaussian(kHalf, fs, shrink).pass);
}

TEST_CASE("reports do not depend on the worker count") {
    Rng rng(5);
    const auto inst = random_instance(rng, 7, 7);
    const auto cands = generate_candidates(inst.mu, inst.space, {}, 300, 99);
    CertifyOptions one;
    CertifyOptions many;
    many.workers = 4;
    const auto a = verify_tci_metric(inst.mu, inst.space, ConvexGauge::power(2.0), cands, one);
    const auto b = verify_tci_metric(inst.mu, inst.space, ConvexGauge::power(2.0), cands, many);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].margin == b.rows[i].margin);
    CHECK(a.min_margin == b.min_margin);
    CHECK(a.worst->id == b.worst->id);
}

TEST_CASE("enlarging the candidate set never raises the minimum margin") {
    Rng rng(6);
    const auto inst = random_instance(rng, 5, 8);
    const auto cands = generate_candidates(inst.mu, inst.space, {}, 400, 3);
    double prev = kInf;
    for (std::size_t count : {10, 50, 200, 400}) {
        const std::span<const DiscreteMeasure> head(cands.data(), count);
        const auto r = verify_tci_metric(inst.mu, inst.space, ConvexGauge::power(2.0), head);
        CHECK(r.min_margin <= prev);
        prev = r.min_margin;
    }
}

TEST_CASE("the worst instance recomputes to its stored margin") {
    Rng rng(8);
    const auto inst = random_instance(rng, 4, 8);
    const auto cands = generate_candidates(inst.mu, inst.space, {}, 200, 4);
    CertifyOptions shrink;
    shrink.a_scale = 0.01;
    const auto r = verify_tci_metric(inst.mu, inst.space, ConvexGauge::power(2.0), cands, shrink);
    REQUIRE(r.worst_nu);
    const std::vector<DiscreteMeasure> again{*r.worst_nu};
    const auto re = verify_tci_metric(inst.mu, inst.space, ConvexGauge::power(2.0), again, shrink);
    CHECK(std::abs(re.min_margin - r.min_margin) <= 1e-12);
}

TEST_CASE("candidate generation") {
    CandidateFamily vertices;
    vertices.reference = vertices.line_mixtures = vertices.tilts = vertices.dirichlet = false;
    const auto first = generate_candidates(kHalf, unit_pair(), vertices, 1, 0);
    REQUIRE(first.size() == 1);
    CHECK(first[0] == kLeft);

    Rng rng(9);
    const auto inst = random_instance(rng, 6, 6);
    const auto a = generate_candidates(inst.mu, inst.space, {}, 250, 17);
    const auto b = generate_candidates(inst.mu, inst.space, {}, 250, 17);
    CHECK(a == b);
    CHECK(a.size() == 250);
    for (std::size_t i = 0; i < 6; ++i) CHECK(a[i] == DiscreteMeasure::dirac(6, i));

    // tilts along a Kantorovich potential follow the exponential family
    const auto kr = kr_dual(DiscreteMeasure::dirac(6, 0), inst.mu, inst.space);
    CandidateFamily tilts;
    tilts.diracs = tilts.reference = tilts.line_mixtures = tilts.distance_tilts = tilts.dirichlet = false;
    tilts.tilt_functions = {kr.potential};
    tilts.tilt_strengths = {-1.0, 0.5, 2.0};
    const auto t = generate_candidates(inst.mu, inst.space, tilts, 3, 0);
    REQUIRE(t.size() == 3);
    for (std::size_t k = 0; k < 3; ++k) {
        const auto expected = exp_tilt(inst.mu, kr.potential, tilts.tilt_strengths[k]);
        for (std::size_t i = 0; i < 6; ++i) CHECK(t[k][i] == doctest::Approx(expected[i]).epsilon(1e-12));
    }
}

TEST_CASE("a grid-certified dual condition carries over to tilted candidates") {
    testing::Gen gen(52);
    const auto alpha = ConvexGauge::power(2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = gen.index(2, 6);
        const auto mu = gen.measure(n);
        std::vector<RealFunction> fs;
        for (int k = 0; k < 3; ++k) fs.push_back(gen.function(n, -1.0, 1.0));
        const auto phi = FunctionClass::explicit_list(fs);
        const double a = gen.real(1.0, 4.0);
        const auto dual = dual_condition_check(mu, phi, monotone_conjugate(alpha), a, default_s_grid(50.0));
        if (dual.min_margin < 0.0) continue;
        std::vector<DiscreteMeasure> tilted;
        for (const auto& f : fs)
            for (double s : {-8.0, -2.0, -0.5, 0.5, 2.0, 8.0}) tilted.push_back(exp_tilt(mu, f, s));
        CHECK(verify_norm_entropy(mu, phi, alpha, a, tilted).pass);
    }
}

TEST_CASE("theorem constants survive random instances") {
    Rng rng(10);
    for (int trial = 0; trial < 6; ++trial) {
        const auto inst = random_instance(rng, 2, 8);
        const auto cands = generate_candidates(inst.mu, inst.space, {}, 150, trial);
        CHECK(verify_tci_metric(inst.mu, inst.space, ConvexGauge::power(2.0, 0.5), cands).pass);
        const auto chi = random_function(rng, inst.mu.size(), 0.0, 3.0);
        for (const auto& r : verify_weighted_pinsker(inst.mu, chi, ConvexGauge::power(2.0), cands)) {
            INFO(r.inequality);
            CHECK(r.pass);
        }
        for (const auto& r : verify_improved_x2(inst.mu, chi, cands)) CHECK(r.pass);
    }
}
