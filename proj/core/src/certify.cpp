#include "tci/certify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "tci/convex_calc.hpp"
#include "tci/error.hpp"
#include "tci/laplace.hpp"
#include "tci/numeric.hpp"
#include "tci/orlicz.hpp"
#include "tci/parallel.hpp"
#include "tci/random.hpp"
#include "tci/transport.hpp"

namespace tci {
namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::string nu_id(std::size_t k) { return "nu[" + std::to_string(k) + "]"; }

InstanceMargin make_row(std::string id, double lhs, double rhs) {
    InstanceMargin r;
    r.id = std::move(id);
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = is_inf(rhs) ? kInf : rhs - lhs;
    return r;
}

double effective_a(double computed, const CertifyOptions& o) {
    return o.a_override ? *o.a_override : computed * o.a_scale;
}

// Ratio applied to bounds that scale with a.
double scale_factor(double computed, const CertifyOptions& o) {
    return computed > 0.0 ? effective_a(computed, o) / computed : o.a_scale;
}

std::vector<double> delta_grid(const CertifyOptions& o) {
    return o.delta_grid.empty() ? default_delta_grid() : o.delta_grid;
}

void finish(CertificateReport& report, std::span<const DiscreteMeasure> candidates, const CertifyOptions& o) {
    if (report.worst && report.worst->candidate != kNoIndex && report.worst->candidate < candidates.size()) {
        report.worst_nu = candidates[report.worst->candidate];
    }
    if (!o.keep_rows) report.rows.clear();
}

void add_gauge_constants(CertificateReport& report, const GaugeConstants& g) {
    report.constants.emplace_back("m_alpha", g.m.m_alpha);
    report.constants.emplace_back("u", g.m.u);
    report.constants.emplace_back("witness_c", g.m.witness.c);
    report.constants.emplace_back("witness_s", g.m.witness.s);
    report.constants.emplace_back("alpha_inverse_at_2", g.m.alpha_inverse_at_2);
}

void add_scaling(CertificateReport& report, const CertifyOptions& o) {
    if (o.a_override) report.constants.emplace_back("a_override", *o.a_override);
    if (o.a_scale != 1.0) report.constants.emplace_back("a_scale", o.a_scale);
}

CertificateReport hypothesis_not_certified(std::string name, double tolerance, std::string why) {
    CertificateReport r;
    r.inequality = std::move(name);
    r.status = ReportStatus::HypothesisNotCertified;
    r.tolerance = tolerance;
    r.pass = true;
    r.notes.push_back(std::move(why));
    return r;
}

RealFunction centered(const RealFunction& f, const DiscreteMeasure& mu) {
    const double mean = mu.integrate(f);
    std::vector<double> v(f.values());
    for (double& x : v) x -= mean;
    return RealFunction(std::move(v));
}

double log_moment(const DiscreteMeasure& mu, const RealFunction& f, double (*transform)(double, double),
                  double delta) {
    std::vector<double> e(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) e[i] = transform(f[i], delta);
    return log_sum_exp(mu.weights(), e);
}

double inverse_at_entropy(const ConvexGauge& alpha, double h) {
    return is_inf(h) ? kInf : generalized_inverse(alpha, h, InverseSide::Upper);
}

// Rows for bounds of the form lhs(nu) <= rhs(nu) over the candidates.
template <typename Fn>
std::vector<InstanceMargin> candidate_rows(std::span<const DiscreteMeasure> candidates, const CertifyOptions& o,
                                           Fn&& fn) {
    return parallel_map<InstanceMargin>(candidates.size(), o.workers, [&](std::size_t k) {
        InstanceMargin r = fn(candidates[k]);
        r.id = nu_id(k);
        r.candidate = k;
        return r;
    });
}

// sup over (a sample of) Phi of ||phi - <phi, mu>||_tau.
std::pair<double, bool> class_sup_norm(const DiscreteMeasure& mu, const FunctionClass& phi, const ConvexGauge& alpha) {
    const std::size_t n = mu.size();
    double best = 0.0;
    auto consider = [&](const RealFunction& f) { best = std::max(best, luxemburg_norm(centered(f, mu), mu, alpha)); };
    if (const auto* list = std::get_if<FunctionClass::ExplicitList>(&phi.variant())) {
        for (const auto& f : list->functions) consider(f);
        return {best, false};
    }
    if (const auto* ball = std::get_if<FunctionClass::ChiBounded>(&phi.variant())) {
        // The norm is convex in phi, so the sup over the box sits at a sign vertex.
        const bool exhaustive = n <= 14;
        const std::size_t total = exhaustive ? std::size_t{1} << (n == 0 ? 0 : n - 1) : 4096;
        Rng rng(0x5eedULL);
        for (std::size_t mask = 0; mask < total; ++mask) {
            std::vector<double> v(n);
            for (std::size_t i = 0; i < n; ++i) {
                const bool negative = exhaustive ? ((mask >> i) & 1U) != 0 : rng.uniform() < 0.5;
                v[i] = negative ? -ball->chi[i] : ball->chi[i];
            }
            consider(RealFunction(std::move(v)));
        }
        return {best, !exhaustive};
    }
    const auto& space = *std::get<FunctionClass::LipschitzBall>(phi.variant()).space;
    double diameter = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        consider(space.distance_from(i));
        for (std::size_t j = 0; j < n; ++j) diameter = std::max(diameter, space.distance(i, j));
    }
    Rng rng(0x11b5ULL);
    for (int k = 0; k < 256; ++k) {
        std::vector<double> offsets(n);
        for (double& r : offsets) r = rng.uniform(0.0, diameter);
        std::vector<double> v(n, kInf);
        for (std::size_t x = 0; x < n; ++x) {
            for (std::size_t j = 0; j < n; ++j) v[x] = std::min(v[x], space.distance(x, j) + offsets[j]);
        }
        consider(RealFunction(std::move(v)));
    }
    return {best, true};
}

std::vector<double> s_grid_for(const CertifyOptions& o, const ConvexGauge& conjugate, double a) {
    if (!o.s_grid.empty()) return o.s_grid;
    const double b = conjugate.domain_end();
    if (std::isfinite(b) && a > 0.0) return default_s_grid(b / a * (1.0 - 1e-9));
    return default_s_grid(1e3);
}

}  // namespace

const char* to_string(ReportStatus status) {
    switch (status) {
        case ReportStatus::Certified:
            return "certified";
        case ReportStatus::Violated:
            return "violated";
        case ReportStatus::HypothesisNotCertified:
            return "hypothesis not certified";
        case ReportStatus::Informational:
            return "informational";
    }
    return "unknown";
}

std::optional<double> CertificateReport::constant(const std::string& name) const {
    for (const auto& [k, v] : constants) {
        if (k == name) return v;
    }
    return std::nullopt;
}

CertificateReport make_report(std::string inequality, std::vector<InstanceMargin> rows, double tolerance) {
    CertificateReport r;
    r.inequality = std::move(inequality);
    r.tolerance = tolerance;
    r.instances = rows.size();
    for (const auto& row : rows) {
        if (!r.worst || row.margin < r.worst->margin) r.worst = row;
    }
    r.min_margin = r.worst ? r.worst->margin : kInf;
    r.pass = !(r.min_margin < -tolerance);
    r.status = r.pass ? ReportStatus::Certified : ReportStatus::Violated;
    r.rows = std::move(rows);
    return r;
}

std::vector<CertificateReport> merge_reports(std::vector<CertificateReport> reports) {
    std::vector<CertificateReport> out;
    std::map<std::string, std::size_t> slot;
    for (auto& rep : reports) {
        const auto it = slot.find(rep.inequality);
        if (it == slot.end()) {
            slot.emplace(rep.inequality, out.size());
            out.push_back(std::move(rep));
            continue;
        }
        CertificateReport& acc = out[it->second];
        acc.instances += rep.instances;
        acc.rows.insert(acc.rows.end(), rep.rows.begin(), rep.rows.end());
        if (rep.worst && (!acc.worst || rep.worst->margin < acc.worst->margin)) {
            acc.worst = rep.worst;
            acc.worst_nu = rep.worst_nu;
            acc.min_margin = rep.min_margin;
            acc.constants = rep.constants;
        }
        for (auto& note : rep.notes) {
            if (std::find(acc.notes.begin(), acc.notes.end(), note) == acc.notes.end()) acc.notes.push_back(note);
        }
        if (acc.status == ReportStatus::Informational) continue;
        if (rep.status == ReportStatus::HypothesisNotCertified && acc.instances == 0) continue;
        acc.pass = !(acc.min_margin < -acc.tolerance);
        acc.status = acc.pass ? ReportStatus::Certified : ReportStatus::Violated;
    }
    return out;
}

std::vector<double> default_eps_values() {
    std::vector<double> out;
    for (int k = 0; k <= 9; ++k) out.push_back(0.1 * k);
    return out;
}

CertificateReport verify_norm_entropy(const DiscreteMeasure& mu, const FunctionClass& phi, const ConvexGauge& alpha,
                                      double a, std::span<const DiscreteMeasure> candidates,
                                      const CertifyOptions& options) {
    if (!(a > 0.0)) throw PreconditionError("norm-entropy check: a must be positive");
    auto rows = candidate_rows(candidates, options, [&](const DiscreteMeasure& nu) {
        return make_row("", alpha(dual_norm(nu, mu, phi) / a), relative_entropy(nu, mu));
    });
    CertificateReport rep = make_report("norm-entropy", std::move(rows), options.tolerance);
    rep.constants.emplace_back("a", a);
    finish(rep, candidates, options);
    return rep;
}

CertificateReport verify_equiv_forward(const DiscreteMeasure& mu, const FunctionClass& phi, const ConvexGauge& alpha,
                                       double a, const CertifyOptions& options) {
    const auto* list = std::get_if<FunctionClass::ExplicitList>(&phi.variant());
    if (list == nullptr) throw PreconditionError("forward equivalence check needs an explicit function list");
    if (!(a > 0.0)) throw PreconditionError("forward equivalence check: a must be positive");
    const ConvexGauge conjugate = monotone_conjugate(alpha);
    const auto grid = s_grid_for(options, conjugate, a);
    const GridCheck dual = dual_condition_check(mu, phi, conjugate, a, grid);
    if (dual.min_margin < -options.tolerance) {
        return hypothesis_not_certified("equiv-forward", options.tolerance,
                                        "dual Laplace condition fails on the s grid (min margin " +
                                            fmt(dual.min_margin) + "); nothing asserted");
    }
    std::vector<InstanceMargin> rows;
    for (std::size_t k = 0; k < list->functions.size(); ++k) {
        InstanceMargin r = make_row("phi[" + std::to_string(k) + "]",
                                    luxemburg_norm(centered(list->functions[k], mu), mu, alpha), 3.0 * a);
        r.function = k;
        rows.push_back(std::move(r));
    }
    CertificateReport rep = make_report("equiv-forward", std::move(rows), options.tolerance);
    rep.constants.emplace_back("a", a);
    rep.constants.emplace_back("M", 3.0 * a);
    rep.constants.emplace_back("dual_min_margin", dual.min_margin);
    rep.notes.push_back("hypothesis grid-certified on " + std::to_string(grid.size()) + " s values");
    if (!options.keep_rows) rep.rows.clear();
    return rep;
}

CertificateReport verify_equiv_backward(const DiscreteMeasure& mu, const FunctionClass& phi, const ConvexGauge& alpha,
                                        double big_m, std::span<const DiscreteMeasure> candidates,
                                        const CertifyOptions& options) {
    const GaugeConstants g = gauge_constants(alpha);
    const auto [sup_norm, sampled] = class_sup_norm(mu, phi, alpha);
    if (sup_norm > big_m + options.tolerance) {
        return hypothesis_not_certified("equiv-backward", options.tolerance,
                                        "sup of centered Luxemburg norms " + fmt(sup_norm) + " exceeds M = " +
                                            fmt(big_m) + "; nothing asserted");
    }
    const double a_theorem = kSqrt2 * g.m.m_alpha * big_m;
    const double a = effective_a(a_theorem, options);
    CertificateReport rep = verify_norm_entropy(mu, phi, alpha, a, candidates, options);
    rep.inequality = "equiv-backward";
    rep.constants.emplace_back("M", big_m);
    rep.constants.emplace_back("sup_centered_norm", sup_norm);
    add_gauge_constants(rep, g);
    add_scaling(rep, options);
    if (sampled) rep.notes.push_back("sup over the function class taken on a sample");
    return rep;
}

CertificateReport verify_tci_metric(const DiscreteMeasure& mu, const FiniteMetricSpace& space,
                                    const ConvexGauge& alpha, std::span<const DiscreteMeasure> candidates,
                                    const CertifyOptions& options) {
    require_same_size(space.size(), mu.size(), "metric transport inequality");
    const GaugeConstants g = gauge_constants(alpha);
    double best_norm = kInf;
    std::size_t best_x0 = 0;
    for (std::size_t x0 = 0; x0 < space.size(); ++x0) {
        const double nrm = luxemburg_norm(space.distance_from(x0), mu, alpha);
        if (nrm < best_norm) {
            best_norm = nrm;
            best_x0 = x0;
        }
    }
    const double a_theorem = 2.0 * kSqrt2 * g.m.m_alpha * best_norm;
    const double a = effective_a(a_theorem, options);
    const Matrix cost = cost_matrix(space, CostSpec::metric());
    auto rows = candidate_rows(candidates, options, [&](const DiscreteMeasure& nu) {
        const double h = relative_entropy(nu, mu);
        const double t = ot_cost(nu, mu, cost).cost;
        return make_row("", t == 0.0 ? 0.0 : alpha(t / a), h);
    });
    CertificateReport rep = make_report("tci-metric", std::move(rows), options.tolerance);
    rep.constants.emplace_back("a", a);
    rep.constants.emplace_back("a_theorem", a_theorem);
    rep.constants.emplace_back("min_distance_norm", best_norm);
    rep.constants.emplace_back("x0", static_cast<double>(best_x0));
    add_gauge_constants(rep, g);
    add_scaling(rep, options);
    finish(rep, candidates, options);
    return rep;
}

std::vector<CertificateReport> verify_tci_cost(const DiscreteMeasure& mu, const FiniteMetricSpace& space,
                                               const ConvexGauge& q, const ConvexGauge& alpha,
                                               std::span<const DiscreteMeasure> candidates,
                                               const CertifyOptions& options) {
    const std::size_t n = space.size();
    require_same_size(n, mu.size(), "cost transport inequality");
    std::vector<double> k_grid = default_delta2_grid();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) k_grid.push_back(space.distance(i, j));
        }
    }
    std::sort(k_grid.begin(), k_grid.end());
    k_grid.erase(std::unique(k_grid.begin(), k_grid.end()), k_grid.end());
    const auto k_opt = delta2_constant(q, k_grid);
    if (!k_opt) {
        throw PreconditionError("cost gauge " + q.describe() +
                                " fails the doubling condition q(2x) <= K q(x) on the check grid");
    }
    const double big_k = *k_opt;
    const GaugeConstants g = gauge_constants(alpha);
    const CostSpec spec = CostSpec::gauge(q);
    const Matrix cost = cost_matrix(space, spec);
    const Matrix metric = cost_matrix(space, CostSpec::metric());
    std::vector<RealFunction> rows_of_cost;
    for (std::size_t x0 = 0; x0 < n; ++x0) {
        const auto r = cost.row(x0);
        rows_of_cost.emplace_back(std::vector<double>(r.begin(), r.end()));
    }
    double best_norm = kInf;
    std::size_t best_x0 = 0;
    for (std::size_t x0 = 0; x0 < n; ++x0) {
        const double nrm = luxemburg_norm(rows_of_cost[x0], mu, alpha);
        if (nrm < best_norm) {
            best_norm = nrm;
            best_x0 = x0;
        }
    }
    const double a_theorem = kSqrt2 * big_k * g.m.m_alpha * best_norm;
    const double a = effective_a(a_theorem, options);
    const double scale = scale_factor(a_theorem, options);

    struct Sides {
        double h;
        double tc;
        double td;
    };
    const auto sides = parallel_map<Sides>(candidates.size(), options.workers, [&](std::size_t k) {
        const auto& nu = candidates[k];
        return Sides{relative_entropy(nu, mu), ot_cost(nu, mu, cost).cost, ot_cost(nu, mu, metric).cost};
    });
    auto rows_from = [&](auto&& fn) {
        std::vector<InstanceMargin> rows;
        rows.reserve(candidates.size());
        for (std::size_t k = 0; k < candidates.size(); ++k) {
            InstanceMargin r = fn(k, sides[k]);
            r.id = nu_id(k);
            r.candidate = k;
            rows.push_back(std::move(r));
        }
        return rows;
    };

    std::vector<CertificateReport> out;
    {
        CertificateReport rep = make_report("tci-cost", rows_from([&](std::size_t, const Sides& s) {
                                                return make_row("", s.tc == 0.0 ? 0.0 : alpha(s.tc / a), s.h);
                                            }),
                                            options.tolerance);
        rep.constants.emplace_back("a", a);
        rep.constants.emplace_back("a_theorem", a_theorem);
        rep.constants.emplace_back("K", big_k);
        rep.constants.emplace_back("min_cost_norm", best_norm);
        rep.constants.emplace_back("x0", static_cast<double>(best_x0));
        add_gauge_constants(rep, g);
        add_scaling(rep, options);
        out.push_back(std::move(rep));
    }

    const auto deltas = delta_grid(options);
    if (is_inf(alpha.domain_end())) {
        double best = kInf;
        double printed = kInf;
        for (std::size_t x0 = 0; x0 < n; ++x0) {
            best = std::min(best, luxemburg_upper_bound(rows_of_cost[x0], mu, alpha, deltas).value);
            std::vector<double> e(n);
            const auto bound = minimize_over_delta(
                [&](double d) {
                    for (std::size_t i = 0; i < n; ++i) e[i] = d * alpha(rows_of_cost[x0][i]);
                    return (1.0 + log_sum_exp(mu.weights(), e) / kLog2) / d;
                },
                deltas);
            printed = std::min(printed, bound.value);
        }
        const double constant = kSqrt2 * big_k * g.m.m_alpha * best * scale;
        CertificateReport rep = make_report("tci-cost-explicit", rows_from([&](std::size_t, const Sides& s) {
                                                return make_row("", s.tc, constant * inverse_at_entropy(alpha, s.h));
                                            }),
                                            options.tolerance);
        rep.constants.emplace_back("constant", constant);
        rep.constants.emplace_back("norm_upper_estimate", best);
        rep.constants.emplace_back("K", big_k);
        rep.constants.emplace_back("m_alpha", g.m.m_alpha);
        add_scaling(rep, options);
        rep.notes.push_back("Luxemburg norm replaced by inf_delta (1/delta)(1 + log E exp(alpha(delta c)) / log 2)");
        out.push_back(std::move(rep));

        const double printed_constant = kSqrt2 * big_k * g.m.m_alpha * printed * scale;
        CertificateReport info = make_report("tci-cost-explicit-printed", rows_from([&](std::size_t, const Sides& s) {
                                                 return make_row("", s.tc,
                                                                 printed_constant * inverse_at_entropy(alpha, s.h));
                                             }),
                                             options.tolerance);
        info.status = ReportStatus::Informational;
        info.pass = true;
        info.constants.emplace_back("constant", printed_constant);
        info.notes.push_back(
            "integrand exp(delta alpha(c)) as printed; not homogeneous in c, reported for comparison only");
        out.push_back(std::move(info));
    }

    {
        std::vector<RealFunction> weights;
        for (std::size_t x0 = 0; x0 < n; ++x0) weights.push_back(sandwich_weight(space, q, x0));
        std::vector<InstanceMargin> rows;
        for (std::size_t k = 0; k < candidates.size(); ++k) {
            const auto& s = sides[k];
            double tv = kInf;
            for (const auto& w : weights) tv = std::min(tv, weighted_total_variation(candidates[k], mu, w));
            InstanceMargin lower = make_row(nu_id(k) + " lower", q(s.td), s.tc);
            InstanceMargin upper = make_row(nu_id(k) + " upper", s.tc, tv);
            lower.candidate = upper.candidate = k;
            rows.push_back(std::move(lower));
            rows.push_back(std::move(upper));
        }
        CertificateReport rep = make_report("sandwich", std::move(rows), options.tolerance);
        rep.notes.push_back("q(T_d) <= T_c <= min over x0 of sum chi_x0 |nu - mu|, chi_x0 = q(2 d(., x0)) / 2");
        out.push_back(std::move(rep));
    }

    if (const auto p_opt = spec.power_exponent()) {
        const double p = *p_opt;
        double c1 = kInf;
        double c2 = kInf;
        for (std::size_t x0 = 0; x0 < n; ++x0) {
            std::vector<double> e(n);
            const auto inner1 = minimize_over_delta(
                [&](double d) {
                    for (std::size_t i = 0; i < n; ++i) e[i] = d * std::pow(metric(x0, i), p);
                    return (1.5 + log_sum_exp(mu.weights(), e)) / d;
                },
                deltas);
            const auto inner2 = minimize_over_delta(
                [&](double d) {
                    for (std::size_t i = 0; i < n; ++i) e[i] = d * std::pow(metric(x0, i), 2.0 * p);
                    return (1.0 + log_sum_exp(mu.weights(), e)) / (2.0 * d);
                },
                deltas);
            c1 = std::min(c1, 2.0 * std::pow(inner1.value, 1.0 / p));
            c2 = std::min(c2, 2.0 * std::pow(inner2.value, 1.0 / (2.0 * p)));
        }
        CertificateReport bv1 = make_report("bolley-villani-tci-1", rows_from([&](std::size_t, const Sides& s) {
                                                const double rhs =
                                                    is_inf(s.h) ? kInf
                                                                : c1 * (std::pow(s.h, 1.0 / p) +
                                                                        std::pow(0.5 * s.h, 1.0 / (2.0 * p)));
                                                return make_row("", std::pow(s.tc, 1.0 / p), rhs);
                                            }),
                                            options.tolerance);
        bv1.constants.emplace_back("p", p);
        bv1.constants.emplace_back("constant", c1);
        out.push_back(std::move(bv1));
        CertificateReport bv2 = make_report("bolley-villani-tci-2", rows_from([&](std::size_t, const Sides& s) {
                                                const double rhs =
                                                    is_inf(s.h) ? kInf : c2 * std::pow(s.h, 1.0 / (2.0 * p));
                                                return make_row("", std::pow(s.tc, 1.0 / p), rhs);
                                            }),
                                            options.tolerance);
        bv2.constants.emplace_back("p", p);
        bv2.constants.emplace_back("constant", c2);
        out.push_back(std::move(bv2));

        std::vector<RealFunction> powered;
        for (std::size_t x0 = 0; x0 < n; ++x0) {
            std::vector<double> v(n);
            for (std::size_t i = 0; i < n; ++i) v[i] = std::pow(2.0, p - 1.0) * std::pow(metric(x0, i), p);
            powered.emplace_back(std::move(v));
        }
        CertificateReport vs = make_report("villani-sandwich", rows_from([&](std::size_t k, const Sides& s) {
                                               double tv = kInf;
                                               for (const auto& w : powered) {
                                                   tv = std::min(tv, weighted_total_variation(candidates[k], mu, w));
                                               }
                                               return make_row("", s.tc, tv);
                                           }),
                                           options.tolerance);
        vs.constants.emplace_back("p", p);
        out.push_back(std::move(vs));
    }
    for (auto& rep : out) finish(rep, candidates, options);
    return out;
}

std::vector<CertificateReport> verify_weighted_pinsker(const DiscreteMeasure& mu, const RealFunction& chi,
                                                       const ConvexGauge& alpha,
                                                       std::span<const DiscreteMeasure> candidates,
                                                       const CertifyOptions& options) {
    require_same_size(chi.size(), mu.size(), "weighted Pinsker inequality");
    for (std::size_t i = 0; i < chi.size(); ++i) {
        if (chi[i] < 0.0) throw PreconditionError("weighted Pinsker inequality: chi must be nonnegative");
    }
    const GaugeConstants g = gauge_constants(alpha);
    const double norm = luxemburg_norm(chi, mu, alpha);
    const double a_theorem = 2.0 * kSqrt2 * g.m.m_alpha * norm;
    const double a = effective_a(a_theorem, options);
    const double scale = scale_factor(a_theorem, options);

    struct Sides {
        double h;
        double tv;
    };
    const auto sides = parallel_map<Sides>(candidates.size(), options.workers, [&](std::size_t k) {
        return Sides{relative_entropy(candidates[k], mu), weighted_total_variation(candidates[k], mu, chi)};
    });
    auto rows_from = [&](auto&& fn) {
        std::vector<InstanceMargin> rows;
        for (std::size_t k = 0; k < candidates.size(); ++k) {
            InstanceMargin r = fn(sides[k]);
            r.id = nu_id(k);
            r.candidate = k;
            rows.push_back(std::move(r));
        }
        return rows;
    };

    std::vector<CertificateReport> out;
    {
        CertificateReport rep = make_report("weighted-pinsker", rows_from([&](const Sides& s) {
                                                const double lhs = s.tv == 0.0 ? 0.0 : alpha(s.tv / a);
                                                return make_row("", lhs, s.h);
                                            }),
                                            options.tolerance);
        rep.constants.emplace_back("a", a);
        rep.constants.emplace_back("a_theorem", a_theorem);
        rep.constants.emplace_back("chi_norm", norm);
        add_gauge_constants(rep, g);
        add_scaling(rep, options);
        out.push_back(std::move(rep));
    }
    if (is_inf(alpha.domain_end())) {
        const DeltaBound upper = luxemburg_upper_bound(chi, mu, alpha, delta_grid(options));
        const double constant = 2.0 * kSqrt2 * g.m.m_alpha * upper.value * scale;
        CertificateReport rep = make_report("weighted-pinsker-explicit", rows_from([&](const Sides& s) {
                                                return make_row("", s.tv, constant * inverse_at_entropy(alpha, s.h));
                                            }),
                                            options.tolerance);
        rep.constants.emplace_back("constant", constant);
        rep.constants.emplace_back("norm_upper_estimate", upper.value);
        rep.constants.emplace_back("delta", upper.delta);
        rep.constants.emplace_back("chi_norm", norm);
        add_scaling(rep, options);
        InstanceMargin dominance = make_row("upper estimate vs norm", norm, upper.value);
        CertificateReport dom = make_report("luxemburg-upper-estimate", {dominance}, options.tolerance);
        out.push_back(std::move(rep));
        out.push_back(std::move(dom));
    } else {
        const LinftyBounds b = luxemburg_linfty_bounds(chi, mu, alpha);
        CertificateReport rep = make_report(
            "luxemburg-linfty-bounds", {make_row("lower", b.lower, norm), make_row("upper", norm, b.upper)},
            options.tolerance);
        rep.constants.emplace_back("lower", b.lower);
        rep.constants.emplace_back("upper", b.upper);
        rep.constants.emplace_back("chi_norm", norm);
        out.push_back(std::move(rep));
    }
    {
        const double one_norm = luxemburg_norm(RealFunction::constant(mu.size(), 1.0), mu, alpha);
        const double rhs = 3.0 * a_theorem + mu.integrate(chi) * one_norm;
        CertificateReport rep =
            make_report("weighted-pinsker-necessity", {make_row("chi", norm, rhs)}, options.tolerance);
        rep.constants.emplace_back("a_theorem", a_theorem);
        rep.constants.emplace_back("unit_norm", one_norm);
        rep.notes.push_back("atomic case: ||chi|| <= 3a + <chi, mu> ||1||, evaluated at the theorem constant");
        out.push_back(std::move(rep));
    }
    {
        const double l2 = log_moment(mu, chi, [](double x, double) { return 2.0 * x; }, 0.0);
        const double lsq = log_moment(mu, chi, [](double x, double) { return x * x; }, 0.0);
        CertificateReport bv1 = make_report("bolley-villani-pinsker-1", rows_from([&](const Sides& s) {
                                                const double rhs = is_inf(s.h)
                                                                       ? kInf
                                                                       : (1.5 + l2) * (std::sqrt(s.h) + 0.5 * s.h);
                                                return make_row("", s.tv, rhs);
                                            }),
                                            options.tolerance);
        bv1.constants.emplace_back("constant", 1.5 + l2);
        CertificateReport bv2 = make_report("bolley-villani-pinsker-2", rows_from([&](const Sides& s) {
                                                const double rhs =
                                                    is_inf(s.h) ? kInf : std::sqrt(1.0 + lsq) * std::sqrt(2.0 * s.h);
                                                return make_row("", s.tv, rhs);
                                            }),
                                            options.tolerance);
        bv2.constants.emplace_back("constant", std::sqrt(1.0 + lsq));
        out.push_back(std::move(bv1));
        out.push_back(std::move(bv2));
    }
    for (auto& rep : out) finish(rep, candidates, options);
    return out;
}

std::vector<CertificateReport> verify_improved_x2(const DiscreteMeasure& mu, const RealFunction& chi,
                                                  std::span<const DiscreteMeasure> candidates,
                                                  const CertifyOptions& options) {
    require_same_size(chi.size(), mu.size(), "sub-gaussian weighted Pinsker");
    const auto deltas = delta_grid(options);
    auto moment = [&](double d) {
        return log_moment(mu, chi, [](double x, double dd) { return dd * dd * x * x; }, d);
    };
    const DeltaBound improved =
        minimize_over_delta([&](double d) { return std::sqrt(1.0 + 4.0 * moment(d)) / d; }, deltas);
    const GaugeConstants g = gauge_constants(ConvexGauge::power(2.0));
    const DeltaBound crude_norm =
        minimize_over_delta([&](double d) { return std::sqrt(1.0 + moment(d) / kLog2) / d; }, deltas);
    const double crude = 2.0 * g.m.m_alpha * crude_norm.value;
    const double scale = options.a_override ? *options.a_override : options.a_scale;

    auto rows_for = [&](double constant) {
        return candidate_rows(candidates, options, [&](const DiscreteMeasure& nu) {
            const double h = relative_entropy(nu, mu);
            return make_row("", weighted_total_variation(nu, mu, chi), constant * std::sqrt(2.0 * h));
        });
    };
    std::vector<CertificateReport> out;
    CertificateReport imp = make_report("improved-x2", rows_for(improved.value * scale), options.tolerance);
    imp.constants.emplace_back("constant", improved.value * scale);
    imp.constants.emplace_back("delta", improved.delta);
    add_scaling(imp, options);
    CertificateReport cr = make_report("crude-x2", rows_for(crude * scale), options.tolerance);
    cr.constants.emplace_back("constant", crude * scale);
    cr.constants.emplace_back("m_alpha", g.m.m_alpha);
    cr.constants.emplace_back("delta", crude_norm.delta);
    add_scaling(cr, options);
    CertificateReport dom =
        make_report("improved-vs-crude", {make_row("constants", improved.value, crude)}, options.tolerance);
    dom.constants.emplace_back("improved", improved.value);
    dom.constants.emplace_back("crude", crude);
    out.push_back(std::move(imp));
    out.push_back(std::move(cr));
    out.push_back(std::move(dom));
    for (auto& rep : out) finish(rep, candidates, options);
    return out;
}

CertificateReport verify_ko(const DiscreteMeasure& mu, std::span<const RealFunction> functions,
                            const ConvexGauge& alpha, const CertifyOptions& options) {
    const GaugeConstants g = gauge_constants(alpha);
    const double scale = options.a_override ? 1.0 : options.a_scale;
    std::vector<InstanceMargin> rows;
    double worst_a = 0.0;
    for (std::size_t k = 0; k < functions.size(); ++k) {
        const RealFunction f = centered(functions[k], mu);
        const double norm = luxemburg_norm(f, mu, alpha);
        double a = kSqrt2 * g.m.m_alpha * norm * scale;
        if (options.a_override) a = *options.a_override;
        const auto grid = s_grid_for(options, g.conjugate, a);
        const KoCheck check = ko_bound_check(f, mu, g, grid, norm > 0.0 ? a / (kSqrt2 * g.m.m_alpha * norm) : 1.0);
        for (const auto& m : check.check.margins) {
            InstanceMargin r = make_row("f[" + std::to_string(k) + "] s=" + fmt(m.location), m.lhs, m.rhs);
            r.function = k;
            r.location = m.location;
            rows.push_back(std::move(r));
        }
        worst_a = std::max(worst_a, a);
    }
    CertificateReport rep = make_report("ko", std::move(rows), options.tolerance);
    add_gauge_constants(rep, g);
    rep.constants.emplace_back("a_max", worst_a);
    add_scaling(rep, options);
    if (!options.keep_rows) rep.rows.clear();
    return rep;
}

std::vector<CertificateReport> verify_dz(const DiscreteMeasure& mu, std::span<const RealFunction> functions,
                                         std::span<const double> eps_values, const CertifyOptions& options) {
    const double scale = options.a_override ? *options.a_override : options.a_scale;
    std::vector<InstanceMargin> rows;
    std::vector<InstanceMargin> tail_rows;
    for (std::size_t k = 0; k < functions.size(); ++k) {
        for (std::size_t e = 0; e < eps_values.size(); ++e) {
            const DzCheck c = dz_check(functions[k], mu, eps_values[e]);
            InstanceMargin r =
                make_row("f[" + std::to_string(k) + "] eps=" + fmt(eps_values[e]), c.lhs, c.rhs * scale);
            r.function = k;
            r.location = eps_values[e];
            rows.push_back(std::move(r));
            if (e == 0) {
                for (const auto& m : c.tail.margins) {
                    InstanceMargin t = make_row("f[" + std::to_string(k) + "] t=" + fmt(m.location), m.lhs,
                                                m.rhs * scale);
                    t.function = k;
                    t.location = m.location;
                    tail_rows.push_back(std::move(t));
                }
            }
        }
    }
    std::vector<CertificateReport> out;
    out.push_back(make_report("dz", std::move(rows), options.tolerance));
    out.push_back(make_report("dz-tail", std::move(tail_rows), options.tolerance));
    for (auto& rep : out) {
        add_scaling(rep, options);
        if (!options.keep_rows) rep.rows.clear();
    }
    return out;
}

CertificateReport verify_subgaussian(const DiscreteMeasure& mu, std::span<const RealFunction> functions,
                                     const CertifyOptions& options) {
    const double scale = options.a_override ? *options.a_override : options.a_scale;
    std::vector<double> grid = options.s_grid;
    if (grid.empty()) grid = default_s_grid(10.0);
    std::vector<InstanceMargin> rows;
    for (std::size_t k = 0; k < functions.size(); ++k) {
        const GridCheck c = subgaussian_check(functions[k], mu, grid, scale);
        for (const auto& m : c.margins) {
            InstanceMargin r = make_row("f[" + std::to_string(k) + "] s=" + fmt(m.location), m.lhs, m.rhs);
            r.function = k;
            r.location = m.location;
            rows.push_back(std::move(r));
        }
    }
    CertificateReport rep = make_report("subgaussian", std::move(rows), options.tolerance);
    add_scaling(rep, options);
    if (!options.keep_rows) rep.rows.clear();
    return rep;
}

}  // namespace tci
