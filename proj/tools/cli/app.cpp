#include "app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tci/candidates.hpp"
#include "tci/convex_calc.hpp"
#include "tci/error.hpp"
#include "tci/laplace.hpp"
#include "tci/orlicz.hpp"
#include "tci/random.hpp"
#include "tci/transport.hpp"

namespace tci::cli {
namespace {

std::string format(const char* pattern, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, x);
    return buf;
}

std::string csv_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return format("%.17g", x);
}

bool is_function_suite(const std::string& suite) { return suite == "ko" || suite == "dz" || suite == "subgaussian"; }

// Built when the instance has no functions of its own: the distance
// functions of the first few points and a handful of seeded random ones.
std::vector<RealFunction> default_functions(const Instance& inst) {
    const auto& space = *inst.space;
    std::vector<RealFunction> out;
    for (std::size_t x0 = 0; x0 < std::min<std::size_t>(space.size(), 3); ++x0) out.push_back(space.distance_from(x0));
    Rng rng(inst.harness.seed ^ 0x9e3779b97f4a7c15ULL);
    for (int k = 0; k < 5; ++k) out.push_back(random_function(rng, space.size(), -1.0, 1.0));
    return out;
}

double centered_sup_norm(const DiscreteMeasure& mu, const std::vector<RealFunction>& fs, const ConvexGauge& alpha) {
    double best = 0.0;
    for (const auto& f : fs) {
        const double mean = mu.integrate(f);
        std::vector<double> v(f.values());
        for (double& x : v) x -= mean;
        best = std::max(best, luxemburg_norm(RealFunction(std::move(v)), mu, alpha));
    }
    return best;
}

// Smallest a (to bisection accuracy) for which the dual Laplace condition
// holds on the grid, searched below a known feasible value.
double smallest_dual_feasible_a(const DiscreteMeasure& mu, const FunctionClass& phi, const ConvexGauge& alpha,
                                double feasible) {
    const ConvexGauge conjugate = monotone_conjugate(alpha);
    const double b = conjugate.domain_end();
    const auto grid = default_s_grid(std::isfinite(b) ? b / feasible * (1.0 - 1e-9) : 1e3);
    auto holds = [&](double a) { return dual_condition_check(mu, phi, conjugate, a, grid).min_margin >= 0.0; };
    if (!holds(feasible)) return feasible;
    double lo = 0.0;
    double hi = feasible;
    for (int it = 0; it < 80 && hi - lo > 1e-12 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (holds(mid) ? hi : lo) = mid;
    }
    return hi;
}

std::vector<CertificateReport> certify_instance(Instance& inst, const std::string& suite, unsigned workers,
                                                std::map<std::string, std::string>& suite_of) {
    const auto& mu = inst.mu();
    const auto& space = *inst.space;
    const std::size_t n = space.size();
    if (inst.functions.empty()) inst.functions = default_functions(inst);
    if (!inst.chi) inst.chi = RealFunction::constant(n, 1.0);
    const bool own_functions = inst.functions.size() > 0;

    CertifyOptions opts;
    opts.tolerance = inst.harness.tolerance;
    opts.workers = workers;
    opts.a_override = inst.harness.a;
    opts.a_scale = inst.harness.a_scale;
    opts.keep_rows = true;

    auto wants = [&](const char* name) { return suite == "all" || suite == name; };
    std::vector<DiscreteMeasure> candidates = inst.candidates;
    auto ensure_candidates = [&] {
        if (!candidates.empty()) return;
        CandidateFamily family;
        family.tilt_functions = inst.functions;
        candidates = generate_candidates(mu, space, family, inst.harness.candidates, inst.harness.seed);
    };

    std::vector<CertificateReport> out;
    auto add = [&](CertificateReport rep, const char* s) {
        suite_of[rep.inequality] = s;
        out.push_back(std::move(rep));
    };
    auto add_all = [&](std::vector<CertificateReport> reps, const char* s) {
        for (auto& r : reps) add(std::move(r), s);
    };

    if (wants("pinsker")) {
        ensure_candidates();
        const double a = opts.a_override.value_or(opts.a_scale);
        CertificateReport rep = verify_norm_entropy(mu, FunctionClass::chi_bounded(RealFunction::constant(n, 1.0)),
                                                    ConvexGauge::power(2.0, 0.5), a, candidates, opts);
        rep.inequality = "pinsker";
        rep.notes.push_back("alpha(t) = t^2 / 2 against the total variation sum |nu - mu|");
        add(std::move(rep), "pinsker");
        if (own_functions) {
            const FunctionClass phi = FunctionClass::explicit_list(inst.functions);
            const double big_m = centered_sup_norm(mu, inst.functions, inst.alpha.gauge);
            if (big_m > 0.0) {
                CertificateReport back =
                    verify_equiv_backward(mu, phi, inst.alpha.gauge, big_m, candidates, opts);
                const GaugeConstants g = gauge_constants(inst.alpha.gauge);
                const double a_theorem = kSqrt2 * g.m.m_alpha * big_m;
                const double a_min = smallest_dual_feasible_a(mu, phi, inst.alpha.gauge, a_theorem);
                CertifyOptions fw = opts;
                fw.a_override.reset();
                const double a_fw = opts.a_override.value_or(a_min * opts.a_scale);
                CertificateReport forward = verify_equiv_forward(mu, phi, inst.alpha.gauge, a_fw, fw);
                forward.constants.emplace_back("a_dual_min", a_min);
                add(std::move(back), "pinsker");
                add(std::move(forward), "pinsker");
            }
        }
    }
    if (wants("weighted-pinsker")) {
        ensure_candidates();
        add_all(verify_weighted_pinsker(mu, *inst.chi, inst.alpha.gauge, candidates, opts), "weighted-pinsker");
        add_all(verify_improved_x2(mu, *inst.chi, candidates, opts), "weighted-pinsker");
    }
    if (wants("tci-metric")) {
        ensure_candidates();
        add(verify_tci_metric(mu, space, inst.alpha.gauge, candidates, opts), "tci-metric");
    }
    if (wants("tci-cost")) {
        ensure_candidates();
        add_all(verify_tci_cost(mu, space, inst.cost.gauge, inst.alpha.gauge, candidates, opts), "tci-cost");
    }
    if (wants("ko")) add(verify_ko(mu, inst.functions, inst.alpha.gauge, opts), "ko");
    if (wants("dz")) {
        const auto eps = inst.harness.eps.empty() ? default_eps_values() : inst.harness.eps;
        add_all(verify_dz(mu, inst.functions, eps, opts), "dz");
    }
    if (wants("subgaussian")) add(verify_subgaussian(mu, inst.functions, opts), "subgaussian");
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError(path + ": cannot open for writing");
    f << text;
}

// --function specs: const:<c>, dist:<label or index>, values:<v1,v2,...>,
// chi, function:<k>.
RealFunction parse_function_spec(const std::string& spec, const Instance& inst) {
    const std::size_t n = inst.space->size();
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    auto number = [&](const std::string& s) {
        char* end = nullptr;
        const double x = std::strtod(s.c_str(), &end);
        if (s.empty() || end != s.c_str() + s.size()) throw InputError("--function " + spec + ": bad number '" + s + "'");
        return x;
    };
    try {
        if (kind == "const") return RealFunction::constant(n, number(arg));
        if (kind == "chi") {
            if (!inst.chi) throw InputError("--function chi: the instance has no chi");
            return *inst.chi;
        }
        if (kind == "dist") {
            const auto& labels = inst.space->labels();
            const auto it = std::find(labels.begin(), labels.end(), arg);
            if (it != labels.end()) return inst.space->distance_from(static_cast<std::size_t>(it - labels.begin()));
            const double k = number(arg);
            if (k < 0 || k >= static_cast<double>(n) || k != std::floor(k)) {
                throw InputError("--function " + spec + ": no such point");
            }
            return inst.space->distance_from(static_cast<std::size_t>(k));
        }
        if (kind == "function") {
            const double k = number(arg);
            if (k < 0 || k >= static_cast<double>(inst.functions.size()) || k != std::floor(k)) {
                throw InputError("--function " + spec + ": no such function in the instance");
            }
            return inst.functions[static_cast<std::size_t>(k)];
        }
        if (kind == "values") {
            std::vector<double> v;
            std::stringstream ss(arg);
            for (std::string item; std::getline(ss, item, ',');) v.push_back(number(item));
            if (v.size() != n) {
                throw InputError("--function " + spec + ": expected " + std::to_string(n) + " values");
            }
            return RealFunction(std::move(v));
        }
    } catch (const Error& e) {
        throw InputError("--function " + spec + ": " + e.what());
    }
    throw InputError("--function " + spec + ": expected const:<c>, dist:<x>, values:<list>, chi or function:<k>");
}

// A measure named in the instance, or inline weights "0.75,0.25".
DiscreteMeasure measure_option(const std::string& text, const Instance& inst) {
    for (const auto& [name, m] : inst.measures) {
        if (name == text) return m;
    }
    if (text.find(',') == std::string::npos) return inst.measure(text);
    std::vector<double> w;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        char* end = nullptr;
        w.push_back(std::strtod(item.c_str(), &end));
        if (item.empty() || end != item.c_str() + item.size()) {
            throw InputError("measure '" + text + "': bad weight '" + item + "'");
        }
    }
    if (w.size() != inst.space->size()) {
        throw InputError("measure '" + text + "': expected " + std::to_string(inst.space->size()) + " weights");
    }
    try {
        return DiscreteMeasure(std::move(w));
    } catch (const Error& e) {
        throw InputError("measure '" + text + "': " + e.what());
    }
}

GaugeSpec gauge_option(const std::string& text) {
    if (!text.empty() && text.front() == '{') {
        try {
            return parse_gauge_json(json::parse(text));
        } catch (const json::exception& e) {
            throw InputError(std::string("gauge: ") + e.what());
        }
    }
    return parse_gauge_shorthand(text);
}

struct Flags {
    std::string instance;
    std::string measure;
    std::string gauge;
    std::string alpha;
    std::string function;
    std::string nu;
    std::string side = "upper";
    std::vector<double> values;
    std::vector<double> t_values;
    // certify
    std::string suite;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    std::string report = "json";
    std::string out;
    std::string out_worst;
    std::optional<std::size_t> candidates;
    std::optional<double> a;
    std::optional<double> a_scale;
    std::size_t random_instances = 0;
    unsigned workers = 1;
    int digits = 6;
    bool plan = false;
};

Instance base_instance(const Flags& f) {
    return f.instance.empty() ? default_instance() : load_instance(f.instance);
}

DiscreteMeasure reference_option(const Flags& f, const Instance& inst) {
    return f.measure.empty() ? inst.mu() : measure_option(f.measure, inst);
}

int cmd_conjugate(const Flags& f, std::ostream& out) {
    const Instance inst = base_instance(f);
    const ConvexGauge alpha = f.gauge.empty() ? inst.alpha.gauge : gauge_option(f.gauge).gauge;
    const ConvexGauge conj = monotone_conjugate(alpha);
    if (f.values.empty()) {
        out << conj.describe() << "\n";
        return 0;
    }
    for (double s : f.values) out << format("%.12g", s) << " " << format("%.12g", conj(s)) << "\n";
    return 0;
}

int cmd_inverse(const Flags& f, std::ostream& out) {
    const Instance inst = base_instance(f);
    const ConvexGauge alpha = f.gauge.empty() ? inst.alpha.gauge : gauge_option(f.gauge).gauge;
    if (f.side != "lower" && f.side != "upper") throw InputError("--side must be lower or upper");
    const auto side = f.side == "lower" ? InverseSide::Lower : InverseSide::Upper;
    for (double y : f.values) {
        out << format("%.12g", y) << " " << format("%.12g", generalized_inverse(alpha, y, side)) << "\n";
    }
    return 0;
}

int cmd_norm(const Flags& f, std::ostream& out) {
    const Instance inst = base_instance(f);
    const ConvexGauge alpha = f.gauge.empty() ? inst.alpha.gauge : gauge_option(f.gauge).gauge;
    const DiscreteMeasure mu = reference_option(f, inst);
    const RealFunction fn = parse_function_spec(f.function.empty() ? "const:1" : f.function, inst);
    const std::string pattern = "%." + std::to_string(std::clamp(f.digits, 1, 17)) + "g";
    out << format(pattern.c_str(), luxemburg_norm(fn, mu, alpha)) << "\n";
    return 0;
}

int cmd_transport(const Flags& f, std::ostream& out) {
    const Instance inst = base_instance(f);
    if (f.nu.empty()) throw InputError("transport needs --nu <measure>");
    const DiscreteMeasure nu = measure_option(f.nu, inst);
    const DiscreteMeasure mu = reference_option(f, inst);
    const GaugeSpec q = f.gauge.empty() ? inst.cost : gauge_option(f.gauge);
    const Matrix c = cost_matrix(*inst.space, CostSpec::gauge(q.gauge));
    const TransportPlan plan = ot_cost(nu, mu, c);
    out << "cost " << format("%.12g", plan.cost) << "\n";
    out << "dual_infeasibility " << format("%.3g", plan.dual_infeasibility) << "\n";
    const auto p = CostSpec::gauge(q.gauge).power_exponent();
    if (p && *p == 1.0) {
        const KantorovichDual dual = kr_dual(nu, mu, *inst.space);
        out << "kr_dual " << format("%.12g", dual.value) << "\n";
        out << "duality_gap " << format("%.3g", dual.duality_gap) << "\n";
        out << "potential";
        for (double v : dual.potential.values()) out << " " << format("%.12g", v);
        out << "\n";
    }
    if (f.plan) {
        for (std::size_t i = 0; i < plan.plan.rows(); ++i) {
            out << "plan";
            for (std::size_t j = 0; j < plan.plan.cols(); ++j) out << " " << format("%.12g", plan.plan(i, j));
            out << "\n";
        }
    }
    return 0;
}

int cmd_entropy(const Flags& f, std::ostream& out) {
    const Instance inst = base_instance(f);
    if (f.nu.empty()) throw InputError("entropy needs --nu <measure>");
    out << format("%.12g", relative_entropy(measure_option(f.nu, inst), reference_option(f, inst))) << "\n";
    return 0;
}

int cmd_laplace(const Flags& f, std::ostream& out) {
    const Instance inst = base_instance(f);
    const DiscreteMeasure mu = reference_option(f, inst);
    const RealFunction fn = parse_function_spec(f.function.empty() ? "function:0" : f.function, inst);
    const LogLaplace lambda(fn, mu);
    for (double s : f.values) out << "s " << format("%.12g", s) << " " << format("%.12g", lambda(s)) << "\n";
    for (double t : f.t_values) {
        out << "t " << format("%.12g", t) << " " << format("%.12g", cramer_transform(fn, mu, t)) << "\n";
    }
    return 0;
}

int cmd_certify(const Flags& f, std::ostream& out, std::ostream& err) {
    Instance base = base_instance(f);
    if (!f.alpha.empty()) base.alpha = gauge_option(f.alpha);
    if (!f.gauge.empty()) base.cost = gauge_option(f.gauge);
    if (!f.measure.empty()) {
        const bool named = std::any_of(base.measures.begin(), base.measures.end(),
                                       [&](const auto& m) { return m.first == f.measure; });
        if (!named) base.measures.emplace_back("--measure", measure_option(f.measure, base));
        base.reference = named ? f.measure : "--measure";
    }
    if (f.seed) base.harness.seed = *f.seed;
    if (f.tol) base.harness.tolerance = *f.tol;
    if (f.candidates) base.harness.candidates = *f.candidates;
    if (f.a) base.harness.a = *f.a;
    if (f.a_scale) base.harness.a_scale = *f.a_scale;
    if (!f.suite.empty()) base.harness.suite = f.suite;
    const std::string suite = base.harness.suite;
    if (suite != "all" && std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end()) {
        throw InputError("unknown suite '" + suite + "'");
    }
    if (f.report != "json" && f.report != "csv") throw InputError("--report must be json or csv");

    std::vector<Instance> instances;
    if (f.random_instances == 0) {
        instances.push_back(base);
    } else {
        for (std::size_t k = 0; k < f.random_instances; ++k) {
            Rng rng(base.harness.seed + k);
            RandomInstance ri = random_instance(rng, 2, 10);
            Instance inst = base;
            const std::size_t n = ri.space.size();
            inst.space = std::make_shared<const FiniteMetricSpace>(std::move(ri.space));
            inst.measures = {{"mu", ri.mu}};
            inst.reference = "mu";
            inst.chi = random_function(rng, n, 0.0, 3.0);
            inst.functions.clear();
            for (int j = 0; j < 5; ++j) inst.functions.push_back(random_function(rng, n, -2.0, 2.0));
            inst.candidates.clear();
            inst.harness.seed = base.harness.seed + k;
            instances.push_back(std::move(inst));
        }
    }
    const SuiteRun run = run_suite(instances, suite, f.workers);

    bool pass = true;
    std::string text;
    if (f.report == "json") {
        json doc = json::object();
        doc["reports"] = json::array();
        for (const auto& r : run.reports) {
            doc["reports"].push_back(report_json(r, run));
            pass = pass && r.pass;
        }
        doc["pass"] = pass;
        text = doc.dump(2) + "\n";
    } else {
        std::ostringstream csv;
        csv << "inequality,instance_id,lhs,rhs,margin\n";
        for (const auto& r : run.reports) {
            pass = pass && r.pass;
            for (const auto& row : r.rows) {
                std::string id = row.id;
                if (run.instances.size() > 1) id = "i" + std::to_string(row.source) + ":" + id;
                csv << r.inequality << "," << id << "," << csv_number(row.lhs) << "," << csv_number(row.rhs) << ","
                    << csv_number(row.margin) << "\n";
            }
        }
        text = csv.str();
    }
    if (f.out.empty()) {
        out << text;
    } else {
        write_text(f.out, text);
    }
    if (!f.out_worst.empty()) std::filesystem::create_directories(f.out_worst);
    for (const auto& r : run.reports) {
        err << r.inequality << ": " << to_string(r.status) << ", min margin " << csv_number(r.min_margin);
        if (r.worst) err << " at " << r.worst->id;
        err << "\n";
        if (!f.out_worst.empty() && r.worst && !r.pass) {
            write_text(f.out_worst + "/" + r.inequality + ".json", to_json(worst_instance(r, run)).dump(2) + "\n");
        }
    }
    return pass ? 0 : 1;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"pinsker", "weighted-pinsker", "tci-metric", "tci-cost",
                                                "ko",      "dz",               "subgaussian"};
    return names;
}

SuiteRun run_suite(const std::vector<Instance>& instances, const std::string& suite, unsigned workers) {
    SuiteRun run;
    std::vector<CertificateReport> all;
    for (std::size_t k = 0; k < instances.size(); ++k) {
        Instance inst = instances[k];
        auto reports = certify_instance(inst, suite, workers, run.suite_of);
        for (auto& r : reports) {
            for (auto& row : r.rows) row.source = k;
            if (r.worst) r.worst->source = k;
            all.push_back(std::move(r));
        }
        run.instances.push_back(std::move(inst));
    }
    run.reports = merge_reports(std::move(all));
    return run;
}

Instance worst_instance(const CertificateReport& report, const SuiteRun& run) {
    if (!report.worst) throw InputError(report.inequality + ": no worst instance to serialize");
    const InstanceMargin& w = *report.worst;
    Instance inst = run.instances.at(w.source);
    const auto it = run.suite_of.find(report.inequality);
    const std::string suite = it == run.suite_of.end() ? "all" : it->second;
    inst.harness.suite = suite;
    if (report.worst_nu) inst.candidates = {*report.worst_nu};
    if (is_function_suite(suite) && w.function != kNoIndex) {
        inst.functions = {inst.functions.at(w.function)};
        if (report.inequality == "dz") inst.harness.eps = {w.location};
    }
    return inst;
}

json report_json(const CertificateReport& r, const SuiteRun& run) {
    json j;
    j["inequality"] = r.inequality;
    if (const auto it = run.suite_of.find(r.inequality); it != run.suite_of.end()) j["suite"] = it->second;
    j["status"] = to_string(r.status);
    j["pass"] = r.pass;
    j["instances"] = r.instances;
    j["min_margin"] = number_json(r.min_margin);
    j["tolerance"] = r.tolerance;
    json constants = json::object();
    for (const auto& [k, v] : r.constants) constants[k] = number_json(v);
    j["constants"] = constants;
    if (!r.notes.empty()) j["notes"] = r.notes;
    if (r.worst) {
        const auto& w = *r.worst;
        json worst = {{"id", w.id},
                      {"lhs", number_json(w.lhs)},
                      {"rhs", number_json(w.rhs)},
                      {"margin", number_json(w.margin)},
                      {"source", w.source}};
        if (!std::isnan(w.location)) worst["location"] = w.location;
        worst["instance"] = to_json(worst_instance(r, run));
        j["worst"] = worst;
    } else {
        j["worst"] = nullptr;
    }
    return j;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Convex-analysis quantities and certified norm-entropy / transport inequalities on finite spaces",
                 "tci"};
    app.require_subcommand(1);
    Flags f;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--instance", f.instance, "Instance JSON file (default: bundled two-point instance)");
        sub->add_option("--measure,--mu", f.measure, "Reference measure name (default: the instance reference)");
    };

    auto* conj = app.add_subcommand("conjugate", "Monotone conjugate of a gauge");
    common(conj);
    conj->add_option("--gauge", f.gauge, "Gauge shorthand or JSON object");
    conj->add_option("--s", f.values, "Points at which to evaluate the conjugate");

    auto* inv = app.add_subcommand("inverse", "Generalized inverse of a gauge");
    common(inv);
    inv->add_option("--gauge", f.gauge, "Gauge shorthand or JSON object");
    inv->add_option("--y", f.values, "Levels")->required();
    inv->add_option("--side", f.side, "lower or upper");

    auto* norm = app.add_subcommand("norm", "Luxemburg norm of a function");
    common(norm);
    norm->add_option("--gauge", f.gauge, "Gauge shorthand or JSON object");
    norm->add_option("--function", f.function, "const:<c>, dist:<x>, values:<list>, chi or function:<k>");
    norm->add_option("--digits", f.digits, "Significant digits printed");

    auto* tr = app.add_subcommand("transport", "Optimal transport cost between two measures of an instance");
    common(tr);
    tr->add_option("--nu", f.nu, "First measure: a name from the instance or inline weights")->required();
    tr->add_option("--gauge,--cost", f.gauge, "Cost gauge q (c = q(d))");
    tr->add_flag("--plan", f.plan, "Print the optimal plan");

    auto* ent = app.add_subcommand("entropy", "Relative entropy H(nu | mu)");
    common(ent);
    ent->add_option("--nu", f.nu, "First measure: a name from the instance or inline weights")->required();

    auto* lap = app.add_subcommand("laplace", "Log-Laplace transform and Cramer transform of a function");
    common(lap);
    lap->add_option("--function", f.function, "Function spec (default: the instance's first function)");
    lap->add_option("--s", f.values, "Points for the log-Laplace transform");
    lap->add_option("--t", f.t_values, "Points for the Cramer transform");

    auto* cert = app.add_subcommand("certify", "Check inequalities over candidate measures and report margins");
    common(cert);
    cert->add_option("--suite", f.suite, "pinsker, weighted-pinsker, tci-metric, tci-cost, ko, dz, subgaussian or all");
    cert->add_option("--seed", f.seed, "Seed for candidate generation and random instances");
    cert->add_option("--tol", f.tol, "Pass tolerance on margins");
    cert->add_option("--report", f.report, "json or csv");
    cert->add_option("--out", f.out, "Write the report here instead of stdout");
    cert->add_option("--out-worst", f.out_worst, "Directory for worst instances of failed reports");
    cert->add_option("--candidates", f.candidates, "Number of candidate measures");
    cert->add_option("--alpha", f.alpha, "Gauge alpha");
    cert->add_option("--gauge,--cost", f.gauge, "Cost gauge q");
    cert->add_option("--a", f.a, "Replace the theorem constant a");
    cert->add_option("--a-scale", f.a_scale, "Multiply the theorem constant a");
    cert->add_option("--random-instances", f.random_instances, "Run on this many seeded random instances");
    cert->add_option("--workers", f.workers, "Worker threads for candidate evaluation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }
    try {
        if (*conj) return cmd_conjugate(f, out);
        if (*inv) return cmd_inverse(f, out);
        if (*norm) return cmd_norm(f, out);
        if (*tr) return cmd_transport(f, out);
        if (*ent) return cmd_entropy(f, out);
        if (*lap) return cmd_laplace(f, out);
        if (*cert) return cmd_certify(f, out, err);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace tci::cli
