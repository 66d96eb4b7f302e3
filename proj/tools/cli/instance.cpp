#include "instance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>

#include "tci/error.hpp"
#include "tci/numeric.hpp"

namespace tci::cli {
namespace {

// Input iterator over a buffer that counts the newlines it has consumed,
// so SAX events can be attributed to a source line.
class LineCountingIterator {
public:
    using iterator_category = std::input_iterator_tag;
    using value_type = char;
    using difference_type = std::ptrdiff_t;
    using pointer = const char*;
    using reference = const char&;

    LineCountingIterator() = default;
    LineCountingIterator(const char* p, std::size_t* line) : p_(p), line_(line) {}

    reference operator*() const { return *p_; }
    LineCountingIterator& operator++() {
        if (line_ != nullptr && *p_ == '\n') ++*line_;
        ++p_;
        return *this;
    }
    LineCountingIterator operator++(int) {
        auto copy = *this;
        ++*this;
        return copy;
    }
    friend bool operator==(const LineCountingIterator& a, const LineCountingIterator& b) { return a.p_ == b.p_; }
    friend bool operator!=(const LineCountingIterator& a, const LineCountingIterator& b) { return a.p_ != b.p_; }

private:
    const char* p_ = nullptr;
    std::size_t* line_ = nullptr;
};

using LineMap = std::map<std::string, std::size_t>;

// Builds the DOM while recording the line on which every value starts,
// keyed by JSON pointer.
class LocatingSax {
public:
    LocatingSax(json& root, LineMap& lines, const std::size_t& line) : root_(root), lines_(lines), line_(line) {}

    bool null() { return put(nullptr) != nullptr; }
    bool boolean(bool v) { return put(v) != nullptr; }
    bool number_integer(json::number_integer_t v) { return put(v) != nullptr; }
    bool number_unsigned(json::number_unsigned_t v) { return put(v) != nullptr; }
    bool number_float(json::number_float_t v, const std::string&) { return put(v) != nullptr; }
    bool string(std::string& v) { return put(v) != nullptr; }
    bool binary(json::binary_t&) { return false; }
    bool start_object(std::size_t) {
        json* slot = put(json::object());
        stack_.push_back({slot, last_path_});
        return true;
    }
    bool key(std::string& k) {
        key_ = k;
        return true;
    }
    bool end_object() {
        stack_.pop_back();
        return true;
    }
    bool start_array(std::size_t) {
        json* slot = put(json::array());
        stack_.push_back({slot, last_path_});
        return true;
    }
    bool end_array() {
        stack_.pop_back();
        return true;
    }
    bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception& ex) {
        error_ = ex.what();
        return false;
    }

    [[nodiscard]] const std::string& error() const { return error_; }

private:
    struct Frame {
        json* node;
        std::string path;
    };

    json* put(json value) {
        if (stack_.empty()) {
            root_ = std::move(value);
            last_path_.clear();
            lines_[last_path_] = line_ + 1;
            return &root_;
        }
        Frame& top = stack_.back();
        json* slot = nullptr;
        if (top.node->is_object()) {
            last_path_ = top.path + "/" + key_;
            slot = &((*top.node)[key_] = std::move(value));
        } else {
            last_path_ = top.path + "/" + std::to_string(top.node->size());
            top.node->push_back(std::move(value));
            slot = &top.node->back();
        }
        lines_[last_path_] = line_ + 1;
        return slot;
    }

    json& root_;
    LineMap& lines_;
    const std::size_t& line_;
    std::vector<Frame> stack_;
    std::string key_;
    std::string last_path_;
    std::string error_;
};

// A view of one JSON value with enough context to report errors precisely.
class Node {
public:
    Node(const json& value, std::string path, const LineMap& lines, const std::string& origin)
        : value_(&value), path_(std::move(path)), lines_(&lines), origin_(&origin) {}

    [[noreturn]] void fail(const std::string& message) const {
        std::string where = *origin_;
        for (std::string p = path_;; p = p.substr(0, p.rfind('/'))) {
            if (const auto it = lines_->find(p); it != lines_->end()) {
                where += ":" + std::to_string(it->second);
                break;
            }
            if (p.empty()) break;
        }
        throw InputError(where + ": " + (path_.empty() ? std::string("/") : path_) + ": " + message);
    }

    [[nodiscard]] const json& raw() const { return *value_; }
    [[nodiscard]] const std::string& path() const { return path_; }

    [[nodiscard]] std::optional<Node> find(const std::string& key) const {
        if (!value_->is_object()) fail("expected an object");
        const auto it = value_->find(key);
        if (it == value_->end()) return std::nullopt;
        return Node(*it, path_ + "/" + key, *lines_, *origin_);
    }
    [[nodiscard]] Node at(std::size_t i) const {
        return Node((*value_)[i], path_ + "/" + std::to_string(i), *lines_, *origin_);
    }
    [[nodiscard]] std::size_t array_size() const {
        if (!value_->is_array()) fail("expected an array");
        return value_->size();
    }
    [[nodiscard]] std::vector<std::string> keys() const {
        if (!value_->is_object()) fail("expected an object");
        std::vector<std::string> out;
        for (const auto& [k, v] : value_->items()) out.push_back(k);
        return out;
    }

    [[nodiscard]] double number() const {
        if (value_->is_number()) return value_->get<double>();
        if (value_->is_string()) {
            const auto s = value_->get<std::string>();
            if (s == "inf" || s == "+inf" || s == "infinity") return kInf;
            if (s == "-inf") return -kInf;
            char* end = nullptr;
            const double x = std::strtod(s.c_str(), &end);
            if (!s.empty() && end == s.c_str() + s.size() && std::isfinite(x)) return x;
        }
        fail("expected a number or a decimal string");
    }
    [[nodiscard]] double finite_number() const {
        const double x = number();
        if (!std::isfinite(x)) fail("expected a finite number");
        return x;
    }
    [[nodiscard]] std::vector<double> numbers() const {
        std::vector<double> out(array_size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = at(i).finite_number();
        return out;
    }
    [[nodiscard]] std::string string() const {
        if (!value_->is_string()) fail("expected a string");
        return value_->get<std::string>();
    }
    [[nodiscard]] std::uint64_t unsigned_integer() const {
        if (value_->is_number_unsigned()) return value_->get<std::uint64_t>();
        if (value_->is_number_integer() && value_->get<std::int64_t>() >= 0) return value_->get<std::uint64_t>();
        if (value_->is_string()) {
            const auto s = value_->get<std::string>();
            char* end = nullptr;
            const auto v = std::strtoull(s.c_str(), &end, 10);
            if (!s.empty() && s[0] != '-' && end == s.c_str() + s.size()) return v;
        }
        fail("expected a nonnegative integer");
    }
    [[nodiscard]] bool boolean() const {
        if (!value_->is_boolean()) fail("expected true or false");
        return value_->get<bool>();
    }

private:
    const json* value_;
    std::string path_;
    const LineMap* lines_;
    const std::string* origin_;
};

// Runs a library constructor and turns its validation errors into located
// input errors.
template <typename Fn>
auto validated(const Node& node, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const Error& e) {
        node.fail(e.what());
    } catch (const std::invalid_argument& e) {
        node.fail(e.what());
    }
}

double parse_suffix_number(const std::string& text, std::size_t from, const std::string& what) {
    const std::string tail = text.substr(from);
    char* end = nullptr;
    const double x = std::strtod(tail.c_str(), &end);
    if (tail.empty() || end != tail.c_str() + tail.size() || !std::isfinite(x)) {
        throw InputError("gauge '" + text + "': " + what + " must be a finite number");
    }
    return x;
}

ConvexGauge gauge_from_shorthand(const std::string& s) {
    if (s == "x2") return ConvexGauge::power(2.0);
    if (s == "x2over2") return ConvexGauge::power(2.0, 0.5);
    if (s == "linear") return ConvexGauge::power(1.0);
    if (s.rfind("xp:", 0) == 0) return ConvexGauge::power(parse_suffix_number(s, 3, "exponent"));
    if (s.rfind("capped:", 0) == 0) {
        return ConvexGauge::capped(ConvexGauge::power(2.0), parse_suffix_number(s, 7, "cap"), true);
    }
    throw InputError("unknown gauge '" + s + "' (expected x2, x2over2, xp:<p>, linear, capped:<r> or an object)");
}

ConvexGauge gauge_from_node(const Node& node) {
    if (node.raw().is_string()) {
        const auto s = node.string();
        try {
            return gauge_from_shorthand(s);
        } catch (const InputError& e) {
            node.fail(e.what());
        } catch (const Error& e) {
            node.fail(e.what());
        }
    }
    const auto family_node = node.find("family");
    if (!family_node) node.fail("gauge object needs a \"family\" field");
    const auto family = family_node->string();
    static const std::map<std::string, std::vector<std::string>> fields{
        {"power", {"exponent", "scale"}},
        {"piecewise_linear", {"t", "values", "tail_slope"}},
        {"grid", {"t", "values", "tail_slope"}},
        {"capped", {"inner", "cap", "closed"}},
        {"linear_tail", {"inner", "knot", "slope"}},
    };
    if (const auto it = fields.find(family); it != fields.end()) {
        for (const auto& key : node.keys()) {
            if (key != "family" && std::find(it->second.begin(), it->second.end(), key) == it->second.end()) {
                node.find(key)->fail("unknown field for gauge family '" + family + "'");
            }
        }
    }
    auto required = [&](const char* key) {
        auto n = node.find(key);
        if (!n) node.fail(std::string("gauge family '") + family + "' needs \"" + key + "\"");
        return *n;
    };
    auto optional_number = [&](const char* key, double fallback) {
        auto n = node.find(key);
        return n ? n->number() : fallback;
    };
    return validated(node, [&]() -> ConvexGauge {
        if (family == "power") {
            return ConvexGauge::power(required("exponent").finite_number(), optional_number("scale", 1.0));
        }
        if (family == "piecewise_linear" || family == "grid") {
            auto t = required("t").numbers();
            const auto vnode = required("values");
            std::vector<double> v(vnode.array_size());
            for (std::size_t i = 0; i < v.size(); ++i) v[i] = vnode.at(i).number();
            const double tail = optional_number("tail_slope", kInf);
            return family == "grid" ? ConvexGauge::grid_sampled(std::move(t), std::move(v), tail)
                                    : ConvexGauge::piecewise_linear(std::move(t), std::move(v), tail);
        }
        if (family == "capped") {
            const auto closed = node.find("closed");
            return ConvexGauge::capped(gauge_from_node(required("inner")), required("cap").number(),
                                       closed ? closed->boolean() : true);
        }
        if (family == "linear_tail") {
            return ConvexGauge::linear_tail(gauge_from_node(required("inner")), required("knot").finite_number(),
                                            required("slope").finite_number());
        }
        family_node->fail("unknown gauge family '" + family +
                          "' (expected power, piecewise_linear, grid, capped or linear_tail)");
    });
}

std::shared_ptr<const FiniteMetricSpace> parse_space(const Node& node) {
    int layouts = 0;
    for (const auto& key : node.keys()) {
        if (key == "distances" || key == "points" || key == "line") {
            ++layouts;
        } else if (key != "labels") {
            node.find(key)->fail("unknown field");
        }
    }
    if (layouts > 1) node.fail("give exactly one of \"distances\", \"points\" or \"line\"");
    std::optional<std::vector<std::string>> labels;
    if (auto l = node.find("labels")) {
        labels.emplace();
        for (std::size_t i = 0; i < l->array_size(); ++i) labels->push_back(l->at(i).string());
    }
    auto with_labels = [&](const FiniteMetricSpace& s) {
        if (!labels) return std::make_shared<const FiniteMetricSpace>(s);
        if (labels->size() != s.size()) node.fail("number of labels does not match the number of points");
        return std::make_shared<const FiniteMetricSpace>(*labels, s.distances());
    };
    if (auto d = node.find("distances")) {
        const std::size_t n = d->array_size();
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            const Node row = d->at(i);
            if (row.array_size() != n) row.fail("distance matrix must be square");
            for (std::size_t j = 0; j < n; ++j) m(i, j) = row.at(j).finite_number();
        }
        return validated(*d, [&] { return with_labels(FiniteMetricSpace(m)); });
    }
    if (auto p = node.find("points")) {
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = 0; i < p->array_size(); ++i) {
            const auto xy = p->at(i).numbers();
            if (xy.size() != 2) p->at(i).fail("a point is a pair [x, y]");
            pts.emplace_back(xy[0], xy[1]);
        }
        return validated(*p, [&] { return with_labels(FiniteMetricSpace::euclidean(pts)); });
    }
    if (auto l = node.find("line")) {
        const auto xs = l->numbers();
        return validated(*l, [&] { return with_labels(FiniteMetricSpace::line(xs)); });
    }
    node.fail("space needs one of \"distances\", \"points\" or \"line\"");
}

DiscreteMeasure parse_measure(const Node& node, std::size_t n) {
    const auto w = node.numbers();
    if (w.size() != n) {
        node.fail("expected " + std::to_string(n) + " weights, got " + std::to_string(w.size()));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (w[i] < 0.0) node.at(i).fail("weights must be nonnegative");
    }
    return validated(node, [&] { return DiscreteMeasure(w); });
}

RealFunction parse_function(const Node& node, std::size_t n) {
    auto v = node.numbers();
    if (v.size() != n) node.fail("expected " + std::to_string(n) + " values, got " + std::to_string(v.size()));
    return validated(node, [&] { return RealFunction(std::move(v)); });
}

const std::string kDefaultInstance = R"({
  "space": {"labels": ["a", "b"], "distances": [[0, 1], [1, 0]]},
  "measures": {"mu": [0.5, 0.5]},
  "reference": "mu",
  "gauges": {"alpha": "x2", "cost": "linear"},
  "chi": [1, 1],
  "functions": [[1, -1]],
  "harness": {"candidates": 500, "seed": 1, "tolerance": 1e-9}
}
)";

}  // namespace

json number_json(double x) {
    if (std::isfinite(x)) return x;
    if (std::isnan(x)) return nullptr;
    return x > 0 ? "inf" : "-inf";
}

GaugeSpec parse_gauge_shorthand(const std::string& text) {
    try {
        return {json(text), gauge_from_shorthand(text)};
    } catch (const Error& e) {
        throw InputError("gauge '" + text + "': " + e.what());
    }
}

GaugeSpec parse_gauge_json(const json& spec) {
    static const std::string origin = "<gauge>";
    LineMap lines;
    return {spec, gauge_from_node(Node(spec, "", lines, origin))};
}

const DiscreteMeasure& Instance::measure(const std::string& name) const {
    for (const auto& [k, m] : measures) {
        if (k == name) return m;
    }
    throw InputError("unknown measure '" + name + "'");
}

Instance parse_instance(const std::string& text, const std::string& origin) {
    json root;
    LineMap lines;
    std::size_t line = 0;
    LocatingSax sax(root, lines, line);
    const bool ok = json::sax_parse(LineCountingIterator(text.data(), &line),
                                    LineCountingIterator(text.data() + text.size(), nullptr), &sax);
    if (!ok) throw InputError(origin + ": invalid JSON: " + sax.error());

    const Node top(root, "", lines, origin);
    if (!root.is_object()) top.fail("an instance is a JSON object");
    for (const auto& key : top.keys()) {
        static const std::vector<std::string> known{"space",     "measures",  "reference", "gauges",
                                                    "chi",       "functions", "candidates", "harness"};
        if (std::find(known.begin(), known.end(), key) == known.end()) top.find(key)->fail("unknown field");
    }

    Instance inst;
    const auto space_node = top.find("space");
    if (!space_node) top.fail("missing required field \"space\"");
    inst.space = parse_space(*space_node);
    const std::size_t n = inst.space->size();

    if (auto m = top.find("measures")) {
        for (const auto& name : m->keys()) inst.measures.emplace_back(name, parse_measure(*m->find(name), n));
    }
    if (inst.measures.empty()) inst.measures.emplace_back("mu", DiscreteMeasure::uniform(n));
    inst.reference = inst.measures.front().first;
    if (auto r = top.find("reference")) {
        inst.reference = r->string();
        bool found = false;
        for (const auto& [k, v] : inst.measures) found = found || k == inst.reference;
        if (!found) r->fail("reference names an unknown measure '" + inst.reference + "'");
    }

    inst.alpha = parse_gauge_shorthand("x2");
    inst.cost = parse_gauge_shorthand("linear");
    if (auto g = top.find("gauges")) {
        for (const auto& key : g->keys()) {
            const Node spec = *g->find(key);
            if (key == "alpha") {
                inst.alpha = {spec.raw(), gauge_from_node(spec)};
            } else if (key == "cost") {
                inst.cost = {spec.raw(), gauge_from_node(spec)};
            } else {
                spec.fail("unknown gauge role (expected \"alpha\" or \"cost\")");
            }
        }
    }

    if (auto c = top.find("chi")) {
        inst.chi = parse_function(*c, n);
        for (std::size_t i = 0; i < n; ++i) {
            if ((*inst.chi)[i] < 0.0) c->at(i).fail("chi must be nonnegative");
        }
    }
    if (auto f = top.find("functions")) {
        for (std::size_t k = 0; k < f->array_size(); ++k) inst.functions.push_back(parse_function(f->at(k), n));
    }
    if (auto c = top.find("candidates")) {
        for (std::size_t k = 0; k < c->array_size(); ++k) {
            const Node item = c->at(k);
            if (item.raw().is_string()) {
                try {
                    inst.candidates.push_back(inst.measure(item.string()));
                } catch (const InputError& e) {
                    item.fail(e.what());
                }
            } else {
                inst.candidates.push_back(parse_measure(item, n));
            }
        }
    }
    if (auto h = top.find("harness")) {
        for (const auto& key : h->keys()) {
            const Node v = *h->find(key);
            if (key == "candidates") {
                inst.harness.candidates = v.unsigned_integer();
                if (inst.harness.candidates == 0) v.fail("candidate count must be at least 1");
            } else if (key == "seed") {
                inst.harness.seed = v.unsigned_integer();
            } else if (key == "tolerance") {
                inst.harness.tolerance = v.finite_number();
                if (inst.harness.tolerance < 0.0) v.fail("tolerance must be nonnegative");
            } else if (key == "a") {
                if (!v.raw().is_null()) inst.harness.a = v.finite_number();
                if (inst.harness.a && !(*inst.harness.a > 0.0)) v.fail("a must be positive");
            } else if (key == "a_scale") {
                inst.harness.a_scale = v.finite_number();
                if (!(inst.harness.a_scale > 0.0)) v.fail("a_scale must be positive");
            } else if (key == "eps") {
                inst.harness.eps = v.numbers();
                for (std::size_t i = 0; i < inst.harness.eps.size(); ++i) {
                    const double e = inst.harness.eps[i];
                    if (!(e >= 0.0 && e < 1.0)) v.at(i).fail("eps must lie in [0, 1)");
                }
            } else if (key == "suite") {
                inst.harness.suite = v.string();
            } else {
                v.fail("unknown harness field");
            }
        }
    }
    return inst;
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str(), path);
}

const std::string& default_instance_text() { return kDefaultInstance; }

Instance default_instance() { return parse_instance(kDefaultInstance, "<bundled two-point instance>"); }

json to_json(const Instance& inst) {
    json out;
    const auto& space = *inst.space;
    json distances = json::array();
    for (std::size_t i = 0; i < space.size(); ++i) {
        const auto row = space.distances().row(i);
        distances.push_back(std::vector<double>(row.begin(), row.end()));
    }
    out["space"] = {{"labels", space.labels()}, {"distances", distances}};
    json measures = json::object();
    for (const auto& [name, m] : inst.measures) measures[name] = m.weights();
    out["measures"] = measures;
    out["reference"] = inst.reference;
    out["gauges"] = {{"alpha", inst.alpha.spec}, {"cost", inst.cost.spec}};
    if (inst.chi) out["chi"] = inst.chi->values();
    if (!inst.functions.empty()) {
        json fs = json::array();
        for (const auto& f : inst.functions) fs.push_back(f.values());
        out["functions"] = fs;
    }
    if (!inst.candidates.empty()) {
        json cs = json::array();
        for (const auto& c : inst.candidates) cs.push_back(c.weights());
        out["candidates"] = cs;
    }
    json h = {{"candidates", inst.harness.candidates},
              {"seed", inst.harness.seed},
              {"tolerance", inst.harness.tolerance},
              {"a_scale", inst.harness.a_scale},
              {"suite", inst.harness.suite}};
    if (inst.harness.a) h["a"] = *inst.harness.a;
    if (!inst.harness.eps.empty()) h["eps"] = inst.harness.eps;
    out["harness"] = h;
    return out;
}

}  // namespace tci::cli
