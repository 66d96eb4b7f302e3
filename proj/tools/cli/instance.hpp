#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tci/convex_gauge.hpp"
#include "tci/measure.hpp"

namespace tci::cli {

using nlohmann::json;

/// Malformed input: bad flags, unreadable files, schema or invariant
/// violations in an instance. Maps to exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A gauge together with the spec it was parsed from, so that reports can
/// write it back out unchanged.
struct GaugeSpec {
    json spec = "x2";
    ConvexGauge gauge = ConvexGauge::power(2.0);
};

/// Shorthands: x2, x2over2, xp:<p>, linear, capped:<r> (x^2 capped at r).
[[nodiscard]] GaugeSpec parse_gauge_shorthand(const std::string& text);
/// A shorthand string or a {"family": ...} object.
[[nodiscard]] GaugeSpec parse_gauge_json(const json& spec);

struct Harness {
    std::size_t candidates = 500;
    std::uint64_t seed = 1;
    double tolerance = 1e-9;
    std::optional<double> a;
    double a_scale = 1.0;
    std::vector<double> eps;  ///< empty: 0, 0.1, ..., 0.9
    std::string suite = "all";
};

struct Instance {
    std::shared_ptr<const FiniteMetricSpace> space;
    std::vector<std::pair<std::string, DiscreteMeasure>> measures;
    std::string reference;
    GaugeSpec alpha;
    GaugeSpec cost;
    std::optional<RealFunction> chi;
    std::vector<RealFunction> functions;
    std::vector<DiscreteMeasure> candidates;
    Harness harness;

    [[nodiscard]] const DiscreteMeasure& mu() const { return measure(reference); }
    /// Throws InputError when the name is unknown.
    [[nodiscard]] const DiscreteMeasure& measure(const std::string& name) const;
};

/// Parses and validates an instance document. Errors name the file, the
/// line and the JSON path of the offending field.
[[nodiscard]] Instance parse_instance(const std::string& text, const std::string& origin);
[[nodiscard]] Instance load_instance(const std::string& path);

/// The bundled two-point instance: d = 1, mu uniform, chi = 1, f = (1, -1).
[[nodiscard]] Instance default_instance();
[[nodiscard]] const std::string& default_instance_text();

/// Writes every field back out; distances and weights keep full precision so
/// that re-loading reproduces the instance bit for bit.
[[nodiscard]] json to_json(const Instance& instance);

/// Finite doubles as numbers, infinities as "inf" / "-inf".
[[nodiscard]] json number_json(double x);

}  // namespace tci::cli
