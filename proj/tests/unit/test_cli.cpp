#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "app.hpp"
#include "instance.hpp"

using namespace tci::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "tci");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "tci_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

fs::path write(const std::string& name, const std::string& text) {
    const auto p = scratch(name);
    std::ofstream(p) << text;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

double margin_of(const json& doc, const std::string& inequality) {
    for (const auto& r : doc["reports"]) {
        if (r["inequality"] == inequality) {
            const auto& m = r["min_margin"];
            return m.is_string() ? std::stod(m.get<std::string>()) : m.get<double>();
        }
    }
    FAIL("no report " << inequality);
    return 0.0;
}

}  // namespace

TEST_CASE("scalar subcommands") {
    auto r = invoke({"norm", "--gauge", "x2", "--function", "const:1"});
    CHECK(r.code == 0);
    CHECK(r.out == "1.20112\n");
    CHECK(invoke({"conjugate", "--gauge", "x2", "--s", "2"}).out == "2 1\n");
    CHECK(invoke({"inverse", "--gauge", "x2", "--y", "2"}).out == "2 1.41421356237\n");
    CHECK(invoke({"entropy", "--nu", "1,0"}).out == "0.69314718056\n");
    r = invoke({"laplace", "--function", "values:1,-1", "--s", "1", "--t", "1"});
    CHECK(r.out == "s 1 0.433780830483\nt 1 0.69314718056\n");
    r = invoke({"transport", "--nu", "0.75,0.25"});
    CHECK(r.code == 0);
    CHECK(r.out.find("cost 0.25\n") == 0);
    CHECK(r.out.find("potential 1 0\n") != std::string::npos);
}

TEST_CASE("bundled data file matches the built-in instance") {
    CHECK(slurp(fs::path(TCI_DATA_DIR) / "two_point.json") == default_instance_text());
    for (const char* name : {"two_point.json", "line3.json", "plane6.json"}) {
        INFO(name);
        CHECK_NOTHROW((void)load_instance((fs::path(TCI_DATA_DIR) / name).string()));
    }
}

TEST_CASE("pinsker suite on the default instance") {
    const auto r = invoke({"certify", "--suite", "pinsker"});
    CHECK(r.code == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc["pass"] == true);
    CHECK(margin_of(doc, "pinsker") == 0.0);
    const auto& pinsker = doc["reports"][0];
    CHECK(pinsker["inequality"] == "pinsker");
    CHECK(pinsker["worst"]["instance"]["candidates"][0] == json::array({0.5, 0.5}));
}

TEST_CASE("a constant that is far too small fails") {
    const auto r = invoke({"certify", "--suite", "all", "--gauge", "x2", "--alpha", "x2", "--a", "0.01"});
    CHECK(r.code == 1);
    const auto doc = json::parse(r.out);
    CHECK(doc["pass"] == false);
    bool some_worst = false;
    for (const auto& rep : doc["reports"]) {
        if (rep["pass"] == false) some_worst = some_worst || rep["worst"].contains("instance");
    }
    CHECK(some_worst);
}

TEST_CASE("csv reports") {
    const auto r = invoke({"certify", "--suite", "pinsker", "--report", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("inequality,instance_id,lhs,rhs,margin\n", 0) == 0);
    CHECK(r.out.find("pinsker,nu[2],0,0,0\n") != std::string::npos);
}

TEST_CASE("input errors exit with 2 and point at the field") {
    CHECK(invoke({"certify", "--suite", "nope"}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke({"norm", "--gauge", "xp:0.5"}).code == 2);
    CHECK(invoke({"entropy", "--nu", "1,0,0"}).code == 2);
    CHECK(invoke({"certify", "--instance", scratch("missing.json").string()}).code == 2);
    CHECK(invoke({"--help"}).code == 0);

    const auto bad_weights = write("bad_weights.json", R"({
  "space": {"line": [0, 1]},
  "measures": {
    "mu": [0.5, 0.6]
  },
  "reference": "mu"
}
)");
    auto r = invoke({"certify", "--instance", bad_weights.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("bad_weights.json:4:") != std::string::npos);
    CHECK(r.err.find("/measures/mu") != std::string::npos);

    const auto unknown = write("unknown.json", R"({
  "space": {"line": [0, 1]},
  "measures": {"mu": [0.5, 0.5]},
  "reference": "mu",
  "harness": {"seeds": 3}
}
)");
    r = invoke({"certify", "--instance", unknown.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("unknown.json:5:") != std::string::npos);
    CHECK(r.err.find("/harness/seeds") != std::string::npos);

    const auto metric = write("metric.json", R"({"space": {"distances": [[0, 1, 3], [1, 0, 1], [3, 1, 0]]},
 "measures": {"mu": [0.2, 0.3, 0.5]}, "reference": "mu"})");
    r = invoke({"certify", "--instance", metric.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("/space/distances") != std::string::npos);

    r = invoke({"certify", "--instance", write("syntax.json", "{\n  \"space\": [\n").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("syntax.json:") != std::string::npos);
}

TEST_CASE("identical flags give identical bytes") {
    const std::vector<std::string> args{"certify",     "--suite", "all",   "--random-instances",
                                        "3",           "--seed",  "11",    "--candidates",
                                        "120",         "--report", "csv"};
    const auto a = invoke(args);
    const auto b = invoke(args);
    CHECK(a.out == b.out);
    CHECK(a.err == b.err);
    auto threaded = args;
    threaded.insert(threaded.end(), {"--workers", "4"});
    CHECK(invoke(threaded).out == a.out);
}

TEST_CASE("worst instances round-trip") {
    const auto dir = scratch("worst");
    fs::remove_all(dir);
    const auto r = invoke({"certify", "--suite", "all", "--a-scale", "0.01", "--instance",
                        (fs::path(TCI_DATA_DIR) / "line3.json").string(), "--out-worst", dir.string()});
    CHECK(r.code == 1);
    const auto doc = json::parse(r.out);
    std::size_t checked = 0;
    for (const auto& rep : doc["reports"]) {
        if (rep["pass"] == true) continue;
        const std::string name = rep["inequality"];
        const auto file = dir / (name + ".json");
        REQUIRE(fs::exists(file));
        const auto again = invoke({"certify", "--instance", file.string(), "--a-scale", "0.01"});
        const auto redoc = json::parse(again.out);
        INFO(name);
        CHECK(std::abs(margin_of(redoc, name) - margin_of(doc, name)) <= 1e-12);
        ++checked;
    }
    CHECK(checked >= 5);
}

TEST_CASE("unknown fields inside nested objects are rejected") {
    const auto space = write("space_extra.json", R"({
  "space": {"line": [0, 1], "colour": "red"}
}
)");
    auto r = invoke({"certify", "--instance", space.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("/space/colour") != std::string::npos);

    const auto gauge = write("gauge_extra.json", R"({
  "space": {"line": [0, 1]},
  "gauges": {"alpha": {"family": "power", "exponent": 2, "exponant": 3}}
}
)");
    r = invoke({"certify", "--instance", gauge.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("gauge_extra.json:3:") != std::string::npos);
    CHECK(r.err.find("/gauges/alpha/exponant") != std::string::npos);
}
