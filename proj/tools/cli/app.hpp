#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "instance.hpp"
#include "tci/certify.hpp"

namespace tci::cli {

/// pinsker, weighted-pinsker, tci-metric, tci-cost, ko, dz, subgaussian.
[[nodiscard]] const std::vector<std::string>& suite_names();

struct SuiteRun {
    std::vector<CertificateReport> reports;  ///< merged across instances
    /// Instances with their defaults filled in (functions, chi), one per
    /// source index of the report rows.
    std::vector<Instance> instances;
    std::map<std::string, std::string> suite_of;  ///< inequality -> suite
};

/// Runs `suite` ("all" or one of suite_names()) on every instance.
[[nodiscard]] SuiteRun run_suite(const std::vector<Instance>& instances, const std::string& suite, unsigned workers);

/// The instance that reproduces the worst row of `report` on its own:
/// candidates (and, for function-indexed suites, functions and eps) are
/// pinned to the worst ones.
[[nodiscard]] Instance worst_instance(const CertificateReport& report, const SuiteRun& run);

[[nodiscard]] json report_json(const CertificateReport& report, const SuiteRun& run);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tci::cli
