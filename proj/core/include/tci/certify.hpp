#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tci/convex_gauge.hpp"
#include "tci/measure.hpp"

namespace tci {

inline constexpr std::size_t kNoIndex = std::numeric_limits<std::size_t>::max();

enum class ReportStatus {
    Certified,               ///< every margin >= -tolerance
    Violated,                ///< some margin below -tolerance
    HypothesisNotCertified,  ///< the premise failed its grid check; nothing asserted
    Informational,           ///< computed for comparison, never fails
};

[[nodiscard]] const char* to_string(ReportStatus status);

/// One evaluated instance: margin = rhs - lhs (rhs = +inf gives +inf).
struct InstanceMargin {
    std::string id;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    std::size_t candidate = kNoIndex;  ///< index into the candidate list
    std::size_t function = kNoIndex;   ///< index into the function list
    double location = std::numeric_limits<double>::quiet_NaN();  ///< s, t or eps
    std::size_t source = 0;  ///< instance number when several instances are merged
};

struct CertificateReport {
    std::string inequality;
    ReportStatus status = ReportStatus::Certified;
    double tolerance = 1e-9;
    std::size_t instances = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    std::optional<InstanceMargin> worst;
    std::optional<DiscreteMeasure> worst_nu;
    bool pass = true;
    std::vector<std::pair<std::string, double>> constants;
    std::vector<std::string> notes;
    std::vector<InstanceMargin> rows;

    [[nodiscard]] std::optional<double> constant(const std::string& name) const;
};

struct CertifyOptions {
    double tolerance = 1e-9;
    unsigned workers = 1;
    /// Replaces the theorem constant a (and rescales the explicit bounds
    /// derived from it by the same factor).
    std::optional<double> a_override;
    /// Multiplies the theorem constant; 0.01 gives the under-scaled suite.
    double a_scale = 1.0;
    std::vector<double> delta_grid;  ///< empty: 64 points per decade over [1e-3, 1e3]
    std::vector<double> s_grid;      ///< empty: the per-check default
    bool keep_rows = true;
};

/// Builds a report from its rows: min margin, first worst row, pass flag.
[[nodiscard]] CertificateReport make_report(std::string inequality, std::vector<InstanceMargin> rows,
                                            double tolerance);

/// Combines reports with the same inequality name (first-appearance order).
[[nodiscard]] std::vector<CertificateReport> merge_reports(std::vector<CertificateReport> reports);

/// alpha(||nu - mu||*_Phi / a) <= H(nu | mu) for every candidate.
[[nodiscard]] CertificateReport verify_norm_entropy(const DiscreteMeasure& mu, const FunctionClass& phi,
                                                    const ConvexGauge& alpha, double a,
                                                    std::span<const DiscreteMeasure> candidates,
                                                    const CertifyOptions& options = {});

/// Grid-certifies the dual Laplace condition for Phi with constant a, then
/// checks ||phi - <phi, mu>||_tau <= 3a for every phi.
[[nodiscard]] CertificateReport verify_equiv_forward(const DiscreteMeasure& mu, const FunctionClass& phi,
                                                     const ConvexGauge& alpha, double a,
                                                     const CertifyOptions& options = {});

/// Checks sup_phi ||phi - <phi, mu>||_tau <= M, then the norm-entropy
/// inequality with a = sqrt(2) m_alpha M.
[[nodiscard]] CertificateReport verify_equiv_backward(const DiscreteMeasure& mu, const FunctionClass& phi,
                                                      const ConvexGauge& alpha, double big_m,
                                                      std::span<const DiscreteMeasure> candidates,
                                                      const CertifyOptions& options = {});

/// alpha(T_d / a) <= H with a = 2 sqrt(2) m_alpha min_x0 ||d(x0, .)||_tau.
[[nodiscard]] CertificateReport verify_tci_metric(const DiscreteMeasure& mu, const FiniteMetricSpace& space,
                                                  const ConvexGauge& alpha,
                                                  std::span<const DiscreteMeasure> candidates,
                                                  const CertifyOptions& options = {});

/// alpha(T_c / a) <= H with a = sqrt(2) K m_alpha min_x0 ||c(x0, .)||_tau,
/// followed by the explicit bound with the Luxemburg norm replaced by its
/// delta-estimate, the sandwich chain, and (for c = d^p) the Bolley-Villani
/// comparisons.
[[nodiscard]] std::vector<CertificateReport> verify_tci_cost(const DiscreteMeasure& mu,
                                                             const FiniteMetricSpace& space, const ConvexGauge& q,
                                                             const ConvexGauge& alpha,
                                                             std::span<const DiscreteMeasure> candidates,
                                                             const CertifyOptions& options = {});

/// alpha(||chi (nu - mu)||_TV / a) <= H with a = 2 sqrt(2) m_alpha ||chi||_tau,
/// the explicit form, the necessity bound and the Bolley-Villani comparisons.
[[nodiscard]] std::vector<CertificateReport> verify_weighted_pinsker(const DiscreteMeasure& mu,
                                                                     const RealFunction& chi,
                                                                     const ConvexGauge& alpha,
                                                                     std::span<const DiscreteMeasure> candidates,
                                                                     const CertifyOptions& options = {});

/// The sub-gaussian weighted Pinsker bound for alpha = x^2 and the cruder
/// bound through m_{x^2}, plus the dominance of the first constant by the
/// second.
[[nodiscard]] std::vector<CertificateReport> verify_improved_x2(const DiscreteMeasure& mu, const RealFunction& chi,
                                                                std::span<const DiscreteMeasure> candidates,
                                                                const CertifyOptions& options = {});

/// Kozachenko-Ostrovskii bound for every function (centered first).
[[nodiscard]] CertificateReport verify_ko(const DiscreteMeasure& mu, std::span<const RealFunction> functions,
                                          const ConvexGauge& alpha, const CertifyOptions& options = {});

/// Exponential moment of the Cramer transform and its tail bound.
[[nodiscard]] std::vector<CertificateReport> verify_dz(const DiscreteMeasure& mu,
                                                       std::span<const RealFunction> functions,
                                                       std::span<const double> eps_values,
                                                       const CertifyOptions& options = {});

[[nodiscard]] CertificateReport verify_subgaussian(const DiscreteMeasure& mu, std::span<const RealFunction> functions,
                                                   const CertifyOptions& options = {});

/// eps in {0, 0.1, ..., 0.9}.
[[nodiscard]] std::vector<double> default_eps_values();

}  // namespace tci
