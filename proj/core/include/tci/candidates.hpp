#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tci/measure.hpp"

namespace tci {

/// Which kinds of measures nu to try against the reference mu. Emission
/// order is fixed: Diracs, mu itself, line mixtures, exponential tilts, then
/// seeded Dirichlet draws until the requested count is reached.
struct CandidateFamily {
    bool diracs = true;  ///< only when the space has at most 16 points
    bool reference = true;
    bool line_mixtures = true;
    std::vector<double> mixture_steps{0.1, 0.25, 0.5, 0.75, 0.9};
    bool tilts = true;
    bool distance_tilts = true;  ///< tilt along d(x0, .) for every x0
    std::vector<RealFunction> tilt_functions;
    std::vector<double> tilt_strengths{-8.0, -4.0, -2.0, -1.0, -0.5, -0.25, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0};
    bool dirichlet = true;
};

[[nodiscard]] std::vector<DiscreteMeasure> generate_candidates(const DiscreteMeasure& mu,
                                                               const FiniteMetricSpace& space,
                                                               const CandidateFamily& family, std::size_t count,
                                                               std::uint64_t seed);

}  // namespace tci
