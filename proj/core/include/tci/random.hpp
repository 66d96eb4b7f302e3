#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "tci/measure.hpp"

namespace tci {

/// Seeded generator with platform-independent draws (std distributions are
/// not portable across standard libraries, so uniforms are built by hand).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [lo, hi].
    std::size_t integer(std::size_t lo, std::size_t hi) {
        const auto span = static_cast<double>(hi - lo + 1);
        const auto k = static_cast<std::size_t>(uniform() * span);
        return lo + std::min(k, hi - lo);
    }
    /// Exponential(1).
    double exponential() { return -std::log1p(-uniform()); }
    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

/// Flat Dirichlet weights on `n` points (normalized exponential draws). With
/// `sharpness` > 1 the draws are raised to that power, concentrating mass.
[[nodiscard]] std::vector<double> dirichlet_weights(Rng& rng, std::size_t n, double sharpness = 1.0);
[[nodiscard]] DiscreteMeasure random_measure(Rng& rng, std::size_t n, double sharpness = 1.0);
[[nodiscard]] RealFunction random_function(Rng& rng, std::size_t n, double lo, double hi);

/// Random points in the plane; n is drawn in [n_min, n_max].
struct RandomInstance {
    FiniteMetricSpace space;
    DiscreteMeasure mu;
};
[[nodiscard]] RandomInstance random_instance(Rng& rng, std::size_t n_min = 2, std::size_t n_max = 10);

/// Normalized weights. The rounding drift is pushed into the largest weight,
/// which usually lands the left-to-right sum on 1 and always within a few ulps.
[[nodiscard]] std::vector<double> normalized(std::vector<double> w);

}  // namespace tci
