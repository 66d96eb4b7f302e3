#include "tci/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tci {

std::vector<double> normalized(std::vector<double> w) {
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (double& x : w) {
        x /= total;
        if (x < 1e-15) x = 0.0;
    }
    // One correction usually lands the sum on 1; a second pass catches the
    // cases where adding the drift itself rounds.
    for (int pass = 0; pass < 4; ++pass) {
        const double sum = std::accumulate(w.begin(), w.end(), 0.0);
        if (sum == 1.0) break;
        *std::max_element(w.begin(), w.end()) += 1.0 - sum;
    }
    return w;
}

std::vector<double> dirichlet_weights(Rng& rng, std::size_t n, double sharpness) {
    std::vector<double> w(n);
    for (double& x : w) {
        x = rng.exponential();
        if (sharpness != 1.0) x = std::pow(x, sharpness);
    }
    if (std::all_of(w.begin(), w.end(), [](double x) { return x == 0.0; })) w[0] = 1.0;
    return normalized(std::move(w));
}

DiscreteMeasure random_measure(Rng& rng, std::size_t n, double sharpness) {
    return DiscreteMeasure(dirichlet_weights(rng, n, sharpness));
}

RealFunction random_function(Rng& rng, std::size_t n, double lo, double hi) {
    std::vector<double> v(n);
    for (double& x : v) x = rng.uniform(lo, hi);
    return RealFunction(std::move(v));
}

RandomInstance random_instance(Rng& rng, std::size_t n_min, std::size_t n_max) {
    const std::size_t n = rng.integer(n_min, n_max);
    const double scale = rng.uniform(0.5, 3.0);
    std::vector<std::pair<double, double>> points(n);
    for (auto& p : points) p = {rng.uniform(0.0, scale), rng.uniform(0.0, scale)};
    return {FiniteMetricSpace::euclidean(points), random_measure(rng, n)};
}

}  // namespace tci
