#include "tci/candidates.hpp"

#include "tci/error.hpp"
#include "tci/random.hpp"

namespace tci {

std::vector<DiscreteMeasure> generate_candidates(const DiscreteMeasure& mu, const FiniteMetricSpace& space,
                                                 const CandidateFamily& family, std::size_t count,
                                                 std::uint64_t seed) {
    const std::size_t n = mu.size();
    require_same_size(space.size(), n, "candidate generation");
    if (count == 0) throw PreconditionError("candidate generation: count must be >= 1");
    std::vector<DiscreteMeasure> out;
    auto full = [&] { return out.size() >= count; };

    if (family.diracs && n <= 16) {
        for (std::size_t x = 0; x < n && !full(); ++x) out.push_back(DiscreteMeasure::dirac(n, x));
    }
    if (family.reference && !full()) out.push_back(mu);
    if (family.line_mixtures) {
        for (std::size_t x = 0; x < n && !full(); ++x) {
            for (double t : family.mixture_steps) {
                if (full()) break;
                std::vector<double> w(n);
                for (std::size_t i = 0; i < n; ++i) w[i] = (1.0 - t) * mu[i];
                w[x] += t;
                out.emplace_back(normalized(std::move(w)));
            }
        }
    }
    if (family.tilts) {
        std::vector<RealFunction> directions;
        if (family.distance_tilts) {
            for (std::size_t x = 0; x < n; ++x) directions.push_back(space.distance_from(x));
        }
        directions.insert(directions.end(), family.tilt_functions.begin(), family.tilt_functions.end());
        for (const auto& phi : directions) {
            for (double s : family.tilt_strengths) {
                if (full()) break;
                out.push_back(exp_tilt(mu, phi, s));
            }
        }
    }
    if (family.dirichlet) {
        std::vector<std::size_t> support;
        for (std::size_t i = 0; i < n; ++i) {
            if (mu[i] > 0.0) support.push_back(i);
        }
        Rng rng(seed);
        for (std::size_t k = 0; !full(); ++k) {
            std::vector<double> w(n, 0.0);
            switch (k % 4) {
                case 0:
                case 1: {
                    const auto draw = dirichlet_weights(rng, support.size(), k % 4 == 0 ? 1.0 : 3.0);
                    for (std::size_t a = 0; a < support.size(); ++a) w[support[a]] = draw[a];
                    break;
                }
                case 2: {
                    std::vector<std::size_t> subset;
                    for (std::size_t i : support) {
                        if (rng.uniform() < 0.5) subset.push_back(i);
                    }
                    if (subset.empty()) subset.push_back(support[rng.integer(0, support.size() - 1)]);
                    const auto draw = dirichlet_weights(rng, subset.size());
                    for (std::size_t a = 0; a < subset.size(); ++a) w[subset[a]] = draw[a];
                    break;
                }
                default: {
                    const auto draw = dirichlet_weights(rng, support.size());
                    const double t = rng.uniform();
                    for (std::size_t a = 0; a < support.size(); ++a) {
                        w[support[a]] = (1.0 - t) * mu[support[a]] + t * draw[a];
                    }
                    break;
                }
            }
            out.emplace_back(normalized(std::move(w)));
        }
    }
    if (out.size() > count) out.erase(out.begin() + static_cast<std::ptrdiff_t>(count), out.end());
    return out;
}

}  // namespace tci
