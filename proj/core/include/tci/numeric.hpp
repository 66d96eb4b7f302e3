#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace tci {

// Extended nonnegative reals are plain doubles; +inf is a first-class value.
inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kE = 2.718281828459045235360287471352662498;
inline constexpr double kLog2 = 0.693147180559945309417232121458176568;
inline constexpr double kSqrt2 = 1.414213562373095048801688724209698079;

[[nodiscard]] inline bool is_inf(double x) { return std::isinf(x) && x > 0; }

/// Grid description used wherever an operation scans a 1-D parameter.
struct GridSpec {
    enum class Spacing { Linear, Geometric };

    Spacing spacing = Spacing::Geometric;
    double lo = 1e-3;
    double hi = 1e3;
    std::size_t count = 200;

    static GridSpec linear(double lo, double hi, std::size_t count) {
        return {Spacing::Linear, lo, hi, count};
    }
    static GridSpec geometric(double lo, double hi, std::size_t count) {
        return {Spacing::Geometric, lo, hi, count};
    }
    /// Geometric grid with a fixed number of points per decade, both ends included.
    static GridSpec per_decade(double lo, double hi, std::size_t points_per_decade) {
        const double decades = std::log10(hi / lo);
        const auto n = static_cast<std::size_t>(std::llround(decades * static_cast<double>(points_per_decade)));
        return geometric(lo, hi, n + 1);
    }

    [[nodiscard]] std::vector<double> points() const {
        std::vector<double> out;
        if (count == 0) return out;
        out.reserve(count);
        if (count == 1) {
            out.push_back(lo);
            return out;
        }
        const double steps = static_cast<double>(count - 1);
        for (std::size_t i = 0; i < count; ++i) {
            const double f = static_cast<double>(i) / steps;
            if (spacing == Spacing::Linear) {
                out.push_back(lo + (hi - lo) * f);
            } else {
                out.push_back(lo * std::pow(hi / lo, f));
            }
        }
        out.back() = hi;
        return out;
    }
};

/// log(sum_i w_i exp(x_i)) over entries with w_i > 0, max-shifted.
/// Entries with x_i = +inf make the result +inf.
[[nodiscard]] inline double log_sum_exp(std::span<const double> weights, std::span<const double> exponents) {
    double top = -kInf;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] > 0.0) top = std::max(top, exponents[i]);
    }
    if (top == -kInf) return -kInf;
    if (is_inf(top)) return kInf;
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] > 0.0) acc += weights[i] * std::exp(exponents[i] - top);
    }
    return top + std::log(acc);
}

}  // namespace tci
