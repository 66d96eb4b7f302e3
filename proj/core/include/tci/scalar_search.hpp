#pragma once

#include <cmath>
#include <utility>

namespace tci::search {

/// Shrinks [lo, hi] around the switch point of a monotone predicate with
/// pred(lo) == false and pred(hi) == true. Stops when the width is at most
/// `tol` or when the midpoint no longer separates the ends.
template <typename Pred>
std::pair<double, double> bisect(double lo, double hi, Pred&& pred, double tol = 0.0, int max_iter = 2000) {
    for (int it = 0; it < max_iter && hi - lo > tol; ++it) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        if (pred(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return {lo, hi};
}

/// Golden-section search for the maximum of a unimodal function on [a, b].
/// Returns {argmax, max}.
template <typename F>
std::pair<double, double> golden_max(F&& f, double a, double b, double tol = 1e-12, int max_iter = 300) {
    constexpr double kInvPhi = 0.6180339887498948482;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < max_iter && b - a > tol * (1.0 + std::abs(a) + std::abs(b)); ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(x1);
        }
    }
    return f1 >= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

/// Ternary search for the minimum of a unimodal function on [a, b].
/// Ties move the bracket toward smaller arguments. Returns the argmin.
template <typename F>
double ternary_min(F&& f, double a, double b, double tol = 1e-14, int max_iter = 400) {
    for (int it = 0; it < max_iter && b - a > tol; ++it) {
        const double m1 = a + (b - a) / 3.0;
        const double m2 = b - (b - a) / 3.0;
        if (f(m1) <= f(m2)) {
            b = m2;
        } else {
            a = m1;
        }
    }
    return a;
}

}  // namespace tci::search
