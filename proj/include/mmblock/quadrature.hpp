#pragma once

#include <cmath>
#include <concepts>
#include <stdexcept>

namespace mmblock {

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Adaptive Simpson integration with relative tolerance target and a
/// hard cap on the number of subdivided intervals.
template <std::invocable<double> F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-10,
                 long max_intervals = 1 << 20) {
    if (a == b) return 0.0;
    auto simpson = [&](double lo, double hi, double flo, double fmid,
                       double fhi) {
        return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    };
    struct Frame {
        double lo, hi, flo, fmid, fhi, whole;
        int depth;
    };
    long used = 0;
    double total = 0.0;
    // Scale for the relative tolerance: a crude whole-interval estimate.
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double scale = std::max(std::abs(simpson(a, b, fa, fm, fb)), 1e-300);

    // Explicit stack; depth caps at log2(max_intervals).
    constexpr int kMaxDepth = 48;
    Frame stack[kMaxDepth + 1];
    int top = 0;
    stack[top++] = {a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), 0};
    while (top > 0) {
        Frame fr = stack[--top];
        const double mid = 0.5 * (fr.lo + fr.hi);
        const double fml = f(0.5 * (fr.lo + mid));
        const double fmr = f(0.5 * (mid + fr.hi));
        const double left = simpson(fr.lo, mid, fr.flo, fml, fr.fmid);
        const double right = simpson(mid, fr.hi, fr.fmid, fmr, fr.fhi);
        const double err = (left + right - fr.whole) / 15.0;
        if (std::abs(err) <= rel_tol * scale * (fr.hi - fr.lo) / (b - a) ||
            fr.depth >= kMaxDepth) {
            // NaN comparisons are false, so a non-finite estimate lands
            // here via the depth cap and must not pass silently.
            if (fr.depth >= kMaxDepth &&
                !(std::abs(err) <= 1e3 * rel_tol * scale))
                throw QuadratureError("adaptive Simpson: tolerance not reached");
            total += left + right + err;
            continue;
        }
        if (++used > max_intervals)
            throw QuadratureError("adaptive Simpson: interval cap exceeded");
        stack[top++] = {fr.lo, mid, fr.flo, fml, fr.fmid, left, fr.depth + 1};
        stack[top++] = {mid, fr.hi, fr.fmid, fmr, fr.fhi, right, fr.depth + 1};
    }
    return total;
}

}  // namespace mmblock
