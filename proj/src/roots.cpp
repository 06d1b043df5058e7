#include "dnls/roots.hpp"

#include <algorithm>
#include <cmath>

namespace dnls {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kBoundaryFloor = 1e-12;

// Accumulate the argument change of fn along the segment [a,b], refining
// until each step turns by less than pi/2.
double arg_change(const std::function<cplx(cplx)>& fn, cplx a, cplx b, cplx fa, cplx fb, int depth) {
    const double d = std::arg(fb / fa);
    if (std::abs(d) < kPi / 2.0) return d;
    if (depth > 48) throw nonconvergence_error("winding: argument refinement exhausted");
    const cplx mid = 0.5 * (a + b);
    const cplx fm = fn(mid);
    if (std::abs(fm) < kBoundaryFloor)
        throw boundary_zero_error("winding: |f| below 1e-12 on the contour");
    return arg_change(fn, a, mid, fa, fm, depth + 1) + arg_change(fn, mid, b, fm, fb, depth + 1);
}

int winding(const std::function<cplx(cplx)>& fn, double re_min, double re_max, double im_min,
            double im_max) {
    const cplx corners[5] = {{re_min, im_min}, {re_max, im_min}, {re_max, im_max},
                             {re_min, im_max}, {re_min, im_min}};
    double total = 0.0;
    // start each edge from a few samples so long edges refine gracefully
    for (int e = 0; e < 4; ++e) {
        const cplx a = corners[e], b = corners[e + 1];
        const int steps = 8;
        cplx prev = a, fprev = fn(a);
        if (std::abs(fprev) < kBoundaryFloor)
            throw boundary_zero_error("winding: |f| below 1e-12 on the contour");
        for (int s = 1; s <= steps; ++s) {
            const cplx cur = a + (b - a) * (static_cast<double>(s) / steps);
            const cplx fcur = fn(cur);
            if (std::abs(fcur) < kBoundaryFloor)
                throw boundary_zero_error("winding: |f| below 1e-12 on the contour");
            total += arg_change(fn, prev, cur, fprev, fcur, 0);
            prev = cur;
            fprev = fcur;
        }
    }
    return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

cplx newton_polish(const std::function<cplx(cplx)>& fn, cplx z0, double tol) {
    cplx z = z0;
    for (int it = 0; it < 50; ++it) {
        const cplx f = fn(z);
        if (std::abs(f) < tol) return z;
        const double step = 1e-6 * (1.0 + std::abs(z));
        const cplx df = (fn(z + step) - fn(z - step)) / (2.0 * step);
        if (std::abs(df) < 1e-300) break;
        z -= f / df;
    }
    if (std::abs(fn(z)) < tol) return z;
    throw nonconvergence_error("find_zeros: Newton failed after 50 iterations");
}

struct Box {
    double re_min, re_max, im_min, im_max;
    int depth;
};

} // namespace

int winding_number(const std::function<cplx(cplx)>& fn, double re_min, double re_max,
                   double im_min, double im_max) {
    return winding(fn, re_min, re_max, im_min, im_max);
}

std::vector<cplx> find_zeros(const std::function<cplx(cplx)>& fn, const SearchRegion& region) {
    std::vector<cplx> zeros;
    std::vector<Box> stack{{region.re_min, region.re_max, region.im_min, region.im_max, 0}};
    const double small = 1e-3;

    while (!stack.empty()) {
        const Box box = stack.back();
        stack.pop_back();

        int w = 0;
        bool counted = false;
        // a zero sitting on a subdivision line defeats the winding count;
        // nudge the box edges slightly and retry
        double nudge = 0.0;
        for (int attempt = 0; attempt < 4; ++attempt) {
            try {
                w = winding(fn, box.re_min - nudge, box.re_max + nudge, box.im_min - nudge,
                            box.im_max + nudge);
                counted = true;
                break;
            } catch (const boundary_zero_error&) {
                if (box.depth == 0 && attempt == 0) throw; // caller's boundary is sacred
                nudge = (nudge == 0.0) ? 0.031 * std::min(box.re_max - box.re_min,
                                                          box.im_max - box.im_min)
                                       : 2.7 * nudge;
            }
        }
        if (!counted)
            throw boundary_zero_error("find_zeros: could not move a sub-rectangle off a zero");
        if (w == 0) continue;

        const double w_re = box.re_max - box.re_min, w_im = box.im_max - box.im_min;
        if (w == 1 && std::max(w_re, w_im) < small) {
            const cplx z = newton_polish(
                fn, cplx(0.5 * (box.re_min + box.re_max), 0.5 * (box.im_min + box.im_max)),
                region.newton_tol);
            bool dup = false;
            for (const cplx& seen : zeros)
                if (std::abs(seen - z) < 1e-8) dup = true;
            if (!dup) zeros.push_back(z);
            continue;
        }
        if (box.depth >= region.max_depth)
            throw nonconvergence_error("find_zeros: max_depth reached before isolation");

        const double rm = 0.5 * (box.re_min + box.re_max);
        const double im = 0.5 * (box.im_min + box.im_max);
        stack.push_back({box.re_min, rm, box.im_min, im, box.depth + 1});
        stack.push_back({rm, box.re_max, box.im_min, im, box.depth + 1});
        stack.push_back({box.re_min, rm, im, box.im_max, box.depth + 1});
        stack.push_back({rm, box.re_max, im, box.im_max, box.depth + 1});
    }

    std::sort(zeros.begin(), zeros.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return zeros;
}

} // namespace dnls
