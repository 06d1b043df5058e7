#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "dnls/errors.hpp"

namespace dnls {

using cplx = std::complex<double>;

// Rectangle in C searched for zeros of an analytic function.
struct SearchRegion {
    double re_min, re_max, im_min, im_max;
    int max_depth = 40;
    double newton_tol = 1e-11;

    SearchRegion(double remin, double remax, double immin, double immax,
                 int depth = 40, double tol = 1e-11)
        : re_min(remin), re_max(remax), im_min(immin), im_max(immax),
          max_depth(depth), newton_tol(tol) {
        if (!(re_min < re_max) || !(im_min < im_max))
            throw invalid_data_error("SearchRegion: degenerate rectangle");
        if (!(newton_tol > 0.0)) throw invalid_data_error("SearchRegion: newton_tol must be > 0");
    }
};

// All zeros of fn inside the region, located by winding-number quadtree
// subdivision and polished by Newton iteration with a central-difference
// derivative. fn must be analytic inside and nonvanishing on the boundary.
// Throws boundary_zero_error / nonconvergence_error per contract.
std::vector<cplx> find_zeros(const std::function<cplx(cplx)>& fn, const SearchRegion& region);

// Winding number of fn along the rectangle boundary (counterclockwise),
// exposed for the argument-principle verification in tests.
int winding_number(const std::function<cplx(cplx)>& fn, double re_min, double re_max,
                   double im_min, double im_max);

} // namespace dnls
