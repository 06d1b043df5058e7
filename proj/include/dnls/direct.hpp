#pragma once

#include "dnls/roots.hpp"
#include "dnls/types.hpp"

namespace dnls {

enum class JostSide { plus, minus };

// Full 2x2 normalized Jost solution sampled on the potential's x-grid.
struct JostSolution {
    JostSide which;
    cplx lambda;
    // columns[i] = {n11, n21, n12, n22} at grid node i
    std::vector<std::array<cplx, 4>> samples;
    double x_min, x_max;

    cplx det_at(int i) const {
        const auto& s = samples[static_cast<size_t>(i)];
        return s[0] * s[3] - s[2] * s[1];
    }
};

// Integrates the full Jost matrix from its normalized edge inward (RK4 with
// the grid step). Throws overflow_error if any entry passes 1e12.
JostSolution jost(const Potential& q, cplx lam, JostSide which);

// Transition coefficients on a real lambda-grid via the Wronskian formulas;
// the lambda = 0 node is handled through the regularized column (N21/lambda).
struct Transition {
    ComplexGrid1D alpha;
    ComplexGrid1D beta;
};
Transition transition(const Potential& q, double lam_min, double lam_max, int n_lam);

// rho = beta/alpha with the spectral-singularity guard (min |alpha| > 1e-6).
ReflectionCoefficient reflection(const Potential& q, double lam_min, double lam_max, int n_lam);

// Analytic continuation of alpha to Im lam <= 0 via the first Jost column.
cplx alpha_lower(const Potential& q, cplx lam);

// breve(alpha)(lam) = conj(alpha(conj lam)) for Im lam >= 0.
cplx alpha_breve_upper(const Potential& q, cplx lam);

// Zeros of breve(alpha) in C^+ located by searching alpha in the mirrored
// region (region must lie in Im lam < 0).
std::vector<cplx> eigenvalues(const Potential& q, const SearchRegion& region);

// d/dlam breve(alpha) at lam_k by a Cauchy-integral derivative over a circle.
cplx alpha_breve_deriv(const Potential& q, cplx lam_k, double d_lambda);

// Norming constants at the given eigenvalues (proportionality constant of the
// bound-state columns at x = 0, normalized against the pole-residue
// convention of the inverse problem).
DiscreteSpectrum norming_constants(const Potential& q, const std::vector<cplx>& eigen);

// Full forward map: reflection + eigenvalues + norming constants.
ScatteringData scatter(const Potential& q, double lam_min, double lam_max, int n_lam,
                       const SearchRegion& region);

// Forward map with the default lambda-grid [-40,40] x 4096 and the default
// search rectangle.
ScatteringData scatter(const Potential& q);

SearchRegion default_search_region();

} // namespace dnls
