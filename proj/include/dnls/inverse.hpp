#pragma once

#include "dnls/types.hpp"

namespace dnls {

// Beals-Coifman unknowns of the right-normalized problem at one x.
struct BealsCoifmanSolution {
    ComplexGrid1D nu11, nu12;             // boundary values on the lambda grid
    std::vector<cplx> nu11_at_conj_poles; // nu11(x, conj lambda_j)
    std::vector<cplx> nu12_at_poles;      // nu12(x, lambda_j)
    double x = 0.0;
    double residual = 0.0;
    int iterations = 0;
    bool used_krylov = false;
};

// Solves the coupled algebraic-integral system for the data as given (any
// time dependence must already be folded into rho and C_k). Fixed-point
// iteration with a restarted-GMRES fallback.
BealsCoifmanSolution bc_solve_right(const ScatteringData& S, double x);

// q(x) from the right solution.
cplx reconstruct_right(const ScatteringData& S, double x);

// Left-normalized scattering data derived from right data through the trace
// formulas: rho_l = rho alpha/breve(alpha) on R, C_l = 1/(C breve(alpha)'^2).
ScatteringData left_data(const ScatteringData& S);

// Mirror solve/reconstruction against left-normalized data (pass the output
// of left_data; the time flow must already be applied to the right data).
BealsCoifmanSolution bc_solve_left(const ScatteringData& left, double x);
cplx reconstruct_left(const ScatteringData& left, double x);

struct InvertResult {
    Potential q;
    double overlap_mismatch = 0.0; // sup |right - left| on the overlap window
};

// Full inverse map at time t: flows the data, re-samples rho fine enough for
// the oscillatory quadrature, reconstructs from the right for x >= 0 and from
// the left for x < 0.
InvertResult invert(const ScatteringData& S, double t, double x_min, double x_max, int n_x);

// Reconstruction at a single point from already-flowed data (and its
// precomputed left counterpart).
cplx reconstruct_point(const ScatteringData& flowed, const ScatteringData& left, double x);

// Chooses a solver lambda-grid fine enough for exp(-2 i lam x - 4 i lam^2 t)
// over |x| <= x_max and re-samples rho onto it (before any flow).
ReflectionCoefficient prepare_solver_grid(const ReflectionCoefficient& rho, double x_extent,
                                          double t);

} // namespace dnls
