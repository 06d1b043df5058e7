#pragma once

#include <array>
#include <vector>

#include "dnls/types.hpp"

namespace dnls {

// Index partition of the discrete spectrum against the critical point:
// minus = {k : eta (Re lambda_k - xi) < 0}, plus = complement.
struct Partition {
    std::vector<int> minus, plus;
    std::vector<bool> in_minus;
};

Partition partition(const DiscreteSpectrum& D, double xi, int eta);

// Blaschke product over the minus set, prod (lam - conj lam_k)/(lam - lam_k).
cplx blaschke(cplx lam, const DiscreteSpectrum& D, const Partition& part);

// d/dlam of 1/Blaschke at its zero lambda_k (k in the minus set), by the
// exact product rule.
cplx blaschke_inv_deriv(int k, const DiscreteSpectrum& D, const Partition& part);

// Solution of the 2N x 2N pole-coefficient system for the reflectionless
// outer model. P_k stores eps * conj(B_k).
struct SolitonCoefficients {
    std::vector<cplx> A;
    std::vector<cplx> P;
    Partition part;
    double x = 0.0, t = 0.0;
    double residual = 0.0; // relative residual of the linear system
};

SolitonCoefficients solve_system(const DiscreteSpectrum& D, int eps, double xi, int eta, double x,
                                 double t);

using Mat2 = std::array<std::array<cplx, 2>, 2>;

// Renormalised outer-model matrix N^sol(lam) evaluated off the pole set.
Mat2 nsol_matrix(const DiscreteSpectrum& D, int eps, double xi, int eta, double x, double t,
                 cplx lam);

// Exact N-soliton field of the reflectionless problem.
cplx q_nsoliton(const DiscreteSpectrum& D, int eps, double x, double t);

// Closed-form one-soliton field (lam in C^+, C != 0).
cplx one_soliton(cplx lam, cplx C, int eps, double x, double t);

// Cumulative squared envelope int_{-inf}^{y} phi^2 of the one-soliton, exact.
double one_soliton_mass_to(cplx lam, int eps, double y_shifted);

// Window reduction of Theorem-style modified data: keeps Re lambda_k in
// [I_lo, I_hi] and folds the discarded solitons below the critical point plus
// the continuous spectrum into the connection coefficients.
DiscreteSpectrum reduce_window(const DiscreteSpectrum& D, const ReflectionCoefficient& rho,
                               double I_lo, double I_hi, double xi, int eta);

struct PhaseShifts {
    double x_plus, x_minus;    // asymptotic soliton centers
    double alpha_plus, alpha_minus; // asymptotic phases in (-pi, pi]
};

// Closed-form asymptotic position/phase parameters of soliton k (0-based),
// generic case (distinct Re lambda_j required).
PhaseShifts phase_shifts(const DiscreteSpectrum& D, const ReflectionCoefficient& rho, int k);

} // namespace dnls
