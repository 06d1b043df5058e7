#pragma once

#include "dnls/solitons.hpp"
#include "dnls/types.hpp"

namespace dnls {

// Space-time cone S(v1,v2,x1,x2) with its induced spectral window
// I = [-v2/4, -v1/4].
struct ConeWindow {
    double v1, v2, x1, x2;

    ConeWindow(double v1_, double v2_, double x1_, double x2_)
        : v1(v1_), v2(v2_), x1(x1_), x2(x2_) {
        if (!(v1 < v2) || !(x1 <= x2)) throw invalid_data_error("ConeWindow: need v1 < v2, x1 <= x2");
    }
    double I_lo() const { return -v2 / 4.0; }
    double I_hi() const { return -v1 / 4.0; }
    bool contains(double x, double t) const {
        const double x0a = x - v1 * t, x0b = x - v2 * t;
        const double lo = std::min(x0a, x0b), hi = std::max(x0a, x0b);
        return x1 <= hi && lo <= x2;
    }
};

// kappa(xi) = -(1/2 pi) log(1 - eps xi |rho(xi)|^2), rho by cubic interpolation.
double kappa(double xi, const ReflectionCoefficient& rho);

// Partial transmission coefficient delta(lam) = exp(i int_{I^-} kappa/(z-lam) dz)
// over the half-line {eta z <= eta xi}.
cplx delta_fn(cplx lam, double xi, int eta, const ReflectionCoefficient& rho);

// Stationary-point amplitude with |A12|^2 = kappa(xi)/xi and the explicit
// argument including the -eta kappa log|8t| and 4 t xi^2 terms.
struct PCAmplitude {
    cplx A12, A21;
    double xi;
    int eta;
    double t;
};

PCAmplitude pc_amplitude(double xi, int eta, const ReflectionCoefficient& rho, double t);

struct QAsymptotic {
    cplx q_pred;
    cplx q_sol;
    cplx correction; // |t|^{-1/2} f(x,t)
};

// Soliton-plus-dispersion long-time profile inside the cone.
QAsymptotic q_asymptotic(const ScatteringData& S, const ConeWindow& window, double x, double t);

// Pure dispersive profile (no-soliton closed form), equal to the
// t^{-1/2}-correction of q_asymptotic when the window holds no solitons.
cplx dispersive_profile(const ReflectionCoefficient& rho, double x, double t);

// Gauge-side long-time profile; branches between the outer (|xi| >= M t^{-1/8})
// and inner parabolic-cylinder-corrected regimes.
cplx u_asymptotic(const ScatteringData& S, const ConeWindow& window, double x, double t,
                  double M = 1.0);

// Re-export of the closed-form asymptotic soliton parameters for the cone API.
inline PhaseShifts asymptotic_phases(const ScatteringData& S, int k) {
    return phase_shifts(S.discrete, S.rho, k);
}

// F and G parabolic-cylinder factors of the inner gauge regime.
cplx gauge_factor_F(double xi, double t, int eta, const ReflectionCoefficient& rho);
cplx gauge_factor_G(double xi, double t, int eta, const ReflectionCoefficient& rho);

} // namespace dnls
