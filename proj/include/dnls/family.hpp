#pragma once

#include "dnls/types.hpp"

namespace dnls {

// Parameters of the hypergeometric potential family with Gamma-expressible
// scattering coefficients.
struct FamilyParams {
    double nu;     // > 0
    double mu;
    double delta;
    double S0;
    int eps;       // +-1

    FamilyParams(double nu_, double mu_, double delta_, double S0_, int eps_)
        : nu(nu_), mu(mu_), delta(delta_), S0(S0_), eps(eps_) {
        if (!(nu > 0.0)) throw invalid_data_error("FamilyParams: nu must be > 0");
        if (eps != 1 && eps != -1) throw invalid_data_error("FamilyParams: eps must be +-1");
    }
};

// q(x) = nu sech(x)^{1-2 i mu} exp(i(S0 - eps nu^2 tanh x - 2 delta x)).
Potential family_potential(const FamilyParams& p, double x_min, double x_max, int n);
cplx family_potential_at(const FamilyParams& p, double x);

// Square-root factor of the hypergeometric indices, finitely branched on the
// segment joining +-sqrt(eps) mu/nu with R(zeta) ~ zeta at infinity.
cplx family_R(cplx zeta, const FamilyParams& p);

// Closed-form scattering coefficients in the zeta variables.
cplx family_breve_a(cplx zeta, const FamilyParams& p);
cplx family_b(cplx zeta, const FamilyParams& p);

// Reflection coefficient in the lambda variable (real lam).
cplx family_rho(double lam, const FamilyParams& p);

ReflectionCoefficient family_reflection(const FamilyParams& p, double lam_min, double lam_max,
                                        int n);

struct EmptySpectrumCertificate {
    bool certified_empty;            // eps*delta < mu^2/nu^2
    std::vector<cplx> roots_found;   // zeros of the eigenvalue condition, zeta in C^{++}
    std::vector<int> root_branch;    // branch index n for each root
};

// Analytic certificate plus an independent numerical search of the
// eigenvalue condition over branch indices n = 1..n_max.
EmptySpectrumCertificate empty_spectrum_certificate(const FamilyParams& p, int n_max = 20);

} // namespace dnls
