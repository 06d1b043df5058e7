#pragma once

#include <complex>

namespace dnls {

using cplx = std::complex<double>;

// Gamma function on C minus the non-positive integers. Throws
// gamma_pole_error within 1e-14 of a pole.
cplx gamma_complex(cplx z);

// log Gamma, analytic branch on the cut plane; exp(log_gamma(z)) == Gamma(z).
// Sums of log_gamma may differ from the log of the product by 2 pi i k, which
// cancels under exponentiation.
cplx log_gamma(cplx z);

struct PcfResult {
    cplx value;
    bool accuracy_warning = false; // series disagreement beyond 1e-6 in the crossover band
    double disagreement = 0.0;
};

// Parabolic cylinder function D_nu(z): Maclaurin-type series for small |z|,
// compound asymptotic expansion for large |z|, both compared in the band.
PcfResult parabolic_cylinder_d(cplx nu, cplx z);

inline cplx parabolic_cylinder_D(cplx nu, cplx z) { return parabolic_cylinder_d(nu, z).value; }

} // namespace dnls
