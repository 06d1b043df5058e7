#include "dnls/family.hpp"

#include <cmath>

#include "dnls/roots.hpp"
#include "dnls/special.hpp"

namespace dnls {

namespace {

// sqrt(-eps): i for eps = +1, 1 for eps = -1.
cplx sqrt_minus_eps(int eps) { return eps > 0 ? cplx(0.0, 1.0) : cplx(1.0, 0.0); }
// sqrt(eps): 1 for eps = +1, i for eps = -1.
cplx sqrt_eps(int eps) { return eps > 0 ? cplx(1.0, 0.0) : cplx(0.0, 1.0); }

struct HyperParams {
    cplx alpha, beta, gamma;
};

HyperParams indices(cplx zeta, const FamilyParams& p) {
    const cplx R = family_R(zeta, p);
    const cplx shift = cplx(0.0, 1.0) * p.nu * sqrt_minus_eps(p.eps) * R;
    HyperParams h;
    h.alpha = cplx(0.0, p.mu) + shift;
    h.beta = cplx(0.0, p.mu) - shift;
    h.gamma = -cplx(0.0, 1.0) * zeta * zeta + cplx(0.0, p.mu + p.delta) + 0.5;
    return h;
}

} // namespace

cplx family_potential_at(const FamilyParams& p, double x) {
    // sech^{1-2 i mu} by the principal branch of exp((1-2 i mu) log sech x)
    const double sech = 1.0 / std::cosh(x);
    const cplx power = std::exp(cplx(1.0, -2.0 * p.mu) * std::log(sech));
    const double phase = p.S0 - p.eps * p.nu * p.nu * std::tanh(x) - 2.0 * p.delta * x;
    return p.nu * power * std::exp(cplx(0.0, phase));
}

Potential family_potential(const FamilyParams& p, double x_min, double x_max, int n) {
    return Potential(sample_grid(x_min, x_max, n, [&](double x) { return family_potential_at(p, x); }),
                     p.eps);
}

cplx family_R(cplx zeta, const FamilyParams& p) {
    // R = sqrt(zeta - c) sqrt(zeta + c) with matched principal branches,
    // c = sqrt(eps) mu/nu; this is branched exactly on the segment [-c, c]
    // and behaves like zeta at infinity.
    const cplx c = sqrt_eps(p.eps) * (p.mu / p.nu);
    return std::sqrt(zeta - c) * std::sqrt(zeta + c);
}

cplx family_breve_a(cplx zeta, const FamilyParams& p) {
    const HyperParams h = indices(zeta, p);
    const cplx lg = log_gamma(h.gamma) + log_gamma(h.gamma - h.alpha - h.beta) -
                    log_gamma(h.gamma - h.alpha) - log_gamma(h.gamma - h.beta);
    return std::exp(cplx(0.0, -static_cast<double>(p.eps) * p.nu * p.nu) + lg);
}

cplx family_b(cplx zeta, const FamilyParams& p) {
    if (std::abs(zeta) < 1e-12) throw domain_error("family_b: zeta = 0");
    const HyperParams h = indices(zeta, p);
    const cplx lg = log_gamma(h.gamma) + log_gamma(1.0 + h.alpha + h.beta - h.gamma) -
                    log_gamma(h.alpha) - log_gamma(h.beta);
    const cplx pref = -std::exp(cplx(0.0, 2.0 * p.mu * std::log(2.0))) / (p.nu * zeta) *
                      std::exp(cplx(0.0, -p.S0));
    return pref * std::exp(lg);
}

cplx family_rho(double lam, const FamilyParams& p) {
    // rho(lam) = eps zeta^{-1} conj(b(conj zeta)) / conj(breve a(conj zeta)),
    // zeta = principal sqrt(lam); finite at lam = 0 by evaluating just off it.
    double l = lam;
    if (std::abs(l) < 1e-12) l = 1e-12;
    const cplx zeta = std::sqrt(cplx(l, 0.0));
    const cplx zc = std::conj(zeta);
    const cplx num = std::conj(family_b(zc, p));
    const cplx den = std::conj(family_breve_a(zc, p));
    return static_cast<double>(p.eps) / zeta * num / den;
}

ReflectionCoefficient family_reflection(const FamilyParams& p, double lam_min, double lam_max,
                                        int n) {
    return ReflectionCoefficient(
        sample_grid(lam_min, lam_max, n, [&](double lam) { return family_rho(lam, p); }), p.eps);
}

EmptySpectrumCertificate empty_spectrum_certificate(const FamilyParams& p, int n_max) {
    EmptySpectrumCertificate cert;
    cert.certified_empty = p.eps * p.delta < (p.mu * p.mu) / (p.nu * p.nu);

    // search zeros of  zeta^2 - delta - nu sqrt(-eps) R(zeta) + i(n - 1/2)
    // over zeta in C^{++}; any root makes breve(a) vanish on branch n
    const cplx sme = sqrt_minus_eps(p.eps);
    for (int nn = 1; nn <= n_max; ++nn) {
        auto fn = [&](cplx z) {
            return z * z - p.delta - p.nu * sme * family_R(z, p) + cplx(0.0, nn - 0.5);
        };
        // |zeta|^2 <= |delta| + nu(|zeta| + |c|) + (n - 1/2) bounds the roots
        const double cc = p.mu / p.nu;
        const double disc = p.nu + std::sqrt(p.nu * p.nu +
                                             4.0 * (std::abs(p.delta) + p.nu * cc + nn - 0.5));
        const double rmax = 0.55 * disc + 0.5;
        const double margin = 1e-3;
        try {
            SearchRegion region(margin, rmax, margin, rmax, 44, 1e-10);
            const std::vector<cplx> roots = find_zeros(fn, region);
            for (const cplx& r : roots) {
                cert.roots_found.push_back(r);
                cert.root_branch.push_back(nn);
            }
        } catch (const error&) {
            // a root pinned to the boundary margin: nudge the box and retry once
            SearchRegion region(margin * 2.7, rmax * 1.013, margin * 2.7, rmax * 1.013, 44, 1e-10);
            const std::vector<cplx> roots = find_zeros(fn, region);
            for (const cplx& r : roots) {
                cert.roots_found.push_back(r);
                cert.root_branch.push_back(nn);
            }
        }
    }
    return cert;
}

} // namespace dnls
