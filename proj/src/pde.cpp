#include "dnls/pde.hpp"

#include <cmath>
#include <cstdio>

#include "dnls/direct.hpp"
#include "dnls/fft.hpp"
#include "dnls/inverse.hpp"

namespace dnls {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

EvolveResult evolve_pde(const Potential& q0, const EvolutionConfig& cfg) {
    const int n = q0.grid.n;
    const double h = q0.grid.h();
    const double period = n * h; // endpoint node + h wraps to x_min
    const double eps = static_cast<double>(q0.epsilon);

    // tails must be periodic-extension safe
    const double mx = q0.grid.max_abs();
    if (std::abs(q0.grid.values.front()) > 1e-6 * mx ||
        std::abs(q0.grid.values.back()) > 1e-6 * mx)
        std::fprintf(stderr, "dnls: warning: evolve_pde tails are not small; periodic wrap error\n");

    std::vector<double> k(static_cast<size_t>(n));
    for (int m = 0; m < n; ++m) {
        const int mm = (m <= n / 2) ? m : m - n;
        k[static_cast<size_t>(m)] = 2.0 * kPi * mm / period;
    }
    const double k_max = kPi * n / period;
    if (cfg.dt * k_max * k_max > 0.5)
        std::fprintf(stderr,
                     "dnls: warning: dt k_max^2 = %.2f exceeds the recommended 0.5\n",
                     cfg.dt * k_max * k_max);

    std::vector<bool> keep(static_cast<size_t>(n));
    for (int m = 0; m < n; ++m)
        keep[static_cast<size_t>(m)] = std::abs(k[static_cast<size_t>(m)]) <=
                                       cfg.dealias_fraction * k_max;

    const int steps = std::max(1, static_cast<int>(std::lround(cfg.t_final / cfg.dt)));
    const double dt = cfg.t_final / steps;

    std::vector<cplx> vhat = q0.grid.values;
    fft_forward(vhat);
    const double inv_n = 1.0 / n;

    std::vector<cplx> e_half(static_cast<size_t>(n)), e_full(static_cast<size_t>(n));
    for (int m = 0; m < n; ++m) {
        const cplx l(0.0, -k[static_cast<size_t>(m)] * k[static_cast<size_t>(m)]);
        e_half[static_cast<size_t>(m)] = std::exp(l * (dt / 2.0));
        e_full[static_cast<size_t>(m)] = std::exp(l * dt);
    }

    // N(q) in Fourier space: hat of -eps q^2 conj(q)_x + (i/2)|q|^4 q
    std::vector<cplx> qphys(static_cast<size_t>(n)), qx(static_cast<size_t>(n)),
        work(static_cast<size_t>(n));
    auto nonlinear = [&](const std::vector<cplx>& what, std::vector<cplx>& out, double& sup_abs) {
        qphys = what;
        fft_inverse(qphys);
        for (auto& v : qphys) v *= inv_n;
        for (int m = 0; m < n; ++m)
            qx[static_cast<size_t>(m)] = what[static_cast<size_t>(m)] *
                                         cplx(0.0, k[static_cast<size_t>(m)]);
        fft_inverse(qx);
        for (auto& v : qx) v *= inv_n;
        sup_abs = 0.0;
        for (int m = 0; m < n; ++m) {
            const cplx q = qphys[static_cast<size_t>(m)];
            sup_abs = std::max(sup_abs, std::abs(q));
            const double a2 = std::norm(q);
            work[static_cast<size_t>(m)] =
                -eps * q * q * std::conj(qx[static_cast<size_t>(m)]) +
                cplx(0.0, 0.5) * a2 * a2 * q;
        }
        out = work;
        fft_forward(out);
        for (int m = 0; m < n; ++m)
            if (!keep[static_cast<size_t>(m)]) out[static_cast<size_t>(m)] = 0.0;
    };

    EvolveResult res;
    res.q = q0;
    auto record = [&](double tnow) {
        std::vector<cplx> qh = vhat;
        fft_inverse(qh);
        double mass = 0.0, amax = 0.0;
        for (auto& v : qh) {
            v *= inv_n;
            mass += std::norm(v);
            amax = std::max(amax, std::abs(v));
        }
        res.times.push_back(tnow);
        res.mass.push_back(mass * h);
        res.max_abs.push_back(amax);
    };
    record(0.0);

    std::vector<cplx> na, nb, nc, nd, stage(static_cast<size_t>(n));
    for (int s = 1; s <= steps; ++s) {
        double amax = 0.0;
        nonlinear(vhat, na, amax);
        if (amax > 1e6) throw error("evolve_pde: blow-up (max|q| exceeded 1e6)");
        for (int m = 0; m < n; ++m)
            stage[static_cast<size_t>(m)] = e_half[static_cast<size_t>(m)] *
                                            (vhat[static_cast<size_t>(m)] +
                                             0.5 * dt * na[static_cast<size_t>(m)]);
        nonlinear(stage, nb, amax);
        for (int m = 0; m < n; ++m)
            stage[static_cast<size_t>(m)] = e_half[static_cast<size_t>(m)] *
                                                vhat[static_cast<size_t>(m)] +
                                            0.5 * dt * nb[static_cast<size_t>(m)];
        nonlinear(stage, nc, amax);
        for (int m = 0; m < n; ++m)
            stage[static_cast<size_t>(m)] = e_full[static_cast<size_t>(m)] *
                                                vhat[static_cast<size_t>(m)] +
                                            dt * e_half[static_cast<size_t>(m)] *
                                                nc[static_cast<size_t>(m)];
        nonlinear(stage, nd, amax);
        for (int m = 0; m < n; ++m) {
            const cplx ef = e_full[static_cast<size_t>(m)], eh = e_half[static_cast<size_t>(m)];
            vhat[static_cast<size_t>(m)] =
                ef * vhat[static_cast<size_t>(m)] +
                dt / 6.0 *
                    (ef * na[static_cast<size_t>(m)] +
                     2.0 * eh * (nb[static_cast<size_t>(m)] + nc[static_cast<size_t>(m)]) +
                     nd[static_cast<size_t>(m)]);
        }
        if (s % cfg.record_every == 0 || s == steps) record(s * dt);
    }

    std::vector<cplx> qfinal = vhat;
    fft_inverse(qfinal);
    for (auto& v : qfinal) v *= inv_n;
    res.q = Potential(ComplexGrid1D(q0.grid.x_min, q0.grid.x_max, std::move(qfinal)), q0.epsilon);
    return res;
}

Potential evolve_ist(const Potential& q0, double t) {
    const ScatteringData S = scatter(q0);
    return invert(S, t, q0.grid.x_min, q0.grid.x_max, q0.grid.n).q;
}

} // namespace dnls
