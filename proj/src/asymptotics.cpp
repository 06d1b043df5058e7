#include "dnls/asymptotics.hpp"

#include <cmath>

#include "dnls/special.hpp"

namespace dnls {

namespace {

constexpr double kPi = 3.14159265358979323846;

double constraint_interp(const ReflectionCoefficient& rho, double xi) {
    return 1.0 - rho.epsilon * xi * std::norm(interp_cubic(rho.grid, xi));
}

// log(1 - eps lam |rho|^2) at the nodes.
std::vector<double> log_constraint(const ReflectionCoefficient& rho) {
    std::vector<double> g(static_cast<size_t>(rho.grid.n));
    for (int i = 0; i < rho.grid.n; ++i) {
        const double c = rho.constraint_at(i);
        if (!(c > 0.0)) throw domain_error("asymptotics: constraint violated on the grid");
        g[static_cast<size_t>(i)] = std::log(c);
    }
    return g;
}

} // namespace

double kappa(double xi, const ReflectionCoefficient& rho) {
    const double w = -rho.epsilon * xi * std::norm(interp_cubic(rho.grid, xi));
    if (!(w > -1.0)) throw domain_error("kappa: 1 - eps xi |rho(xi)|^2 must be positive");
    return -std::log1p(w) / (2.0 * kPi);
}

cplx delta_fn(cplx lam, double xi, int eta, const ReflectionCoefficient& rho) {
    const std::vector<double> g = log_constraint(rho);
    const double h = rho.grid.h();
    const int n = rho.grid.n;
    // kappa at nodes
    auto kap = [&](int i) { return -g[static_cast<size_t>(i)] / (2.0 * kPi); };

    const bool on_half_line = (eta > 0) ? (lam.real() <= xi + h) : (lam.real() >= xi - h);
    if (std::abs(lam.imag()) < 1e-6 && on_half_line)
        throw contour_proximity_error("delta_fn: lam too close to the integration half-line");

    // refined panel around Re lam when lam hugs the contour
    const bool refine = std::abs(lam.imag()) < h && on_half_line;
    const double W = refine ? std::min(std::max(64.0 * h, 0.5), 0.25 * (rho.grid.x_max - rho.grid.x_min))
                            : 0.0;
    const double rlo = lam.real() - W, rhi = lam.real() + W;

    cplx acc = 0.0;
    auto add_cell = [&](double a, double b, double ka, double kb) {
        if (b <= a) return;
        acc += 0.5 * ((ka / (a - lam)) + (kb / (b - lam))) * (b - a);
    };
    auto kap_interp = [&](double z) {
        const double c = constraint_interp(rho, z);
        return -std::log(std::max(c, 1e-300)) / (2.0 * kPi);
    };

    for (int i = 0; i < n - 1; ++i) {
        double a = rho.grid.node(i), b = rho.grid.node(i + 1);
        double ka = kap(i), kb = kap(i + 1);
        // clip the cell to the half line {eta z <= eta xi}
        if (eta > 0) {
            if (a >= xi) continue;
            if (b > xi) {
                kb = ka + (kb - ka) * (xi - a) / h;
                b = xi;
            }
        } else {
            if (b <= xi) continue;
            if (a < xi) {
                ka = kb - (kb - ka) * (b - xi) / h;
                a = xi;
            }
        }
        if (refine && b > rlo && a < rhi) continue; // handled by the fine panel
        add_cell(a, b, ka, kb);
    }
    if (refine) {
        double a = std::max(rho.grid.x_min, rlo), b = std::min(rho.grid.x_max, rhi);
        if (eta > 0) b = std::min(b, xi);
        else a = std::max(a, xi);
        if (b > a) {
            const double fine_h = std::max(std::abs(lam.imag()) / 8.0, 2e-6);
            const int m = std::max(17, static_cast<int>(std::ceil((b - a) / fine_h)) | 1);
            const double fh = (b - a) / (m - 1);
            for (int j = 0; j < m - 1; ++j) {
                const double z0 = a + j * fh, z1 = z0 + fh;
                add_cell(z0, z1, kap_interp(z0), kap_interp(z1));
            }
        }
    }
    return std::exp(cplx(0.0, 1.0) * acc);
}

namespace {

// (1/pi) * int over the half line of log|xi - lam| d_lam g(lam), with the
// log-singular cell integrated exactly against a linear interpolant of g'.
double log_kernel_integral(const ReflectionCoefficient& rho, double xi, int side) {
    // side = -1: (-inf, xi]; side = +1: [xi, inf)
    const int n = rho.grid.n;
    const double h = rho.grid.h();
    const std::vector<double> g = log_constraint(rho);
    // fourth-order central differences for g'
    std::vector<double> dg(static_cast<size_t>(n), 0.0);
    for (int i = 2; i < n - 2; ++i)
        dg[static_cast<size_t>(i)] = (-g[static_cast<size_t>(i + 2)] + 8.0 * g[static_cast<size_t>(i + 1)] -
                                      8.0 * g[static_cast<size_t>(i - 1)] + g[static_cast<size_t>(i - 2)]) /
                                     (12.0 * h);
    dg[1] = (g[2] - g[0]) / (2.0 * h);
    dg[static_cast<size_t>(n - 2)] = (g[static_cast<size_t>(n - 1)] - g[static_cast<size_t>(n - 3)]) / (2.0 * h);

    auto dg_at = [&](double z) -> double {
        const double tpos = (z - rho.grid.x_min) / h;
        int i = static_cast<int>(std::floor(tpos));
        i = std::max(0, std::min(n - 2, i));
        const double u = tpos - i;
        return (1.0 - u) * dg[static_cast<size_t>(i)] + u * dg[static_cast<size_t>(i) + 1];
    };

    double acc = 0.0;
    for (int i = 0; i < n - 1; ++i) {
        double a = rho.grid.node(i), b = rho.grid.node(i + 1);
        if (side < 0) {
            if (a >= xi) continue;
            b = std::min(b, xi);
        } else {
            if (b <= xi) continue;
            a = std::max(a, xi);
        }
        if (b <= a) continue;
        const double da = dg_at(a), db = dg_at(b);
        if (std::min(std::abs(a - xi), std::abs(b - xi)) < 1.5 * h) {
            // exact integral of (c0 + c1 u) log|u|, u = lam - xi
            const double ua = a - xi, ub = b - xi;
            const double c1 = (db - da) / (b - a);
            const double c0 = da - c1 * ua;
            auto F0 = [](double u) { return u == 0.0 ? 0.0 : u * std::log(std::abs(u)) - u; };
            auto F1 = [](double u) {
                return u == 0.0 ? 0.0 : 0.5 * u * u * std::log(std::abs(u)) - 0.25 * u * u;
            };
            acc += c0 * (F0(ub) - F0(ua)) + c1 * (F1(ub) - F1(ua));
        } else {
            acc += 0.5 * (da * std::log(std::abs(a - xi)) + db * std::log(std::abs(b - xi))) * (b - a);
        }
    }
    return acc / kPi;
}

} // namespace

PCAmplitude pc_amplitude(double xi, int eta, const ReflectionCoefficient& rho, double t) {
    if (xi == 0.0) throw domain_error("pc_amplitude: xi must be nonzero");
    PCAmplitude out;
    out.xi = xi;
    out.eta = eta;
    out.t = t;
    const double k0 = kappa(xi, rho);
    const double amp2 = k0 / xi;
    if (amp2 < 0.0)
        throw domain_error("pc_amplitude: kappa(xi)/xi negative (inconsistent data)");
    if (amp2 == 0.0) {
        out.A12 = out.A21 = 0.0;
        return out;
    }
    const cplx rho_xi = interp_cubic(rho.grid, xi);
    const double eps = static_cast<double>(rho.epsilon);
    const double arg_rho = std::arg(-eps * xi * std::conj(rho_xi));
    const double gamma_arg = std::arg(gamma_complex(cplx(0.0, k0)));
    const double log_term = log_kernel_integral(rho, xi, eta > 0 ? -1 : +1);
    double arg;
    if (eta > 0)
        arg = kPi / 4.0 + gamma_arg - arg_rho + log_term - k0 * std::log(std::abs(8.0 * t)) +
              4.0 * t * xi * xi;
    else
        arg = kPi / 4.0 - gamma_arg - arg_rho + log_term + k0 * std::log(std::abs(8.0 * t)) +
              4.0 * t * xi * xi;
    out.A12 = std::sqrt(amp2) * std::exp(cplx(0.0, arg));
    out.A21 = eps * xi * std::conj(out.A12);
    return out;
}

QAsymptotic q_asymptotic(const ScatteringData& S, const ConeWindow& window, double x, double t) {
    if (!(std::abs(t) >= 1.0)) throw domain_error("q_asymptotic: requires |t| >= 1");
    const double xi = -x / (4.0 * t);
    const int eta = t > 0.0 ? 1 : -1;
    const DiscreteSpectrum D_I =
        reduce_window(S.discrete, S.rho, window.I_lo(), window.I_hi(), xi, eta);
    QAsymptotic out;
    out.q_sol = q_nsoliton(D_I, S.epsilon, x, t);
    out.correction = 0.0;
    if (S.rho.grid.max_abs() > 0.0 && kappa(xi, S.rho) != 0.0) {
        const PCAmplitude A = pc_amplitude(xi, eta, S.rho, t);
        cplx n11 = 1.0, n12 = 0.0;
        if (!D_I.empty()) {
            const Mat2 nsol = nsol_matrix(D_I, S.epsilon, xi, eta, x, t, cplx(xi, 0.0));
            n11 = nsol[0][0];
            n12 = nsol[0][1];
        }
        const cplx f = (A.A12 * n11 * n11 +
                        static_cast<double>(S.epsilon) * xi * std::conj(A.A12) * n12 * n12) /
                       std::sqrt(2.0);
        out.correction = f / std::sqrt(std::abs(t));
    }
    out.q_pred = out.q_sol + out.correction;
    return out;
}

cplx dispersive_profile(const ReflectionCoefficient& rho, double x, double t) {
    if (t == 0.0) throw domain_error("dispersive_profile: t must be nonzero");
    const double xi = -x / (4.0 * t);
    const int eta = t > 0.0 ? 1 : -1;
    if (std::abs(xi) < 1e-8) {
        // removable limit kappa(xi)/xi -> eps |rho(0)|^2 / (2 pi)
        const double amp2 = rho.epsilon * std::norm(interp_cubic(rho.grid, 0.0)) / (2.0 * kPi);
        if (amp2 <= 0.0) return 0.0;
        const double xi_eval = xi >= 0.0 ? 1e-8 : -1e-8;
        const PCAmplitude A = pc_amplitude(xi_eval, eta, rho, t);
        const double ph = std::arg(A.A12);
        return std::sqrt(amp2) * std::exp(cplx(0.0, ph)) / std::sqrt(2.0 * std::abs(t));
    }
    if (kappa(xi, rho) == 0.0) return 0.0;
    const PCAmplitude A = pc_amplitude(xi, eta, rho, t);
    return A.A12 / std::sqrt(2.0 * std::abs(t));
}

cplx gauge_factor_F(double xi, double t, int eta, const ReflectionCoefficient& rho) {
    const double k0 = kappa(xi, rho);
    const cplx p = std::exp(cplx(0.0, eta * kPi / 4.0)) * std::sqrt(std::abs(8.0 * t * xi * xi));
    const cplx nu(0.0, eta * k0);
    const cplx d = parabolic_cylinder_D(nu, p);
    const cplx base = std::exp(p * p / 4.0) * std::pow(p, -nu) * d;
    return 1.0 / (base * base);
}

cplx gauge_factor_G(double xi, double t, int eta, const ReflectionCoefficient& rho) {
    const double k0 = kappa(xi, rho);
    const cplx p = std::exp(cplx(0.0, eta * kPi / 4.0)) * std::sqrt(std::abs(8.0 * t * xi * xi));
    const cplx nu(0.0, eta * k0);
    return p * parabolic_cylinder_D(nu - 1.0, p) / parabolic_cylinder_D(nu, p);
}

namespace {

// Sampled N-soliton profile used for the cumulative gauge integrals.
struct SolProfile {
    ComplexGrid1D q;       // q_sol on [lo, hi]
    std::vector<cplx> cum; // cumulative int |q_sol|^2 from lo
};

SolProfile soliton_profile(const DiscreteSpectrum& D, int eps, double t, double lo, double hi) {
    SolProfile out;
    const int n = std::max(1024, static_cast<int>((hi - lo) / 0.03));
    out.q = ComplexGrid1D(lo, hi, n);
    for (int i = 0; i < n; ++i)
        out.q.values[static_cast<size_t>(i)] = q_nsoliton(D, eps, out.q.node(i), t);
    ComplexGrid1D mag2(lo, hi, n);
    for (int i = 0; i < n; ++i)
        mag2.values[static_cast<size_t>(i)] = std::norm(out.q.values[static_cast<size_t>(i)]);
    out.cum = cumulative_trapezoid(mag2);
    return out;
}

double profile_extent(const DiscreteSpectrum& D, double t) {
    double m = 0.0;
    for (const EigenPair& p : D.pairs) {
        const double tau = p.lambda.imag();
        const double center = std::log(std::abs(p.lambda) * std::norm(p.C) /
                                       (4.0 * tau * tau)) /
                                  (4.0 * tau) -
                              4.0 * p.lambda.real() * t;
        m = std::max(m, std::abs(center) + 30.0 / (4.0 * tau));
    }
    return m;
}

} // namespace

cplx u_asymptotic(const ScatteringData& S, const ConeWindow& window, double x, double t, double M) {
    if (!(std::abs(t) >= 1.0)) throw domain_error("u_asymptotic: requires |t| >= 1");
    const double xi = -x / (4.0 * t);
    const int eta = t > 0.0 ? 1 : -1;
    const double eps = static_cast<double>(S.epsilon);
    const DiscreteSpectrum D_I =
        reduce_window(S.discrete, S.rho, window.I_lo(), window.I_hi(), xi, eta);

    // alpha_0: solitons fully passed (above the critical point, outside I)
    // plus the radiation mass on I^+
    double arg_sum = 0.0;
    for (const EigenPair& p : S.discrete.pairs) {
        const double re = p.lambda.real();
        const bool in_I = re >= window.I_lo() && re <= window.I_hi();
        if (!in_I && eta * (re - xi) > 0.0) arg_sum += std::arg(p.lambda);
    }
    const std::vector<double> g = log_constraint(S.rho);
    double radiation = 0.0;
    {
        const int n = S.rho.grid.n;
        for (int i = 0; i < n - 1; ++i) {
            double a = S.rho.grid.node(i), b = S.rho.grid.node(i + 1);
            double ga = g[static_cast<size_t>(i)], gb = g[static_cast<size_t>(i + 1)];
            // clip to I^+ = {eta lam > eta xi}
            if (eta > 0) {
                if (b <= xi) continue;
                if (a < xi) {
                    ga = gb - (gb - ga) * (b - xi) / (b - a);
                    a = xi;
                }
            } else {
                if (a >= xi) continue;
                if (b > xi) {
                    gb = ga + (gb - ga) * (xi - a) / (b - a);
                    b = xi;
                }
            }
            auto over = [&](double z, double gz) {
                return std::abs(z) < 1e-12
                           ? -eps * std::norm(interp_cubic(S.rho.grid, 0.0))
                           : gz / z;
            };
            radiation += 0.5 * (over(a, ga) + over(b, gb)) * (b - a);
        }
    }
    const cplx phase_alpha0 = std::exp(cplx(0.0, -4.0 * arg_sum - radiation / kPi));

    // soliton profile and gauge integrals
    const double ext = std::max(profile_extent(D_I, t), std::abs(x)) + 10.0;
    const SolProfile prof = soliton_profile(D_I, S.epsilon, t, -ext, ext);
    auto cum_at = [&](double xx) -> double {
        const double hh = prof.q.h();
        const double tpos = (xx - prof.q.x_min) / hh;
        const int i = std::max(0, std::min(prof.q.n - 2, static_cast<int>(std::floor(tpos))));
        const double u = tpos - i;
        return (1.0 - u) * prof.cum[static_cast<size_t>(i)].real() +
               u * prof.cum[static_cast<size_t>(i) + 1].real();
    };
    const cplx q_sol = interp_cubic(prof.q, x);
    const cplx phi_sol = std::exp(cplx(0.0, eps * cum_at(x)));
    const cplx u_sol = q_sol * phi_sol;

    // dispersive pieces
    cplx gg = 0.0;
    const bool have_rho = S.rho.grid.max_abs() > 0.0 && kappa(xi, S.rho) != 0.0;
    PCAmplitude A{};
    cplx n11 = 1.0, n12 = 0.0;
    if (have_rho) {
        A = pc_amplitude(xi, eta, S.rho, t);
        if (!D_I.empty()) {
            const Mat2 nsol = nsol_matrix(D_I, S.epsilon, xi, eta, x, t, cplx(xi, 0.0));
            n11 = nsol[0][0];
            n12 = nsol[0][1];
        }
        const cplx f = (A.A12 * n11 * n11 + eps * xi * std::conj(A.A12) * n12 * n12) /
                       std::sqrt(2.0);
        gg = phi_sol * (f + q_sol * cplx(0.0, eps) * std::sqrt(2.0) *
                                std::real(A.A12 * n11 * std::conj(n12)));
    }

    const bool outer = std::abs(xi) >= M * std::pow(std::abs(t), -1.0 / 8.0);
    if (outer || !have_rho)
        return phase_alpha0 * (u_sol + gg / std::sqrt(std::abs(t)));

    // inner regime: parabolic-cylinder corrections
    const cplx F = gauge_factor_F(xi, t, eta, S.rho);
    const cplx G = gauge_factor_G(xi, t, eta, S.rho);
    // int_x^inf u_sol
    cplx tail = 0.0;
    {
        const double hh = prof.q.h();
        const int i0 = std::max(0, static_cast<int>(std::ceil((x - prof.q.x_min) / hh)));
        for (int i = i0; i < prof.q.n - 1; ++i) {
            const cplx u0 = prof.q.values[static_cast<size_t>(i)] *
                            std::exp(cplx(0.0, eps * prof.cum[static_cast<size_t>(i)].real()));
            const cplx u1 = prof.q.values[static_cast<size_t>(i) + 1] *
                            std::exp(cplx(0.0, eps * prof.cum[static_cast<size_t>(i) + 1].real()));
            tail += 0.5 * (u0 + u1) * hh;
        }
    }
    double all_args = 0.0;
    for (const EigenPair& p : S.discrete.pairs) all_args += std::arg(p.lambda);
    const cplx gt = gg + phi_sol * q_sol * cplx(0.0, eps) / std::sqrt(2.0) * std::conj(A.A12) *
                             (1.0 - G) * std::exp(cplx(0.0, 4.0 * all_args)) * tail;
    return F * phase_alpha0 * (u_sol + gt / std::sqrt(std::abs(t)));
}

} // namespace dnls
