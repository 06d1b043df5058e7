#include "dnls/solitons.hpp"

#include <cmath>
#include <functional>

#include <Eigen/Dense>

namespace dnls {

namespace {
constexpr double kPi = 3.14159265358979323846;

// exp(-2 i t theta(lam)) = exp(2 i lam x + 4 i lam^2 t)
cplx exp_minus_2it_theta(cplx lam, double x, double t) {
    return std::exp(cplx(0.0, 2.0) * lam * x + cplx(0.0, 4.0) * lam * lam * t);
}

double wrap_pi(double a) {
    a = std::fmod(a, 2.0 * kPi);
    if (a <= -kPi) a += 2.0 * kPi;
    if (a > kPi) a -= 2.0 * kPi;
    return a;
}

} // namespace

Partition partition(const DiscreteSpectrum& D, double xi, int eta) {
    Partition p;
    p.in_minus.resize(static_cast<size_t>(D.size()));
    for (int k = 0; k < D.size(); ++k) {
        const bool minus = eta * (D.pairs[static_cast<size_t>(k)].lambda.real() - xi) < 0.0;
        p.in_minus[static_cast<size_t>(k)] = minus;
        (minus ? p.minus : p.plus).push_back(k);
    }
    return p;
}

cplx blaschke(cplx lam, const DiscreteSpectrum& D, const Partition& part) {
    cplx b = 1.0;
    for (int k : part.minus) {
        const cplx lk = D.pairs[static_cast<size_t>(k)].lambda;
        const cplx den = lam - lk;
        if (std::abs(den) < 1e-14) throw domain_error("blaschke: evaluation at a pole");
        b *= (lam - std::conj(lk)) / den;
    }
    return b;
}

cplx blaschke_inv_deriv(int k, const DiscreteSpectrum& D, const Partition& part) {
    const cplx lk = D.pairs[static_cast<size_t>(k)].lambda;
    cplx d = 1.0 / (lk - std::conj(lk));
    for (int j : part.minus) {
        if (j == k) continue;
        const cplx lj = D.pairs[static_cast<size_t>(j)].lambda;
        d *= (lk - lj) / (lk - std::conj(lj));
    }
    return d;
}

namespace {

// Residue coefficients gamma_k of the renormalised outer model.
std::vector<cplx> residue_gammas(const DiscreteSpectrum& D, const Partition& part, double x,
                                 double t) {
    std::vector<cplx> g(static_cast<size_t>(D.size()));
    for (int k = 0; k < D.size(); ++k) {
        const EigenPair& p = D.pairs[static_cast<size_t>(k)];
        if (part.in_minus[static_cast<size_t>(k)]) {
            const cplx ibd = blaschke_inv_deriv(k, D, part);
            g[static_cast<size_t>(k)] =
                (1.0 / p.C) / (ibd * ibd) / exp_minus_2it_theta(p.lambda, x, t);
        } else {
            const cplx b = blaschke(p.lambda, D, part);
            g[static_cast<size_t>(k)] = p.C / (b * b) * exp_minus_2it_theta(p.lambda, x, t);
        }
    }
    return g;
}

// Pole of the first-column partial fraction for index k.
cplx col1_pole(const DiscreteSpectrum& D, const Partition& part, int k) {
    const cplx lk = D.pairs[static_cast<size_t>(k)].lambda;
    return part.in_minus[static_cast<size_t>(k)] ? std::conj(lk) : lk;
}
// Pole of the second column (the mirror point).
cplx col2_pole(const DiscreteSpectrum& D, const Partition& part, int k) {
    const cplx lk = D.pairs[static_cast<size_t>(k)].lambda;
    return part.in_minus[static_cast<size_t>(k)] ? lk : std::conj(lk);
}

} // namespace

SolitonCoefficients solve_system(const DiscreteSpectrum& D, int eps, double xi, int eta, double x,
                                 double t) {
    const int N = D.size();
    SolitonCoefficients out;
    out.part = partition(D, xi, eta);
    out.x = x;
    out.t = t;
    out.A.assign(static_cast<size_t>(N), cplx(0.0));
    out.P.assign(static_cast<size_t>(N), cplx(0.0));
    if (N == 0) return out;

    const std::vector<cplx> gam = residue_gammas(D, out.part, x, t);
    const double feps = static_cast<double>(eps);

    Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(2 * N, 2 * N);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(2 * N);

    for (int j = 0; j < N; ++j) {
        const cplx lj = D.pairs[static_cast<size_t>(j)].lambda;
        const bool jm = out.part.in_minus[static_cast<size_t>(j)];
        // A_j row: A_j - c_j sum_k P_k/(z_j - w_k) = 0
        const cplx cj = jm ? feps * std::conj(gam[static_cast<size_t>(j)])
                           : lj * gam[static_cast<size_t>(j)];
        const cplx zj = jm ? std::conj(lj) : lj;
        for (int k = 0; k < N; ++k)
            M(j, N + k) -= cj / (zj - col2_pole(D, out.part, k));
        // P_j row: P_j - d_j sum_k A_k/(y_j - v_k) = d_j
        const cplx dj = jm ? gam[static_cast<size_t>(j)] / lj
                           : feps * std::conj(gam[static_cast<size_t>(j)]);
        const cplx yj = jm ? lj : std::conj(lj);
        for (int k = 0; k < N; ++k)
            M(N + j, k) -= dj / (yj - col1_pole(D, out.part, k));
        rhs(N + j) = dj;
    }

    Eigen::FullPivLU<Eigen::MatrixXcd> lu(M);
    const double rc = lu.rcond();
    if (!(rc > 1e-12))
        throw error("solve_system: pole-coefficient system condition number exceeds 1e12");
    const Eigen::VectorXcd sol = lu.solve(rhs);

    const double rel = (M * sol - rhs).norm() / std::max(rhs.norm(), 1e-300);
    out.residual = rel;
    for (int k = 0; k < N; ++k) {
        out.A[static_cast<size_t>(k)] = sol(k);
        out.P[static_cast<size_t>(k)] = sol(N + k);
    }
    return out;
}

Mat2 nsol_matrix(const DiscreteSpectrum& D, int eps, double xi, int eta, double x, double t,
                 cplx lam) {
    const SolitonCoefficients c = solve_system(D, eps, xi, eta, x, t);
    const int N = D.size();
    const double feps = static_cast<double>(eps);
    cplx n11 = 1.0, n12 = 0.0, n21 = 0.0, n22 = 1.0;
    for (int k = 0; k < N; ++k) {
        const cplx A = c.A[static_cast<size_t>(k)];
        const cplx B = feps * std::conj(c.P[static_cast<size_t>(k)]); // B_k
        const cplx p1 = col1_pole(D, c.part, k);
        const cplx p2 = col2_pole(D, c.part, k);
        if (std::abs(lam - p1) < 1e-12 || std::abs(lam - p2) < 1e-12)
            throw domain_error("nsol_matrix: evaluation at a pole of the model");
        n21 += B; // constant lower-left term
        n11 += A / (lam - p1);
        n21 += p1 * B / (lam - p1);
        n12 += feps * std::conj(B) / (lam - p2);
        n22 += std::conj(A) / (lam - p2);
    }
    const Partition part = partition(D, xi, eta);
    const cplx b = blaschke(lam, D, part);
    return Mat2{{{n11 * b, n12 / b}, {n21 * b, n22 / b}}};
}

cplx q_nsoliton(const DiscreteSpectrum& D, int eps, double x, double t) {
    if (D.empty()) return 0.0;
    // pick the critical-point partition so residue coefficients stay bounded
    double xi;
    int eta;
    if (t != 0.0) {
        xi = -x / (4.0 * t);
        eta = t > 0.0 ? 1 : -1;
    } else {
        double lo = D.pairs.front().lambda.real(), hi = lo;
        for (const EigenPair& p : D.pairs) {
            lo = std::min(lo, p.lambda.real());
            hi = std::max(hi, p.lambda.real());
        }
        xi = (x >= 0.0) ? lo - 1.0 : hi + 1.0;
        eta = 1;
    }
    const SolitonCoefficients c = solve_system(D, eps, xi, eta, x, t);
    cplx sum = 0.0;
    for (const cplx& p : c.P) sum += p;
    return cplx(0.0, 2.0) * sum;
}

double one_soliton_mass_to(cplx lam, int eps, double y) {
    const double v = lam.imag();
    const double al = std::abs(lam);
    const double r = (al + eps * lam.real()) / (al - eps * lam.real());
    // int_{-inf}^{y} phi^2 = 4 [ atan(tanh(2 v y) sqrt(r)) + atan(sqrt(r)) ]
    const double sr = std::sqrt(r);
    return 4.0 * (std::atan(std::tanh(2.0 * v * y) * sr) + std::atan(sr));
}

cplx one_soliton(cplx lam, cplx C, int eps, double x, double t) {
    if (!(lam.imag() > 0.0)) throw domain_error("one_soliton: eigenvalue must lie in C^+");
    if (std::abs(C) == 0.0) throw domain_error("one_soliton: norming constant must be nonzero");
    const double u = lam.real(), v = lam.imag(), al = std::abs(lam);
    const double x0 = std::log(al * std::norm(C) / (4.0 * v * v)) / (4.0 * v);
    const double alpha0 = std::arg(lam) + std::arg(C) + kPi / 2.0;
    const double y = x - x0 + 4.0 * u * t;
    const double phi = std::sqrt(8.0 * v * v / (al * std::cosh(4.0 * v * y) - eps * u));
    const double mass = one_soliton_mass_to(lam, eps, y);
    const double phase =
        4.0 * al * al * t - 2.0 * u * (x + 4.0 * u * t) - 0.25 * eps * mass - alpha0;
    return phi * std::exp(cplx(0.0, phase));
}

DiscreteSpectrum reduce_window(const DiscreteSpectrum& D, const ReflectionCoefficient& rho,
                               double I_lo, double I_hi, double xi, int eta) {
    // log(1 - eps lam |rho|^2) on rho's grid
    const int n = rho.grid.n;
    std::vector<double> g(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) g[static_cast<size_t>(i)] = std::log(rho.constraint_at(i));

    // integral over the half line {eta lam <= eta xi} of g(lam) w(lam) dlam
    auto half_line_integral = [&](const std::function<cplx(double)>& w) -> cplx {
        const double h = rho.grid.h();
        cplx acc = 0.0;
        auto node_val = [&](int i) { return g[static_cast<size_t>(i)] * w(rho.grid.node(i)); };
        if (eta > 0) {
            // [x_min, min(xi, x_max)]
            const double hi = std::min(xi, rho.grid.x_max);
            if (hi <= rho.grid.x_min) return 0.0;
            const int last = std::min(n - 1, static_cast<int>(std::floor((hi - rho.grid.x_min) / h)));
            for (int i = 0; i < last; ++i) acc += 0.5 * (node_val(i) + node_val(i + 1)) * h;
            if (last < n - 1) {
                const double frac = hi - rho.grid.node(last);
                if (frac > 0.0) {
                    const double gmid =
                        g[static_cast<size_t>(last)] +
                        (g[static_cast<size_t>(last) + 1] - g[static_cast<size_t>(last)]) * frac / h;
                    acc += 0.5 * (node_val(last) + gmid * w(hi)) * frac;
                }
            }
        } else {
            const double lo = std::max(xi, rho.grid.x_min);
            if (lo >= rho.grid.x_max) return 0.0;
            const int first = std::max(0, static_cast<int>(std::ceil((lo - rho.grid.x_min) / h)));
            for (int i = first; i < n - 1; ++i) acc += 0.5 * (node_val(i) + node_val(i + 1)) * h;
            if (first > 0) {
                const double frac = rho.grid.node(first) - lo;
                if (frac > 0.0) {
                    const double gmid =
                        g[static_cast<size_t>(first)] -
                        (g[static_cast<size_t>(first)] - g[static_cast<size_t>(first) - 1]) * frac / h;
                    acc += 0.5 * (gmid * w(lo) + node_val(first)) * frac;
                }
            }
        }
        return acc;
    };

    std::vector<EigenPair> kept;
    for (const EigenPair& p : D.pairs) {
        const double re = p.lambda.real();
        if (re < I_lo || re > I_hi) continue;
        cplx Chat = p.C;
        for (const EigenPair& q : D.pairs) {
            const double rq = q.lambda.real();
            if (rq >= I_lo && rq <= I_hi) continue;       // kept solitons are not folded
            if (!(eta * (rq - xi) <= 0.0)) continue;      // only those below the critical point
            const cplx f = (p.lambda - q.lambda) / (p.lambda - std::conj(q.lambda));
            Chat *= f * f;
        }
        const cplx lamk = p.lambda;
        const cplx integral =
            half_line_integral([&](double lam) { return 1.0 / (lam - lamk); });
        Chat *= std::exp(cplx(0.0, 1.0 / kPi) * integral);
        kept.push_back({p.lambda, Chat});
    }
    return DiscreteSpectrum(std::move(kept));
}

PhaseShifts phase_shifts(const DiscreteSpectrum& D, const ReflectionCoefficient& rho, int k) {
    const int N = D.size();
    const EigenPair& pk = D.pairs[static_cast<size_t>(k)];
    const double etak = pk.lambda.real(), tauk = pk.lambda.imag();
    for (int j = 0; j < N; ++j)
        if (j != k &&
            std::abs(D.pairs[static_cast<size_t>(j)].lambda.real() - etak) < 1e-10)
            throw domain_error("phase_shifts: coinciding soliton speeds (non-generic)");

    const double base_x = std::log(std::abs(pk.lambda * pk.C * pk.C / (4.0 * tauk * tauk))) /
                          (4.0 * tauk);
    const double base_a = std::arg(cplx(0.0, 1.0) * pk.lambda * pk.C);

    double sum_log_p = 0.0, sum_log_m = 0.0, sum_arg_p = 0.0, sum_arg_m = 0.0;
    for (int j = 0; j < N; ++j) {
        if (j == k) continue;
        const cplx lj = D.pairs[static_cast<size_t>(j)].lambda;
        const cplx f = (pk.lambda - lj) / (pk.lambda - std::conj(lj));
        const double dl = std::log(std::abs(f)), da = std::arg(f);
        if (etak - lj.real() > 0.0) {
            sum_log_p += dl;
            sum_arg_p += da;
        } else {
            sum_log_m += dl;
            sum_arg_m += da;
        }
    }

    // integrals of g(s) = log(1 - eps s |rho(s)|^2) against the Poisson-type
    // kernels over (-inf, eta_k] and [eta_k, inf)
    const double h = rho.grid.h();
    double ip0 = 0.0, im0 = 0.0, ip1 = 0.0, im1 = 0.0;
    for (int i = 0; i < rho.grid.n - 1; ++i) {
        const double s0 = rho.grid.node(i), s1 = rho.grid.node(i + 1);
        auto g = [&](int idx) { return std::log(rho.constraint_at(idx)); };
        auto k0 = [&](double s) { return 1.0 / ((s - etak) * (s - etak) + tauk * tauk); };
        auto k1 = [&](double s) { return (s - etak) / ((s - etak) * (s - etak) + tauk * tauk); };
        auto add = [&](double a, double b, double ga, double gb, double& acc0, double& acc1) {
            const double w = b - a;
            if (w <= 0.0) return;
            acc0 += 0.5 * (ga * k0(a) + gb * k0(b)) * w;
            acc1 += 0.5 * (ga * k1(a) + gb * k1(b)) * w;
        };
        if (s1 <= etak) {
            add(s0, s1, g(i), g(i + 1), im0, im1);
        } else if (s0 >= etak) {
            add(s0, s1, g(i), g(i + 1), ip0, ip1);
        } else { // split the straddling cell at eta_k
            const double gm = g(i) + (g(i + 1) - g(i)) * (etak - s0) / h;
            add(s0, etak, g(i), gm, im0, im1);
            add(etak, s1, gm, g(i + 1), ip0, ip1);
        }
    }

    PhaseShifts out;
    out.x_plus = base_x + sum_log_p / (2.0 * tauk) - im0 / (2.0 * kPi);
    out.x_minus = base_x + sum_log_m / (2.0 * tauk) - ip0 / (2.0 * kPi);
    out.alpha_plus = wrap_pi(base_a + sum_arg_p + im1 / kPi);
    out.alpha_minus = wrap_pi(base_a + sum_arg_m + ip1 / kPi);
    return out;
}

} // namespace dnls
