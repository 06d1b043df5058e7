#include "dnls/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "dnls/cauchy.hpp"
#include "dnls/threading.hpp"

namespace dnls {

namespace {

constexpr double kPi = 3.14159265358979323846;

// One-sided pole structure of the algebraic-integral system. The right- and
// left-normalized problems share this shape with mirrored projector sides:
//   nu1 = 1 + C^{s1}(-eps s conj(rt(s)) nu2) + sum_j a_j nu2(p1_j)/(lam - p1_j)
//   nu2 =     C^{s2}(rt(s) nu1)              + sum_j b_j nu1(p2_j)/(lam - p2_j)
// plus the same equations evaluated at the opposite pole families.
struct BcSetup {
    ComplexGrid1D rho_x;  // x-dressed reflection samples rt
    std::vector<cplx> w1; // -eps * s * conj(rt(s)) at nodes
    Side s1, s2;
    std::vector<cplx> a, p1; // first-equation pole coefficients / locations
    std::vector<cplx> b, p2; // second-equation pole coefficients / locations
    int n = 0, N = 0;
};

BcSetup make_right(const ScatteringData& S, double x) {
    BcSetup s;
    s.n = S.rho.grid.n;
    s.N = S.discrete.size();
    s.s1 = Side::minus;
    s.s2 = Side::plus;
    s.rho_x = S.rho.grid;
    s.w1.resize(static_cast<size_t>(s.n));
    for (int i = 0; i < s.n; ++i) {
        const double lam = s.rho_x.node(i);
        s.rho_x.values[static_cast<size_t>(i)] *= std::exp(cplx(0.0, -2.0 * lam * x));
        s.w1[static_cast<size_t>(i)] =
            -static_cast<double>(S.epsilon) * lam * std::conj(s.rho_x.values[static_cast<size_t>(i)]);
    }
    for (const EigenPair& p : S.discrete.pairs) {
        const cplx cjx = p.C * std::exp(cplx(0.0, 2.0) * p.lambda * x);
        s.a.push_back(cjx * p.lambda);
        s.p1.push_back(p.lambda);
        s.b.push_back(static_cast<double>(S.epsilon) * std::conj(cjx));
        s.p2.push_back(std::conj(p.lambda));
    }
    return s;
}

BcSetup make_left(const ScatteringData& L, double x) {
    BcSetup s;
    s.n = L.rho.grid.n;
    s.N = L.discrete.size();
    s.s1 = Side::plus;
    s.s2 = Side::minus;
    s.rho_x = L.rho.grid;
    s.w1.resize(static_cast<size_t>(s.n));
    for (int i = 0; i < s.n; ++i) {
        const double lam = s.rho_x.node(i);
        s.rho_x.values[static_cast<size_t>(i)] *= std::exp(cplx(0.0, -2.0 * lam * x));
        s.w1[static_cast<size_t>(i)] =
            -static_cast<double>(L.epsilon) * lam * std::conj(s.rho_x.values[static_cast<size_t>(i)]);
    }
    for (const EigenPair& p : L.discrete.pairs) {
        const cplx cjx = p.C * std::exp(cplx(0.0, -2.0) * p.lambda * x);
        s.a.push_back(static_cast<double>(L.epsilon) * std::conj(cjx));
        s.p1.push_back(std::conj(p.lambda));
        s.b.push_back(cjx / p.lambda);
        s.p2.push_back(p.lambda);
    }
    return s;
}

cplx cau(const ComplexGrid1D& g, cplx z) {
    return (std::abs(z.imag()) < g.h()) ? cauchy_integral_refined(g, z) : cauchy_integral(g, z);
}

// Unknown layout: [nu1_dev(grid) | nu2(grid) | nu1_dev@p2 | nu2@p1], with
// nu1 = 1 + nu1_dev so the homogeneous part of the map is linear.
struct BcState {
    std::vector<cplx> u;
    int n, N;
    explicit BcState(int n_, int N_) : u(static_cast<size_t>(2 * n_ + 2 * N_), cplx(0.0)), n(n_), N(N_) {}
};

// Applies the affine update map; out = T(in).
void apply_T(const BcSetup& s, const std::vector<cplx>& in, std::vector<cplx>& out) {
    const int n = s.n, N = s.N;
    ComplexGrid1D g1(s.rho_x.x_min, s.rho_x.x_max, n);
    ComplexGrid1D g2(s.rho_x.x_min, s.rho_x.x_max, n);
    for (int i = 0; i < n; ++i) {
        const cplx nu1 = 1.0 + in[static_cast<size_t>(i)];
        const cplx nu2 = in[static_cast<size_t>(n + i)];
        g1.values[static_cast<size_t>(i)] = s.w1[static_cast<size_t>(i)] * nu2;
        g2.values[static_cast<size_t>(i)] = s.rho_x.values[static_cast<size_t>(i)] * nu1;
    }
    const ComplexGrid1D c1 = cauchy_projector(g1, s.s1);
    const ComplexGrid1D c2 = cauchy_projector(g2, s.s2);

    for (int i = 0; i < n; ++i) {
        const double lam = s.rho_x.node(i);
        cplx v1 = c1.values[static_cast<size_t>(i)];
        cplx v2 = c2.values[static_cast<size_t>(i)];
        for (int j = 0; j < N; ++j) {
            const cplx nu2p = in[static_cast<size_t>(2 * n + N + j)];
            const cplx nu1p = 1.0 + in[static_cast<size_t>(2 * n + j)];
            v1 += s.a[static_cast<size_t>(j)] * nu2p / (lam - s.p1[static_cast<size_t>(j)]);
            v2 += s.b[static_cast<size_t>(j)] * nu1p / (lam - s.p2[static_cast<size_t>(j)]);
        }
        out[static_cast<size_t>(i)] = v1;     // nu1_dev
        out[static_cast<size_t>(n + i)] = v2; // nu2
    }
    for (int i = 0; i < N; ++i) {
        cplx v1 = cau(g1, s.p2[static_cast<size_t>(i)]);
        cplx v2 = cau(g2, s.p1[static_cast<size_t>(i)]);
        for (int j = 0; j < N; ++j) {
            const cplx nu2p = in[static_cast<size_t>(2 * n + N + j)];
            const cplx nu1p = 1.0 + in[static_cast<size_t>(2 * n + j)];
            v1 += s.a[static_cast<size_t>(j)] * nu2p /
                  (s.p2[static_cast<size_t>(i)] - s.p1[static_cast<size_t>(j)]);
            v2 += s.b[static_cast<size_t>(j)] * nu1p /
                  (s.p1[static_cast<size_t>(i)] - s.p2[static_cast<size_t>(j)]);
        }
        out[static_cast<size_t>(2 * n + i)] = v1;
        out[static_cast<size_t>(2 * n + N + i)] = v2;
    }
}

double sup_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// Restarted GMRES on (I - K) u = c with K u = T(u) - T(0).
std::vector<cplx> gmres_solve(const BcSetup& s, const std::vector<cplx>& c, double tol,
                              int max_total) {
    const size_t dim = c.size();
    // c = T(0); apply (I - K) v = v - (T(v) - c)
    auto apply_A = [&](const std::vector<cplx>& v, std::vector<cplx>& out) {
        std::vector<cplx> tv(dim, cplx(0.0));
        apply_T(s, v, tv);
        out.resize(dim);
        for (size_t i = 0; i < dim; ++i) out[i] = v[i] - (tv[i] - c[i]);
    };
    auto dot = [&](const std::vector<cplx>& a, const std::vector<cplx>& b) {
        cplx acc = 0.0;
        for (size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
        return acc;
    };
    auto nrm = [&](const std::vector<cplx>& a) { return std::sqrt(std::abs(dot(a, a))); };

    std::vector<cplx> x(dim, cplx(0.0));
    const double cnorm = std::max(nrm(c), 1e-300);
    int used = 0;
    const int m = 60;
    while (used < max_total) {
        std::vector<cplx> r(dim), ax;
        apply_A(x, ax);
        for (size_t i = 0; i < dim; ++i) r[i] = c[i] - ax[i];
        double beta = nrm(r);
        if (beta / cnorm < tol) return x;
        std::vector<std::vector<cplx>> V;
        V.push_back(r);
        for (auto& v : V[0]) v /= beta;
        std::vector<std::vector<cplx>> H(static_cast<size_t>(m) + 1,
                                         std::vector<cplx>(static_cast<size_t>(m), cplx(0.0)));
        std::vector<cplx> cs(static_cast<size_t>(m)), sn(static_cast<size_t>(m));
        std::vector<cplx> g(static_cast<size_t>(m) + 1, cplx(0.0));
        g[0] = beta;
        int k = 0;
        for (; k < m && used < max_total; ++k, ++used) {
            std::vector<cplx> w;
            apply_A(V[static_cast<size_t>(k)], w);
            for (int i = 0; i <= k; ++i) {
                H[static_cast<size_t>(i)][static_cast<size_t>(k)] = dot(V[static_cast<size_t>(i)], w);
                for (size_t jj = 0; jj < dim; ++jj)
                    w[jj] -= H[static_cast<size_t>(i)][static_cast<size_t>(k)] * V[static_cast<size_t>(i)][jj];
            }
            const double hn = nrm(w);
            H[static_cast<size_t>(k) + 1][static_cast<size_t>(k)] = hn;
            if (hn > 1e-300) {
                for (auto& v : w) v /= hn;
                V.push_back(std::move(w));
            }
            // apply stored Givens rotations
            for (int i = 0; i < k; ++i) {
                const cplx t = cs[static_cast<size_t>(i)] * H[static_cast<size_t>(i)][static_cast<size_t>(k)] +
                               sn[static_cast<size_t>(i)] * H[static_cast<size_t>(i) + 1][static_cast<size_t>(k)];
                H[static_cast<size_t>(i) + 1][static_cast<size_t>(k)] =
                    -std::conj(sn[static_cast<size_t>(i)]) * H[static_cast<size_t>(i)][static_cast<size_t>(k)] +
                    std::conj(cs[static_cast<size_t>(i)]) * H[static_cast<size_t>(i) + 1][static_cast<size_t>(k)];
                H[static_cast<size_t>(i)][static_cast<size_t>(k)] = t;
            }
            // new rotation to kill the subdiagonal
            const cplx h0 = H[static_cast<size_t>(k)][static_cast<size_t>(k)];
            const cplx h1 = H[static_cast<size_t>(k) + 1][static_cast<size_t>(k)];
            const double denom = std::sqrt(std::norm(h0) + std::norm(h1));
            if (denom > 1e-300) {
                cs[static_cast<size_t>(k)] = std::conj(h0) / denom;
                sn[static_cast<size_t>(k)] = std::conj(h1) / denom;
                H[static_cast<size_t>(k)][static_cast<size_t>(k)] =
                    cs[static_cast<size_t>(k)] * h0 + sn[static_cast<size_t>(k)] * h1;
                H[static_cast<size_t>(k) + 1][static_cast<size_t>(k)] = 0.0;
                g[static_cast<size_t>(k) + 1] = -std::conj(sn[static_cast<size_t>(k)]) * g[static_cast<size_t>(k)];
                g[static_cast<size_t>(k)] = cs[static_cast<size_t>(k)] * g[static_cast<size_t>(k)];
            }
            if (std::abs(g[static_cast<size_t>(k) + 1]) / cnorm < tol) {
                ++k;
                break;
            }
        }
        // back substitution
        std::vector<cplx> y(static_cast<size_t>(k), cplx(0.0));
        for (int i = k - 1; i >= 0; --i) {
            cplx acc = g[static_cast<size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                acc -= H[static_cast<size_t>(i)][static_cast<size_t>(j)] * y[static_cast<size_t>(j)];
            y[static_cast<size_t>(i)] = acc / H[static_cast<size_t>(i)][static_cast<size_t>(i)];
        }
        for (int i = 0; i < k; ++i)
            for (size_t jj = 0; jj < dim; ++jj) x[jj] += y[static_cast<size_t>(i)] * V[static_cast<size_t>(i)][jj];
    }
    return x;
}

BealsCoifmanSolution solve_generic(const BcSetup& s, double x) {
    const int n = s.n, N = s.N;
    const size_t dim = static_cast<size_t>(2 * n + 2 * N);
    std::vector<cplx> u(dim, cplx(0.0)), next(dim, cplx(0.0));

    bool converged = false, used_krylov = false;
    int iters = 0;
    double prev = 1e300, first = -1.0;
    for (; iters < 500; ++iters) {
        apply_T(s, u, next);
        const double d = sup_diff(u, next);
        std::swap(u, next);
        if (d < 1e-10) {
            converged = true;
            break;
        }
        if (first < 0.0) first = d;
        // stagnation or divergence: hand over to the linear solver
        if (!std::isfinite(d) || d > 1e8) break;
        if (iters > 24 && (d > 0.98 * prev || d > 8.0 * first)) break;
        prev = d;
    }
    if (!converged) {
        used_krylov = true;
        std::vector<cplx> c(dim, cplx(0.0)), zero(dim, cplx(0.0));
        apply_T(s, zero, c);
        u = gmres_solve(s, c, 1e-11, 480);
    }
    apply_T(s, u, next);
    const double resid = sup_diff(u, next);
    if (resid > 1e-6)
        throw nonconvergence_error("bc_solve: residual " + std::to_string(resid) +
                                   " after fixed-point/Krylov solve");

    BealsCoifmanSolution out;
    out.x = x;
    out.residual = resid;
    out.iterations = iters;
    out.used_krylov = used_krylov;
    out.nu11 = ComplexGrid1D(s.rho_x.x_min, s.rho_x.x_max, n);
    out.nu12 = ComplexGrid1D(s.rho_x.x_min, s.rho_x.x_max, n);
    for (int i = 0; i < n; ++i) {
        out.nu11.values[static_cast<size_t>(i)] = 1.0 + u[static_cast<size_t>(i)];
        out.nu12.values[static_cast<size_t>(i)] = u[static_cast<size_t>(n + i)];
    }
    out.nu11_at_conj_poles.resize(static_cast<size_t>(N));
    out.nu12_at_poles.resize(static_cast<size_t>(N));
    for (int j = 0; j < N; ++j) {
        out.nu11_at_conj_poles[static_cast<size_t>(j)] = 1.0 + u[static_cast<size_t>(2 * n + j)];
        out.nu12_at_poles[static_cast<size_t>(j)] = u[static_cast<size_t>(2 * n + N + j)];
    }
    return out;
}

cplx reconstruct_generic(const BcSetup& s, const BealsCoifmanSolution& nu) {
    ComplexGrid1D integrand(s.rho_x.x_min, s.rho_x.x_max, s.n);
    for (int i = 0; i < s.n; ++i)
        integrand.values[static_cast<size_t>(i)] =
            s.rho_x.values[static_cast<size_t>(i)] * nu.nu11.values[static_cast<size_t>(i)];
    cplx q = -trapezoid(integrand) / kPi;
    for (int j = 0; j < s.N; ++j)
        q += cplx(0.0, 2.0) * s.b[static_cast<size_t>(j)] *
             nu.nu11_at_conj_poles[static_cast<size_t>(j)];
    return q;
}

} // namespace

BealsCoifmanSolution bc_solve_right(const ScatteringData& S, double x) {
    return solve_generic(make_right(S, x), x);
}

cplx reconstruct_right(const ScatteringData& S, double x) {
    const BcSetup s = make_right(S, x);
    return reconstruct_generic(s, solve_generic(s, x));
}

BealsCoifmanSolution bc_solve_left(const ScatteringData& L, double x) {
    return solve_generic(make_left(L, x), x);
}

cplx reconstruct_left(const ScatteringData& L, double x) {
    const BcSetup s = make_left(L, x);
    return reconstruct_generic(s, solve_generic(s, x));
}

ScatteringData left_data(const ScatteringData& S) {
    const int n = S.rho.grid.n;
    // g = log(1 - eps lam |rho|^2), real on the grid
    ComplexGrid1D g(S.rho.grid.x_min, S.rho.grid.x_max, n);
    double min_con = 1e300;
    for (int i = 0; i < n; ++i) {
        const double c = S.rho.constraint_at(i);
        min_con = std::min(min_con, c);
        g.values[static_cast<size_t>(i)] = std::log(c);
    }
    if (!(min_con > 1e-12))
        throw spectral_singularity_error("left_data: constraint collapsed on the real axis");

    // alpha on R through its boundary value from below; breve(alpha) = conj
    const ComplexGrid1D cg = cauchy_projector(g, Side::minus);
    ComplexGrid1D rho_l(S.rho.grid.x_min, S.rho.grid.x_max, n);
    for (int i = 0; i < n; ++i) {
        const double lam = rho_l.node(i);
        cplx blaschke = 1.0;
        for (const EigenPair& p : S.discrete.pairs)
            blaschke *= (lam - std::conj(p.lambda)) / (lam - p.lambda);
        const cplx alpha_r = blaschke * std::exp(cg.values[static_cast<size_t>(i)]);
        rho_l.values[static_cast<size_t>(i)] =
            S.rho.grid.values[static_cast<size_t>(i)] * alpha_r / std::conj(alpha_r);
    }

    std::vector<EigenPair> pairs;
    for (size_t k = 0; k < S.discrete.pairs.size(); ++k) {
        const EigenPair& p = S.discrete.pairs[k];
        cplx rest = 1.0;
        for (size_t j = 0; j < S.discrete.pairs.size(); ++j) {
            if (j == k) continue;
            const cplx lj = S.discrete.pairs[j].lambda;
            rest *= (p.lambda - lj) / (p.lambda - std::conj(lj));
        }
        const cplx da =
            rest / (p.lambda - std::conj(p.lambda)) * std::exp(-cauchy_integral(g, p.lambda));
        pairs.push_back({p.lambda, 1.0 / (p.C * da * da)});
    }
    return ScatteringData(ReflectionCoefficient(std::move(rho_l), S.epsilon),
                          DiscreteSpectrum(std::move(pairs)), S.epsilon);
}

ReflectionCoefficient prepare_solver_grid(const ReflectionCoefficient& rho, double x_extent,
                                          double t) {
    // trim the extent to where rho is supported
    const double mx = rho.grid.max_abs();
    double ext = 8.0;
    for (int i = 0; i < rho.grid.n; ++i)
        if (std::abs(rho.grid.values[static_cast<size_t>(i)]) > 1e-9 * (mx + 1e-300))
            ext = std::max(ext, std::abs(rho.grid.node(i)));
    ext = std::min(1.25 * ext, std::max(std::abs(rho.grid.x_min), rho.grid.x_max));
    // resolve the phase 2 lam x + 4 lam^2 t over the new grid
    const double rate = 2.0 * x_extent + 8.0 * ext * std::abs(t);
    const double h_req = 0.35 / std::max(rate, 1.0);
    int n = 4096;
    while (n < 2.0 * ext / h_req + 1.0 && n < (1 << 18)) n <<= 1;
    ComplexGrid1D fine(-ext, ext, n);
    for (int i = 0; i < n; ++i)
        fine.values[static_cast<size_t>(i)] = interp_cubic(rho.grid, fine.node(i));
    return ReflectionCoefficient(std::move(fine), rho.epsilon);
}

cplx reconstruct_point(const ScatteringData& flowed, const ScatteringData& left, double x) {
    return x >= 0.0 ? reconstruct_right(flowed, x) : reconstruct_left(left, x);
}

InvertResult invert(const ScatteringData& S, double t, double x_min, double x_max, int n_x) {
    const double x_extent = std::max(std::abs(x_min), std::abs(x_max));
    if (x_extent > 30.0)
        std::fprintf(stderr,
                     "dnls: warning: reconstruction window |x| = %.1f exceeds the trusted "
                     "oscillatory-quadrature range (30)\n",
                     x_extent);
    ScatteringData fine(prepare_solver_grid(S.rho, x_extent, t), S.discrete, S.epsilon);
    const ScatteringData flowed = flow(fine, t);
    const ScatteringData left = left_data(flowed);

    InvertResult out;
    out.q = Potential(ComplexGrid1D(x_min, x_max, n_x), S.epsilon);
    parallel_for(static_cast<size_t>(n_x), [&](size_t i) {
        const double x = out.q.grid.node(static_cast<int>(i));
        out.q.grid.values[i] = reconstruct_point(flowed, left, x);
    });

    // overlap consistency of the two normalizations on [-2, 2]
    const int n_ov = 9;
    std::vector<double> mism(n_ov, 0.0);
    parallel_for(static_cast<size_t>(n_ov), [&](size_t i) {
        const double x = -2.0 + 4.0 * static_cast<double>(i) / (n_ov - 1);
        const cplx qr = reconstruct_right(flowed, x);
        const cplx ql = reconstruct_left(left, x);
        mism[i] = std::abs(qr - ql);
    });
    out.overlap_mismatch = *std::max_element(mism.begin(), mism.end());
    if (out.overlap_mismatch > 1e-3)
        std::fprintf(stderr, "dnls: warning: left/right overlap mismatch %.3e exceeds 1e-3\n",
                     out.overlap_mismatch);
    return out;
}

} // namespace dnls
