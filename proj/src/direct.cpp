#include "dnls/direct.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "dnls/threading.hpp"

namespace dnls {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kOverflowGuard = 1e12;

// Potential samples with precomputed midpoints for the RK4 stages.
struct Sampled {
    std::vector<cplx> q;    // at nodes
    std::vector<cplx> qmid; // at node + h/2
    double x_min, h;
    int n, eps;

    explicit Sampled(const Potential& p)
        : x_min(p.grid.x_min), h(p.grid.h()), n(p.grid.n), eps(p.epsilon) {
        q = p.grid.values;
        qmid.resize(static_cast<size_t>(n - 1));
        for (int i = 0; i < n - 1; ++i)
            qmid[static_cast<size_t>(i)] = interp_cubic(p.grid, p.grid.node(i) + 0.5 * h);
    }
};

struct Pair {
    cplx a, b;
};

// One RK4 step of the phase-extracted first-column system
//   n' = lam q E w - (i eps/2)|q|^2 n,   w' = eps conj(q) E^{-1} n + (i eps/2)|q|^2 w
// where m = E(d) w, E(d) = exp(2 i lam d), d measured from the step start.
// dir = +-1 selects the integration direction; q0/qm/q1 are the potential at
// the start, middle and end of the step.
Pair step_col1(const Sampled& s, cplx lam, Pair y, cplx q0, cplx qm, cplx q1, double hstep,
               cplx Eh2, cplx Eh) {
    const double eps = static_cast<double>(s.eps);
    auto f = [&](Pair p, cplx qv, cplx E) -> Pair {
        const double a2 = std::norm(qv);
        const cplx phase = cplx(0.0, 0.5 * eps * a2);
        return {lam * qv * E * p.b - phase * p.a,
                eps * std::conj(qv) * p.a / E + phase * p.b};
    };
    const Pair k1 = f(y, q0, 1.0);
    const Pair y2{y.a + 0.5 * hstep * k1.a, y.b + 0.5 * hstep * k1.b};
    const Pair k2 = f(y2, qm, Eh2);
    const Pair y3{y.a + 0.5 * hstep * k2.a, y.b + 0.5 * hstep * k2.b};
    const Pair k3 = f(y3, qm, Eh2);
    const Pair y4{y.a + hstep * k3.a, y.b + hstep * k3.b};
    const Pair k4 = f(y4, q1, Eh);
    Pair out{y.a + hstep / 6.0 * (k1.a + 2.0 * k2.a + 2.0 * k3.a + k4.a),
             y.b + hstep / 6.0 * (k1.b + 2.0 * k2.b + 2.0 * k3.b + k4.b)};
    out.b *= Eh; // fold the phase back: m(end) = E(h) w(end)
    return out;
}

// Matching step for the second column (p = n12, r = n22), p = E^{-1} v.
Pair step_col2(const Sampled& s, cplx lam, Pair y, cplx q0, cplx qm, cplx q1, double hstep,
               cplx Eh2, cplx Eh) {
    const double eps = static_cast<double>(s.eps);
    auto f = [&](Pair p, cplx qv, cplx E) -> Pair {
        const double a2 = std::norm(qv);
        const cplx phase = cplx(0.0, 0.5 * eps * a2);
        return {qv * p.b * E - phase * p.a,
                eps * lam * std::conj(qv) * p.a / E + phase * p.b};
    };
    const Pair k1 = f(y, q0, 1.0);
    const Pair y2{y.a + 0.5 * hstep * k1.a, y.b + 0.5 * hstep * k1.b};
    const Pair k2 = f(y2, qm, Eh2);
    const Pair y3{y.a + 0.5 * hstep * k2.a, y.b + 0.5 * hstep * k2.b};
    const Pair k3 = f(y3, qm, Eh2);
    const Pair y4{y.a + hstep * k3.a, y.b + hstep * k3.b};
    const Pair k4 = f(y4, q1, Eh);
    Pair out{y.a + hstep / 6.0 * (k1.a + 2.0 * k2.a + 2.0 * k3.a + k4.a),
             y.b + hstep / 6.0 * (k1.b + 2.0 * k2.b + 2.0 * k3.b + k4.b)};
    out.a /= Eh;
    return out;
}

void guard(const Pair& y, const char* what) {
    if (std::abs(y.a) > kOverflowGuard || std::abs(y.b) > kOverflowGuard)
        throw overflow_error(std::string(what) + ": Jost column exceeded 1e12");
}

// Integrate the regularized first column (n11, m = n21/lambda) of N^plus
// from x_max down to the target node, or of N^minus from x_min up.
// Returns values at every node in [target, edge] stored at node indices.
std::vector<Pair> integrate_col1(const Sampled& s, cplx lam, JostSide side, int target) {
    std::vector<Pair> vals(static_cast<size_t>(s.n));
    if (side == JostSide::plus) {
        const double hstep = -s.h;
        const cplx Eh = std::exp(cplx(0.0, 2.0) * lam * hstep);
        const cplx Eh2 = std::exp(cplx(0.0, 1.0) * lam * hstep);
        Pair y{1.0, 0.0};
        vals[static_cast<size_t>(s.n - 1)] = y;
        for (int i = s.n - 1; i > target; --i) {
            y = step_col1(s, lam, y, s.q[static_cast<size_t>(i)],
                          s.qmid[static_cast<size_t>(i - 1)], s.q[static_cast<size_t>(i - 1)],
                          hstep, Eh2, Eh);
            guard(y, "jost+");
            vals[static_cast<size_t>(i - 1)] = y;
        }
    } else {
        const double hstep = s.h;
        const cplx Eh = std::exp(cplx(0.0, 2.0) * lam * hstep);
        const cplx Eh2 = std::exp(cplx(0.0, 1.0) * lam * hstep);
        Pair y{1.0, 0.0};
        vals[0] = y;
        for (int i = 0; i < target; ++i) {
            y = step_col1(s, lam, y, s.q[static_cast<size_t>(i)], s.qmid[static_cast<size_t>(i)],
                          s.q[static_cast<size_t>(i + 1)], hstep, Eh2, Eh);
            guard(y, "jost-");
            vals[static_cast<size_t>(i + 1)] = y;
        }
    }
    return vals;
}

// Second column (n12, n22) of N^plus integrated from x_max down to target.
Pair integrate_col2_plus(const Sampled& s, cplx lam, int target) {
    const double hstep = -s.h;
    const cplx Eh = std::exp(cplx(0.0, 2.0) * lam * hstep);
    const cplx Eh2 = std::exp(cplx(0.0, 1.0) * lam * hstep);
    Pair y{0.0, 1.0};
    for (int i = s.n - 1; i > target; --i) {
        y = step_col2(s, lam, y, s.q[static_cast<size_t>(i)], s.qmid[static_cast<size_t>(i - 1)],
                      s.q[static_cast<size_t>(i - 1)], hstep, Eh2, Eh);
        guard(y, "jost+ col2");
    }
    return y;
}

int center_node(const Sampled& s) {
    const int i = static_cast<int>(std::lround((0.0 - s.x_min) / s.h));
    return std::clamp(i, 1, s.n - 2);
}

} // namespace

JostSolution jost(const Potential& qpot, cplx lam, JostSide which) {
    const Sampled s(qpot);
    JostSolution sol;
    sol.which = which;
    sol.lambda = lam;
    sol.x_min = qpot.grid.x_min;
    sol.x_max = qpot.grid.x_max;
    sol.samples.assign(static_cast<size_t>(s.n), {cplx(1.0), 0.0, 0.0, cplx(1.0)});

    const int target = (which == JostSide::plus) ? 0 : s.n - 1;
    const std::vector<Pair> c1 = integrate_col1(s, lam, which, target);

    // second column, integrated alongside over the same range
    std::vector<Pair> c2(static_cast<size_t>(s.n));
    if (which == JostSide::plus) {
        const double hstep = -s.h;
        const cplx Eh = std::exp(cplx(0.0, 2.0) * lam * hstep);
        const cplx Eh2 = std::exp(cplx(0.0, 1.0) * lam * hstep);
        Pair y{0.0, 1.0};
        c2[static_cast<size_t>(s.n - 1)] = y;
        for (int i = s.n - 1; i > 0; --i) {
            y = step_col2(s, lam, y, s.q[static_cast<size_t>(i)],
                          s.qmid[static_cast<size_t>(i - 1)], s.q[static_cast<size_t>(i - 1)],
                          hstep, Eh2, Eh);
            guard(y, "jost col2");
            c2[static_cast<size_t>(i - 1)] = y;
        }
    } else {
        const double hstep = s.h;
        const cplx Eh = std::exp(cplx(0.0, 2.0) * lam * hstep);
        const cplx Eh2 = std::exp(cplx(0.0, 1.0) * lam * hstep);
        Pair y{0.0, 1.0};
        c2[0] = y;
        for (int i = 0; i < s.n - 1; ++i) {
            y = step_col2(s, lam, y, s.q[static_cast<size_t>(i)], s.qmid[static_cast<size_t>(i)],
                          s.q[static_cast<size_t>(i + 1)], hstep, Eh2, Eh);
            guard(y, "jost col2");
            c2[static_cast<size_t>(i + 1)] = y;
        }
    }

    for (int i = 0; i < s.n; ++i) {
        const Pair& a = c1[static_cast<size_t>(i)];
        const Pair& b = c2[static_cast<size_t>(i)];
        sol.samples[static_cast<size_t>(i)] = {a.a, lam * a.b, b.a, b.b};
    }
    return sol;
}

Transition transition(const Potential& qpot, double lam_min, double lam_max, int n_lam) {
    const Sampled s(qpot);
    const int ic = center_node(s);
    const double xc = s.x_min + ic * s.h;
    Transition tr{ComplexGrid1D(lam_min, lam_max, n_lam), ComplexGrid1D(lam_min, lam_max, n_lam)};
    const double eps = static_cast<double>(s.eps);

    parallel_for(static_cast<size_t>(n_lam), [&](size_t i) {
        const double lam = tr.alpha.node(static_cast<int>(i));
        const Pair p = integrate_col1(s, lam, JostSide::plus, ic)[static_cast<size_t>(ic)];
        const Pair m = integrate_col1(s, lam, JostSide::minus, ic)[static_cast<size_t>(ic)];
        // Wronskian forms regular at lambda = 0 (m holds n21/lambda)
        const cplx alpha = p.a * std::conj(m.a) - eps * lam * p.b * std::conj(m.b);
        const cplx beta = eps * std::exp(cplx(0.0, 2.0 * lam * xc)) *
                          std::conj(m.a * p.b - m.b * p.a);
        tr.alpha.values[i] = alpha;
        tr.beta.values[i] = beta;
    });
    return tr;
}

ReflectionCoefficient reflection(const Potential& q, double lam_min, double lam_max, int n_lam) {
    const Transition tr = transition(q, lam_min, lam_max, n_lam);
    ComplexGrid1D rho(lam_min, lam_max, n_lam);
    for (int i = 0; i < n_lam; ++i) {
        const cplx a = tr.alpha.values[static_cast<size_t>(i)];
        if (std::abs(a) < 1e-6) {
            char buf[128];
            std::snprintf(buf, sizeof(buf),
                          "reflection: |alpha| = %.3e at lambda = %.6f (spectral singularity)",
                          std::abs(a), rho.node(i));
            throw spectral_singularity_error(buf);
        }
        rho.values[static_cast<size_t>(i)] = tr.beta.values[static_cast<size_t>(i)] / a;
    }
    return ReflectionCoefficient(std::move(rho), q.epsilon);
}

cplx alpha_lower(const Potential& qpot, cplx lam) {
    if (lam.imag() > 1e-12) throw domain_error("alpha_lower: requires Im lam <= 0");
    const Sampled s(qpot);
    return integrate_col1(s, lam, JostSide::plus, 0)[0].a;
}

cplx alpha_breve_upper(const Potential& q, cplx lam) {
    if (lam.imag() < -1e-12) throw domain_error("alpha_breve_upper: requires Im lam >= 0");
    return std::conj(alpha_lower(q, std::conj(lam)));
}

SearchRegion default_search_region() { return SearchRegion(-8.0, 8.0, -8.0, -0.05); }

std::vector<cplx> eigenvalues(const Potential& q, const SearchRegion& region) {
    if (!(region.im_max < 0.0))
        throw domain_error("eigenvalues: search region must lie in Im lam < 0");
    const std::vector<cplx> zeros =
        find_zeros([&](cplx z) { return alpha_lower(q, z); }, region);
    std::vector<cplx> out;
    out.reserve(zeros.size());
    for (const cplx& z : zeros) {
        if (std::abs(z.imag()) < 0.05)
            std::fprintf(stderr,
                         "dnls: warning: eigenvalue at (%.6f,%.6f) is near the real axis\n",
                         z.real(), z.imag());
        out.push_back(std::conj(z));
    }
    std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
        const double ma = std::abs(a), mb = std::abs(b);
        return ma != mb ? ma < mb : std::arg(a) < std::arg(b);
    });
    return out;
}

cplx alpha_breve_deriv(const Potential& q, cplx lam_k, double d_lambda) {
    const double r = std::min({0.1, d_lambda / 4.0, 0.5 * lam_k.imag()});
    const int m = 64;
    cplx acc = 0.0;
    for (int j = 0; j < m; ++j) {
        const double th = 2.0 * kPi * j / m;
        const cplx e = std::exp(cplx(0.0, th));
        acc += alpha_breve_upper(q, lam_k + r * e) / e;
    }
    return acc / (static_cast<double>(m) * r);
}

DiscreteSpectrum norming_constants(const Potential& qpot, const std::vector<cplx>& eigen) {
    const Sampled s(qpot);
    const int ic = center_node(s);
    const double xc = s.x_min + ic * s.h;

    double d_lambda = 1e9;
    for (size_t k = 0; k < eigen.size(); ++k) {
        d_lambda = std::min(d_lambda, eigen[k].imag());
        for (size_t j = 0; j < k; ++j)
            d_lambda = std::min(d_lambda, std::abs(eigen[k] - eigen[j]));
    }

    std::vector<EigenPair> pairs(eigen.size());
    parallel_for(eigen.size(), [&](size_t k) {
        const cplx lam = eigen[k];
        // first column of N^minus and second column of N^plus are the two
        // C^+-analytic bound-state columns; proportional at an eigenvalue
        const Pair mcol = integrate_col1(s, lam, JostSide::minus, ic)[static_cast<size_t>(ic)];
        const Pair pcol = integrate_col2_plus(s, lam, ic);
        const cplx u0 = mcol.a, u1 = lam * mcol.b; // (n11^-, n21^-)
        const cplx v0 = pcol.a, v1 = pcol.b;       // (n12^+, n22^+)
        const cplx vv = std::conj(v0) * v0 + std::conj(v1) * v1;
        const cplx ratio = (std::conj(v0) * u0 + std::conj(v1) * u1) / vv; // least squares
        const double resid = std::abs(u0 - ratio * v0) + std::abs(u1 - ratio * v1);
        if (resid > 1e-4 * (std::abs(u0) + std::abs(u1)))
            throw error("norming_constants: bound-state proportionality residual exceeds 1e-4");

        const cplx da = alpha_breve_deriv(qpot, lam, d_lambda);
        if (std::abs(da) < 1e-8)
            throw error("norming_constants: |breve(alpha)'| below 1e-8 (degenerate zero)");

        // ratio = b * lam * exp(2 i lam xc) in the proportionality convention
        // whose pole residues reproduce the inverse problem; see README.
        const cplx C = ratio * std::exp(cplx(0.0, -2.0) * lam * xc) / (lam * da);
        pairs[k] = {lam, C};
    });
    return DiscreteSpectrum(std::move(pairs));
}

ScatteringData scatter(const Potential& q, double lam_min, double lam_max, int n_lam,
                       const SearchRegion& region) {
    ReflectionCoefficient rho = reflection(q, lam_min, lam_max, n_lam);
    const std::vector<cplx> eig = eigenvalues(q, region);
    DiscreteSpectrum disc = norming_constants(q, eig);
    return ScatteringData(std::move(rho), std::move(disc), q.epsilon);
}

ScatteringData scatter(const Potential& q) {
    return scatter(q, -40.0, 40.0, 4096, default_search_region());
}

} // namespace dnls
