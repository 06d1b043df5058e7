#include "dnls/cauchy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "dnls/fft.hpp"

namespace dnls {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Cubic pieces of the 4-point cardinal interpolation basis B on [-2,2],
// coefficients of 1, v, v^2, v^3 per unit cell.
struct Piece {
    double a, b;
    double c[4];
};
const Piece kPieces[4] = {
    {-2.0, -1.0, {1.0, 11.0 / 6.0, 1.0, 1.0 / 6.0}},
    {-1.0, 0.0, {1.0, 0.5, -1.0, -0.5}},
    {0.0, 1.0, {1.0, -0.5, -1.0, 0.5}},
    {1.0, 2.0, {1.0, -11.0 / 6.0, 1.0, -1.0 / 6.0}},
};

// w(m) = (1/pi) PV int B(v)/(v+m) dv, exact per cubic piece. The log|t|
// endpoint terms at t=0 cancel pairwise because B is continuous, so they
// are skipped.
double pv_kernel_weight(long m) {
    double acc = 0.0;
    const double dm = static_cast<double>(m);
    for (const Piece& p : kPieces) {
        const double d0 = p.c[0] - p.c[1] * dm + p.c[2] * dm * dm - p.c[3] * dm * dm * dm;
        const double d1 = p.c[1] - 2.0 * p.c[2] * dm + 3.0 * p.c[3] * dm * dm;
        const double d2 = p.c[2] - 3.0 * p.c[3] * dm;
        const double d3 = p.c[3];
        const double t1 = p.a + dm, t2 = p.b + dm;
        acc += d1 * (t2 - t1) + d2 * (t2 * t2 - t1 * t1) / 2.0 +
               d3 * (t2 * t2 * t2 - t1 * t1 * t1) / 3.0;
        if (t2 != 0.0) acc += d0 * std::log(std::abs(t2));
        if (t1 != 0.0) acc -= d0 * std::log(std::abs(t1));
    }
    return acc / kPi;
}

const std::vector<double>& kernel_for(int n) {
    static std::mutex mtx;
    static std::map<int, std::vector<double>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<double> k(static_cast<size_t>(2 * n - 1));
    for (long m = -(n - 1); m <= n - 1; ++m)
        k[static_cast<size_t>(m + n - 1)] = pv_kernel_weight(m);
    return cache.emplace(n, std::move(k)).first->second;
}

struct TailModel {
    bool has_right = false, has_left = false;
    double L_right = 0.0, L_left = 0.0;
    cplx a_right, b_right, c_right, a_left, b_left, c_left;
};

// Fit f ~ A/s + B/s^2 + C/s^3 through the three outermost samples of a side.
void fit_tail_side(double s0, double s1, double s2, cplx f0, cplx f1, cplx f2, cplx& A, cplx& B,
                   cplx& C) {
    double M[3][4 * 2]; // real 3x3 with two complex rhs columns folded as re/im
    const double ss[3] = {s0, s1, s2};
    const cplx ff[3] = {f0, f1, f2};
    cplx rhs[3];
    for (int i = 0; i < 3; ++i) {
        M[i][0] = 1.0 / ss[i];
        M[i][1] = 1.0 / (ss[i] * ss[i]);
        M[i][2] = 1.0 / (ss[i] * ss[i] * ss[i]);
        rhs[i] = ff[i];
    }
    // Gaussian elimination with partial pivoting
    int perm[3] = {0, 1, 2};
    for (int c = 0; c < 3; ++c) {
        int p = c;
        for (int r = c + 1; r < 3; ++r)
            if (std::abs(M[perm[r]][c]) > std::abs(M[perm[p]][c])) p = r;
        std::swap(perm[c], perm[p]);
        for (int r = c + 1; r < 3; ++r) {
            const double fq = M[perm[r]][c] / M[perm[c]][c];
            for (int cc = c; cc < 3; ++cc) M[perm[r]][cc] -= fq * M[perm[c]][cc];
            rhs[perm[r]] -= fq * rhs[perm[c]];
        }
    }
    cplx sol[3];
    for (int c = 2; c >= 0; --c) {
        cplx acc = rhs[perm[c]];
        for (int cc = c + 1; cc < 3; ++cc) acc -= M[perm[c]][cc] * sol[cc];
        sol[c] = acc / M[perm[c]][c];
    }
    A = sol[0];
    B = sol[1];
    C = sol[2];
}

TailModel fit_tails(const ComplexGrid1D& f) {
    TailModel t;
    const double h = f.h();
    const size_t n = f.values.size();
    // sample abscissae a few percent of L apart: close enough to stay in the
    // tail regime, separated enough to keep the 3x3 fit well conditioned
    if (f.x_max > 3.0 * h) {
        t.has_right = true;
        t.L_right = f.x_max;
        const double d = std::max(h, f.x_max / 40.0);
        fit_tail_side(f.x_max, f.x_max - d, f.x_max - 2.0 * d, f.values[n - 1],
                      interp_cubic(f, f.x_max - d), interp_cubic(f, f.x_max - 2.0 * d), t.a_right,
                      t.b_right, t.c_right);
    }
    if (-f.x_min > 3.0 * h) {
        t.has_left = true;
        t.L_left = -f.x_min;
        const double d = std::max(h, -f.x_min / 40.0);
        fit_tail_side(f.x_min, f.x_min + d, f.x_min + 2.0 * d, f.values[0],
                      interp_cubic(f, f.x_min + d), interp_cubic(f, f.x_min + 2.0 * d), t.a_left,
                      t.b_left, t.c_left);
    }
    return t;
}

cplx log1p_over(cplx w) {
    // log(1+w)/w, stable near 0
    if (std::abs(w) < 1e-4) return 1.0 - w / 2.0 + w * w / 3.0 - w * w * w / 4.0;
    return std::log(1.0 + w) / w;
}

cplx l_minus_one_over(cplx w) {
    // g(w) = (log1p(w)/w - 1)/w, stable near 0
    if (std::abs(w) < 1e-4) return -0.5 + w / 3.0 - w * w / 4.0 + w * w * w / 5.0;
    return (log1p_over(w) - 1.0) / w;
}

cplx m_third(cplx w) {
    // (g(w) + 1/2)/w, stable near 0
    if (std::abs(w) < 1e-4) return 1.0 / 3.0 - w / 4.0 + w * w / 5.0 - w * w * w / 6.0;
    return (l_minus_one_over(w) + 0.5) / w;
}

// (1/2 pi i) * integral of the tail model over |s| beyond the grid:
//   int_L^inf ds/(s(s-z))      = l(-z/L)/L
//   int_L^inf ds/(s^2(s-z))    = -g(-z/L)/L^2
//   int_-inf^-L ds/(s(s-z))    = l(z/L)/L
//   int_-inf^-L ds/(s^2(s-z))  = g(z/L)/L^2
// with l = log1p(w)/w and g = (l-1)/w.
cplx tail_correction(const TailModel& t, cplx z) {
    cplx acc = 0.0;
    if (t.has_right) {
        const double L = t.L_right;
        const cplx w = -z / L;
        acc += t.a_right * log1p_over(w) / L - t.b_right * l_minus_one_over(w) / (L * L) +
               t.c_right * m_third(w) / (L * L * L);
    }
    if (t.has_left) {
        const double L = t.L_left;
        const cplx w = z / L;
        acc += t.a_left * log1p_over(w) / L + t.b_left * l_minus_one_over(w) / (L * L) +
               t.c_left * m_third(w) / (L * L * L);
    }
    return acc * cplx(0.0, -1.0 / (2.0 * kPi)); // 1/(2 pi i)
}

} // namespace

std::vector<cplx> hilbert_transform(const ComplexGrid1D& f) {
    const auto& kernel = kernel_for(f.n);
    std::vector<cplx> hf = fft_correlate(f.values, kernel);
    // tail model contributes a PV-free integral, same for both projector sides
    const TailModel t = fit_tails(f);
    if (t.has_left || t.has_right) {
        for (int j = 1; j < f.n - 1; ++j) {
            // convert the 1/(2 pi i)-normalised tail to Hilbert normalisation (1/pi)
            hf[static_cast<size_t>(j)] +=
                tail_correction(t, cplx(f.node(j), 0.0)) * cplx(0.0, 2.0);
        }
    }
    return hf;
}

ComplexGrid1D cauchy_projector(const ComplexGrid1D& f, Side side) {
    const std::vector<cplx> hf = hilbert_transform(f);
    ComplexGrid1D out(f.x_min, f.x_max, f.n);
    const double sgn = (side == Side::plus) ? 0.5 : -0.5;
    const cplx inv2i = cplx(0.0, -0.5); // 1/(2i)
    for (int j = 0; j < f.n; ++j)
        out.values[static_cast<size_t>(j)] =
            sgn * f.values[static_cast<size_t>(j)] + inv2i * hf[static_cast<size_t>(j)];
    return out;
}

cplx cauchy_integral(const ComplexGrid1D& f, cplx z) {
    if (std::abs(z.imag()) < f.h() / 10.0)
        throw contour_proximity_error("cauchy_integral: z too close to the real contour");
    cplx acc = 0.0;
    for (int j = 0; j < f.n; ++j) {
        const cplx term = f.values[static_cast<size_t>(j)] / (f.node(j) - z);
        acc += (j == 0 || j == f.n - 1) ? 0.5 * term : term;
    }
    acc *= f.h() * cplx(0.0, -1.0 / (2.0 * kPi));
    return acc + tail_correction(fit_tails(f), z);
}

cplx cauchy_integral_refined(const ComplexGrid1D& f, cplx z) {
    const double h = f.h();
    const double iy = z.imag();
    if (std::abs(iy) >= h) return cauchy_integral(f, z);
    if (std::abs(iy) < 1e-7)
        throw contour_proximity_error("cauchy_integral_refined: |Im z| below 1e-7");
    const double x0 = z.real();
    if (x0 < f.x_min - 10.0 * h || x0 > f.x_max + 10.0 * h) return cauchy_integral(f, z);

    // whole-cell window around x0
    const double W = std::min(std::max(64.0 * h, 1.0), 0.45 * (f.x_max - f.x_min));
    const int i_lo = std::max(0, static_cast<int>(std::floor((x0 - W - f.x_min) / h)));
    const int i_hi = std::min(f.n - 1, static_cast<int>(std::ceil((x0 + W - f.x_min) / h)));
    const double lo = f.node(i_lo), hi = f.node(i_hi);

    // coarse trapezoid over the cells outside the window
    cplx acc = 0.0;
    for (int i = 0; i < f.n - 1; ++i) {
        if (i >= i_lo && i < i_hi) continue;
        acc += 0.5 * h *
               (f.values[static_cast<size_t>(i)] / (f.node(i) - z) +
                f.values[static_cast<size_t>(i) + 1] / (f.node(i + 1) - z));
    }

    // window: singularity subtraction f(s) -> f(s) - f(x0), log term exact
    const cplx f0 = interp_cubic(f, x0);
    auto sub = [&](double s) { return (interp_cubic(f, s) - f0) / (s - z); };
    const double wf = std::min(W, std::max(1000.0 * std::abs(iy), 4.0 * h));
    const double flo = std::max(lo, x0 - wf), fhi = std::min(hi, x0 + wf);
    auto panel = [&](double a, double b, double spacing) {
        if (b <= a) return cplx(0.0);
        const int m = std::max(8, static_cast<int>(std::ceil((b - a) / spacing)));
        const double step = (b - a) / m;
        cplx p = 0.5 * (sub(a) + sub(b));
        for (int j = 1; j < m; ++j) p += sub(a + j * step);
        return p * step;
    };
    acc += panel(lo, flo, h / 8.0);
    acc += panel(flo, fhi, std::max(std::abs(iy) / 8.0, (fhi - flo) / 400000.0));
    acc += panel(fhi, hi, h / 8.0);
    acc += f0 * (std::log(hi - z) - std::log(lo - z));

    return acc * cplx(0.0, -1.0 / (2.0 * kPi)) + tail_correction(fit_tails(f), z);
}

} // namespace dnls
