#include "dnls/grid.hpp"

#include <algorithm>
#include <cmath>

namespace dnls {

double ComplexGrid1D::max_abs() const {
    double m = 0.0;
    for (const cplx& v : values) m = std::max(m, std::abs(v));
    return m;
}

namespace {

// Lagrange basis for nodes {-1,0,1,2}, argument u in [0,1].
void lagrange4(double u, double w[4]) {
    w[0] = -u * (u - 1.0) * (u - 2.0) / 6.0;
    w[1] = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
    w[2] = -(u + 1.0) * u * (u - 2.0) / 2.0;
    w[3] = (u + 1.0) * u * (u - 1.0) / 6.0;
}

void lagrange4_deriv(double u, double w[4]) {
    w[0] = -(3.0 * u * u - 6.0 * u + 2.0) / 6.0;
    w[1] = (3.0 * u * u - 4.0 * u - 1.0) / 2.0;
    w[2] = -(3.0 * u * u - 2.0 * u - 2.0) / 2.0;
    w[3] = (3.0 * u * u - 1.0) / 6.0;
}

// Locate the stencil for x: cell index k (interval [k, k+1]) clamped so the
// 4-point stencil {k-1..k+2} stays in range, plus local coordinate u.
bool locate(const ComplexGrid1D& g, double x, int& k, double& u) {
    const double h = g.h();
    const double t = (x - g.x_min) / h;
    if (t < -1e-9 || t > g.n - 1 + 1e-9) return false;
    k = static_cast<int>(std::floor(t));
    k = std::clamp(k, 1, g.n - 3);
    if (g.n < 4) k = std::clamp(k, 0, g.n - 2); // degenerate small grids
    u = t - k;
    return true;
}

} // namespace

cplx interp_cubic(const ComplexGrid1D& g, double x) {
    if (g.n < 4) { // linear fallback for tiny grids
        const double h = g.h();
        double t = (x - g.x_min) / h;
        if (t < -1e-9 || t > g.n - 1 + 1e-9) return 0.0;
        int k = std::clamp(static_cast<int>(std::floor(t)), 0, g.n - 2);
        double u = t - k;
        return (1.0 - u) * g.values[static_cast<size_t>(k)] + u * g.values[static_cast<size_t>(k) + 1];
    }
    int k;
    double u;
    if (!locate(g, x, k, u)) return 0.0;
    double w[4];
    lagrange4(u, w);
    cplx acc = 0.0;
    for (int j = 0; j < 4; ++j) acc += w[j] * g.values[static_cast<size_t>(k - 1 + j)];
    return acc;
}

cplx interp_cubic_deriv(const ComplexGrid1D& g, double x) {
    if (g.n < 4) {
        const double h = g.h();
        double t = (x - g.x_min) / h;
        if (t < -1e-9 || t > g.n - 1 + 1e-9) return 0.0;
        int k = std::clamp(static_cast<int>(std::floor(t)), 0, g.n - 2);
        return (g.values[static_cast<size_t>(k) + 1] - g.values[static_cast<size_t>(k)]) / h;
    }
    int k;
    double u;
    if (!locate(g, x, k, u)) return 0.0;
    double w[4];
    lagrange4_deriv(u, w);
    cplx acc = 0.0;
    for (int j = 0; j < 4; ++j) acc += w[j] * g.values[static_cast<size_t>(k - 1 + j)];
    return acc / g.h();
}

cplx trapezoid(const ComplexGrid1D& g) {
    cplx acc = 0.5 * (g.values.front() + g.values.back());
    for (int i = 1; i < g.n - 1; ++i) acc += g.values[static_cast<size_t>(i)];
    return acc * g.h();
}

std::vector<cplx> cumulative_trapezoid(const ComplexGrid1D& g) {
    std::vector<cplx> out(static_cast<size_t>(g.n));
    const double h = g.h();
    out[0] = 0.0;
    for (int i = 1; i < g.n; ++i)
        out[static_cast<size_t>(i)] =
            out[static_cast<size_t>(i) - 1] +
            0.5 * h * (g.values[static_cast<size_t>(i) - 1] + g.values[static_cast<size_t>(i)]);
    return out;
}

ComplexGrid1D resample(const ComplexGrid1D& g, double x_min, double x_max, int n) {
    ComplexGrid1D out(x_min, x_max, n);
    for (int i = 0; i < n; ++i) out.values[static_cast<size_t>(i)] = interp_cubic(g, out.node(i));
    return out;
}

} // namespace dnls
