#pragma once

#include <complex>
#include <vector>

#include "dnls/errors.hpp"

namespace dnls {

using cplx = std::complex<double>;

// Uniform 1-D sampling of a complex-valued function, endpoints included.
struct ComplexGrid1D {
    double x_min = 0.0;
    double x_max = 1.0;
    int n = 2;
    std::vector<cplx> values;

    ComplexGrid1D() : values(2, cplx(0.0)) {}

    ComplexGrid1D(double xmin, double xmax, int count)
        : x_min(xmin), x_max(xmax), n(count), values(static_cast<size_t>(count), cplx(0.0)) {
        check_shape();
    }

    ComplexGrid1D(double xmin, double xmax, std::vector<cplx> vals)
        : x_min(xmin), x_max(xmax), n(static_cast<int>(vals.size())), values(std::move(vals)) {
        check_shape();
    }

    double h() const { return (x_max - x_min) / (n - 1); }
    double node(int i) const { return x_min + i * h(); }

    // Largest |value| over the grid.
    double max_abs() const;

    void check_shape() const {
        if (!(x_min < x_max)) throw invalid_data_error("grid: x_min must be < x_max");
        if (n < 2) throw invalid_data_error("grid: need at least 2 samples");
        if (static_cast<int>(values.size()) != n)
            throw invalid_data_error("grid: values length mismatch");
    }
};

// Sample a callable onto a fresh grid.
template <typename F>
ComplexGrid1D sample_grid(double x_min, double x_max, int n, F&& f) {
    ComplexGrid1D g(x_min, x_max, n);
    for (int i = 0; i < n; ++i) g.values[static_cast<size_t>(i)] = f(g.node(i));
    return g;
}

// 4-point (piecewise-cubic Lagrange) interpolation on the uniform grid.
// Points outside [x_min, x_max] evaluate to zero; the two boundary cells
// fall back to the one-sided cubic stencil.
cplx interp_cubic(const ComplexGrid1D& g, double x);

// Derivative of the interpolant above.
cplx interp_cubic_deriv(const ComplexGrid1D& g, double x);

// Trapezoid rule over the full grid.
cplx trapezoid(const ComplexGrid1D& g);

// Trapezoid of values[i] * weight(node_i) without materialising a new grid.
template <typename W>
cplx trapezoid_weighted(const ComplexGrid1D& g, W&& weight) {
    const double h = g.h();
    cplx acc = 0.0;
    for (int i = 0; i < g.n; ++i) {
        const cplx term = g.values[static_cast<size_t>(i)] * weight(g.node(i));
        acc += (i == 0 || i == g.n - 1) ? 0.5 * term : term;
    }
    return acc * h;
}

// Cumulative trapezoid from the left edge; result[i] = integral up to node i.
std::vector<cplx> cumulative_trapezoid(const ComplexGrid1D& g);

// Resample onto a new uniform grid by cubic interpolation (zero outside).
ComplexGrid1D resample(const ComplexGrid1D& g, double x_min, double x_max, int n);

} // namespace dnls
