#pragma once

#include "dnls/grid.hpp"

namespace dnls {

enum class Side { plus, minus };

// Boundary values C^{+-} f of the Cauchy transform of f sampled on a uniform
// real grid. Split as  C^{+-} = (+-)1/2 I + H/(2i)  with H the principal-value
// Hilbert convolution, so C^+ f - C^- f = f holds to machine precision.
// Off-grid tails are modelled as A/s + B/s^2 matched to the outermost samples.
ComplexGrid1D cauchy_projector(const ComplexGrid1D& f, Side side);

// (1/2 pi i) int f(s)/(s - z) ds for z off the real line. Throws
// contour_proximity_error when |Im z| < h/10.
cplx cauchy_integral(const ComplexGrid1D& f, cplx z);

// Same transform evaluated with local sub-grid refinement around Re z, so it
// stays accurate down to |Im z| ~ 1e-6 at extra cost.
cplx cauchy_integral_refined(const ComplexGrid1D& f, cplx z);

// Principal-value Hilbert transform (1/pi) PV int f(s)/(s - x_j) ds on the
// grid nodes; building block for the projectors, exposed for tests.
std::vector<cplx> hilbert_transform(const ComplexGrid1D& f);

} // namespace dnls
