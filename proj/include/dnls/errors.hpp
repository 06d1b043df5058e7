#pragma once

#include <stdexcept>
#include <string>

namespace dnls {

// Base class for all library failures.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

struct domain_error : error {
    explicit domain_error(const std::string& what) : error(what) {}
};

// Gamma evaluated at a non-positive integer.
struct gamma_pole_error : domain_error {
    explicit gamma_pole_error(const std::string& what) : domain_error(what) {}
};

// Evaluation point too close to the integration contour for the quadrature.
struct contour_proximity_error : domain_error {
    explicit contour_proximity_error(const std::string& what) : domain_error(what) {}
};

// |f| on a sub-rectangle boundary too small to subdivide safely.
struct boundary_zero_error : error {
    explicit boundary_zero_error(const std::string& what) : error(what) {}
};

struct nonconvergence_error : error {
    explicit nonconvergence_error(const std::string& what) : error(what) {}
};

// ODE solution entry exceeded the growth guard.
struct overflow_error : error {
    explicit overflow_error(const std::string& what) : error(what) {}
};

// |alpha| on the real axis dipped below threshold.
struct spectral_singularity_error : error {
    explicit spectral_singularity_error(const std::string& what) : error(what) {}
};

struct invalid_data_error : domain_error {
    explicit invalid_data_error(const std::string& what) : domain_error(what) {}
};

} // namespace dnls
