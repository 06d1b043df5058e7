#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dnls/grid.hpp"

namespace dnls {

// Sampled potential q on an x-grid together with the equation sign.
struct Potential {
    ComplexGrid1D grid;
    int epsilon = 1;

    Potential() = default;
    Potential(ComplexGrid1D g, int eps) : grid(std::move(g)), epsilon(eps) {
        if (epsilon != 1 && epsilon != -1) throw invalid_data_error("Potential: epsilon must be +-1");
    }
};

struct EigenPair {
    cplx lambda; // in C^+
    cplx C;      // norming constant, nonzero
};

struct DiscreteSpectrum {
    std::vector<EigenPair> pairs;

    DiscreteSpectrum() = default;
    explicit DiscreteSpectrum(std::vector<EigenPair> p) : pairs(std::move(p)) { validate(); }
    void validate() const;
    bool empty() const { return pairs.empty(); }
    int size() const { return static_cast<int>(pairs.size()); }
};

struct ReflectionCoefficient {
    ComplexGrid1D grid; // rho sampled on a real lambda-grid
    int epsilon = 1;

    ReflectionCoefficient() = default;
    ReflectionCoefficient(ComplexGrid1D g, int eps);
    // 1 - eps*lambda*|rho|^2 at a node
    double constraint_at(int i) const;
};

struct ScatteringData {
    ReflectionCoefficient rho;
    DiscreteSpectrum discrete;
    int epsilon = 1;

    ScatteringData() = default;
    ScatteringData(ReflectionCoefficient r, DiscreteSpectrum d, int eps);
};

// Trivial (zero) reflection coefficient on a default grid.
ReflectionCoefficient zero_reflection(int epsilon, double lam_min = -40.0, double lam_max = 40.0,
                                      int n = 4096);

// Linear evolution on scattering data:
// rho -> exp(-4 i lambda^2 t) rho, C_k -> C_k exp(-4 i lambda_k^2 t).
ScatteringData flow(const ScatteringData& data, double t);

// q = exp(-i eps int_{-inf}^x |u|^2) u  and its inverse (phase sign +i eps).
Potential gauge_forward(const Potential& u);
Potential gauge_inverse(const Potential& q);

// Trace formula for the transmission coefficient alpha, Im lam < 0.
cplx trace_alpha(const ScatteringData& data, cplx lam);

// Trace formula for breve(alpha), Im lam > 0 (conjugate-reflected form).
cplx trace_alpha_breve(const ScatteringData& data, cplx lam);

// Both sides of the weak Plancherel identity; equal for consistent data.
std::pair<cplx, cplx> plancherel_sides(const Potential& q, const ScatteringData& data);

// --- serialization -------------------------------------------------------

std::string scattering_to_json(const ScatteringData& data);
ScatteringData scattering_from_json(const std::string& text);

std::string potential_to_csv(const Potential& q);
Potential potential_from_csv(const std::string& text, int epsilon);

void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

} // namespace dnls
