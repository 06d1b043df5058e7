#pragma once

#include "dnls/types.hpp"

namespace dnls {

struct EvolutionConfig {
    double dt = 1e-4;
    double t_final = 1.0;
    double dealias_fraction = 2.0 / 3.0;
    int record_every = 100;

    EvolutionConfig() = default;
    EvolutionConfig(double dt_, double tf, double dealias = 2.0 / 3.0, int rec = 100)
        : dt(dt_), t_final(tf), dealias_fraction(dealias), record_every(rec) {
        if (!(dt > 0.0)) throw invalid_data_error("EvolutionConfig: dt must be > 0");
        if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0))
            throw invalid_data_error("EvolutionConfig: dealias fraction in (0,1]");
    }
};

struct EvolveResult {
    Potential q;
    std::vector<double> times;
    std::vector<double> mass;    // int |q|^2
    std::vector<double> max_abs; // sup |q|
};

// Pseudospectral integrating-factor RK4 for
//   i q_t + q_xx + i eps q^2 conj(q)_x + 1/2 |q|^4 q = 0
// on the periodic extension of the grid. Throws on blow-up (max|q| > 1e6).
EvolveResult evolve_pde(const Potential& q0, const EvolutionConfig& cfg);

// IST solution operator: invert(flow(scatter(q0), t)) sampled on q0's grid.
Potential evolve_ist(const Potential& q0, double t);

} // namespace dnls
