// dynamics.hpp — zero-temperature amplitude damping with a Lorentzian
// reservoir: survival function P_t, its Volterra solver, and the exact
// three-qubit evolution (closed-form element table plus a Kraus oracle).
//
// Time is measured in units of 1/gamma0 by callers; the functions accept any
// positive gamma0.

#pragma once

#include <vector>

#include "tqd/qstate.hpp"

namespace tqd {

struct ReservoirParams {
    double gamma0 = 1.0; // decay rate, ~ 1/tau_R
    double lambda = 1.0; // spectral width, ~ 1/tau_B

    // Throws InvalidInput unless both are positive and finite.
    ReservoirParams(double gamma0, double lambda);
    // gamma0 = 1 and lambda = ratio.
    static ReservoirParams from_ratio(double lambda_over_gamma0);
};

enum class Regime { NonMarkovian, Critical, Markovian };
Regime regime(const ReservoirParams& params);

class SurvivalAmplitude {
public:
    // Throws InvalidInput outside [0, 1 + 1e-12].
    explicit SurvivalAmplitude(double p);
    double value() const noexcept { return p_; }

private:
    double p_;
};

SurvivalAmplitude p_t(double t, const ReservoirParams& params);

// First n_max zeros of P_t (oscillatory regime only; NoZerosError otherwise).
std::vector<double> p_t_zeros(const ReservoirParams& params, int n_max);

// Reservoir correlation function for the Lorentzian spectral density.
double memory_kernel(double tau, const ReservoirParams& params);

struct SampledCurve {
    std::vector<double> t;
    std::vector<double> p;
};

// Trapezoidal solution of dG/dt = -int_0^t f(t - s) G(s) ds, G(0) = 1, sampled
// as P = G^2.
// Requires dt <= 1e-3 / max(gamma0, lambda) (AccuracyError otherwise).
SampledCurve p_t_numeric(const ReservoirParams& params, double t_max, double dt);

// Single-qubit map in the (|1>, |0>) layout.
Matrix2c evolve_single(const Matrix2c& rho2, SurvivalAmplitude p);

// One contribution to an evolved element: coefficient
// sqrt(P)^sqrt_p_power * (1 - P)^decay_power times rho(source_row, source_col).
// Indices are 1-based, as in the |1>=|111> ... |8>=|000> listing.
struct EvolutionTerm {
    int source_row;
    int source_col;
    int sqrt_p_power;
    int decay_power;
};

struct ElementRule {
    int row; // 1-based, row <= col
    int col;
    std::vector<EvolutionTerm> terms;
};

using EvolutionTable = std::vector<ElementRule>;

// The 8 diagonal and 28 upper off-diagonal closed-form rules.
const EvolutionTable& closed_form_table();

Matrix8c evolve_three(const Matrix8c& rho0, SurvivalAmplitude p, const EvolutionTable& table);

// Throws ConsistencyError if the output's smallest eigenvalue is below -1e-9.
DensityMatrix8 evolve_three(const DensityMatrix8& rho0, SurvivalAmplitude p);

// (Lambda_P (x) Lambda_P (x) Lambda_P)(rho0) summed over the 8 product Kraus terms.
DensityMatrix8 kraus_oracle(const DensityMatrix8& rho0, SurvivalAmplitude p);
Matrix8c kraus_oracle(const Matrix8c& rho0, SurvivalAmplitude p);

} // namespace tqd
