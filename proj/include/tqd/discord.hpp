// discord.hpp — geometric quantum discord of three-qubit states.
//
// D_k is the squared Hilbert-Schmidt distance between a state and its image
// under the best rank-1 projective measurement of qubit k. The total quantum
// correlation Q measures qubit 1, then 2, then 3, each along the optimal axis
// found for the state the previous stage left behind.

#pragma once

#include <array>
#include <string>

#include "tqd/linalg3.hpp"
#include "tqd/qstate.hpp"

namespace tqd {

// Bloch axis of a von Neumann measurement {(I +/- e.sigma)/2}.
class MeasurementAxis {
public:
    // Throws InvalidInput unless | |e| - 1 | <= 1e-12.
    explicit MeasurementAxis(const Vec3& e);
    static MeasurementAxis normalized(const Vec3& v);

    const Vec3& vector() const noexcept { return e_; }

private:
    Vec3 e_;
};

struct DiscordTerm {
    double value = 0.0;
    MeasurementAxis axis{Vec3::UnitZ()};
    double spectral_gap = 0.0; // eta_max minus the next eigenvalue of G
    bool degenerate = false;   // gap below kDegeneracyGap; axis fixed by convention
};

SymMat3 g_matrix(const BlochDecomposition& b, Qubit k);

DiscordTerm gqd_k(const BlochDecomposition& b, Qubit k);
DiscordTerm gqd_k(const CoefficientTensor& c, Qubit k);

// Coefficient tensor of the post-measurement state when `qubit` is measured
// along `axis` (non-selective).
CoefficientTensor project_measure(const CoefficientTensor& c, const MeasurementAxis& axis, Qubit qubit);

struct DiscordReport {
    double d1 = 0.0;
    double d2 = 0.0;
    double d3 = 0.0;
    double q = 0.0;
    std::array<MeasurementAxis, 3> axes{MeasurementAxis{Vec3::UnitZ()}, MeasurementAxis{Vec3::UnitZ()},
                                        MeasurementAxis{Vec3::UnitZ()}};
    std::array<bool, 3> degenerate{};
    CoefficientTensor after_first;  // C'  (qubit 1 measured)
    CoefficientTensor after_second; // C'' (qubits 1 and 2 measured)
    std::string ordering = "1>2>3";
};

DiscordReport tqc(const DensityMatrix8& rho);
DiscordReport tqc(const CoefficientTensor& c);

// Two-qubit geometric discord with the measurement on the first qubit.
double gqd_two_qubit(const Matrix4c& rho4);

// --- Brute-force oracle, computed entirely on 8x8 matrices -----------------

struct BruteForceGrid {
    int polar = 64;
    int azimuthal = 128;
    double axis_tol = 1e-8;
};

// sum_l (P_l (x) I (x) I) rho (P_l (x) I (x) I) with P_l = (I +/- e.sigma)/2 on `qubit`.
Matrix8c measure_projective(const Matrix8c& rho, const Vec3& axis, Qubit qubit);

// Squared Hilbert-Schmidt norm of rho - measure_projective(rho, axis, qubit).
double measurement_disturbance(const Matrix8c& rho, const Vec3& axis, Qubit qubit);

struct BruteForceResult {
    double value = 0.0;
    Vec3 axis = Vec3::UnitZ();
};

BruteForceResult gqd_brute_force(const Matrix8c& rho, Qubit k, const BruteForceGrid& grid = {});

// Successive-measurement oracle: stage n minimizes by brute force on the state
// produced by measuring earlier qubits along the given (already fixed) axes.
std::array<double, 3> tqc_brute_force(const Matrix8c& rho, const std::array<MeasurementAxis, 3>& fixed_axes,
                                      const BruteForceGrid& grid = {});

} // namespace tqd
