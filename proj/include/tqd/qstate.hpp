// qstate.hpp — three-qubit density matrices and their normalized-Pauli
// (Bloch) decomposition.
//
// Basis ordering follows the product listing |1>=|111>, |2>=|110>, ...,
// |8>=|000>: qubit 1 is the leftmost tensor factor and, within every factor,
// the excited level |1> comes before the ground level |0>. Pauli operators
// keep their textbook action, sigma_z|0> = +|0>.

#pragma once

#include <array>
#include <complex>
#include <iosfwd>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "tqd/linalg3.hpp"

namespace tqd {

using cplx = std::complex<double>;
using Matrix2c = Eigen::Matrix<cplx, 2, 2>;
using Matrix4c = Eigen::Matrix<cplx, 4, 4>;
using Matrix8c = Eigen::Matrix<cplx, 8, 8>;

enum class Qubit { One = 1, Two = 2, Three = 3 };
enum class QubitPair { P12, P13, P23 };

// Zero-based tensor slot of a qubit.
constexpr int slot(Qubit q) noexcept { return static_cast<int>(q) - 1; }
Qubit qubit_from_index(int one_based);
QubitPair pair_from_indices(int first, int second);

// Physical level (1 = excited, 0 = ground) of qubit `q` in basis vector `index`.
constexpr int level(int index, int q_slot) noexcept { return ((7 - index) >> (2 - q_slot)) & 1; }

struct StateDiagnostics {
    double hermiticity_error = 0.0; // max |M - M^dagger|
    double trace_error = 0.0;       // |Tr M - 1|
    double min_eigenvalue = 0.0;
    bool ok() const noexcept {
        return hermiticity_error <= 1e-12 && trace_error <= 1e-12 && min_eigenvalue >= -1e-10;
    }
};

StateDiagnostics diagnose(const Matrix8c& m);

// Validated three-qubit state.
class DensityMatrix8 {
public:
    // Throws InvalidInput unless Hermitian and unit-trace within 1e-12 and PSD
    // within -1e-10.
    explicit DensityMatrix8(const Matrix8c& m);

    // Skips validation; for intermediates the library constructs itself.
    static DensityMatrix8 unchecked(const Matrix8c& m);

    static DensityMatrix8 maximally_mixed();
    // |b1 b2 b3><b1 b2 b3| with physical levels (each 0 or 1).
    static DensityMatrix8 product_basis_state(int b1, int b2, int b3);

    const Matrix8c& matrix() const noexcept { return m_; }
    cplx operator()(int row, int col) const { return m_(row, col); }
    double purity() const;

private:
    struct NoCheck {};
    DensityMatrix8(const Matrix8c& m, NoCheck) : m_(m) {}
    Matrix8c m_;
};

// 4x4x4 real coefficients in the basis X_0 = I/sqrt2, X_a = sigma_a/sqrt2.
// Index 0 is the identity slot.
class CoefficientTensor {
public:
    static constexpr double kIdentityComponent = 0.35355339059327373; // 2^{-3/2}

    CoefficientTensor() { c_.fill(0.0); }

    double& operator()(int i, int j, int k) { return c_[16 * i + 4 * j + k]; }
    double operator()(int i, int j, int k) const { return c_[16 * i + 4 * j + k]; }

    double norm_squared() const;
    const std::array<double, 64>& data() const noexcept { return c_; }

private:
    std::array<double, 64> c_;
};

class Tensor3 {
public:
    Tensor3() { t_.fill(0.0); }
    double& operator()(int a, int b, int c) { return t_[9 * a + 3 * b + c]; }
    double operator()(int a, int b, int c) const { return t_[9 * a + 3 * b + c]; }
    double norm_squared() const;

private:
    std::array<double, 27> t_;
};

// Pauli expectation values: s[q](a) = <sigma_a on q>, pair matrices with the
// lower-numbered qubit on rows, three-body tensor t123(a,b,c).
struct BlochDecomposition {
    std::array<Vec3, 3> s{Vec3::Zero(), Vec3::Zero(), Vec3::Zero()};
    Mat3 t12 = Mat3::Zero();
    Mat3 t13 = Mat3::Zero();
    Mat3 t23 = Mat3::Zero();
    Tensor3 t123;

    // Correlation matrix of (k, other) with qubit k on rows.
    Mat3 pair(Qubit k, Qubit other) const;
};

// Throws CorruptedState when an expectation value has an imaginary part >= 1e-9.
CoefficientTensor coeff_tensor(const DensityMatrix8& rho);
CoefficientTensor coeff_tensor(const Matrix8c& m);

BlochDecomposition bloch_parts(const CoefficientTensor& c);

struct Reconstruction {
    Matrix8c matrix;
    double min_eigenvalue = 0.0;
    // False when min_eigenvalue < -1e-8; the matrix is still returned.
    bool is_state = true;
};

Reconstruction rho_from_coeff(const CoefficientTensor& c);

// Partial trace over the excluded qubit. The result uses the same
// excited-first ordering, first listed qubit leftmost.
Matrix4c reduce_two_qubit(const DensityMatrix8& rho, QubitPair pair);

// Ginibre sample: G G^dagger / Tr with complex Gaussian G.
Eigen::MatrixXcd random_density_matrix(std::mt19937_64& rng, int dim);
DensityMatrix8 random_state8(std::mt19937_64& rng);

// Text format: 8 rows of 8 whitespace-separated `a+bi` / `a-bi` entries.
std::string format_density_matrix(const Matrix8c& m);
Matrix8c parse_density_matrix(std::istream& in);

} // namespace tqd
