// test_support.hpp — helpers shared by the unit suites. Everything here is
// built from explicit Kronecker products in the textbook |0>,|1> basis, so it
// does not share code paths with the library.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "tqd/qstate.hpp"

namespace tqd::test {

using Eigen::MatrixXcd;

inline MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
    MatrixXcd k(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return k;
}

// Pauli matrices in the textbook (|0>, |1>) ordering.
inline std::array<MatrixXcd, 4> paulis() {
    using c = std::complex<double>;
    MatrixXcd i2 = MatrixXcd::Identity(2, 2);
    MatrixXcd x(2, 2), y(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    y << 0, c(0, -1), c(0, 1), 0;
    z << 1, 0, 0, -1;
    return {i2, x, y, z};
}

// Permutation taking textbook index b (qubit 1 most significant bit) to the
// excited-first listing index 7 - b (2^n - 1 - b in general).
inline MatrixXcd to_listing_order(const MatrixXcd& textbook) {
    const int n = static_cast<int>(textbook.rows());
    MatrixXcd out(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out(n - 1 - r, n - 1 - c) = textbook(r, c);
    return out;
}

inline MatrixXcd pauli_string(int a, int b, int c) {
    const auto p = paulis();
    return to_listing_order(kron(kron(p[a], p[b]), p[c]));
}

// Textbook-basis ket |b1 b2 b3> moved to listing order.
inline Eigen::VectorXcd ket(int b1, int b2, int b3) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(8);
    v(7 - ((b1 << 2) | (b2 << 1) | b3)) = 1.0;
    return v;
}

// Haar-ish random single-qubit unitary from a random axis and angle plus phase.
inline Eigen::Matrix2cd random_unitary2(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::Matrix2cd m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m(i, j) = std::complex<double>(g(rng), g(rng));
    Eigen::HouseholderQR<Eigen::Matrix2cd> qr(m);
    return qr.householderQ();
}

inline Matrix8c local_unitary(const Eigen::Matrix2cd& u1, const Eigen::Matrix2cd& u2, const Eigen::Matrix2cd& u3) {
    return kron(kron(u1, u2), u3);
}

// Roots of det(M - x I) for symmetric 3x3 M via the trigonometric Cardano form.
inline std::array<double, 3> cardano_eigenvalues(const Eigen::Matrix3d& m) {
    const double q = m.trace() / 3.0;
    const Eigen::Matrix3d b0 = m - q * Eigen::Matrix3d::Identity();
    const double p = std::sqrt(b0.squaredNorm() / 6.0);
    if (p == 0.0) return {q, q, q};
    const Eigen::Matrix3d b = b0 / p;
    const double half_det = std::clamp(b.determinant() / 2.0, -1.0, 1.0);
    const double phi = std::acos(half_det) / 3.0;
    const double l1 = q + 2.0 * p * std::cos(phi);
    const double l3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
    const double l2 = 3.0 * q - l1 - l3;
    return {l1, l2, l3};
}

inline Eigen::Matrix3d random_symmetric3(std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    Eigen::Matrix3d a;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = g(rng);
    return a;
}

inline double max_abs(const MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace tqd::test
