// linalg3.hpp — small dense eigenproblems: 3x3 real symmetric (cyclic Jacobi)
// and the smallest eigenvalue of Hermitian matrices up to 8x8.

#pragma once

#include <array>

#include <Eigen/Dense>

namespace tqd {

using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

// Real symmetric 3x3 matrix. The stored entries are exactly symmetric: the
// constructor checks symmetry and then mirrors the upper triangle.
class SymMat3 {
public:
    SymMat3() : m_(Mat3::Zero()) {}
    explicit SymMat3(const Mat3& m);

    static SymMat3 outer(const Vec3& v);

    const Mat3& matrix() const noexcept { return m_; }
    double operator()(int i, int j) const { return m_(i, j); }

private:
    Mat3 m_;
};

// Eigenvalues sorted descending; vectors.col(i) belongs to values[i].
struct EigenPair3 {
    std::array<double, 3> values{};
    Mat3 vectors = Mat3::Identity();
};

// Eigenvalues closer than this (relative to max(1, |lambda|_max)) are treated
// as tied; ties keep the diagonal order Jacobi left them in.
inline constexpr double kDegeneracyGap = 1e-10;

EigenPair3 eig_sym3(const SymMat3& m);

// Smallest eigenvalue of a Hermitian matrix (n <= 8). Throws InvalidInput when
// the input deviates from Hermitian by more than 1e-12.
double min_eig_herm(const Eigen::Ref<const Eigen::MatrixXcd>& m);

} // namespace tqd
