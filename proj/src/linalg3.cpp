// linalg3.cpp

#include "tqd/linalg3.hpp"

#include <cmath>
#include <utility>

#include "tqd/error.hpp"

namespace tqd {

namespace {

constexpr double kOffDiagonalTol = 1e-14;
constexpr int kMaxSweeps = 50;
constexpr double kSignTol = 1e-12;

double off_diagonal_norm(const Mat3& a) {
    return std::sqrt(2.0 * (a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2)));
}

// One Jacobi rotation annihilating a(p, q); accumulates into v.
void rotate(Mat3& a, Mat3& v, int p, int q) {
    const double apq = a(p, q);
    if (apq == 0.0) return;
    const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    const int r = 3 - p - q;
    const double arp = a(r, p);
    const double arq = a(r, q);
    a(p, p) -= t * apq;
    a(q, q) += t * apq;
    a(p, q) = a(q, p) = 0.0;
    a(r, p) = a(p, r) = c * arp - s * arq;
    a(r, q) = a(q, r) = s * arp + c * arq;

    for (int k = 0; k < 3; ++k) {
        const double vkp = v(k, p);
        const double vkq = v(k, q);
        v(k, p) = c * vkp - s * vkq;
        v(k, q) = s * vkp + c * vkq;
    }
}

} // namespace

SymMat3::SymMat3(const Mat3& m) {
    if (!m.allFinite()) throw InvalidInput("SymMat3: non-finite entry");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw InvalidInput("SymMat3: matrix is not symmetric");
    m_ = m;
    m_(1, 0) = m_(0, 1);
    m_(2, 0) = m_(0, 2);
    m_(2, 1) = m_(1, 2);
}

SymMat3 SymMat3::outer(const Vec3& v) {
    return SymMat3(v * v.transpose());
}

EigenPair3 eig_sym3(const SymMat3& m) {
    Mat3 a = m.matrix();
    if (!a.allFinite()) throw InvalidInput("eig_sym3: non-finite entry");

    Mat3 v = Mat3::Identity();
    const double norm = a.norm();
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (off_diagonal_norm(a) <= kOffDiagonalTol * norm) break;
        rotate(a, v, 0, 1);
        rotate(a, v, 0, 2);
        rotate(a, v, 1, 2);
    }

    // Insertion sort, descending, with ties (within the degeneracy gap) left
    // in diagonal order.
    std::array<int, 3> order{0, 1, 2};
    const double tie = kDegeneracyGap * std::max(1.0, a.diagonal().cwiseAbs().maxCoeff());
    for (int i = 1; i < 3; ++i) {
        for (int j = i; j > 0 && a(order[j], order[j]) > a(order[j - 1], order[j - 1]) + tie; --j)
            std::swap(order[j], order[j - 1]);
    }

    EigenPair3 out;
    for (int i = 0; i < 3; ++i) {
        out.values[i] = a(order[i], order[i]);
        Vec3 col = v.col(order[i]);
        for (int k = 0; k < 3; ++k) {
            if (std::abs(col(k)) > kSignTol) {
                if (col(k) < 0.0) col = -col;
                break;
            }
        }
        out.vectors.col(i) = col;
    }
    return out;
}

double min_eig_herm(const Eigen::Ref<const Eigen::MatrixXcd>& m) {
    if (m.rows() != m.cols() || m.rows() == 0 || m.rows() > 8)
        throw InvalidInput("min_eig_herm: expected a square matrix of size 1..8");
    if (!m.allFinite()) throw InvalidInput("min_eig_herm: non-finite entry");
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw InvalidInput("min_eig_herm: matrix is not Hermitian");
    const Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
}

} // namespace tqd
