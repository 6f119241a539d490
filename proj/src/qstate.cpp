// qstate.cpp

#include "tqd/qstate.hpp"

#include <cmath>
#include <cstdlib>
#include <istream>
#include <sstream>

#include <fmt/format.h>

#include "tqd/error.hpp"

namespace tqd {

namespace {

constexpr double kInvSqrt8 = CoefficientTensor::kIdentityComponent;
constexpr double kSqrt8 = 2.8284271247461903;

constexpr int index_of_levels(int b1, int b2, int b3) { return 7 - ((b1 << 2) | (b2 << 1) | b3); }

// sigma_a |b> = value * |b ^ flips(a)>, b the physical level.
constexpr bool flips(int a) { return a == 1 || a == 2; }

cplx pauli_value(int a, int b) {
    switch (a) {
    case 0:
    case 1: return {1.0, 0.0};
    case 2: return b == 0 ? cplx{0.0, 1.0} : cplx{0.0, -1.0};
    default: return b == 0 ? cplx{1.0, 0.0} : cplx{-1.0, 0.0};
    }
}

// Action of sigma_a (x) sigma_b (x) sigma_c on basis vector `col`: returns the
// image row and the matrix element P(row, col).
std::pair<int, cplx> pauli_string_action(int a, int b, int c, int col) {
    const int l1 = level(col, 0), l2 = level(col, 1), l3 = level(col, 2);
    const int row = index_of_levels(l1 ^ flips(a), l2 ^ flips(b), l3 ^ flips(c));
    return {row, pauli_value(a, l1) * pauli_value(b, l2) * pauli_value(c, l3)};
}

} // namespace

Qubit qubit_from_index(int one_based) {
    if (one_based < 1 || one_based > 3) throw InvalidInput(fmt::format("qubit index {} not in 1..3", one_based));
    return static_cast<Qubit>(one_based);
}

QubitPair pair_from_indices(int first, int second) {
    if (first == 1 && second == 2) return QubitPair::P12;
    if (first == 1 && second == 3) return QubitPair::P13;
    if (first == 2 && second == 3) return QubitPair::P23;
    throw InvalidInput(fmt::format("invalid qubit pair ({}, {})", first, second));
}

StateDiagnostics diagnose(const Matrix8c& m) {
    StateDiagnostics d;
    d.hermiticity_error = (m - m.adjoint()).cwiseAbs().maxCoeff();
    d.trace_error = std::abs(m.trace() - cplx{1.0, 0.0});
    const Matrix8c h = 0.5 * (m + m.adjoint());
    d.min_eigenvalue = min_eig_herm(h);
    return d;
}

DensityMatrix8::DensityMatrix8(const Matrix8c& m) : m_(m) {
    if (!m.allFinite()) throw InvalidInput("density matrix has non-finite entries");
    const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-12) throw InvalidInput(fmt::format("density matrix not Hermitian (deviation {:.3e})", herm));
    const StateDiagnostics d = diagnose(m);
    if (!d.ok())
        throw InvalidInput(fmt::format("not a density matrix: trace error {:.3e}, min eigenvalue {:.3e}",
                                       d.trace_error, d.min_eigenvalue));
}

DensityMatrix8 DensityMatrix8::unchecked(const Matrix8c& m) { return DensityMatrix8(m, NoCheck{}); }

DensityMatrix8 DensityMatrix8::maximally_mixed() {
    return DensityMatrix8(Matrix8c::Identity() / 8.0, NoCheck{});
}

DensityMatrix8 DensityMatrix8::product_basis_state(int b1, int b2, int b3) {
    for (int b : {b1, b2, b3})
        if (b != 0 && b != 1) throw InvalidInput("product_basis_state: levels must be 0 or 1");
    Matrix8c m = Matrix8c::Zero();
    const int i = index_of_levels(b1, b2, b3);
    m(i, i) = 1.0;
    return DensityMatrix8(m, NoCheck{});
}

double DensityMatrix8::purity() const { return (m_ * m_).trace().real(); }

double CoefficientTensor::norm_squared() const {
    double s = 0.0;
    for (double v : c_) s += v * v;
    return s;
}

double Tensor3::norm_squared() const {
    double s = 0.0;
    for (double v : t_) s += v * v;
    return s;
}

Mat3 BlochDecomposition::pair(Qubit k, Qubit other) const {
    const int a = slot(k), b = slot(other);
    if (a == b) throw InvalidInput("BlochDecomposition::pair: qubits must differ");
    const Mat3& m = (a + b == 1) ? t12 : (a + b == 2) ? t13 : t23;
    return a < b ? m : Mat3(m.transpose());
}

CoefficientTensor coeff_tensor(const DensityMatrix8& rho) { return coeff_tensor(rho.matrix()); }

CoefficientTensor coeff_tensor(const Matrix8c& m) {
    CoefficientTensor c;
    double worst_imag = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int d = 0; d < 4; ++d) {
                cplx tr{0.0, 0.0};
                for (int col = 0; col < 8; ++col) {
                    const auto [row, v] = pauli_string_action(a, b, d, col);
                    tr += m(col, row) * v;
                }
                tr *= kInvSqrt8;
                worst_imag = std::max(worst_imag, std::abs(tr.imag()));
                c(a, b, d) = tr.real();
            }
    if (worst_imag >= 1e-9)
        throw CorruptedState(fmt::format("Pauli expectation with imaginary part {:.3e}", worst_imag));
    return c;
}

BlochDecomposition bloch_parts(const CoefficientTensor& c) {
    BlochDecomposition b;
    for (int i = 0; i < 3; ++i) {
        b.s[0](i) = kSqrt8 * c(i + 1, 0, 0);
        b.s[1](i) = kSqrt8 * c(0, i + 1, 0);
        b.s[2](i) = kSqrt8 * c(0, 0, i + 1);
        for (int j = 0; j < 3; ++j) {
            b.t12(i, j) = kSqrt8 * c(i + 1, j + 1, 0);
            b.t13(i, j) = kSqrt8 * c(i + 1, 0, j + 1);
            b.t23(i, j) = kSqrt8 * c(0, i + 1, j + 1);
            for (int k = 0; k < 3; ++k) b.t123(i, j, k) = kSqrt8 * c(i + 1, j + 1, k + 1);
        }
    }
    return b;
}

Reconstruction rho_from_coeff(const CoefficientTensor& c) {
    Reconstruction out;
    out.matrix = Matrix8c::Zero();
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int d = 0; d < 4; ++d) {
                const double w = c(a, b, d);
                if (w == 0.0) continue;
                for (int col = 0; col < 8; ++col) {
                    const auto [row, v] = pauli_string_action(a, b, d, col);
                    out.matrix(row, col) += (w * kInvSqrt8) * v;
                }
            }
    out.min_eigenvalue = min_eig_herm(out.matrix);
    out.is_state = out.min_eigenvalue >= -1e-8;
    return out;
}

Matrix4c reduce_two_qubit(const DensityMatrix8& rho, QubitPair pair) {
    int keep_a = 0, keep_b = 1;
    switch (pair) {
    case QubitPair::P12: keep_a = 0; keep_b = 1; break;
    case QubitPair::P13: keep_a = 0; keep_b = 2; break;
    case QubitPair::P23: keep_a = 1; keep_b = 2; break;
    default: throw InvalidInput("reduce_two_qubit: invalid pair");
    }
    const int traced = 3 - keep_a - keep_b;
    // Position of each slot in the listing order: index = 4 u1 + 2 u2 + u3
    // with u = 1 - level.
    auto weight = [](int s) { return 4 >> s; };
    Matrix4c out = Matrix4c::Zero();
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            for (int e = 0; e < 2; ++e) {
                const int row = (r >> 1) * weight(keep_a) + (r & 1) * weight(keep_b) + e * weight(traced);
                const int col = (c >> 1) * weight(keep_a) + (c & 1) * weight(keep_b) + e * weight(traced);
                out(r, c) += rho(row, col);
            }
    return out;
}

Eigen::MatrixXcd random_density_matrix(std::mt19937_64& rng, int dim) {
    if (dim < 1) throw InvalidInput("random_density_matrix: dim must be positive");
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            g(i, j) = cplx{re, im};
        }
    Eigen::MatrixXcd rho = g * g.adjoint();
    rho /= rho.trace().real();
    return 0.5 * (rho + rho.adjoint());
}

DensityMatrix8 random_state8(std::mt19937_64& rng) {
    return DensityMatrix8(Matrix8c(random_density_matrix(rng, 8)));
}

std::string format_density_matrix(const Matrix8c& m) {
    std::string out;
    for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c) {
            if (c) out += ' ';
            out += fmt::format("{:.17g}{:+.17g}i", m(r, c).real(), m(r, c).imag());
        }
        out += '\n';
    }
    return out;
}

namespace {

cplx parse_entry(const std::string& tok, int line, int column) {
    const char* begin = tok.c_str();
    char* end = nullptr;
    const double re = std::strtod(begin, &end);
    if (end == begin) throw ParseError(fmt::format("row {}: bad real part in '{}'", line, tok), line, column);
    if (*end != '+' && *end != '-')
        throw ParseError(fmt::format("row {}: expected '+' or '-' after real part in '{}'", line, tok), line, column);
    const char* imag_begin = end;
    const double im = std::strtod(imag_begin, &end);
    if (end == imag_begin || *end != 'i' || *(end + 1) != '\0')
        throw ParseError(fmt::format("row {}: bad imaginary part in '{}'", line, tok), line, column);
    return {re, im};
}

} // namespace

Matrix8c parse_density_matrix(std::istream& in) {
    Matrix8c m = Matrix8c::Zero();
    std::string text;
    int line = 0;
    int row = 0;
    while (std::getline(in, text)) {
        ++line;
        if (!text.empty() && text.back() == '\r') text.pop_back();
        if (text.find_first_not_of(" \t") == std::string::npos) continue;
        if (row == 8) throw ParseError(fmt::format("unexpected extra row {}", row + 1), line, 1);
        std::istringstream ss(text);
        std::string tok;
        int col = 0;
        while (ss >> tok) {
            if (col == 8) throw ParseError(fmt::format("row {}: more than 8 entries", row + 1), line, col + 1);
            m(row, col) = parse_entry(tok, line, col + 1);
            ++col;
        }
        if (col != 8)
            throw ParseError(fmt::format("row {}: expected 8 entries, found {}", row + 1, col), line, col + 1);
        ++row;
    }
    if (row != 8) throw ParseError(fmt::format("expected 8 rows, found {}", row), line + 1, 1);
    return m;
}

} // namespace tqd
