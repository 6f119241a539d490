// discord.cpp

#include "tqd/discord.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "tqd/error.hpp"

namespace tqd {

namespace {

constexpr double kClampTol = 1e-10;

double clamp_discord(double raw, const char* what) {
    if (raw < -kClampTol)
        throw ConsistencyError(fmt::format("{}: closed form returned {:.3e} < 0", what, raw));
    return std::max(raw, 0.0);
}

} // namespace

MeasurementAxis::MeasurementAxis(const Vec3& e) : e_(e) {
    if (!e.allFinite() || std::abs(e.norm() - 1.0) > 1e-12)
        throw InvalidInput(fmt::format("measurement axis is not a unit vector (norm {})", e.norm()));
}

MeasurementAxis MeasurementAxis::normalized(const Vec3& v) {
    const double n = v.norm();
    if (!(n > 0.0)) throw InvalidInput("measurement axis has zero length");
    return MeasurementAxis(v / n);
}

SymMat3 g_matrix(const BlochDecomposition& b, Qubit k) {
    const int ks = slot(k);
    const Vec3& s = b.s[ks];
    Mat3 g = s * s.transpose();
    for (int other = 0; other < 3; ++other) {
        if (other == ks) continue;
        const Mat3 t = b.pair(k, qubit_from_index(other + 1));
        g += t * t.transpose();
    }
    // Contract the two slots of the three-body tensor that are not k.
    for (int alpha = 0; alpha < 3; ++alpha)
        for (int beta = 0; beta < 3; ++beta) {
            double tau = 0.0;
            for (int x = 0; x < 3; ++x)
                for (int y = 0; y < 3; ++y) {
                    switch (ks) {
                    case 0: tau += b.t123(alpha, x, y) * b.t123(beta, x, y); break;
                    case 1: tau += b.t123(x, alpha, y) * b.t123(x, beta, y); break;
                    default: tau += b.t123(x, y, alpha) * b.t123(x, y, beta); break;
                    }
                }
            g(alpha, beta) += tau;
        }
    return SymMat3(0.5 * (g + g.transpose()));
}

DiscordTerm gqd_k(const BlochDecomposition& b, Qubit k) {
    const int ks = slot(k);
    double total = b.s[ks].squaredNorm() + b.t123.norm_squared();
    for (int other = 0; other < 3; ++other)
        if (other != ks) total += b.pair(k, qubit_from_index(other + 1)).squaredNorm();

    const EigenPair3 eig = eig_sym3(g_matrix(b, k));
    DiscordTerm out;
    out.value = clamp_discord((total - eig.values[0]) / 8.0, "gqd_k");
    out.axis = MeasurementAxis::normalized(eig.vectors.col(0));
    out.spectral_gap = eig.values[0] - eig.values[1];
    out.degenerate = out.spectral_gap < kDegeneracyGap * std::max(1.0, std::abs(eig.values[0]));
    return out;
}

DiscordTerm gqd_k(const CoefficientTensor& c, Qubit k) { return gqd_k(bloch_parts(c), k); }

CoefficientTensor project_measure(const CoefficientTensor& c, const MeasurementAxis& axis, Qubit qubit) {
    const Vec3& e = axis.vector();
    const double h = 1.0 / std::numbers::sqrt2;
    // Outcome vectors in the {X_i} basis of the measured slot.
    const std::array<std::array<double, 4>, 2> a{{{h, h * e(0), h * e(1), h * e(2)},
                                                  {h, -h * e(0), -h * e(1), -h * e(2)}}};
    const int ms = slot(qubit);
    auto at = [ms](const CoefficientTensor& t, int i, int j, int k) {
        // i indexes the measured slot; j, k the remaining slots in order.
        switch (ms) {
        case 0: return t(i, j, k);
        case 1: return t(j, i, k);
        default: return t(j, k, i);
        }
    };

    CoefficientTensor out;
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
            std::array<double, 2> bvals{};
            for (int l = 0; l < 2; ++l)
                for (int i = 0; i < 4; ++i) bvals[l] += at(c, i, j, k) * a[l][i];
            for (int i = 0; i < 4; ++i) {
                const double v = a[0][i] * bvals[0] + a[1][i] * bvals[1];
                switch (ms) {
                case 0: out(i, j, k) = v; break;
                case 1: out(j, i, k) = v; break;
                default: out(j, k, i) = v; break;
                }
            }
        }
    return out;
}

DiscordReport tqc(const DensityMatrix8& rho) { return tqc(coeff_tensor(rho)); }

DiscordReport tqc(const CoefficientTensor& c) {
    DiscordReport r;
    const DiscordTerm first = gqd_k(c, Qubit::One);
    r.after_first = project_measure(c, first.axis, Qubit::One);
    const DiscordTerm second = gqd_k(r.after_first, Qubit::Two);
    r.after_second = project_measure(r.after_first, second.axis, Qubit::Two);
    const DiscordTerm third = gqd_k(r.after_second, Qubit::Three);

    r.d1 = first.value;
    r.d2 = second.value;
    r.d3 = third.value;
    r.q = r.d1 + r.d2 + r.d3;
    r.axes = {first.axis, second.axis, third.axis};
    r.degenerate = {first.degenerate, second.degenerate, third.degenerate};
    return r;
}

double gqd_two_qubit(const Matrix4c& rho4) {
    if (!rho4.allFinite() || (rho4 - rho4.adjoint()).cwiseAbs().maxCoeff() > 1e-12 ||
        std::abs(rho4.trace() - cplx{1.0, 0.0}) > 1e-12)
        throw InvalidInput("gqd_two_qubit: input is not a Hermitian unit-trace matrix");

    // Excited-first local ordering: sigma_x, sigma_y, sigma_z.
    Matrix2c sx, sy, sz, id;
    sx << 0, 1, 1, 0;
    sy << 0, cplx(0, 1), cplx(0, -1), 0;
    sz << -1, 0, 0, 1;
    id.setIdentity();
    const std::array<Matrix2c, 3> sigma{sx, sy, sz};

    auto kron = [](const Matrix2c& a, const Matrix2c& b) {
        Matrix4c k;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) k.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        return k;
    };

    Vec3 x;
    Mat3 t;
    for (int a = 0; a < 3; ++a) {
        x(a) = (rho4 * kron(sigma[a], id)).trace().real();
        for (int b = 0; b < 3; ++b) t(a, b) = (rho4 * kron(sigma[a], sigma[b])).trace().real();
    }
    const Mat3 g = x * x.transpose() + t * t.transpose();
    const EigenPair3 eig = eig_sym3(SymMat3(0.5 * (g + g.transpose())));
    return clamp_discord((x.squaredNorm() + t.squaredNorm() - eig.values[0]) / 4.0, "gqd_two_qubit");
}

// --- brute force ---------------------------------------------------------

namespace {

Matrix2c projector(const Vec3& e, int sign) {
    // (I + sign e.sigma)/2 in the excited-first ordering.
    Matrix2c p;
    const double s = sign;
    p(0, 0) = 0.5 * (1.0 - s * e(2));
    p(1, 1) = 0.5 * (1.0 + s * e(2));
    p(0, 1) = 0.5 * s * cplx(e(0), e(1));
    p(1, 0) = 0.5 * s * cplx(e(0), -e(1));
    return p;
}

Vec3 spherical(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

template <class F>
double golden_section(F&& f, double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = f(c), fd = f(d);
    while (hi - lo > tol) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

Matrix8c measure_projective(const Matrix8c& rho, const Vec3& axis, Qubit qubit) {
    const int ms = slot(qubit);
    const int stride = 4 >> ms; // index offset of the measured slot
    auto local = [stride](int idx) { return (idx / stride) & 1; };

    Matrix8c out = Matrix8c::Zero();
    for (int sign : {+1, -1}) {
        const Matrix2c p = projector(axis, sign);
        for (int r = 0; r < 8; ++r)
            for (int c = 0; c < 8; ++c) {
                const int ur = local(r), uc = local(c);
                const int r0 = r - ur * stride, c0 = c - uc * stride;
                cplx acc{0.0, 0.0};
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) acc += p(ur, a) * rho(r0 + a * stride, c0 + b * stride) * p(b, uc);
                out(r, c) += acc;
            }
    }
    return out;
}

double measurement_disturbance(const Matrix8c& rho, const Vec3& axis, Qubit qubit) {
    return (rho - measure_projective(rho, axis, qubit)).squaredNorm();
}

BruteForceResult gqd_brute_force(const Matrix8c& rho, Qubit k, const BruteForceGrid& grid) {
    if (grid.polar < 64 || grid.azimuthal < 128)
        throw InvalidInput("gqd_brute_force: grid must be at least 64 x 128");
    const double pi = std::numbers::pi;
    const double dtheta = pi / grid.polar;
    const double dphi = 2.0 * pi / grid.azimuthal;
    auto f = [&](double theta, double phi) { return measurement_disturbance(rho, spherical(theta, phi), k); };

    double best = std::numeric_limits<double>::infinity();
    double best_theta = 0.0, best_phi = 0.0;
    for (int i = 0; i < grid.polar; ++i) {
        const double theta = (i + 0.5) * dtheta;
        for (int j = 0; j < grid.azimuthal; ++j) {
            const double phi = j * dphi;
            const double v = f(theta, phi);
            if (v < best) {
                best = v;
                best_theta = theta;
                best_phi = phi;
            }
        }
    }

    // Alternate golden-section searches over the neighbouring cells.
    double theta = best_theta, phi = best_phi;
    for (int round = 0; round < 60; ++round) {
        const double t_lo = std::max(0.0, theta - dtheta), t_hi = std::min(pi, theta + dtheta);
        const double new_theta = golden_section([&](double x) { return f(x, phi); }, t_lo, t_hi, 0.1 * grid.axis_tol);
        const double new_phi =
            golden_section([&](double x) { return f(new_theta, x); }, phi - dphi, phi + dphi, 0.1 * grid.axis_tol);
        const double moved = std::abs(new_theta - theta) + std::sin(new_theta) * std::abs(new_phi - phi);
        theta = new_theta;
        phi = new_phi;
        if (moved < grid.axis_tol) break;
    }
    const double refined = f(theta, phi);
    BruteForceResult out;
    if (refined <= best) {
        out.value = refined;
        out.axis = spherical(theta, phi);
    } else {
        out.value = best;
        out.axis = spherical(best_theta, best_phi);
    }
    return out;
}

std::array<double, 3> tqc_brute_force(const Matrix8c& rho, const std::array<MeasurementAxis, 3>& fixed_axes,
                                      const BruteForceGrid& grid) {
    const double d1 = gqd_brute_force(rho, Qubit::One, grid).value;
    const Matrix8c stage1 = measure_projective(rho, fixed_axes[0].vector(), Qubit::One);
    const double d2 = gqd_brute_force(stage1, Qubit::Two, grid).value;
    const Matrix8c stage2 = measure_projective(stage1, fixed_axes[1].vector(), Qubit::Two);
    const double d3 = gqd_brute_force(stage2, Qubit::Three, grid).value;
    return {d1, d2, d3};
}

} // namespace tqd
