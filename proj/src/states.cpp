// states.cpp

#include "tqd/states.hpp"

#include <cmath>
#include <complex>

#include <fmt/format.h>

#include "tqd/error.hpp"

namespace tqd {

namespace {

using Vector8c = Eigen::Matrix<cplx, 8, 1>;

// Listing index of |b1 b2 b3>.
constexpr int ket(int b1, int b2, int b3) { return 7 - ((b1 << 2) | (b2 << 1) | b3); }

void check_purity_parameter(double r) {
    if (!(r >= 0.0 && r <= 1.0)) throw InvalidInput(fmt::format("purity parameter r={} outside [0, 1]", r));
}

DensityMatrix8 mix_with_noise(const Vector8c& psi, double r) {
    const Matrix8c m = r * (psi * psi.adjoint()) + ((1.0 - r) / 8.0) * Matrix8c::Identity();
    return DensityMatrix8(Matrix8c(0.5 * (m + m.adjoint())));
}

} // namespace

DensityMatrix8 make_ghz(const GhzSpec& spec) {
    check_purity_parameter(spec.r);
    const double norm = spec.alpha * spec.alpha + spec.beta_abs * spec.beta_abs;
    if (std::abs(norm - 1.0) > 1e-12 || spec.beta_abs < 0.0)
        throw InvalidInput(fmt::format("GHZ amplitudes not normalized: alpha^2 + |beta|^2 = {:.17g}", norm));
    Vector8c psi = Vector8c::Zero();
    psi(ket(0, 0, 0)) = spec.alpha;
    psi(ket(1, 1, 1)) = std::polar(spec.beta_abs, spec.delta);
    return mix_with_noise(psi, spec.r);
}

DensityMatrix8 make_w(const WSpec& spec) {
    check_purity_parameter(spec.r);
    const double norm = spec.alpha * spec.alpha + spec.beta_abs * spec.beta_abs + spec.eta_abs * spec.eta_abs;
    if (std::abs(norm - 1.0) > 1e-12 || spec.beta_abs < 0.0 || spec.eta_abs < 0.0)
        throw InvalidInput(fmt::format("W amplitudes not normalized: sum of squares = {:.17g}", norm));
    Vector8c phi = Vector8c::Zero();
    phi(ket(0, 0, 1)) = spec.alpha;
    phi(ket(0, 1, 0)) = std::polar(spec.beta_abs, spec.delta);
    phi(ket(1, 0, 0)) = std::polar(spec.eta_abs, spec.epsilon);
    return mix_with_noise(phi, spec.r);
}

} // namespace tqd
