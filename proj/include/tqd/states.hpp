// states.hpp — GHZ-like and W-like pure states mixed with white noise:
// rho = r |psi><psi| + (1 - r) I/8.

#pragma once

#include "tqd/qstate.hpp"

namespace tqd {

// alpha|000> + beta_abs e^{i delta}|111>
struct GhzSpec {
    double alpha = 1.0 / 1.4142135623730951;
    double beta_abs = 1.0 / 1.4142135623730951;
    double delta = 0.0;
    double r = 1.0;
};

// alpha|001> + beta_abs e^{i delta}|010> + eta_abs e^{i epsilon}|100>
struct WSpec {
    double alpha = 0.57735026918962584;
    double beta_abs = 0.57735026918962584;
    double eta_abs = 0.57735026918962584;
    double delta = 0.0;
    double epsilon = 0.0;
    double r = 1.0;
};

// Both throw InvalidInput when the amplitudes are not normalized within 1e-12
// or r lies outside [0, 1].
DensityMatrix8 make_ghz(const GhzSpec& spec);
DensityMatrix8 make_w(const WSpec& spec);

} // namespace tqd
