// dynamics.cpp

#include "tqd/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "tqd/error.hpp"

namespace tqd {

ReservoirParams::ReservoirParams(double g, double l) : gamma0(g), lambda(l) {
    if (!(std::isfinite(g) && g > 0.0) || !(std::isfinite(l) && l > 0.0))
        throw InvalidInput(fmt::format("reservoir parameters must be positive (gamma0={}, lambda={})", g, l));
}

ReservoirParams ReservoirParams::from_ratio(double ratio) { return ReservoirParams(1.0, ratio); }

Regime regime(const ReservoirParams& params) {
    const double disc = params.lambda * (2.0 * params.gamma0 - params.lambda);
    if (disc > 0.0) return Regime::NonMarkovian;
    if (disc < 0.0) return Regime::Markovian;
    return Regime::Critical;
}

SurvivalAmplitude::SurvivalAmplitude(double p) : p_(p) {
    if (!(p >= 0.0 && p <= 1.0 + 1e-12)) throw InvalidInput(fmt::format("survival amplitude {} outside [0, 1]", p));
}

SurvivalAmplitude p_t(double t, const ReservoirParams& params) {
    if (!(t >= 0.0)) throw InvalidInput(fmt::format("p_t: time must be nonnegative (got {})", t));
    const double lam = params.lambda;
    double amplitude = 0.0; // e^{-lambda t / 2} [ ... ]
    switch (regime(params)) {
    case Regime::NonMarkovian: {
        const double d = std::sqrt(lam * (2.0 * params.gamma0 - lam));
        amplitude = std::exp(-0.5 * lam * t) * (std::cos(0.5 * d * t) + (lam / d) * std::sin(0.5 * d * t));
        break;
    }
    case Regime::Markovian: {
        const double dh = std::sqrt(lam * (lam - 2.0 * params.gamma0));
        const double x = 0.5 * dh * t;
        if (x < 300.0) {
            amplitude = std::exp(-0.5 * lam * t) * (std::cosh(x) + (lam / dh) * std::sinh(x));
        } else {
            // e^{-lambda t/2} cosh, sinh written through decaying exponentials.
            const double grow = std::exp(x - 0.5 * lam * t);
            const double decay = std::exp(-x - 0.5 * lam * t);
            amplitude = 0.5 * (grow + decay) + 0.5 * (lam / dh) * (grow - decay);
        }
        break;
    }
    case Regime::Critical: amplitude = std::exp(-0.5 * lam * t) * (1.0 + 0.5 * lam * t); break;
    }
    return SurvivalAmplitude(std::min(amplitude * amplitude, 1.0));
}

std::vector<double> p_t_zeros(const ReservoirParams& params, int n_max) {
    if (regime(params) != Regime::NonMarkovian)
        throw NoZerosError("P_t has no zeros unless 2*gamma0 > lambda");
    if (n_max < 0) throw InvalidInput("p_t_zeros: n_max must be nonnegative");
    const double lam = params.lambda;
    const double d = std::sqrt(lam * (2.0 * params.gamma0 - lam));
    const double phase = std::atan(d / lam);
    std::vector<double> zeros;
    zeros.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) zeros.push_back(2.0 * (n * std::numbers::pi - phase) / d);
    return zeros;
}

double memory_kernel(double tau, const ReservoirParams& params) {
    return 0.5 * params.gamma0 * params.lambda * std::exp(-params.lambda * std::abs(tau));
}

SampledCurve p_t_numeric(const ReservoirParams& params, double t_max, double dt) {
    if (!(dt > 0.0) || dt > 1e-3 / std::max(params.gamma0, params.lambda))
        throw AccuracyError(fmt::format("p_t_numeric: dt={} exceeds 1e-3/max(gamma0, lambda)", dt));
    if (!(t_max >= 0.0)) throw InvalidInput("p_t_numeric: t_max must be nonnegative");

    const auto steps = static_cast<std::size_t>(std::ceil(t_max / dt - 1e-9));
    SampledCurve out;
    out.t.reserve(steps + 1);
    out.p.reserve(steps + 1);
    out.t.push_back(0.0);
    out.p.push_back(1.0);

    // The integral equation holds for the amplitude G with P = G^2.
    // The kernel is kappa * exp(-lambda tau), so the trapezoidal convolution
    // sum obeys I_{n+1} = E I_n + (h/2)(E G_n + G_{n+1}) with E = exp(-lambda h).
    const double kappa = 0.5 * params.gamma0 * params.lambda;
    const double e = std::exp(-params.lambda * dt);
    const double h = dt;
    double g = 1.0;
    double conv = 0.0;
    for (std::size_t n = 0; n < steps; ++n) {
        const double g_next =
            (g * (1.0 - 0.25 * h * h * kappa * e) - 0.5 * h * kappa * (1.0 + e) * conv) / (1.0 + 0.25 * h * h * kappa);
        conv = e * conv + 0.5 * h * (e * g + g_next);
        g = g_next;
        out.t.push_back(static_cast<double>(n + 1) * dt);
        out.p.push_back(g * g);
    }
    return out;
}

Matrix2c evolve_single(const Matrix2c& rho2, SurvivalAmplitude p) {
    const double pv = std::min(p.value(), 1.0);
    const double sp = std::sqrt(pv);
    Matrix2c out;
    out(0, 0) = pv * rho2(0, 0);
    out(0, 1) = sp * rho2(0, 1);
    out(1, 0) = sp * rho2(1, 0);
    out(1, 1) = rho2(1, 1) + (1.0 - pv) * rho2(0, 0);
    return out;
}

const EvolutionTable& closed_form_table() {
    // {row, col, {{src_row, src_col, powers of sqrt(P), powers of (1-P)}, ...}}
    static const EvolutionTable table = {
        // populations
        {1, 1, {{1, 1, 6, 0}}},
        {2, 2, {{2, 2, 4, 0}, {1, 1, 4, 1}}},
        {3, 3, {{3, 3, 4, 0}, {1, 1, 4, 1}}},
        {4, 4, {{4, 4, 2, 0}, {3, 3, 2, 1}, {2, 2, 2, 1}, {1, 1, 2, 2}}},
        {5, 5, {{5, 5, 4, 0}, {1, 1, 4, 1}}},
        {6, 6, {{6, 6, 2, 0}, {5, 5, 2, 1}, {2, 2, 2, 1}, {1, 1, 2, 2}}},
        {7, 7, {{7, 7, 2, 0}, {5, 5, 2, 1}, {3, 3, 2, 1}, {1, 1, 2, 2}}},
        {8, 8, {{8, 8, 0, 0}, {7, 7, 0, 1}, {6, 6, 0, 1}, {4, 4, 0, 1},
                {5, 5, 0, 2}, {3, 3, 0, 2}, {2, 2, 0, 2}, {1, 1, 0, 3}}},
        // coherences
        {1, 2, {{1, 2, 5, 0}}},
        {1, 3, {{1, 3, 5, 0}}},
        {1, 4, {{1, 4, 4, 0}}},
        {1, 5, {{1, 5, 5, 0}}},
        {1, 6, {{1, 6, 4, 0}}},
        {1, 7, {{1, 7, 4, 0}}},
        {1, 8, {{1, 8, 3, 0}}},
        {2, 3, {{2, 3, 4, 0}}},
        {2, 4, {{2, 4, 3, 0}, {1, 3, 3, 1}}},
        {2, 5, {{2, 5, 4, 0}}},
        {2, 6, {{2, 6, 3, 0}, {1, 5, 3, 1}}},
        {2, 7, {{2, 7, 3, 0}}},
        {2, 8, {{2, 8, 2, 0}, {1, 7, 2, 1}}},
        {3, 4, {{3, 4, 3, 0}, {1, 2, 3, 1}}},
        {3, 5, {{3, 5, 4, 0}}},
        {3, 6, {{3, 6, 3, 0}}},
        {3, 7, {{3, 7, 3, 0}, {1, 5, 3, 1}}},
        {3, 8, {{3, 8, 2, 0}, {1, 6, 2, 1}}},
        {4, 5, {{4, 5, 3, 0}}},
        {4, 6, {{4, 6, 2, 0}, {3, 5, 2, 1}}},
        {4, 7, {{4, 7, 2, 0}, {2, 5, 2, 1}}},
        {4, 8, {{4, 8, 1, 0}, {3, 7, 1, 1}, {2, 6, 1, 1}, {1, 5, 1, 2}}},
        {5, 6, {{1, 2, 3, 1}, {5, 6, 3, 0}}},
        {5, 7, {{1, 3, 3, 1}, {5, 7, 3, 0}}},
        {5, 8, {{5, 8, 2, 0}, {1, 4, 2, 1}}},
        {6, 7, {{6, 7, 2, 0}, {2, 3, 2, 1}}},
        {6, 8, {{1, 3, 1, 2}, {2, 4, 1, 1}, {5, 7, 1, 1}, {6, 8, 1, 0}}},
        {7, 8, {{1, 2, 1, 2}, {3, 4, 1, 1}, {5, 6, 1, 1}, {7, 8, 1, 0}}},
    };
    return table;
}

Matrix8c evolve_three(const Matrix8c& rho0, SurvivalAmplitude p, const EvolutionTable& table) {
    const double pv = std::min(p.value(), 1.0);
    std::array<double, 7> sqrt_p_pow{};
    std::array<double, 4> decay_pow{};
    sqrt_p_pow[0] = 1.0;
    decay_pow[0] = 1.0;
    for (std::size_t i = 1; i < sqrt_p_pow.size(); ++i) sqrt_p_pow[i] = sqrt_p_pow[i - 1] * std::sqrt(pv);
    for (std::size_t i = 1; i < decay_pow.size(); ++i) decay_pow[i] = decay_pow[i - 1] * (1.0 - pv);

    Matrix8c out = Matrix8c::Zero();
    for (const ElementRule& rule : table) {
        cplx acc{0.0, 0.0};
        for (const EvolutionTerm& term : rule.terms) {
            const double coeff = sqrt_p_pow.at(static_cast<std::size_t>(term.sqrt_p_power)) *
                                 decay_pow.at(static_cast<std::size_t>(term.decay_power));
            acc += coeff * rho0(term.source_row - 1, term.source_col - 1);
        }
        const int r = rule.row - 1, c = rule.col - 1;
        if (r == c) {
            out(r, r) = acc.real();
        } else {
            out(r, c) = acc;
            out(c, r) = std::conj(acc);
        }
    }
    return out;
}

DensityMatrix8 evolve_three(const DensityMatrix8& rho0, SurvivalAmplitude p) {
    const Matrix8c out = evolve_three(rho0.matrix(), p, closed_form_table());
    const double min_eig = min_eig_herm(out);
    if (min_eig < -1e-9)
        throw ConsistencyError(fmt::format("evolve_three produced a non-PSD matrix (min eigenvalue {:.3e})", min_eig));
    return DensityMatrix8::unchecked(out);
}

Matrix8c kraus_oracle(const Matrix8c& rho0, SurvivalAmplitude p) {
    const double pv = std::min(p.value(), 1.0);
    Matrix2c k0 = Matrix2c::Zero(), k1 = Matrix2c::Zero();
    k0(0, 0) = std::sqrt(pv);
    k0(1, 1) = 1.0;
    k1(1, 0) = std::sqrt(1.0 - pv); // |0><1|
    const std::array<Matrix2c, 2> kraus{k0, k1};

    Matrix8c out = Matrix8c::Zero();
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) {
                Matrix8c k;
                for (int r = 0; r < 8; ++r)
                    for (int s = 0; s < 8; ++s)
                        k(r, s) = kraus[a](r >> 2, s >> 2) * kraus[b]((r >> 1) & 1, (s >> 1) & 1) *
                                  kraus[c](r & 1, s & 1);
                out += k * rho0 * k.adjoint();
            }
    return out;
}

DensityMatrix8 kraus_oracle(const DensityMatrix8& rho0, SurvivalAmplitude p) {
    return DensityMatrix8::unchecked(kraus_oracle(rho0.matrix(), p));
}

} // namespace tqd
