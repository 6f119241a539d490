// experiments.cpp

#include "tqd/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <random>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

#include "tqd/error.hpp"

namespace tqd {

namespace {

const std::vector<double> kCase1Ratios{2.5, 0.1, 0.05, 0.01};
const std::vector<double> kSingleRatio{0.01};

// Runs fn(i) for i in [0, n) on up to `threads` workers. Each index is written
// by exactly one worker, so callers fill preallocated slots and the output
// order never depends on scheduling.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += threads) fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

const std::vector<double>& ratios_or(const SweepConfig& cfg, const std::vector<double>& fallback) {
    return cfg.lambda_ratios.empty() ? fallback : cfg.lambda_ratios;
}

double single_ratio(const SweepConfig& cfg) {
    const auto& ratios = ratios_or(cfg, kSingleRatio);
    if (ratios.size() != 1) throw ConfigError("case2/case3 take exactly one --lambda-ratios value");
    return ratios.front();
}

std::vector<double> unit_grid(int points) {
    std::vector<double> g(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = static_cast<double>(i) / (points - 1);
    return g;
}

double q_at(const DensityMatrix8& rho0, double t, const ReservoirParams& params) {
    return tqc(evolve_three(rho0, p_t(t, params))).q;
}

} // namespace

StateFamily parse_family(std::string_view name) {
    if (name == "ghz") return StateFamily::Ghz;
    if (name == "w") return StateFamily::W;
    throw ConfigError(fmt::format("unknown state family '{}' (expected ghz or w)", name));
}

std::string_view family_name(StateFamily f) { return f == StateFamily::Ghz ? "ghz" : "w"; }

void SweepConfig::validate() const {
    if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ConfigError("t_max must be positive");
    if (n_t < 2) throw ConfigError("the time grid needs at least 2 points");
    for (double r : lambda_ratios)
        if (!(r > 0.0) || !std::isfinite(r)) throw ConfigError(fmt::format("lambda ratio {} must be positive", r));
    if (alpha_sq && !(*alpha_sq >= 0.0 && *alpha_sq <= 1.0)) throw ConfigError("alpha_sq must lie in [0, 1]");
    if (!(r >= 0.0 && r <= 1.0)) throw ConfigError("r must lie in [0, 1]");
    if (grid_points < 2) throw ConfigError("grid_points must be at least 2");
    if (!std::isfinite(delta) || !std::isfinite(epsilon)) throw ConfigError("phases must be finite");
}

std::vector<double> time_grid(const SweepConfig& cfg) {
    std::vector<double> t(static_cast<std::size_t>(cfg.n_t));
    for (int i = 0; i < cfg.n_t; ++i) t[static_cast<std::size_t>(i)] = cfg.t_max * i / (cfg.n_t - 1);
    return t;
}

DensityMatrix8 initial_state(StateFamily family, std::optional<double> alpha_sq, double r, double delta,
                             double epsilon) {
    if (family == StateFamily::Ghz) {
        const double a2 = alpha_sq.value_or(0.5);
        return make_ghz(GhzSpec{std::sqrt(a2), std::sqrt(1.0 - a2), delta, r});
    }
    WSpec spec;
    if (alpha_sq) {
        const double rest = std::sqrt((1.0 - *alpha_sq) / 2.0);
        spec.alpha = std::sqrt(*alpha_sq);
        spec.beta_abs = rest;
        spec.eta_abs = rest;
    }
    spec.delta = delta;
    spec.epsilon = epsilon;
    spec.r = r;
    return make_w(spec);
}

void write_csv(std::ostream& out, const Table& table) {
    std::string buf;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) buf += ',';
        buf += table.columns[i];
    }
    buf += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) buf += ',';
            buf += fmt::format("{:.17g}", row[i]);
        }
        buf += '\n';
    }
    out << buf;
}

Table run_case1(const SweepConfig& cfg) {
    cfg.validate();
    const auto& ratios = ratios_or(cfg, kCase1Ratios);
    const auto times = time_grid(cfg);
    const DensityMatrix8 rho0 = initial_state(cfg.family, cfg.alpha_sq, cfg.r, cfg.delta, cfg.epsilon);

    Table table{{"lambda_ratio", "gamma0_t", "D1", "D2", "D3", "Q"}, {}};
    table.rows.resize(ratios.size() * times.size());
    parallel_for(table.rows.size(), cfg.threads, [&](std::size_t i) {
        const double ratio = ratios[i / times.size()];
        const double t = times[i % times.size()];
        const DiscordReport rep = tqc(evolve_three(rho0, p_t(t, ReservoirParams::from_ratio(ratio))));
        table.rows[i] = {ratio, t, rep.d1, rep.d2, rep.d3, rep.q};
    });
    return table;
}

Table run_case2(const SweepConfig& cfg) {
    cfg.validate();
    const ReservoirParams params = ReservoirParams::from_ratio(single_ratio(cfg));
    const auto times = time_grid(cfg);
    const auto alphas = unit_grid(cfg.grid_points);

    std::vector<DensityMatrix8> initial;
    initial.reserve(alphas.size());
    for (double a2 : alphas) initial.push_back(initial_state(cfg.family, a2, cfg.r, cfg.delta, cfg.epsilon));

    Table table{{"alpha_sq", "gamma0_t", "Q"}, {}};
    table.rows.resize(alphas.size() * times.size());
    parallel_for(table.rows.size(), cfg.threads, [&](std::size_t i) {
        const std::size_t a = i / times.size();
        const double t = times[i % times.size()];
        table.rows[i] = {alphas[a], t, q_at(initial[a], t, params)};
    });
    return table;
}

Table run_case3(const SweepConfig& cfg) {
    cfg.validate();
    const ReservoirParams params = ReservoirParams::from_ratio(single_ratio(cfg));
    const auto times = time_grid(cfg);
    const auto purities = unit_grid(cfg.grid_points);

    std::vector<DensityMatrix8> initial;
    initial.reserve(purities.size());
    for (double r : purities) initial.push_back(initial_state(cfg.family, cfg.alpha_sq, r, cfg.delta, cfg.epsilon));

    Table table{{"r", "gamma0_t", "Q"}, {}};
    table.rows.resize(purities.size() * times.size());
    parallel_for(table.rows.size(), cfg.threads, [&](std::size_t i) {
        const std::size_t k = i / times.size();
        const double t = times[i % times.size()];
        table.rows[i] = {purities[k], t, q_at(initial[k], t, params)};
    });
    return table;
}

Table run_pt(const SweepConfig& cfg, bool with_numeric) {
    cfg.validate();
    const auto& ratios = ratios_or(cfg, kCase1Ratios);
    const auto times = time_grid(cfg);
    Table table{{"lambda_ratio", "gamma0_t", "p_t"}, {}};
    if (with_numeric) table.columns.push_back("p_t_numeric");

    for (double ratio : ratios) {
        const ReservoirParams params = ReservoirParams::from_ratio(ratio);
        SampledCurve numeric;
        std::size_t stride = 1;
        if (with_numeric) {
            const double spacing = times[1] - times[0];
            const double dt_max = std::min(1e-4, 1e-3 / std::max(params.gamma0, params.lambda));
            stride = static_cast<std::size_t>(std::ceil(spacing / dt_max));
            numeric = p_t_numeric(params, cfg.t_max, spacing / static_cast<double>(stride));
        }
        for (std::size_t i = 0; i < times.size(); ++i) {
            std::vector<double> row{ratio, times[i], p_t(times[i], params).value()};
            if (with_numeric) row.push_back(numeric.p[std::min(i * stride, numeric.p.size() - 1)]);
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

// --- verification -----------------------------------------------------------

bool VerifyReport::passed() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
}

std::string VerifyReport::to_json() const {
    nlohmann::ordered_json j;
    j["seed"] = seed;
    j["passed"] = passed();
    j["suites"] = nlohmann::ordered_json::array();
    for (const auto& s : suites) {
        j["suites"].push_back({{"name", s.name},
                               {"samples", s.samples},
                               {"max_error", s.max_error},
                               {"tolerance", s.tolerance},
                               {"passed", s.passed}});
    }
    return j.dump(2);
}

namespace {

SuiteResult finish(std::string name, int samples, double max_error, double tolerance) {
    return SuiteResult{std::move(name), samples, max_error, tolerance, max_error < tolerance};
}

Matrix4c bell_state() {
    Matrix4c b = Matrix4c::Zero();
    // (|00> + |11>)/sqrt2; |11> is index 0 and |00> index 3 in excited-first order.
    b(0, 0) = b(0, 3) = b(3, 0) = b(3, 3) = 0.5;
    return b;
}

} // namespace

VerifyReport run_verify(const VerifyOptions& options) {
    const EvolutionTable& table = options.table ? *options.table : closed_form_table();
    VerifyReport report;
    report.seed = options.seed;
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    {
        double worst = 0.0;
        for (int i = 0; i < options.kraus_samples; ++i) {
            const DensityMatrix8 rho = random_state8(rng);
            const SurvivalAmplitude p(unit(rng));
            const Matrix8c closed = evolve_three(rho.matrix(), p, table);
            worst = std::max(worst, (closed - kraus_oracle(rho.matrix(), p)).cwiseAbs().maxCoeff());
        }
        report.suites.push_back(finish("kraus_vs_closed_form", options.kraus_samples, worst, 1e-12));
    }

    {
        double worst = 0.0;
        for (double ratio : kCase1Ratios) {
            const ReservoirParams params = ReservoirParams::from_ratio(ratio);
            const SampledCurve curve = p_t_numeric(params, 10.0, 1e-4);
            for (std::size_t i = 0; i < curve.t.size(); ++i)
                worst = std::max(worst, std::abs(curve.p[i] - p_t(curve.t[i], params).value()));
        }
        report.suites.push_back(finish("volterra_vs_closed_form", 4, worst, 1e-6));
    }

    {
        double worst = 0.0;
        const ReservoirParams params = ReservoirParams::from_ratio(0.01);
        for (double tz : p_t_zeros(params, 3)) worst = std::max(worst, p_t(tz, params).value());
        report.suites.push_back(finish("pt_zero_formula", 3, worst, 1e-12));
    }

    {
        double worst_round_trip = 0.0;
        double worst_purity = 0.0;
        for (int i = 0; i < options.roundtrip_samples; ++i) {
            const DensityMatrix8 rho = random_state8(rng);
            const CoefficientTensor c = coeff_tensor(rho);
            worst_round_trip =
                std::max(worst_round_trip, (rho_from_coeff(c).matrix - rho.matrix()).cwiseAbs().maxCoeff());
            worst_purity = std::max(worst_purity, std::abs(rho.purity() - c.norm_squared()));
        }
        report.suites.push_back(
            finish("coefficient_round_trip", options.roundtrip_samples, worst_round_trip, 1e-12));
        report.suites.push_back(finish("purity_identity", options.roundtrip_samples, worst_purity, 1e-12));
    }

    {
        double worst = 0.0;
        for (int i = 0; i < options.brute_force_samples; ++i) {
            const DensityMatrix8 rho = random_state8(rng);
            const BlochDecomposition b = bloch_parts(coeff_tensor(rho));
            for (Qubit k : {Qubit::One, Qubit::Two, Qubit::Three}) {
                const double closed = gqd_k(b, k).value;
                const double brute = gqd_brute_force(rho.matrix(), k, options.grid).value;
                worst = std::max(worst, std::abs(closed - brute));
            }
        }
        report.suites.push_back(finish("brute_force_vs_closed_form", options.brute_force_samples, worst, 1e-5));
    }

    {
        double worst = 0.0;
        std::vector<DensityMatrix8> states{make_ghz(GhzSpec{}), make_w(WSpec{})};
        for (int i = 0; i < options.tqc_oracle_samples; ++i) states.push_back(random_state8(rng));
        for (const DensityMatrix8& rho : states) {
            const DiscordReport rep = tqc(rho);
            const auto oracle = tqc_brute_force(rho.matrix(), rep.axes, options.grid);
            worst = std::max({worst, std::abs(rep.d1 - oracle[0]), std::abs(rep.d2 - oracle[1]),
                              std::abs(rep.d3 - oracle[2])});
        }
        report.suites.push_back(finish("successive_measurement_oracle", static_cast<int>(states.size()), worst, 1e-5));
    }

    {
        double worst = 0.0;
        for (int i = 0; i < options.classicality_samples; ++i) {
            const CoefficientTensor c = coeff_tensor(random_state8(rng));
            for (Qubit k : {Qubit::One, Qubit::Two, Qubit::Three}) {
                const DiscordTerm term = gqd_k(c, k);
                worst = std::max(worst, gqd_k(project_measure(c, term.axis, k), k).value);
            }
        }
        report.suites.push_back(finish("post_measurement_classicality", options.classicality_samples, worst, 1e-8));
    }

    {
        double worst_half = std::abs(gqd_k(coeff_tensor(make_ghz(GhzSpec{})), Qubit::One).value - 0.5);
        worst_half = std::max(worst_half, std::abs(gqd_two_qubit(bell_state()) - 0.5));
        report.suites.push_back(finish("point_values_half", 2, worst_half, 1e-8));

        double worst_zero = tqc(DensityMatrix8::maximally_mixed()).q;
        for (int b = 0; b < 8; ++b) {
            const DiscordReport rep = tqc(DensityMatrix8::product_basis_state(b >> 2, (b >> 1) & 1, b & 1));
            worst_zero = std::max({worst_zero, rep.d1, rep.d2, rep.d3});
        }
        report.suites.push_back(finish("point_values_zero", 9, worst_zero, 1e-10));
    }
    return report;
}

DiscordFileResult run_discord_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
    const Matrix8c m = parse_density_matrix(in);
    const DensityMatrix8 rho(m);

    DiscordFileResult out;
    out.report = tqc(rho);
    out.pairwise_12 = gqd_two_qubit(reduce_two_qubit(rho, QubitPair::P12));
    out.pairwise_13 = gqd_two_qubit(reduce_two_qubit(rho, QubitPair::P13));
    out.pairwise_23 = gqd_two_qubit(reduce_two_qubit(rho, QubitPair::P23));
    return out;
}

std::string format_discord_result(const DiscordFileResult& result) {
    const DiscordReport& r = result.report;
    nlohmann::ordered_json j;
    j["d1"] = r.d1;
    j["d2"] = r.d2;
    j["d3"] = r.d3;
    j["q"] = r.q;
    j["ordering"] = r.ordering;
    j["axes"] = nlohmann::ordered_json::array();
    for (const auto& axis : r.axes) {
        const Vec3& e = axis.vector();
        j["axes"].push_back({e(0), e(1), e(2)});
    }
    j["degenerate_axes"] = {r.degenerate[0], r.degenerate[1], r.degenerate[2]};
    j["pairwise_gqd"] = {{"12", result.pairwise_12}, {"13", result.pairwise_13}, {"23", result.pairwise_23}};
    return j.dump(2);
}

} // namespace tqd
