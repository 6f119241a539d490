// experiments.hpp — parameter sweeps over the initial-state families, CSV
// output, and the self-verification suites behind `tqd verify`.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tqd/discord.hpp"
#include "tqd/dynamics.hpp"
#include "tqd/states.hpp"

namespace tqd {

enum class StateFamily { Ghz, W };
StateFamily parse_family(std::string_view name);
std::string_view family_name(StateFamily f);

struct SweepConfig {
    StateFamily family = StateFamily::Ghz;
    std::vector<double> lambda_ratios; // empty: the case's default set
    double t_max = 200.0;              // in units of 1/gamma0
    int n_t = 4001;
    std::optional<double> alpha_sq; // empty: alpha^2 = 1/2 (GHZ) or equal W weights
    double r = 1.0;
    double delta = 0.0;
    double epsilon = 0.0;
    int grid_points = 101; // alpha^2 grid (case 2) or r grid (case 3) on [0, 1]
    std::uint64_t seed = 20240601;
    unsigned threads = 0; // 0: std::thread::hardware_concurrency()

    // Throws ConfigError.
    void validate() const;
};

std::vector<double> time_grid(const SweepConfig& cfg);

// Family state with the sweep conventions: GHZ beta = sqrt(1 - alpha^2);
// W beta = eta = sqrt((1 - alpha^2)/2), or all weights 1/3 when alpha_sq is unset.
DensityMatrix8 initial_state(StateFamily family, std::optional<double> alpha_sq, double r, double delta,
                             double epsilon);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// Comma separated, header row, 17 significant digits, LF endings.
void write_csv(std::ostream& out, const Table& table);

// Rows: lambda_ratio, gamma0_t, D1, D2, D3, Q.
Table run_case1(const SweepConfig& cfg);
// Rows: alpha_sq, gamma0_t, Q.
Table run_case2(const SweepConfig& cfg);
// Rows: r, gamma0_t, Q.
Table run_case3(const SweepConfig& cfg);
// Rows: lambda_ratio, gamma0_t, p_t [, p_t_numeric].
Table run_pt(const SweepConfig& cfg, bool with_numeric);

struct VerifyOptions {
    std::uint64_t seed = 20240601;
    int kraus_samples = 500;
    int roundtrip_samples = 1000;
    int brute_force_samples = 200;
    int tqc_oracle_samples = 10;
    int classicality_samples = 100;
    BruteForceGrid grid{};
    // Element rules used for the closed-form evolution; nullptr means
    // closed_form_table(). Lets tests inject faults.
    const EvolutionTable* table = nullptr;
};

struct SuiteResult {
    std::string name;
    int samples = 0;
    double max_error = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct VerifyReport {
    std::uint64_t seed = 0;
    std::vector<SuiteResult> suites;
    bool passed() const;
    std::string to_json() const;
};

VerifyReport run_verify(const VerifyOptions& options);

struct DiscordFileResult {
    DiscordReport report;
    double pairwise_12 = 0.0;
    double pairwise_13 = 0.0;
    double pairwise_23 = 0.0;
};

// Throws IoError, ParseError, or InvalidInput (with state diagnostics).
DiscordFileResult run_discord_file(const std::filesystem::path& path);
std::string format_discord_result(const DiscordFileResult& result);

} // namespace tqd
