// tqd.cpp — command-line front end.
//
//   tqd case1|case2|case3 [flags]   sweep tables as CSV
//   tqd pt [--numeric]              survival function P_t
//   tqd discord <file>              GQD/TQC of a state file
//   tqd verify                      run every oracle suite
//
// Exit codes: 0 success, 1 verification failure, 2 configuration error,
// 3 I/O or input-file error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tqd/error.hpp"
#include "tqd/experiments.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kConfigError = 2;
constexpr int kIoError = 3;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw tqd::IoError("cannot open output file '" + out_path + "'");
    out << text;
    if (!out) throw tqd::IoError("failed writing '" + out_path + "'");
}

std::string csv(const tqd::Table& table) {
    std::ostringstream ss;
    tqd::write_csv(ss, table);
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Geometric discord and total quantum correlation of three qubits in Lorentzian reservoirs"};
    app.set_config("--config", "", "key=value file; command-line flags take precedence");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1);
    app.fallthrough();

    tqd::SweepConfig cfg;
    std::string family = "ghz";
    std::string out_path;
    double alpha_sq = -1.0;
    app.add_option("--state", family, "initial state family")->check(CLI::IsMember({"ghz", "w"}));
    app.add_option("--alpha-sq", alpha_sq, "alpha^2 of the initial state");
    app.add_option("--r", cfg.r, "purity parameter")->capture_default_str();
    app.add_option("--delta", cfg.delta, "phase of beta (radians)");
    app.add_option("--epsilon", cfg.epsilon, "phase of eta (radians, W family)");
    app.add_option("--lambda-ratios", cfg.lambda_ratios, "lambda/gamma0 values")->delimiter(',');
    app.add_option("--t-max", cfg.t_max, "upper end of the gamma0*t grid")->capture_default_str();
    app.add_option("--steps", cfg.n_t, "number of time points")->capture_default_str();
    app.add_option("--grid-points", cfg.grid_points, "alpha^2 / r grid size for case2 / case3")
        ->capture_default_str();
    app.add_option("--threads", cfg.threads, "worker threads (0 = all cores)");
    app.add_option("--out", out_path, "output path (default stdout)");
    app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();

    auto* case1 = app.add_subcommand("case1", "D1, D2, D3 and Q versus gamma0*t for several lambda/gamma0");
    auto* case2 = app.add_subcommand("case2", "Q versus gamma0*t and alpha^2");
    auto* case3 = app.add_subcommand("case3", "Q versus gamma0*t and purity r");
    auto* pt = app.add_subcommand("pt", "survival function P_t");
    bool with_numeric = false;
    pt->add_flag("--numeric", with_numeric, "add the Volterra-solver column");

    auto* discord = app.add_subcommand("discord", "GQD/TQC of a density matrix file");
    std::string state_file;
    discord->add_option("file", state_file, "8x8 density matrix in a+bi text format")->required();

    auto* verify = app.add_subcommand("verify", "run all oracle suites");
    tqd::VerifyOptions vopt;
    verify->add_option("--kraus-samples", vopt.kraus_samples)->capture_default_str();
    verify->add_option("--roundtrip-samples", vopt.roundtrip_samples)->capture_default_str();
    verify->add_option("--brute-samples", vopt.brute_force_samples)->capture_default_str();
    verify->add_option("--tqc-samples", vopt.tqc_oracle_samples)->capture_default_str();
    verify->add_option("--classicality-samples", vopt.classicality_samples)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        cfg.family = tqd::parse_family(family);
        if (alpha_sq >= 0.0) cfg.alpha_sq = alpha_sq;
        else if (app.count("--alpha-sq")) throw tqd::ConfigError("--alpha-sq must lie in [0, 1]");

        if (*case1) emit(csv(tqd::run_case1(cfg)), out_path);
        else if (*case2) emit(csv(tqd::run_case2(cfg)), out_path);
        else if (*case3) emit(csv(tqd::run_case3(cfg)), out_path);
        else if (*pt) emit(csv(tqd::run_pt(cfg, with_numeric)), out_path);
        else if (*discord) emit(tqd::format_discord_result(tqd::run_discord_file(state_file)) + "\n", out_path);
        else if (*verify) {
            vopt.seed = cfg.seed;
            const tqd::VerifyReport report = tqd::run_verify(vopt);
            emit(report.to_json() + "\n", out_path);
            return report.passed() ? kOk : kVerifyFailed;
        }
    } catch (const tqd::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kConfigError;
    } catch (const tqd::IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kIoError;
    } catch (const tqd::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kIoError;
    } catch (const tqd::InvalidInput& e) {
        // A state file that is not a density matrix is bad input data, not bad flags.
        std::cerr << "invalid input: " << e.what() << '\n';
        return *discord ? kIoError : kConfigError;
    } catch (const tqd::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kVerifyFailed;
    }
    return kOk;
}
