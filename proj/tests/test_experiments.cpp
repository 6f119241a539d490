#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_support.hpp"
#include "tqd/dynamics.hpp"
#include "tqd/error.hpp"
#include "tqd/experiments.hpp"

using namespace tqd;

namespace {

std::string csv(const Table& t) {
    std::ostringstream out;
    write_csv(out, t);
    return out.str();
}

std::vector<double> column(const Table& t, std::size_t col, std::size_t first, std::size_t count) {
    std::vector<double> out;
    for (std::size_t i = first; i < first + count; ++i) out.push_back(t.rows[i][col]);
    return out;
}

// Contiguous runs with q > threshold at times after t_start.
int count_lobes(const std::vector<double>& t, const std::vector<double>& q, double t_start, double threshold) {
    int lobes = 0;
    bool inside = false;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] <= t_start) continue;
        const bool above = q[i] > threshold;
        if (above && !inside) ++lobes;
        inside = above;
    }
    return lobes;
}

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << body;
    return path;
}

} // namespace

TEST_CASE("SweepConfig validation and helpers") {
    SweepConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    CHECK(parse_family("w") == StateFamily::W);
    CHECK(family_name(StateFamily::Ghz) == "ghz");
    CHECK_THROWS_AS(parse_family("cluster"), ConfigError);

    auto bad = [](auto mutate) {
        SweepConfig c;
        mutate(c);
        CHECK_THROWS_AS(c.validate(), ConfigError);
    };
    bad([](SweepConfig& c) { c.t_max = 0.0; });
    bad([](SweepConfig& c) { c.n_t = 1; });
    bad([](SweepConfig& c) { c.lambda_ratios = {0.1, -2.0}; });
    bad([](SweepConfig& c) { c.alpha_sq = 1.5; });
    bad([](SweepConfig& c) { c.r = -0.5; });

    cfg.t_max = 3.0;
    cfg.n_t = 4;
    const auto t = time_grid(cfg);
    CHECK(t == std::vector<double>{0.0, 1.0, 2.0, 3.0});

    SweepConfig two_ratios;
    two_ratios.lambda_ratios = {0.1, 0.2};
    CHECK_THROWS_AS(run_case2(two_ratios), ConfigError);
}

TEST_CASE("case1 point values") {
    SweepConfig cfg;
    cfg.n_t = 3;
    cfg.t_max = 1.0;
    const Table t = run_case1(cfg);
    CHECK(t.columns == std::vector<std::string>{"lambda_ratio", "gamma0_t", "D1", "D2", "D3", "Q"});
    REQUIRE(t.rows.size() == 12);
    for (std::size_t block = 0; block < 4; ++block) {
        const auto& row = t.rows[block * 3];
        CHECK(row[1] == 0.0);
        CHECK(row[2] == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(row[5] == doctest::Approx(row[2] + row[3] + row[4]).epsilon(1e-15));
    }
    CHECK(t.rows[0][0] == 2.5);
    CHECK(t.rows[11][0] == 0.01);

    SUBCASE("full decay at the first zero") {
        SweepConfig z;
        z.lambda_ratios = {0.01};
        z.t_max = p_t_zeros(ReservoirParams::from_ratio(0.01), 1)[0];
        z.n_t = 2;
        for (StateFamily f : {StateFamily::Ghz, StateFamily::W}) {
            z.family = f;
            const auto& last = run_case1(z).rows.back();
            for (int c = 2; c < 6; ++c) CHECK(std::abs(last[c]) < 1e-10);
        }
    }
}

TEST_CASE("Markovian curve has no revival on the default grid") {
    SweepConfig cfg;
    cfg.lambda_ratios = {2.5};
    const Table t = run_case1(cfg);
    double running_min = 1e300, worst_rise = 0.0;
    for (const auto& row : t.rows) {
        running_min = std::min(running_min, row[5]);
        worst_rise = std::max(worst_rise, row[5] - running_min);
    }
    CHECK(worst_rise <= 1e-6);
}

TEST_CASE("non-Markovian revival on a grid aligned with the zero") {
    const double t1 = p_t_zeros(ReservoirParams::from_ratio(0.01), 1)[0];
    SweepConfig cfg;
    cfg.lambda_ratios = {0.01};
    cfg.t_max = 4.0 * t1;
    cfg.n_t = 4 * 250 + 1; // t1 lands on index 250
    const Table t = run_case1(cfg);
    CHECK(t.rows[250][1] == doctest::Approx(t1).epsilon(1e-14));
    CHECK(t.rows[250][5] < 1e-10);
    double later = 0.0;
    for (std::size_t i = 251; i < t.rows.size(); ++i) later = std::max(later, t.rows[i][5]);
    CHECK(later > 1e-3);
}

TEST_CASE("revival lobe count grows as the reservoir gets more non-Markovian") {
    SweepConfig cfg;
    cfg.lambda_ratios = {0.1, 0.05, 0.01};
    const Table t = run_case1(cfg);
    const std::size_t n = static_cast<std::size_t>(cfg.n_t);
    std::vector<int> lobes;
    for (std::size_t k = 0; k < 3; ++k) {
        const double t1 = p_t_zeros(ReservoirParams::from_ratio(cfg.lambda_ratios[k]), 1)[0];
        lobes.push_back(count_lobes(column(t, 1, k * n, n), column(t, 5, k * n, n), t1, 1e-6));
    }
    CAPTURE(lobes[0]);
    CAPTURE(lobes[1]);
    CAPTURE(lobes[2]);
    CHECK(lobes[0] >= 1);
    CHECK(lobes[0] <= lobes[1]);
    CHECK(lobes[1] <= lobes[2]);
}

TEST_CASE("case2 structure") {
    SweepConfig cfg;
    cfg.n_t = 5;
    cfg.t_max = 50.0;
    const Table t = run_case2(cfg);
    CHECK(t.columns == std::vector<std::string>{"alpha_sq", "gamma0_t", "Q"});
    REQUIRE(t.rows.size() == 101 * 5);
    std::size_t argmax = 0;
    for (std::size_t a = 0; a < 101; ++a)
        if (t.rows[a * 5][2] > t.rows[argmax * 5][2]) argmax = a;
    CHECK(t.rows[argmax * 5][0] == 0.5);
    CHECK(t.rows[0][2] < 1e-12); // alpha^2 = 0, t = 0: |111>
    for (std::size_t i = 0; i < 5; ++i) CHECK(t.rows[100 * 5 + i][2] < 1e-12);

    SUBCASE("W family keeps correlations away from the boundary") {
        cfg.family = StateFamily::W;
        const Table w = run_case2(cfg);
        CHECK(w.rows[50 * 5][2] > 0.1);
        for (std::size_t i = 0; i < 5; ++i) CHECK(w.rows[100 * 5 + i][2] < 1e-12); // |001>
    }
}

TEST_CASE("case3 structure") {
    for (StateFamily f : {StateFamily::Ghz, StateFamily::W}) {
        SweepConfig cfg;
        cfg.family = f;
        cfg.n_t = 6;
        cfg.t_max = 40.0;
        const Table t = run_case3(cfg);
        REQUIRE(t.rows.size() == 101 * 6);
        for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(t.rows[i][2]) < 1e-10);
        for (std::size_t k = 1; k < 101; ++k) CHECK(t.rows[k * 6][2] >= t.rows[(k - 1) * 6][2]);

        SweepConfig c1 = cfg;
        c1.lambda_ratios = {0.01};
        const Table ref = run_case1(c1);
        for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(t.rows[100 * 6 + i][2] - ref.rows[i][5]) < 1e-12);
    }
}

TEST_CASE("CSV output") {
    SweepConfig cfg;
    cfg.n_t = 11;
    cfg.t_max = 30.0;
    cfg.threads = 1;
    const std::string serial = csv(run_case1(cfg));
    CHECK(serial.rfind("lambda_ratio,gamma0_t,D1,D2,D3,Q\n", 0) == 0);
    CHECK(serial.find('\r') == std::string::npos);
    CHECK(serial.find("\n2.5,0,0.5") != std::string::npos);
    CHECK(serial.back() == '\n');
    CHECK(std::count(serial.begin(), serial.end(), '\n') == 1 + 44);

    Table tiny{{"x"}, {{0.1}, {1.0 / 3.0}}};
    CHECK(csv(tiny) == "x\n0.10000000000000001\n0.33333333333333331\n");

    SUBCASE("byte-identical across runs and thread counts") {
        CHECK(csv(run_case1(cfg)) == serial);
        cfg.threads = 4;
        CHECK(csv(run_case1(cfg)) == serial);
        cfg.threads = 3;
        cfg.family = StateFamily::W;
        const std::string w3 = csv(run_case3(cfg));
        cfg.threads = 1;
        CHECK(csv(run_case3(cfg)) == w3);
    }
}

TEST_CASE("pt table") {
    SweepConfig cfg;
    cfg.lambda_ratios = {0.05};
    cfg.t_max = 5.0;
    cfg.n_t = 51;
    const Table t = run_pt(cfg, true);
    CHECK(t.columns.size() == 4);
    for (const auto& row : t.rows) {
        CHECK(row[2] == p_t(row[1], ReservoirParams::from_ratio(0.05)).value());
        CHECK(std::abs(row[3] - row[2]) < 1e-6);
    }
}

TEST_CASE("verify report") {
    VerifyOptions opts;
    opts.kraus_samples = 50;
    opts.roundtrip_samples = 50;
    opts.brute_force_samples = 2;
    opts.tqc_oracle_samples = 1;
    opts.classicality_samples = 20;
    const VerifyReport a = run_verify(opts);
    CHECK(a.passed());
    CHECK(a.to_json() == run_verify(opts).to_json());
    CHECK(a.to_json().find("\"seed\": 20240601") != std::string::npos);

    SUBCASE("perturbed evolution table fails the Kraus suite") {
        EvolutionTable broken = closed_form_table();
        broken[27].terms.back().sqrt_p_power += 1;
        opts.table = &broken;
        const VerifyReport b = run_verify(opts);
        CHECK_FALSE(b.passed());
        for (const SuiteResult& s : b.suites)
            if (s.name == "kraus_vs_closed_form") CHECK_FALSE(s.passed);
    }
}

TEST_CASE("discord file") {
    SUBCASE("maximally mixed") {
        const Matrix8c m = Matrix8c::Identity() / 8.0;
        const auto r = run_discord_file(write_temp("tqd_mixed.txt", format_density_matrix(m)));
        CHECK(r.report.q == 0.0);
        CHECK(r.pairwise_12 == 0.0);
        CHECK(r.pairwise_23 == 0.0);
    }
    SUBCASE("GHZ") {
        const Eigen::VectorXcd psi = (test::ket(0, 0, 0) + test::ket(1, 1, 1)) / std::sqrt(2.0);
        const auto r = run_discord_file(write_temp("tqd_ghz.txt", format_density_matrix(psi * psi.adjoint())));
        CHECK(r.report.d1 == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(r.pairwise_13 < 1e-12); // reductions are classically correlated
        const std::string json = format_discord_result(r);
        CHECK(json.find("\"pairwise_gqd\"") != std::string::npos);
        CHECK(json.find("\"ordering\": \"1>2>3\"") != std::string::npos);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(run_discord_file("/nonexistent/state.txt"), IoError);
        CHECK_THROWS_AS(run_discord_file(write_temp("tqd_bad.txt", "1 2 3\n")), ParseError);
        std::string not_a_state;
        for (int r = 0; r < 8; ++r) not_a_state += "1+0i 0+0i 0+0i 0+0i 0+0i 0+0i 0+0i 0+0i\n";
        CHECK_THROWS_AS(run_discord_file(write_temp("tqd_nonstate.txt", not_a_state)), InvalidInput);
    }
}
