#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

std::string g_binary;   // path to the lgnss executable, from argv[1]
std::string g_workdir;  // scratch directory for configs and outputs

int run_cli(const std::string& args, std::string* output = nullptr) {
    const std::string out_file = g_workdir + "/cli_output.txt";
    const std::string cmd = g_binary + " " + args + " > " + out_file + " 2>&1";
    const int status = std::system(cmd.c_str());
    if (output) {
        std::ifstream in(out_file);
        std::stringstream ss;
        ss << in.rdbuf();
        *output = ss.str();
    }
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

// A deliberately small but complete optimization setup: coarse grid, short
// window, station-keeping off so the CLI paths stay fast.
std::string small_run_config(const std::string& out_dir, int budget, int seed) {
    std::ostringstream ss;
    ss << R"({
  "grid": {"points": 80},
  "sampling": {"step_s": 1800.0, "window_hours": 6.0},
  "stationkeeping": {"mode": "off"},
  "moea": {"initial_population": 16, "history_stride": 16, "checkpoint_stride": 32},
  "run": {"seed": )"
       << seed << R"(, "budget": )" << budget << R"(, "threads": 2, "output_dir": ")" << out_dir
       << R"("}
})";
    return ss.str();
}

}  // namespace

TEST_CASE("frozen subcommand prints the published inclinations") {
    std::string out;
    REQUIRE(run_cli("frozen 8025.9 0.004 270", &out) == 0);
    CHECK(std::stod(out) == doctest::Approx(39.53).epsilon(0.008));
    REQUIRE(run_cli("frozen 5701.2 0.002 90", &out) == 0);
    CHECK(std::stod(out) == doctest::Approx(40.78).epsilon(0.008));
    REQUIRE(run_cli("frozen 17000 0.0 90 --no-j2", &out) == 0);
    CHECK(std::stod(out) == doctest::Approx(39.2315).epsilon(1e-5));
}

TEST_CASE("validation failures exit with code 2") {
    std::string out;
    CHECK(run_cli("evaluate", &out) == 2);  // neither decision nor design
    CHECK(run_cli("optimize --config /nonexistent.json", &out) == 2);

    const std::string bad = g_workdir + "/bad.json";
    write_file(bad, R"({"grid": {"pints": 3}})");
    CHECK(run_cli("optimize --config " + bad, &out) == 2);
    CHECK(out.find("grid.pints") != std::string::npos);

    write_file(bad, R"({"moea": {"initial_population": 50}, "run": {"budget": 10}})");
    CHECK(run_cli("optimize --config " + bad, &out) == 2);  // budget below population

    CHECK(run_cli("rank /nonexistent.csv", &out) == 3);
    CHECK(run_cli("merge", &out) == 2);
}

TEST_CASE("evaluate a published architecture end to end") {
    const std::string cfg_path = g_workdir + "/eval_config.json";
    write_file(cfg_path, R"({
  "cost": {"table_compat": true},
  "link_budget": {"range_basis": "sma"},
  "stationkeeping": {"mode": "off"},
  "run": {"threads": 2}
})");
    const std::string design_path = g_workdir + "/arch1.json";
    write_file(design_path, R"({
  "sma_km": 8025.9, "n_sats": 20, "n_planes": 5, "phasing": 0,
  "ecc": 0.004, "argp_deg": 270
})");
    const std::string out_path = g_workdir + "/arch1_eval.json";
    std::string out;
    REQUIRE(run_cli("evaluate --config " + cfg_path + " --design " + design_path + " --out " +
                        out_path,
                    &out) == 0);
    const std::string text = slurp(out_path);
    CHECK(text.find("\"gdop_p98\"") != std::string::npos);
    CHECK(text.find("\"p_t_dbw\": 13.7") != std::string::npos);
    CHECK(text.find("\"availability_pct\"") != std::string::npos);
}

TEST_CASE("explicit designs with an off-frozen inclination warn") {
    const std::string design_path = g_workdir + "/tilted.json";
    write_file(design_path, R"({
  "sma_km": 8025.9, "n_sats": 8, "n_planes": 2, "phasing": 0,
  "ecc": 0.004, "argp_deg": 270, "inc_deg": 55.0
})");
    const std::string cfg_path = g_workdir + "/warn_config.json";
    write_file(cfg_path, R"({
  "grid": {"points": 40},
  "sampling": {"step_s": 3600.0, "window_hours": 3.0},
  "stationkeeping": {"mode": "off"},
  "run": {"threads": 2}
})");
    std::string out;
    REQUIRE(run_cli("evaluate --config " + cfg_path + " --design " + design_path, &out) == 0);
    CHECK(out.find("warning") != std::string::npos);
    CHECK(out.find("deviates") != std::string::npos);
}

TEST_CASE("optimize is byte-deterministic for a fixed seed") {
    const std::string cfg_a = g_workdir + "/opt_a.json";
    const std::string cfg_b = g_workdir + "/opt_b.json";
    write_file(cfg_a, small_run_config(g_workdir + "/out_a", 64, 4242));
    write_file(cfg_b, small_run_config(g_workdir + "/out_b", 64, 4242));

    std::string out;
    REQUIRE(run_cli("optimize --config " + cfg_a, &out) == 0);
    REQUIRE(run_cli("optimize --config " + cfg_b, &out) == 0);

    CHECK(slurp(g_workdir + "/out_a/archive.csv") == slurp(g_workdir + "/out_b/archive.csv"));
    CHECK(slurp(g_workdir + "/out_a/history.csv") == slurp(g_workdir + "/out_b/history.csv"));

    const std::string archive_text = slurp(g_workdir + "/out_a/archive.csv");
    CHECK(archive_text.find("id,sma_km,n_sats") == 0);
    CHECK(archive_text.find('\n') != std::string::npos);
    // A different seed must explore differently.
    const std::string cfg_c = g_workdir + "/opt_c.json";
    write_file(cfg_c, small_run_config(g_workdir + "/out_c", 64, 777));
    REQUIRE(run_cli("optimize --config " + cfg_c, &out) == 0);
    CHECK(slurp(g_workdir + "/out_c/archive.csv") != archive_text);
}

TEST_CASE("interrupted runs resume to the uninterrupted result") {
    const std::string cfg_full = g_workdir + "/resume_full.json";
    const std::string cfg_half = g_workdir + "/resume_half.json";
    const std::string cfg_cont = g_workdir + "/resume_cont.json";
    write_file(cfg_full, small_run_config(g_workdir + "/out_full", 96, 99));
    write_file(cfg_half, small_run_config(g_workdir + "/out_resume", 48, 99));
    write_file(cfg_cont, small_run_config(g_workdir + "/out_resume", 96, 99));

    std::string out;
    REQUIRE(run_cli("optimize --config " + cfg_full, &out) == 0);
    REQUIRE(run_cli("optimize --config " + cfg_half, &out) == 0);
    REQUIRE(run_cli("optimize --config " + cfg_cont + " --resume", &out) == 0);

    CHECK(slurp(g_workdir + "/out_full/archive.csv") ==
          slurp(g_workdir + "/out_resume/archive.csv"));
}

TEST_CASE("rank, hv and merge work on an archive") {
    const std::string cfg = g_workdir + "/rank_cfg.json";
    write_file(cfg, small_run_config(g_workdir + "/out_rank", 48, 11));
    std::string out;
    REQUIRE(run_cli("optimize --config " + cfg, &out) == 0);
    const std::string archive = g_workdir + "/out_rank/archive.csv";

    REQUIRE(run_cli("rank " + archive + " --out " + g_workdir + "/ranked.csv", &out) == 0);
    CHECK(out.find("rank-1 solutions:") != std::string::npos);
    const std::string ranked = slurp(g_workdir + "/ranked.csv");
    CHECK(ranked.find(",rank\n") != std::string::npos);

    REQUIRE(run_cli("hv " + archive, &out) == 0);
    const double hv_value = std::stod(out);
    CHECK(hv_value > 0.0);
    CHECK(hv_value < std::pow(1.01, 4.0));

    // merge(A, A) keeps exactly the rows of A (identical vectors dedupe).
    REQUIRE(run_cli("merge " + archive + " " + archive + " --out " + g_workdir + "/merged.csv",
                    &out) == 0);
    const auto count_lines = [](const std::string& text) {
        long n = 0;
        for (char ch : text) n += ch == '\n' ? 1 : 0;
        return n;
    };
    CHECK(count_lines(slurp(g_workdir + "/merged.csv")) == count_lines(ranked));
}

TEST_CASE("gdop-map writes the lat/lon/p98 table") {
    const std::string cfg = g_workdir + "/map_cfg.json";
    write_file(cfg, R"({
  "grid": {"points": 60},
  "sampling": {"step_s": 1800.0},
  "run": {"threads": 2}
})");
    const std::string map_path = g_workdir + "/map.csv";
    std::string out;
    REQUIRE(run_cli("gdop-map --config " + cfg +
                        " --decision 8025.9,20,0.6667,0,0.004,0.9 --out " + map_path +
                        " --window-days 1.0",
                    &out) == 0);
    const std::string text = slurp(map_path);
    CHECK(text.rfind("lat_deg,lon_deg,gdop_p98\n", 0) == 0);
    long rows = -1;  // header
    for (char ch : text) rows += ch == '\n' ? 1 : 0;
    CHECK(rows == 60);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <path-to-lgnss-binary>\n");
        return 1;
    }
    g_binary = argv[1];
    g_workdir = (std::filesystem::temp_directory_path() / "lgnss_cli_test").string();
    std::filesystem::remove_all(g_workdir);
    std::filesystem::create_directories(g_workdir);

    doctest::Context context;
    context.applyCommandLine(argc - 1, argv + 1);
    return context.run();
}
