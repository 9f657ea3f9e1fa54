// End-to-end tests that drive the installed CLI binary through the same
// file formats a user would touch.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>
#include <unistd.h>

#include "json.hpp"

#include "fmdkit/fixtures.hpp"
#include "fmdkit/io.hpp"

using namespace fmd;
namespace fs = std::filesystem;
using njson = nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("fmdkit_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    static inline int counter = 0;
};

RunResult run_cli(const TempDir& dir, const std::string& args) {
    const fs::path out = dir.path / "stdout.txt";
    const fs::path err = dir.path / "stderr.txt";
    const std::string cmd = std::string(FMDKIT_CLI_PATH) + " " + args + " > " + out.string() +
                            " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

njson load_json(const fs::path& p) { return njson::parse(slurp(p)); }

double last_csv_field(const std::string& text) {
    const std::size_t pos = text.find_last_of(',');
    return std::stod(text.substr(pos + 1));
}

}  // namespace

TEST_CASE("decompose splits the two-tone fixture with a single ideal stage") {
    TempDir dir;
    const Signal low = fixtures::tone(64, 3.0);
    const Signal high = fixtures::tone(64, 20.0);
    io::write_signal_csv1d(low + high, dir.path / "twotone.csv");

    const RunResult r = run_cli(
        dir, "decompose --input " + (dir.path / "twotone.csv").string() +
                 " --format csv1d --algorithm 1 --filter ideal --stages 1 --cutoffs 0.15 --out " +
                 (dir.path / "out").string());
    REQUIRE(r.exit_code == 0);

    const Signal c1 = io::read_csv_matrix(dir.path / "out" / "comp_01.csv");
    const Signal c2 = io::read_csv_matrix(dir.path / "out" / "comp_02.csv");
    for (std::size_t i = 0; i < 64; ++i) {
        CHECK(std::abs(c1[i] - low[i]) <= 1e-9);
        CHECK(std::abs(c2[i] - high[i]) <= 1e-9);
    }
    const njson report = load_json(dir.path / "out" / "report.json");
    CHECK(std::abs(report["ledger"]["pee_percent"].get<double>()) <= 1e-9);
    CHECK(report["schema"] == 1);
}

TEST_CASE("decompose preserves energy on a PGM image with algorithm 2") {
    TempDir dir;
    io::write_signal_pgm(fixtures::random_image(24, 16, 12), dir.path / "img.pgm");
    const Signal input = io::read_signal(dir.path / "img.pgm", io::SignalFormat::pgm);

    const RunResult r = run_cli(
        dir, "decompose --input " + (dir.path / "img.pgm").string() +
                 " --format pgm --algorithm 2 --filter gaussian --stages 6 --out " +
                 (dir.path / "out").string());
    REQUIRE(r.exit_code == 0);

    const njson report = load_json(dir.path / "out" / "report.json");
    CHECK(std::abs(report["ledger"]["pee_percent"].get<double>()) <= 1e-10);
    CHECK(report["verdict"]["is_energy_preserving"] == true);
    CHECK(report["integrity"]["reread_max_rel_energy_err"].get<double>() <= 1e-9);
    CHECK(report["stages"]["completed"] == 6);

    // reconstruction through the emitted exact sidecars
    Signal sum = Signal::zeros_like(input);
    for (const auto& comp : report["components"]) {
        const Signal c = io::read_csv_matrix(dir.path / "out" / comp["file"].get<std::string>());
        sum = sum + c;
        // ledger energies match the files they describe
        CHECK(energy(c) == doctest::Approx(comp["energy"].get<double>()).epsilon(1e-12));
    }
    CHECK(norm(sum - input) <= 1e-9 * norm(input));

    // display PGMs exist alongside the sidecars
    CHECK(fs::exists(dir.path / "out" / "comp_01.pgm"));
    CHECK(fs::exists(dir.path / "out" / "energy_table.csv"));
}

TEST_CASE("16-bit PGM input decomposes cleanly") {
    TempDir dir;
    io::write_signal_pgm(fixtures::random_image(16, 16, 55, 60000), dir.path / "deep.pgm", 65535);
    const RunResult r = run_cli(
        dir, "decompose --input " + (dir.path / "deep.pgm").string() +
                 " --format pgm --algorithm 3 --filter gaussian --stages 5 --out " +
                 (dir.path / "out").string());
    REQUIRE(r.exit_code == 0);
    const njson report = load_json(dir.path / "out" / "report.json");
    CHECK(std::abs(report["ledger"]["pee_percent"].get<double>()) <= 1e-10);
    CHECK(report["input"]["energy"].get<double>() > 1e9);  // 16-bit pixel range
}

TEST_CASE("identical flags produce identical outputs") {
    TempDir dir;
    io::write_signal_csv1d(fixtures::random_uniform_1d(128, 9), dir.path / "x.csv");
    const std::string base = "decompose --input " + (dir.path / "x.csv").string() +
                             " --format csv1d --algorithm 3 --filter gaussian --stages 4 --out ";
    REQUIRE(run_cli(dir, base + (dir.path / "a").string()).exit_code == 0);
    REQUIRE(run_cli(dir, base + (dir.path / "b").string()).exit_code == 0);

    CHECK(slurp(dir.path / "a" / "energy_table.csv") == slurp(dir.path / "b" / "energy_table.csv"));
    for (int i = 1; i <= 5; ++i) {
        const std::string name = "comp_0" + std::to_string(i) + ".csv";
        CHECK(slurp(dir.path / "a" / name) == slurp(dir.path / "b" / name));
    }
    njson ra = load_json(dir.path / "a" / "report.json");
    njson rb = load_json(dir.path / "b" / "report.json");
    ra.erase("timing_ms");
    rb.erase("timing_ms");
    ra["input"].erase("path");
    rb["input"].erase("path");
    CHECK(ra == rb);
}

TEST_CASE("decompose validation and io exit codes") {
    TempDir dir;
    io::write_signal_csv1d(fixtures::random_uniform_1d(16, 1), dir.path / "x.csv");
    // missing --stages
    CHECK(run_cli(dir, "decompose --input " + (dir.path / "x.csv").string() + " --out " +
                           (dir.path / "o").string())
              .exit_code == 2);
    // unreadable input
    CHECK(run_cli(dir, "decompose --input " + (dir.path / "nope.csv").string() +
                           " --format csv1d --algorithm 1 --filter gaussian --stages 2 --out " +
                           (dir.path / "o").string())
              .exit_code == 1);
    // schedule mismatch
    CHECK(run_cli(dir, "decompose --input " + (dir.path / "x.csv").string() +
                           " --format csv1d --algorithm 1 --filter ideal --stages 2 "
                           "--cutoffs 0.3 --out " +
                           (dir.path / "o").string())
              .exit_code == 2);
}

TEST_CASE("spiral command emits the expected norms") {
    TempDir dir;
    const RunResult r2 = run_cli(dir, "spiral --dims 2 --steps 17 --csv " +
                                          (dir.path / "s2.csv").string() + " --svg " +
                                          (dir.path / "s2.svg").string());
    REQUIRE(r2.exit_code == 0);
    const std::string csv2 = slurp(dir.path / "s2.csv");
    CHECK(last_csv_field(csv2) == doctest::Approx(std::sqrt(17.0)).epsilon(1e-12));
    CHECK(slurp(dir.path / "s2.svg").find("<polyline") != std::string::npos);

    const RunResult r3 = run_cli(dir, "spiral --dims 3 --steps 400 --tilt -0.25 --csv " +
                                          (dir.path / "s3.csv").string());
    REQUIRE(r3.exit_code == 0);
    CHECK(last_csv_field(slurp(dir.path / "s3.csv")) == doctest::Approx(20.0).epsilon(1e-12));

    CHECK(run_cli(dir, "spiral --dims 2 --steps 0 --csv " + (dir.path / "x.csv").string())
              .exit_code == 2);
    CHECK(run_cli(dir, "spiral --dims 2 --steps 5").exit_code == 2);  // no output requested

    // byte-identical reruns
    REQUIRE(run_cli(dir, "spiral --dims 4 --steps 50 --steering random --seed 3 --csv " +
                            (dir.path / "n1.csv").string())
                .exit_code == 0);
    REQUIRE(run_cli(dir, "spiral --dims 4 --steps 50 --steering random --seed 3 --csv " +
                            (dir.path / "n2.csv").string())
                .exit_code == 0);
    CHECK(slurp(dir.path / "n1.csv") == slurp(dir.path / "n2.csv"));
}

TEST_CASE("probe command verdicts") {
    TempDir dir;
    const RunResult lin = run_cli(dir, "probe --system alg1 --filter gaussian --property "
                                       "additivity --fixture twotone");
    REQUIRE(lin.exit_code == 0);
    const njson jl = njson::parse(lin.out);
    CHECK(jl["passed"] == true);
    CHECK(jl["max_violation"].get<double>() <= 1e-9);

    const RunResult nl = run_cli(dir, "probe --system alg2 --filter gaussian --property "
                                      "additivity --fixture twotone");
    REQUIRE(nl.exit_code == 0);  // a failed verdict is data, not an error
    const njson jn = njson::parse(nl.out);
    CHECK(jn["passed"] == false);
    CHECK(jn["max_violation"].get<double>() > 0.01);

    const RunResult sh = run_cli(dir, "probe --system alg2 --filter gaussian --property shift "
                                      "--fixture random --seed 11");
    REQUIRE(sh.exit_code == 0);
    const njson js = njson::parse(sh.out);
    CHECK(js["passed"] == true);
    CHECK(js["conventions"]["time_shift"] == "circular");

    CHECK(run_cli(dir, "probe --system alg9 --filter gaussian --property shift "
                       "--fixture random")
              .exit_code == 2);
}
