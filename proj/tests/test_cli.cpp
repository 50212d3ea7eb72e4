#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

fs::path scratch() {
    const fs::path dir = fs::temp_directory_path() / ("aqd_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir;
}

int run(const std::string& args) {
    const std::string cmd = std::string(AQD_CLI_PATH) + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string preamble(const std::string& csv) {
    std::istringstream in(csv);
    std::string line, out;
    while (std::getline(in, line)) {
        out += line + '\n';
        if (line.starts_with("series,")) break;
    }
    return out;
}

}  // namespace

TEST_CASE("exit codes") {
    const fs::path dir = scratch();
    CHECK(run("time-sweep --grid 0,1sc --out " + (dir / "t.csv").string()) == 0);
    CHECK(run("") == 2);
    CHECK(run("time-sweep --grid 2sc,1sc") == 2);
    CHECK(run("time-sweep --grid 0,500sc") == 2);
    CHECK(run("dim-sweep --grid 0.5,2") == 2);
    CHECK(run("time-sweep --config /nonexistent.cfg") == 2);
    {
        std::ofstream cfg(dir / "bad.cfg");
        cfg << "mass_kg = 1e-25\ncolour = blue\n";
    }
    CHECK(run("time-sweep --config " + (dir / "bad.cfg").string()) == 2);
    CHECK(run("ramsey --grid 1sc --detect-prob 0") == 2);
    CHECK(run("time-sweep --grid 10sc --rel-tol 1e-18 --out " + (dir / "nc.csv").string()) == 3);
    CHECK(slurp(dir / "nc.csv").find(",nonconverged") != std::string::npos);
    CHECK(run("validate --dims 1 --inject-dos-scale 1.05 --out " + (dir / "v.json").string()) == 4);
    CHECK(run("validate --out " + (dir / "v.json").string()) == 0);
    CHECK(slurp(dir / "v.json").find("\"passed\": true") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("output is byte-identical for any worker count") {
    const fs::path dir = scratch();
    for (const char* cmd : {"dim-sweep --grid lin:1:3:11", "temp-sweep --dims 3 --grid log:1e-9:1e-6:7",
                            "time-sweep --dims 1,2,3 --grid lin:0sc:10sc:12"}) {
        CAPTURE(cmd);
        REQUIRE(run(std::string(cmd) + " --workers 1 --out " + (dir / "a.csv").string()) == 0);
        REQUIRE(run(std::string(cmd) + " --workers 4 --out " + (dir / "b.csv").string()) == 0);
        CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
    }
    fs::remove_all(dir);
}

TEST_CASE("CSV preamble matches the golden copy") {
    const fs::path dir = scratch();
    REQUIRE(run("dim-sweep --grid 1,2 --times 1sc --out " + (dir / "d.csv").string()) == 0);
    CHECK(preamble(slurp(dir / "d.csv")) == slurp(fs::path(AQD_GOLDEN_DIR) / "dim_sweep_header.txt"));
    fs::remove_all(dir);
}

TEST_CASE("temp-sweep over several dimensions writes one file each") {
    const fs::path dir = scratch();
    REQUIRE(run("temp-sweep --dims 1,3 --grid 1e-8,1e-7 --out " + (dir / "fig3.csv").string()) == 0);
    CHECK(fs::exists(dir / "fig3_D1.csv"));
    CHECK(fs::exists(dir / "fig3_D3.csv"));
    CHECK(run("temp-sweep --dims 1,3 --grid 1e-8,1e-7") == 2);
    fs::remove_all(dir);
}

TEST_CASE("ramsey sweep columns") {
    const fs::path dir = scratch();
    REQUIRE(run("ramsey --grid 0,10sc --detect-prob 0.8 --spurious-prob 0.04 --extrinsic-rate 10 --out " +
                (dir / "r.csv").string()) == 0);
    const std::string csv = slurp(dir / "r.csv");
    CHECK(csv.find("series,abscissa,gamma,coherence,gamma_abs_error,status,ramsey_probability,"
                   "effective_probability,visibility\n") != std::string::npos);
    CHECK(csv.find("# ramsey.detection_probability = 0.8") != std::string::npos);
    fs::remove_all(dir);
}
