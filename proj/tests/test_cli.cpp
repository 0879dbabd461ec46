#include <doctest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "csfsim/io.hpp"
#include "csfsim/sim.hpp"

using namespace csfsim;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("csfsim_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args, const std::string& stdout_file = "") {
    std::string cmd = std::string(CSFSIM_CLI_PATH) + " " + args;
    if (!stdout_file.empty()) {
        cmd += " > " + stdout_file;
    } else {
        cmd += " > /dev/null";
    }
    cmd += " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

TEST_CASE("cli pipeline: simulate, compare, predict") {
    TempDir dir;
    const std::string teams = dir.file("teams.csv");
    write_team_params(teams, synthetic_league());

    SUBCASE("predict evaluates the difference form") {
        const std::string out = dir.file("predict.txt");
        const int code =
            run("predict --model difference --param 0.003 --rs 750 --ra 650", out);
        CHECK(code == 0);
        CHECK(slurp(out) == "0.574443\n");
    }

    SUBCASE("predict evaluates the ratio form") {
        const std::string out = dir.file("predict2.txt");
        const int code = run("predict --model tullock --param 2 --rs 800 --ra 600", out);
        CHECK(code == 0);
        CHECK(slurp(out) == "0.640000\n");
    }

    SUBCASE("simulate twice with one seed writes byte-identical files") {
        const std::string a = dir.file("a.csv");
        const std::string b = dir.file("b.csv");
        CHECK(run("simulate --teams " + teams + " --iterations 5 --seed 9 --out " + a) == 0);
        CHECK(run("simulate --teams " + teams + " --iterations 5 --seed 9 --out " + b) == 0);
        CHECK(slurp(a) == slurp(b));
        CHECK(!slurp(a).empty());
    }

    SUBCASE("compare on a simulated file names a preferred model") {
        const std::string data = dir.file("data.csv");
        CHECK(run("simulate --teams " + teams + " --iterations 10 --seed 3 --out " + data) ==
              0);
        const std::string out = dir.file("compare.txt");
        const int code = run("compare --data " + data, out);
        CHECK(code == 0);
        const std::string text = slurp(out);
        CHECK(text.find("preferred model") != std::string::npos);
        const bool names_model = text.find("preferred model: tullock") != std::string::npos ||
                                 text.find("preferred model: difference") != std::string::npos;
        CHECK(names_model);
    }

    SUBCASE("fit writes a report JSON") {
        const std::string data = dir.file("data.csv");
        CHECK(run("simulate --teams " + teams + " --iterations 5 --seed 4 --out " + data) ==
              0);
        const std::string report = dir.file("fit.json");
        CHECK(run("fit --data " + data + " --model tullock --out " + report) == 0);
        const std::string json_text = slurp(report);
        CHECK(json_text.find("\"form\": \"tullock\"") != std::string::npos);
        CHECK(json_text.find("\"aic\"") != std::string::npos);
    }

    SUBCASE("compare --plot writes an SVG") {
        const std::string data = dir.file("data.csv");
        CHECK(run("simulate --teams " + teams + " --iterations 5 --seed 6 --out " + data) ==
              0);
        const std::string svg = dir.file("scatter.svg");
        CHECK(run("compare --data " + data + " --plot " + svg) == 0);
        CHECK(slurp(svg).rfind("<?xml", 0) == 0);
    }
}

TEST_CASE("cli error paths use the documented exit codes") {
    TempDir dir;
    CHECK(run("bogus-subcommand") == 1);
    CHECK(run("predict --model tullock --param 2 --rs 800") == 1);  // missing --ra
    CHECK(run("predict --model tullock --unknown-flag 1 --param 2 --rs 8 --ra 6") == 1);
    // invalid data (missing file) is a data error, not a usage error
    CHECK(run("compare --data " + dir.file("nope.csv")) == 2);
    // domain error: non-positive parameter
    CHECK(run("predict --model tullock --param 0 --rs 800 --ra 600") == 2);
}
