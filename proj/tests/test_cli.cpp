// End-to-end tests of the command line tool: each case runs the installed
// binary in a subprocess and checks output, exit codes, cache behaviour and
// rerun determinism.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(MPRANGE_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    RunResult r;
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(p);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::filesystem::path fresh_dir(const char* tag) {
    auto p = std::filesystem::temp_directory_path() /
             (std::string("mprange_cli_") + tag);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

std::vector<std::string> body_lines(const std::string& out) {
    std::vector<std::string> lines;
    std::istringstream is(out);
    std::string line;
    while (std::getline(is, line))
        if (!line.empty() && line[0] != '#') lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("enumerate prints one json matrix per line") {
    RunResult r = run_cli("enumerate --r 3 --h 2,2,2 --no-timestamp");
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("# config: enumerate", 0) == 0);
    auto lines = body_lines(r.out);
    REQUIRE(lines.size() == 3);
    for (const auto& line : lines) {
        auto j = nlohmann::json::parse(line);
        CHECK(j.contains("rows"));
        CHECK(j["r"] == 3);
    }
}

TEST_CASE("weights csv carries exact rationals") {
    RunResult r = run_cli("weights --r 2 --h 2,2 --no-timestamp");
    CHECK(r.exit_code == 0);
    auto lines = body_lines(r.out);
    REQUIRE(lines.size() == 2);  // header + the one matrix
    CHECK(lines[0] == "matrix,cof,mult,trails");
    CHECK(lines[1] == "0 2;2 0,2,1/4,2");
}

TEST_CASE("bad usage exits 2") {
    CHECK(run_cli("enumerate --r 3 --h 2,2,2 --bogus-flag").exit_code == 2);
    CHECK(run_cli("enumerate --r 3").exit_code == 2);          // missing --h
    CHECK(run_cli("nonsense-subcommand").exit_code == 2);
    CHECK(run_cli("weights --r 2 --h 2,2 --format xml").exit_code == 2);
    CHECK(run_cli("moments --walk bogus --k 1").exit_code == 2);
    CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("missing graph-sum cache exits 3, populating it fixes charfn") {
    auto dir = fresh_dir("cache");
    const std::string cd = " --cache-dir " + dir.string();
    CHECK(run_cli("charfn --which closed --rmax 3 --t 0" + cd).exit_code == 3);
    CHECK(run_cli("central --walk closed --p 3 --k 1,1,1" + cd).exit_code == 3);

    RunResult gs = run_cli("graph-sums --r 3 --budget 20000 --seed 3" + cd +
                           " --no-timestamp");
    CHECK(gs.exit_code == 0);
    CHECK(std::filesystem::exists(dir / "gs_r3_b20000_s3.json"));

    RunResult cf = run_cli("charfn --which closed --rmax 3 --t 0" + cd +
                           " --no-timestamp");
    CHECK(cf.exit_code == 0);
    // skip the header comment lines, parse the json payload
    const auto pos = cf.out.find('{');
    REQUIRE(pos != std::string::npos);
    auto j = nlohmann::json::parse(cf.out.substr(pos));
    CHECK(j["r_max"] == 3);
    CHECK(j["value"]["re"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(j["value"]["im"].get<double>() == doctest::Approx(0.0).epsilon(1e-12));
    REQUIRE(j["coeffs"].size() >= 4);
    CHECK(std::abs(j["coeffs"][1]["re"].get<double>()) < 1e-10);
    CHECK(j["coeffs"][3]["stderr"].get<double>() > 0.0);

    CHECK(run_cli("central --walk unrestricted --p 3 --k 1,1,1" + cd).exit_code == 0);
    std::filesystem::remove_all(dir);
}

TEST_CASE("seeded reruns are byte identical") {
    auto dir = fresh_dir("rerun");
    const std::string f1 = (dir / "a.csv").string(), f2 = (dir / "b.csv").string();
    const std::string cmd =
        "oracle --walk closed --n 6 --budget 20000 --seed 9 --no-timestamp --out ";
    CHECK(run_cli(cmd + f1).exit_code == 0);
    CHECK(run_cli(cmd + f2).exit_code == 0);
    // the config header echoes the --out path, so compare the payload only
    auto payload = [](const std::string& path) {
        std::ifstream in(path);
        std::string line, body;
        while (std::getline(in, line))
            if (line.empty() || line[0] != '#') body += line + "\n";
        return body;
    };
    const std::string pa = payload(f1);
    CHECK(pa == payload(f2));
    CHECK(pa.find("n,samples,k,mean,stderr") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("exact oracle output") {
    RunResult r = run_cli("oracle --walk closed --n 2 --exact --no-timestamp");
    CHECK(r.exit_code == 0);
    auto lines = body_lines(r.out);
    REQUIRE(lines.size() >= 2);
    CHECK(lines[0] == "n,walks,k,sum_N");
    // 36 closed walks of length 4; every one visits the origin
    CHECK(lines[1].rfind("2,36,1,", 0) == 0);
}

TEST_CASE("moments subcommand evaluates the expansion") {
    RunResult r = run_cli(
        "moments --walk unrestricted --k 1 --M 4 --n 1000 --no-timestamp");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("logpower,coefficient") != std::string::npos);
    CHECK(r.out.find("# value at n=1000") != std::string::npos);
}

TEST_CASE("generating function crosscheck suite passes") {
    RunResult r = run_cli("crosscheck --suite gf --Lmax 8 --no-timestamp");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(r.out.find("first_moment_gf") != std::string::npos);
    CHECK(r.out.find("multiplicity_fixed_gf") != std::string::npos);
    CHECK(run_cli("crosscheck --suite bogus").exit_code == 2);
}
