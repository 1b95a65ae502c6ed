#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

// End-to-end checks of the command-line tool, including the documented exit
// codes: 0 ok/strong, 2 input error, 3 weak, 4 invalid ramp, 5 insufficient
// shares, 6 not PD, 7 transform infeasible.

namespace {

namespace fs = std::filesystem;

struct CliResult {
    int exit_code = -1;
    std::string output;  // stdout and stderr combined
};

CliResult run_cli(const fs::path& dir, const std::string& args) {
    std::string cmd =
        "cd " + dir.string() + " && " + RAMPSS_CLI_PATH + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult r;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) r.output.append(buf, n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("rampss_cli_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static inline int counter = 0;
};

void write_tex(const fs::path& dir) {
    std::ofstream(dir / "tex.json") << "[[1, 1], [1, -1]]\n";
}

}  // namespace

TEST_CASE("shamir build and classification") {
    TempDir dir;
    auto build = run_cli(dir.path, "build shamir --k 4 --L 2 --n 15 --p 17 --out remark1");
    CHECK(build.exit_code == 0);
    CHECK(contains(build.output, "coding rates:"));
    CHECK(fs::exists(dir.path / "remark1.scheme.json"));
    CHECK(fs::exists(dir.path / "remark1.structure.json"));

    auto cls = run_cli(dir.path,
                       "classify --scheme remark1.scheme.json "
                       "--structure remark1.structure.json --out report.json");
    CHECK(cls.exit_code == 3);  // valid ramp, but weak
    CHECK(contains(cls.output, "ramp_valid: yes"));
    CHECK(contains(cls.output, "pd: no"));
    CHECK(contains(cls.output, "strong: no"));
    CHECK(contains(cls.output, "S2 = 15*V3 + 12*V6 + 7*V15"));
    CHECK(fs::exists(dir.path / "report.json"));
}

TEST_CASE("demos reproduce the built-in narratives") {
    TempDir dir;
    auto r1 = run_cli(dir.path, "demo remark1");
    CHECK(r1.exit_code == 0);
    CHECK(contains(r1.output, "5*S2 = 7*V3 + 9*V6 + 1*V15"));
    CHECK(run_cli(dir.path, "demo example1").exit_code == 0);
    CHECK(run_cli(dir.path, "demo example2").exit_code == 0);
    CHECK(run_cli(dir.path, "demo remark3").exit_code == 0);
    CHECK(run_cli(dir.path, "demo nonsense").exit_code == 2);
}

TEST_CASE("example fixture pipeline: classify, strengthen, re-classify") {
    TempDir dir;
    CHECK(run_cli(dir.path, "build fixture --name example1 --out ex1").exit_code == 0);
    CHECK(run_cli(dir.path,
                  "classify --scheme ex1.scheme.json --structure ex1.structure.json")
              .exit_code == 3);

    write_tex(dir.path);
    auto st = run_cli(dir.path,
                      "strengthen --scheme ex1.scheme.json --structure "
                      "ex1.structure.json --T tex.json --out ex2");
    CHECK(st.exit_code == 0);
    CHECK(contains(st.output, "strong: yes"));
    CHECK(fs::exists(dir.path / "ex2.scheme.json"));
    CHECK(fs::exists(dir.path / "ex2.T.json"));

    CHECK(run_cli(dir.path,
                  "classify --scheme ex2.scheme.json --structure ex1.structure.json")
              .exit_code == 0);

    auto strict = run_cli(dir.path,
                          "strengthen --scheme ex1.scheme.json --structure "
                          "ex1.structure.json --T tex.json --strict-pd-witnesses "
                          "--out ex2strict");
    CHECK(strict.exit_code == 0);
}

TEST_CASE("transform infeasibility over GF(2) exits 7") {
    TempDir dir;
    CHECK(run_cli(dir.path, "build fixture --name example1 --p 2 --out ex1").exit_code ==
          0);
    write_tex(dir.path);
    // The printed T is singular mod 2, and no Hilbert parameters exist.
    CHECK(run_cli(dir.path,
                  "strengthen --scheme ex1.scheme.json --structure "
                  "ex1.structure.json --T tex.json")
              .exit_code == 7);
    CHECK(run_cli(dir.path,
                  "strengthen --scheme ex1.scheme.json --structure ex1.structure.json")
              .exit_code == 7);
}

TEST_CASE("non-PD schemes cannot be strengthened: exit 6") {
    TempDir dir;
    CHECK(run_cli(dir.path, "build fixture --name remark3 --out r3").exit_code == 0);
    auto cls = run_cli(dir.path,
                       "classify --scheme r3.scheme.json --structure r3.structure.json");
    CHECK(cls.exit_code == 3);
    CHECK(contains(cls.output, "pd: no"));
    CHECK(run_cli(dir.path,
                  "strengthen --scheme r3.scheme.json --structure r3.structure.json")
              .exit_code == 6);
}

TEST_CASE("encode and decode round trip") {
    TempDir dir;
    CHECK(run_cli(dir.path, "build fixture --name example1 --out ex1").exit_code == 0);
    CHECK(run_cli(dir.path,
                  "encode --scheme ex1.scheme.json --secrets 1,0 "
                  "--randoms 0,0,0,0 --out b.json")
              .exit_code == 0);
    auto dec = run_cli(dir.path, "decode --scheme ex1.scheme.json --bundle b.json");
    CHECK(dec.exit_code == 0);
    CHECK(contains(dec.output, "secrets: 1 0"));

    // Missing randomness source is an input error.
    CHECK(run_cli(dir.path, "encode --scheme ex1.scheme.json --secrets 1,0").exit_code ==
          2);
    // Seeded encoding is reproducible.
    auto e1 = run_cli(dir.path,
                      "encode --scheme ex1.scheme.json --secrets 1,0 --seed 7 --out s1.json");
    auto e2 = run_cli(dir.path,
                      "encode --scheme ex1.scheme.json --secrets 1,0 --seed 7 --out s2.json");
    CHECK(e1.exit_code == 0);
    CHECK(e2.exit_code == 0);
    std::ifstream f1(dir.path / "s1.json"), f2(dir.path / "s2.json");
    std::string c1((std::istreambuf_iterator<char>(f1)), {});
    std::string c2((std::istreambuf_iterator<char>(f2)), {});
    CHECK(c1 == c2);
}

TEST_CASE("decoding from unqualified coalitions prints the leaked subspace") {
    TempDir dir;
    CHECK(run_cli(dir.path, "build fixture --name remark1 --out r1").exit_code == 0);
    CHECK(run_cli(dir.path,
                  "encode --scheme r1.scheme.json --secrets 5,11 --seed 42 --out b.json")
              .exit_code == 0);

    auto leak = run_cli(dir.path,
                        "decode --scheme r1.scheme.json --bundle b.json "
                        "--participants 3,6,15");
    CHECK(leak.exit_code == 5);
    CHECK(contains(leak.output, "S2 recoverable"));

    auto nothing = run_cli(dir.path,
                           "decode --scheme r1.scheme.json --bundle b.json "
                           "--participants 1,2");
    CHECK(nothing.exit_code == 5);
    CHECK(contains(nothing.output, "recoverable secret subspace is empty"));

    auto mixture = run_cli(dir.path,
                           "decode --scheme r1.scheme.json --bundle b.json "
                           "--participants 1,2,3");
    CHECK(mixture.exit_code == 5);
    CHECK(contains(mixture.output, "S1 + 16*S2 recoverable"));

    auto enough = run_cli(dir.path,
                          "decode --scheme r1.scheme.json --bundle b.json "
                          "--participants 2,5,11,14");
    CHECK(enough.exit_code == 0);
    CHECK(contains(enough.output, "secrets: 5 11"));
}

TEST_CASE("general structures: threshold file into the stacked construction") {
    TempDir dir;
    auto th = run_cli(dir.path, "build threshold --k 3 --L 2 --n 3 --out th");
    CHECK(th.exit_code == 0);
    CHECK(fs::exists(dir.path / "th.structure.json"));
    CHECK(!fs::exists(dir.path / "th.scheme.json"));

    CHECK(run_cli(dir.path, "build pd --structure th.structure.json --p 5 --out pdsch")
              .exit_code == 0);
    auto cls = run_cli(dir.path,
                       "classify --scheme pdsch.scheme.json --structure th.structure.json");
    CHECK(cls.exit_code == 3);
    CHECK(contains(cls.output, "pd: yes"));

    // Hilbert parameters exist over GF(5) for two secrets, so the default
    // transform goes through.
    auto st = run_cli(dir.path,
                      "strengthen --scheme pdsch.scheme.json --structure "
                      "th.structure.json --out strong5");
    CHECK(st.exit_code == 0);
    CHECK(run_cli(dir.path,
                  "classify --scheme strong5.scheme.json --structure th.structure.json")
              .exit_code == 0);
}

TEST_CASE("a scheme that misses its structure exits 4") {
    TempDir dir;
    CHECK(run_cli(dir.path, "build fixture --name example1 --out ex1").exit_code == 0);
    // A structure the example shares do not realize: {V1,V3,V4} recovers
    // both secrets but is only listed at level one here.
    std::ofstream(dir.path / "printed.json")
        << R"({"format_version":1,"n":4,"L":2,
              "cumulative_minimal":[[[1,4],[2,4],[1,2,3]],[[1,2,3]]]})";
    auto cls = run_cli(dir.path,
                       "classify --scheme ex1.scheme.json --structure printed.json");
    CHECK(cls.exit_code == 4);
    CHECK(contains(cls.output, "ramp_valid: no"));
    CHECK(contains(cls.output, "{V1,V3,V4}"));
}

TEST_CASE("input errors exit 2") {
    TempDir dir;
    CHECK(run_cli(dir.path, "classify --scheme nope.json --structure nope.json")
              .exit_code == 2);
    std::ofstream(dir.path / "junk.json") << "{not json";
    CHECK(run_cli(dir.path, "classify --scheme junk.json --structure junk.json")
              .exit_code == 2);
    CHECK(run_cli(dir.path, "build shamir --k 2 --L 3 --n 4 --p 17").exit_code == 2);
    CHECK(run_cli(dir.path, "build fixture --name unknown").exit_code == 2);
    CHECK(run_cli(dir.path, "build").exit_code == 2);
    CHECK(run_cli(dir.path, "").exit_code == 2);
}
