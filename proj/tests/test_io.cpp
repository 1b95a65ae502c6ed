#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "rampss/analysis.hpp"
#include "rampss/io.hpp"
#include "rampss/schemes.hpp"

using namespace rampss;
using access::Subset;
using nlohmann::json;

namespace {

Subset set(std::initializer_list<int> one_based) {
    Subset a = 0;
    for (int i : one_based) a |= Subset{1} << (i - 1);
    return a;
}

}  // namespace

TEST_CASE("scheme round trip") {
    std::mt19937_64 rng(61);
    for (const char* name : {"example1", "remark3", "remark1"}) {
        auto [s, g] = schemes::builtin_fixture(name);
        auto back = io::scheme_from_json(io::scheme_to_json(s));
        CHECK(back == s);
        CHECK(back.participant_names == s.participant_names);
    }
    for (int trial = 0; trial < 20; ++trial) {
        auto s = rampss::testing::random_scheme(rng, 2 + rng() % 4, 1 + rng() % 3,
                                                rng() % 4, 1 + rng() % 6, 5);
        CHECK(io::scheme_from_json(io::scheme_to_json(s)) == s);
    }
}

TEST_CASE("structure round trip") {
    std::mt19937_64 rng(62);
    auto th = access::threshold_structure(4, 2, 6);
    CHECK(io::structure_from_json(io::structure_to_json(th)).cumulative_minimal ==
          th.cumulative_minimal);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = rampss::testing::random_structure(rng, 2 + rng() % 4, 1 + rng() % 3);
        auto back = io::structure_from_json(io::structure_to_json(g));
        CHECK(back.cumulative_minimal == g.cumulative_minimal);
    }
}

TEST_CASE("bundle round trip, including sub-coalitions") {
    auto [s, g] = schemes::builtin_fixture("example1");
    std::vector<std::uint64_t> sec{1, 2}, r{0, 1, 2, 1};
    auto full = schemes::encode(s, sec, r);
    auto part = schemes::restrict_bundle(s, full, set({1, 4}));
    for (const auto& b : {full, part}) {
        auto back = io::bundle_from_json(s, io::bundle_to_json(s, b));
        CHECK(back.participants == b.participants);
        CHECK(back.values == b.values);
    }
}

TEST_CASE("matrix round trip reduces negatives") {
    auto j = json::parse("[[1, 1], [1, -1]]");
    auto t = io::matrix_from_json(j, 3);
    CHECK(t == gf::FieldMatrix::from_rows({{1, 1}, {1, 2}}, 3));
    auto back = io::matrix_from_json(io::matrix_to_json(t), 3);
    CHECK(back == t);
}

TEST_CASE("parse rejections") {
    auto [s, g] = schemes::builtin_fixture("example1");
    auto good = io::scheme_to_json(s);

    auto bad = good;
    bad["format_version"] = 2;
    CHECK_THROWS_AS(io::scheme_from_json(bad), io::ParseError);

    bad = good;
    bad["p"] = 15;
    CHECK_THROWS_AS(io::scheme_from_json(bad), io::ParseError);

    bad = good;
    bad["G"][0] = 7;  // out of range for GF(3)
    CHECK_THROWS_AS(io::scheme_from_json(bad), io::ParseError);

    bad = good;
    bad["G"].erase(0);
    CHECK_THROWS_AS(io::scheme_from_json(bad), io::ParseError);

    bad = good;
    bad["participants"][0]["symbols"] = {0, 0};
    CHECK_THROWS_AS(io::scheme_from_json(bad), io::ParseError);

    auto gs = io::structure_to_json(g);
    auto bad_g = gs;
    bad_g["cumulative_minimal"][0][0] = {0};
    CHECK_THROWS_AS(io::structure_from_json(bad_g), io::ParseError);

    bad_g = gs;
    bad_g["cumulative_minimal"][1] = {{1}};  // breaks nesting
    CHECK_THROWS_AS(io::structure_from_json(bad_g), access::BadParameters);

    std::vector<std::uint64_t> sec2{1, 0}, r4{0, 0, 0, 0};
    auto bundle = io::bundle_to_json(s, schemes::encode(s, sec2, r4));
    auto bad_b = bundle;
    bad_b["shares"][0]["values"][0] = 3;
    CHECK_THROWS_AS(io::bundle_from_json(s, bad_b), io::ParseError);
    bad_b = bundle;
    bad_b["shares"][0]["participant"] = 9;
    CHECK_THROWS_AS(io::bundle_from_json(s, bad_b), io::ParseError);
}

TEST_CASE("report serialization carries the leak lines") {
    auto [s, g] = schemes::builtin_fixture("remark1");
    auto rep = analysis::classify(s, g);
    auto j = io::report_to_json(rep, s);
    CHECK(j["ramp_valid"] == true);
    CHECK(j["pd"] == false);
    CHECK(j["strong"] == false);
    bool found = false;
    for (const auto& leak : j["leaks"])
        for (const auto& line : leak["functionals"])
            if (line.get<std::string>() == "S2 = 15*V3 + 12*V6 + 7*V15") found = true;
    CHECK(found);
    CHECK(j["coding_rates"][0]["num"] == 1);
    CHECK(j["coding_rates"][0]["den"] == 2);
}

TEST_CASE("formatting helpers") {
    auto [s, g] = schemes::builtin_fixture("remark1");
    analysis::LeakFunctional f;
    f.secret_coeffs = {0, 5};
    f.share_coeffs = {7, 9, 1};
    CHECK(io::leak_string(s, set({3, 6, 15}), f) == "5*S2 = 7*V3 + 9*V6 + 1*V15");
    f.secret_coeffs = {1, 0};
    CHECK(io::leak_string(s, set({3, 6, 15}), f) == "S1 = 7*V3 + 9*V6 + 1*V15");

    CHECK(io::secret_combo_string(s, {1, 2}) == "S1 + 2*S2");
    CHECK(io::secret_combo_string(s, {0, 1}, true) == "S'2");
    CHECK(io::secret_combo_string(s, {0, 0}) == "0");

    auto [ex, exg] = schemes::builtin_fixture("example1");
    CHECK(io::share_functional_string(ex, 0) == "R1");
    CHECK(io::share_functional_string(ex, 4) == "S1 + R1 + R4");
    CHECK(io::share_functional_string(ex, 6, true) == "S'1 + R1");
    CHECK(ex.symbol_name(0) == "V1.1");
    auto [r1, r1g] = schemes::builtin_fixture("remark1");
    CHECK(r1.symbol_name(2) == "V3");
}

TEST_CASE("file round trip") {
    auto [s, g] = schemes::builtin_fixture("remark3");
    auto dir = std::filesystem::temp_directory_path() / "rampss_io_test";
    std::filesystem::create_directories(dir);
    auto path = dir / "scheme.json";
    io::save_json(path, io::scheme_to_json(s));
    CHECK(io::scheme_from_json(io::load_json(path)) == s);
    CHECK_THROWS_AS(io::load_json(dir / "missing.json"), io::ParseError);
    std::filesystem::remove_all(dir);
}
