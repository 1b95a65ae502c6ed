// Command-line front end: build schemes and access structures, encode and
// decode shares, classify schemes, and strengthen partially decryptable ones.
//
// Exit codes: 0 ok/strong, 2 input error, 3 valid but weak, 4 not a valid
// ramp scheme, 5 insufficient shares, 6 not partially decryptable,
// 7 transform infeasible.

#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rampss/access.hpp"
#include "rampss/analysis.hpp"
#include "rampss/gf.hpp"
#include "rampss/io.hpp"
#include "rampss/schemes.hpp"
#include "rampss/transform.hpp"

namespace {

using namespace rampss;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitWeak = 3;
constexpr int kExitInvalidRamp = 4;
constexpr int kExitInsufficient = 5;
constexpr int kExitNotPd = 6;
constexpr int kExitInfeasible = 7;

std::vector<std::uint64_t> parse_csv(const std::string& csv) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoull(item));
    }
    return out;
}

access::Subset coalition_from_csv(const std::string& csv, int n) {
    access::Subset a = 0;
    for (std::uint64_t i : parse_csv(csv)) {
        if (i < 1 || i > static_cast<std::uint64_t>(n))
            throw schemes::BadParameters("participant index out of range: " +
                                         std::to_string(i));
        a |= access::Subset{1} << (i - 1);
    }
    return a;
}

void print_rates(const schemes::LinearScheme& s) {
    auto rates = analysis::coding_rates(s);
    std::cout << "coding rates:";
    for (int i = 0; i < s.n; ++i)
        std::cout << " " << s.participant_names[i] << "=" << rates[i].str();
    std::cout << "\n";
}

void write_scheme(const schemes::LinearScheme& s, const std::string& prefix) {
    io::save_json(prefix + ".scheme.json", io::scheme_to_json(s));
    std::cout << "wrote " << prefix << ".scheme.json\n";
}

void write_structure(const access::AccessStructure& g, const std::string& prefix) {
    io::save_json(prefix + ".structure.json", io::structure_to_json(g));
    std::cout << "wrote " << prefix << ".structure.json\n";
}

int print_report(const schemes::LinearScheme& s,
                 const analysis::ClassificationReport& r,
                 const std::string& out_path) {
    std::cout << "ramp_valid: " << (r.ramp_valid ? "yes" : "no") << "\n";
    for (const auto& v : r.ramp_violations)
        std::cout << "  " << access::subset_name(v.subset, r.n) << " at level "
                  << v.level << ": H(S|A) = " << v.got << ", expected " << v.expected
                  << "\n";
    std::cout << "pd: " << (r.pd ? "yes" : "no") << "\n";
    for (const auto& a : r.pd_failures)
        std::cout << "  no witness for " << access::subset_name(a, r.n) << "\n";
    std::cout << "strong: " << (r.strong ? "yes" : "no") << "\n";
    for (const auto& v : r.strong_violations) {
        std::vector<std::uint64_t> unit(r.L, 0);
        for (int i : access::members(v.secret_set)) unit[i] = 1;
        std::cout << "  " << access::subset_name(v.subset, r.n) << ": H("
                  << io::secret_combo_string(s, unit) << "|A) = " << v.got
                  << ", expected " << v.expected << "\n";
    }
    if (!r.leaks.empty()) {
        std::cout << "leaks:\n";
        for (const auto& leak : r.leaks)
            for (const auto& f : leak.basis)
                std::cout << "  " << access::subset_name(leak.subset, r.n) << ": "
                          << io::leak_string(s, leak.subset, f) << "\n";
    }
    print_rates(s);
    if (!out_path.empty()) {
        io::save_json(out_path, io::report_to_json(r, s));
        std::cout << "wrote " << out_path << "\n";
    }
    if (!r.ramp_valid) return kExitInvalidRamp;
    return r.strong ? kExitOk : kExitWeak;
}

// ---- demos ---------------------------------------------------------------

bool expect(bool cond, const std::string& what) {
    std::cout << (cond ? "  [ok] " : "  [MISMATCH] ") << what << "\n";
    return cond;
}

int demo_remark1() {
    std::cout << "(4,2,15)-threshold scheme from a degree-3 polynomial over GF(17)\n";
    auto [s, g] = schemes::builtin_fixture("remark1");
    auto r = analysis::classify(s, g);
    bool ok = expect(r.ramp_valid, "classifies as a valid ramp scheme");
    ok &= expect(!r.pd, "not partially decryptable");
    ok &= expect(!r.strong, "not strong");
    access::Subset a = coalition_from_csv("3,6,15", s.n);
    auto basis = analysis::decryptable_subspace(s, a);
    ok &= expect(basis.size() == 1, "{V3,V6,V15} determines a one-dimensional subspace");
    for (const auto& f : basis)
        std::cout << "  leak: " << io::leak_string(s, a, f) << "\n";
    // The identity with the scheme's own scaling: 5*S2 = 7*V3 + 9*V6 + 1*V15.
    gf::FieldMatrix ga = s.columns(a);
    std::vector<std::uint64_t> alpha = {7, 9, 1};
    std::vector<std::uint64_t> target(s.L + s.m, 0);
    target[1] = 5;
    bool identity = true;
    for (int row = 0; row < s.L + s.m; ++row) {
        std::uint64_t v = 0;
        for (std::size_t k = 0; k < alpha.size(); ++k)
            v = gf::add_mod(v, gf::mul_mod(alpha[k], ga.at(row, k), s.p), s.p);
        identity = identity && v == target[row];
    }
    ok &= expect(identity, "5*S2 = 7*V3 + 9*V6 + 1*V15 holds against the generator");
    if (identity) std::cout << "  5*S2 = 7*V3 + 9*V6 + 1*V15\n";
    return ok ? kExitOk : 1;
}

int demo_example1() {
    std::cout << "4-participant two-level scheme over GF(3)\n";
    auto [s, g] = schemes::builtin_fixture("example1");
    for (int c = 0; c < s.total_symbols(); ++c)
        std::cout << "  " << s.symbol_name(c) << " = " << io::share_functional_string(s, c)
                  << "\n";
    auto r = analysis::classify(s, g);
    bool ok = expect(r.ramp_valid, "classifies as a valid ramp scheme");
    ok &= expect(r.pd, "partially decryptable");
    ok &= expect(!r.strong, "not strong");
    access::Subset a = coalition_from_csv("1,4", s.n);
    int h = analysis::cond_entropy(s, 0b11, a);
    ok &= expect(h == 1, "H(S|{V1,V4}) = 1 symbol = H(S)/2");
    auto w = r.pd_witness[a];
    std::cout << "  {V1,V4} decrypts exactly {S" << access::members(w)[0] + 1 << "}\n";
    return ok ? kExitOk : 1;
}

int demo_example2() {
    std::cout << "strengthening the example1 scheme with T = [[1,1],[1,-1]] over GF(3)\n";
    auto [s, g] = schemes::builtin_fixture("example1");
    gf::FieldMatrix tex = gf::FieldMatrix::from_rows({{1, 1}, {1, -1}}, s.p);
    auto result = transform::strengthen(s, g, tex);
    for (int c = 0; c < result.scheme.total_symbols(); ++c)
        std::cout << "  " << result.scheme.symbol_name(c) << " = "
                  << io::share_functional_string(result.scheme, c, true) << "\n";
    bool ok = expect(result.report.strong, "transformed scheme is strong");
    ok &= expect(result.report.ramp_valid, "transformed scheme is a valid ramp scheme");
    return ok ? kExitOk : 1;
}

int demo_remark3() {
    std::cout << "(3,2,3)-threshold scheme V1=S1+R, V2=S1+S2+R, V3=R over GF(3)\n";
    auto [s, g] = schemes::builtin_fixture("remark3");
    auto r = analysis::classify(s, g);
    bool ok = expect(r.ramp_valid, "classifies as a valid ramp scheme");
    ok &= expect(!r.pd, "not partially decryptable");
    ok &= expect(!r.strong, "weak");
    bool refused = false;
    try {
        transform::strengthen(s, g);
    } catch (const transform::NotPD&) {
        refused = true;
    }
    ok &= expect(refused, "strengthen refuses: no transform fixes a non-PD scheme");
    gf::FieldMatrix tex = gf::FieldMatrix::from_rows({{1, 1}, {1, -1}}, s.p);
    auto forced = transform::apply_T(s, tex);
    std::cout << "  force-applying T anyway gives:\n";
    for (int c = 0; c < forced.total_symbols(); ++c)
        std::cout << "    " << forced.symbol_name(c) << " = "
                  << io::share_functional_string(forced, c, true) << "\n";
    auto r2 = analysis::classify(forced, g);
    ok &= expect(!r2.strong, "the forced transform is still not strong");
    access::Subset bad = coalition_from_csv("2,3", s.n);
    bool found = false;
    for (const auto& v : r2.strong_violations) found = found || v.subset == bad;
    ok &= expect(found, "violation at {V2,V3}");
    return ok ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ramp secret sharing toolkit"};
    app.require_subcommand(1);

    // build
    auto* build = app.add_subcommand("build", "construct schemes and structures");
    build->require_subcommand(1);
    int arg_k = 0, arg_L = 0, arg_n = 0;
    std::uint64_t arg_p = 0;
    std::string arg_out, arg_structure, arg_name, arg_points;

    auto* b_threshold = build->add_subcommand("threshold", "threshold access structure");
    b_threshold->add_option("--k", arg_k)->required();
    b_threshold->add_option("--L", arg_L)->required();
    b_threshold->add_option("--n", arg_n)->required();
    b_threshold->add_option("--out", arg_out);

    auto* b_pd = build->add_subcommand(
        "pd", "partially decryptable scheme for a general access structure");
    b_pd->add_option("--structure", arg_structure)->required();
    b_pd->add_option("--p", arg_p)->required();
    b_pd->add_option("--out", arg_out);

    auto* b_shamir = build->add_subcommand("shamir", "polynomial threshold ramp scheme");
    b_shamir->add_option("--k", arg_k)->required();
    b_shamir->add_option("--L", arg_L)->required();
    b_shamir->add_option("--n", arg_n)->required();
    b_shamir->add_option("--p", arg_p)->required();
    b_shamir->add_option("--points", arg_points);
    b_shamir->add_option("--out", arg_out);

    auto* b_fixture = build->add_subcommand("fixture", "built-in schemes");
    b_fixture->add_option("--name", arg_name)->required();
    b_fixture->add_option("--p", arg_p);
    b_fixture->add_option("--out", arg_out);

    // encode / decode
    std::string arg_scheme, arg_secrets, arg_randoms, arg_participants, arg_bundle;
    std::optional<std::uint64_t> arg_seed;
    auto* encode = app.add_subcommand("encode", "produce a share bundle");
    encode->add_option("--scheme", arg_scheme)->required();
    encode->add_option("--secrets", arg_secrets)->required();
    encode->add_option("--randoms", arg_randoms);
    encode->add_option("--seed", arg_seed, "seed for the encoder randomness");
    encode->add_option("--participants", arg_participants);
    encode->add_option("--out", arg_out);

    auto* decode = app.add_subcommand("decode", "reconstruct secrets from a bundle");
    decode->add_option("--scheme", arg_scheme)->required();
    decode->add_option("--bundle", arg_bundle)->required();
    decode->add_option("--participants", arg_participants);

    // classify
    std::string arg_T;
    auto* classify = app.add_subcommand("classify", "full security classification");
    classify->add_option("--scheme", arg_scheme)->required();
    classify->add_option("--structure", arg_structure)->required();
    classify->add_option("--out", arg_out);

    // strengthen
    bool arg_strict = false;
    auto* strengthen = app.add_subcommand("strengthen", "transform a PD scheme into a strong one");
    strengthen->add_option("--scheme", arg_scheme)->required();
    strengthen->add_option("--structure", arg_structure)->required();
    strengthen->add_option("--T", arg_T);
    strengthen->add_option("--out", arg_out);
    strengthen->add_flag("--strict-pd-witnesses", arg_strict,
                         "check the rank condition against every witness set");

    // demo
    std::string arg_demo;
    auto* demo = app.add_subcommand("demo", "reproduce the built-in demonstrations");
    demo->add_option("name", arg_demo, "remark1|example1|example2|remark3")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (b_threshold->parsed()) {
            auto g = access::threshold_structure(arg_k, arg_L, arg_n);
            write_structure(g, arg_out.empty() ? "threshold" : arg_out);
            return kExitOk;
        }
        if (b_pd->parsed()) {
            auto g = io::structure_from_json(io::load_json(arg_structure));
            auto s = schemes::pd_concat(g, arg_p);
            write_scheme(s, arg_out.empty() ? "pd" : arg_out);
            print_rates(s);
            return kExitOk;
        }
        if (b_shamir->parsed()) {
            auto s = schemes::shamir_ramp(arg_k, arg_L, arg_n, arg_p,
                                          arg_points.empty() ? std::vector<std::uint64_t>{}
                                                             : parse_csv(arg_points));
            std::string prefix = arg_out.empty() ? "shamir" : arg_out;
            write_scheme(s, prefix);
            write_structure(access::threshold_structure(arg_k, arg_L, arg_n), prefix);
            print_rates(s);
            return kExitOk;
        }
        if (b_fixture->parsed()) {
            auto fx = schemes::builtin_fixture(arg_name, arg_p);
            std::string prefix = arg_out.empty() ? arg_name : arg_out;
            write_scheme(fx.scheme, prefix);
            write_structure(fx.structure, prefix);
            print_rates(fx.scheme);
            return kExitOk;
        }
        if (encode->parsed()) {
            auto s = io::scheme_from_json(io::load_json(arg_scheme));
            auto secrets = parse_csv(arg_secrets);
            std::vector<std::uint64_t> randoms;
            if (!arg_randoms.empty()) {
                randoms = parse_csv(arg_randoms);
            } else if (s.m > 0) {
                if (!arg_seed)
                    throw schemes::BadParameters(
                        "encoder randomness needs --randoms or --seed");
                std::mt19937_64 rng(*arg_seed);
                for (int i = 0; i < s.m; ++i) randoms.push_back(rng() % s.p);
            }
            auto bundle = schemes::encode(s, secrets, randoms);
            if (!arg_participants.empty())
                bundle = schemes::restrict_bundle(
                    s, bundle, coalition_from_csv(arg_participants, s.n));
            std::string path = arg_out.empty() ? "bundle.json" : arg_out;
            io::save_json(path, io::bundle_to_json(s, bundle));
            std::cout << "wrote " << path << "\n";
            return kExitOk;
        }
        if (decode->parsed()) {
            auto s = io::scheme_from_json(io::load_json(arg_scheme));
            auto bundle = io::bundle_from_json(s, io::load_json(arg_bundle));
            if (!arg_participants.empty())
                bundle = schemes::restrict_bundle(
                    s, bundle, coalition_from_csv(arg_participants, s.n));
            auto result = schemes::reconstruct(s, bundle);
            if (result.secrets) {
                std::cout << "secrets:";
                for (auto v : *result.secrets) std::cout << " " << v;
                std::cout << "\n";
                return kExitOk;
            }
            std::cout << "insufficient shares\n";
            if (result.recoverable.rows() == 0) {
                std::cout << "recoverable secret subspace is empty\n";
            } else {
                for (std::size_t r = 0; r < result.recoverable.rows(); ++r) {
                    std::vector<std::uint64_t> c(s.L);
                    for (int i = 0; i < s.L; ++i) c[i] = result.recoverable.at(r, i);
                    std::cout << io::secret_combo_string(s, c) << " recoverable\n";
                }
            }
            return kExitInsufficient;
        }
        if (classify->parsed()) {
            auto s = io::scheme_from_json(io::load_json(arg_scheme));
            auto g = io::structure_from_json(io::load_json(arg_structure));
            auto r = analysis::classify(s, g);
            return print_report(s, r, arg_out);
        }
        if (strengthen->parsed()) {
            auto s = io::scheme_from_json(io::load_json(arg_scheme));
            auto g = io::structure_from_json(io::load_json(arg_structure));
            std::optional<gf::FieldMatrix> t;
            if (!arg_T.empty()) t = io::matrix_from_json(io::load_json(arg_T), s.p);
            auto result = transform::strengthen(s, g, t, arg_strict);
            std::string prefix = arg_out.empty() ? "strong" : arg_out;
            write_scheme(result.scheme, prefix);
            io::save_json(prefix + ".T.json", io::matrix_to_json(result.T));
            std::cout << "wrote " << prefix << ".T.json\n";
            std::cout << "strong: yes\n";
            print_rates(result.scheme);
            return kExitOk;
        }
        if (demo->parsed()) {
            if (arg_demo == "remark1") return demo_remark1();
            if (arg_demo == "example1") return demo_example1();
            if (arg_demo == "example2") return demo_example2();
            if (arg_demo == "remark3") return demo_remark3();
            throw schemes::BadParameters("unknown demo: " + arg_demo);
        }
    } catch (const transform::NotPD& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNotPd;
    } catch (const transform::FieldTooSmall& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const transform::ConditionFailed& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
