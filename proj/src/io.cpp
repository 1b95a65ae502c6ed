#include "rampss/io.hpp"

#include <fstream>

namespace rampss::io {

using nlohmann::json;

namespace {

void expect_version(const json& j) {
    if (!j.is_object() || !j.contains("format_version") || j["format_version"] != 1)
        throw ParseError("expected an object with format_version 1");
}

std::uint64_t get_u64(const json& j, const char* key, std::uint64_t lo,
                      std::uint64_t hi) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw ParseError(std::string("missing integer field: ") + key);
    auto v = j[key].get<std::int64_t>();
    if (v < 0 || static_cast<std::uint64_t>(v) < lo || static_cast<std::uint64_t>(v) > hi)
        throw ParseError(std::string("field out of range: ") + key);
    return static_cast<std::uint64_t>(v);
}

std::vector<int> participant_list(access::Subset a) {
    std::vector<int> out;
    for (int i : access::members(a)) out.push_back(i + 1);
    return out;
}

}  // namespace

json structure_to_json(const access::AccessStructure& s) {
    json levels = json::array();
    for (const auto& family : s.cumulative_minimal) {
        json sets = json::array();
        for (access::Subset a : family) sets.push_back(participant_list(a));
        levels.push_back(std::move(sets));
    }
    return json{{"format_version", 1},
                {"n", s.n},
                {"L", s.L},
                {"cumulative_minimal", std::move(levels)}};
}

access::AccessStructure structure_from_json(const json& j) {
    expect_version(j);
    access::AccessStructure s;
    s.n = static_cast<int>(get_u64(j, "n", 1, access::kMaxParticipants));
    s.L = static_cast<int>(get_u64(j, "L", 1, 32));
    if (!j.contains("cumulative_minimal") || !j["cumulative_minimal"].is_array())
        throw ParseError("missing cumulative_minimal array");
    for (const auto& level : j["cumulative_minimal"]) {
        if (!level.is_array()) throw ParseError("each level must be an array of sets");
        std::vector<access::Subset> family;
        for (const auto& set : level) {
            if (!set.is_array()) throw ParseError("each minimal set must be an array");
            std::vector<int> idx;
            for (const auto& v : set) {
                if (!v.is_number_integer()) throw ParseError("participant index must be an integer");
                int i = v.get<int>();
                if (i < 1 || i > s.n) throw ParseError("participant index out of range");
                idx.push_back(i - 1);
            }
            family.push_back(access::subset_of_indices(idx));
        }
        s.cumulative_minimal.push_back(std::move(family));
    }
    access::require_valid(s);
    return s;
}

json scheme_to_json(const schemes::LinearScheme& s) {
    json participants = json::array();
    for (int i = 0; i < s.n; ++i) {
        json symbols = json::array();
        for (int c = 0; c < s.total_symbols(); ++c)
            if (s.symbol_owner[c] == i) symbols.push_back(c);
        participants.push_back(
            json{{"name", s.participant_names[i]}, {"symbols", std::move(symbols)}});
    }
    json g = json::array();
    for (std::size_t r = 0; r < s.G.rows(); ++r)
        for (std::size_t c = 0; c < s.G.cols(); ++c) g.push_back(s.G.at(r, c));
    return json{{"format_version", 1}, {"p", s.p},          {"L", s.L},
                {"m", s.m},            {"participants", participants}, {"G", g}};
}

schemes::LinearScheme scheme_from_json(const json& j) {
    expect_version(j);
    schemes::LinearScheme s;
    s.p = get_u64(j, "p", 2, UINT64_MAX);
    if (!gf::is_prime(s.p)) throw ParseError("p is not prime");
    s.L = static_cast<int>(get_u64(j, "L", 1, 32));
    s.m = static_cast<int>(get_u64(j, "m", 0, 1 << 20));
    if (!j.contains("participants") || !j["participants"].is_array() ||
        j["participants"].empty())
        throw ParseError("missing participants array");
    s.n = static_cast<int>(j["participants"].size());
    if (s.n > access::kMaxParticipants) throw ParseError("too many participants");
    if (!j.contains("G") || !j["G"].is_array()) throw ParseError("missing G array");
    std::size_t cols_total = 0;
    for (const auto& part : j["participants"]) {
        if (!part.is_object() || !part.contains("symbols") || !part["symbols"].is_array())
            throw ParseError("each participant needs a symbols array");
        cols_total += part["symbols"].size();
    }
    if (j["G"].size() != static_cast<std::size_t>(s.L + s.m) * cols_total)
        throw ParseError("G length does not match (L+m) x total symbols");
    s.symbol_owner.assign(cols_total, -1);
    s.participant_names.resize(s.n);
    for (int i = 0; i < s.n; ++i) {
        const auto& part = j["participants"][i];
        s.participant_names[i] =
            part.contains("name") ? part["name"].get<std::string>()
                                  : "V" + std::to_string(i + 1);
        for (const auto& c : part["symbols"]) {
            if (!c.is_number_integer()) throw ParseError("symbol index must be an integer");
            auto col = c.get<std::int64_t>();
            if (col < 0 || col >= static_cast<std::int64_t>(cols_total))
                throw ParseError("symbol index out of range");
            if (s.symbol_owner[col] != -1) throw ParseError("symbol owned twice");
            s.symbol_owner[col] = i;
        }
    }
    s.G = gf::FieldMatrix(s.L + s.m, cols_total, s.p);
    for (std::size_t k = 0; k < j["G"].size(); ++k) {
        const auto& v = j["G"][k];
        if (!v.is_number_integer()) throw ParseError("G entries must be integers");
        auto x = v.get<std::int64_t>();
        if (x < 0 || static_cast<std::uint64_t>(x) >= s.p)
            throw ParseError("G entry out of range [0, p)");
        s.G.set(k / cols_total, k % cols_total, x);
    }
    try {
        schemes::validate_scheme(s);
    } catch (const schemes::BadParameters& e) {
        throw ParseError(e.what());
    }
    return s;
}

json bundle_to_json(const schemes::LinearScheme& s, const schemes::ShareBundle& b) {
    json shares = json::array();
    auto cols = s.columns_of(b.participants);
    for (int i : access::members(b.participants)) {
        json values = json::array();
        for (std::size_t k = 0; k < cols.size(); ++k)
            if (s.symbol_owner[cols[k]] == i) values.push_back(b.values[k]);
        shares.push_back(json{{"participant", i + 1}, {"values", std::move(values)}});
    }
    return json{{"format_version", 1}, {"p", s.p}, {"shares", std::move(shares)}};
}

schemes::ShareBundle bundle_from_json(const schemes::LinearScheme& s, const json& j) {
    expect_version(j);
    if (get_u64(j, "p", 2, UINT64_MAX) != s.p)
        throw ParseError("bundle modulus does not match the scheme");
    if (!j.contains("shares") || !j["shares"].is_array())
        throw ParseError("missing shares array");
    std::vector<std::vector<std::uint64_t>> per_participant(s.n);
    access::Subset coalition = 0;
    for (const auto& share : j["shares"]) {
        int i = static_cast<int>(get_u64(share, "participant", 1, s.n)) - 1;
        if (coalition & (access::Subset{1} << i))
            throw ParseError("participant listed twice");
        coalition |= access::Subset{1} << i;
        if (!share.contains("values") || !share["values"].is_array())
            throw ParseError("each share needs a values array");
        for (const auto& v : share["values"]) {
            if (!v.is_number_integer()) throw ParseError("share values must be integers");
            auto x = v.get<std::int64_t>();
            if (x < 0 || static_cast<std::uint64_t>(x) >= s.p)
                throw ParseError("share value out of range [0, p)");
            per_participant[i].push_back(static_cast<std::uint64_t>(x));
        }
        if (per_participant[i].size() != static_cast<std::size_t>(s.symbols_of(i)))
            throw ParseError("wrong number of values for participant " +
                             std::to_string(i + 1));
    }
    schemes::ShareBundle b;
    b.participants = coalition;
    for (int c : s.columns_of(coalition)) {
        auto& vals = per_participant[s.symbol_owner[c]];
        b.values.push_back(vals.front());
        vals.erase(vals.begin());
    }
    return b;
}

json matrix_to_json(const gf::FieldMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

gf::FieldMatrix matrix_from_json(const json& j, std::uint64_t p) {
    if (!j.is_array() || j.empty()) throw ParseError("expected a nonempty matrix");
    std::size_t rows = j.size();
    if (!j[0].is_array()) throw ParseError("expected rows of integers");
    std::size_t cols = j[0].size();
    gf::FieldMatrix m(rows, cols, p);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols) throw ParseError("ragged matrix");
        for (std::size_t c = 0; c < cols; ++c) {
            if (!j[r][c].is_number_integer())
                throw ParseError("matrix entries must be integers");
            m.set(r, c, j[r][c].get<std::int64_t>());
        }
    }
    return m;
}

namespace {

json subset_json(access::Subset a) {
    json out = json::array();
    for (int i : access::members(a)) out.push_back(i + 1);
    return out;
}

json secret_set_json(analysis::SecretSet j) {
    json out = json::array();
    for (int i : access::members(j)) out.push_back(i + 1);
    return out;
}

}  // namespace

json report_to_json(const analysis::ClassificationReport& r,
                    const schemes::LinearScheme& s) {
    json out;
    out["ramp_valid"] = r.ramp_valid;
    out["pd"] = r.pd;
    out["strong"] = r.strong;
    out["ramp_violations"] = json::array();
    for (const auto& v : r.ramp_violations)
        out["ramp_violations"].push_back(json{{"subset", subset_json(v.subset)},
                                              {"level", v.level},
                                              {"expected", v.expected},
                                              {"got", v.got}});
    out["pd_failures"] = json::array();
    for (access::Subset a : r.pd_failures) out["pd_failures"].push_back(subset_json(a));
    out["pd_witnesses"] = json::array();
    analysis::SecretSet full = (analysis::SecretSet{1} << r.L) - 1;
    for (std::size_t a = 0; a < r.pd_witness.size(); ++a) {
        analysis::SecretSet w = r.pd_witness[a];
        if (w == analysis::kNoWitness || w == 0 || w == full) continue;
        out["pd_witnesses"].push_back(
            json{{"subset", subset_json(static_cast<access::Subset>(a))},
                 {"secrets", secret_set_json(w)}});
    }
    out["strong_violations"] = json::array();
    for (const auto& v : r.strong_violations)
        out["strong_violations"].push_back(json{{"subset", subset_json(v.subset)},
                                                {"secrets", secret_set_json(v.secret_set)},
                                                {"expected", v.expected},
                                                {"got", v.got}});
    out["leaks"] = json::array();
    for (const auto& leak : r.leaks) {
        json basis = json::array();
        json lines = json::array();
        for (const auto& f : leak.basis) {
            basis.push_back(json{{"secret_coeffs", f.secret_coeffs},
                                 {"share_coeffs", f.share_coeffs}});
            lines.push_back(leak_string(s, leak.subset, f));
        }
        out["leaks"].push_back(json{{"subset", subset_json(leak.subset)},
                                    {"functionals", std::move(lines)},
                                    {"basis", std::move(basis)}});
    }
    out["coding_rates"] = json::array();
    for (int i = 0; i < r.n; ++i)
        out["coding_rates"].push_back(json{{"participant", s.participant_names[i]},
                                           {"num", r.coding_rates[i].num},
                                           {"den", r.coding_rates[i].den}});
    return out;
}

json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError("invalid JSON in " + path.string() + ": " + e.what());
    }
    return j;
}

void save_json(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path.string());
    out << j.dump(2) << "\n";
}

std::string secret_combo_string(const schemes::LinearScheme& s,
                                const std::vector<std::uint64_t>& coeffs, bool primed) {
    std::string out;
    for (int i = 0; i < s.L; ++i) {
        if (coeffs[i] == 0) continue;
        if (!out.empty()) out += " + ";
        std::string name = (primed ? "S'" : "S") + std::to_string(i + 1);
        if (coeffs[i] == 1)
            out += name;
        else
            out += std::to_string(coeffs[i]) + "*" + name;
    }
    return out.empty() ? "0" : out;
}

std::string leak_string(const schemes::LinearScheme& s, access::Subset coalition,
                        const analysis::LeakFunctional& f) {
    std::string lhs = secret_combo_string(s, f.secret_coeffs);
    std::string rhs;
    auto cols = s.columns_of(coalition);
    for (std::size_t k = 0; k < cols.size(); ++k) {
        if (f.share_coeffs[k] == 0) continue;
        if (!rhs.empty()) rhs += " + ";
        rhs += std::to_string(f.share_coeffs[k]) + "*" + s.symbol_name(cols[k]);
    }
    if (rhs.empty()) rhs = "0";
    return lhs + " = " + rhs;
}

std::string share_functional_string(const schemes::LinearScheme& s, int column,
                                    bool primed) {
    std::string out;
    for (int r = 0; r < s.L + s.m; ++r) {
        std::uint64_t coeff = s.G.at(r, column);
        if (coeff == 0) continue;
        if (!out.empty()) out += " + ";
        std::string name = r < s.L ? ((primed ? "S'" : "S") + std::to_string(r + 1))
                                   : "R" + std::to_string(r - s.L + 1);
        if (coeff == 1)
            out += name;
        else
            out += std::to_string(coeff) + "*" + name;
    }
    return out.empty() ? "0" : out;
}

}  // namespace rampss::io
