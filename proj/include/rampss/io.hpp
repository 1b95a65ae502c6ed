#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "rampss/access.hpp"
#include "rampss/analysis.hpp"
#include "rampss/gf.hpp"
#include "rampss/schemes.hpp"

// JSON file formats (format_version 1, integers only):
//   structure: {format_version, n, L, cumulative_minimal: [[ [1,4], ... ], ...]}
//   scheme:    {format_version, p, L, m, participants: [{name, symbols}], G}
//   bundle:    {format_version, p, shares: [{participant, values}]}
//   T:         a bare integer matrix, e.g. [[1,1],[1,-1]]
// Participant indices are 1-based in files; symbol/column indices are 0-based
// positions into the row-major generator array G.

namespace rampss::io {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

nlohmann::json structure_to_json(const access::AccessStructure& s);
access::AccessStructure structure_from_json(const nlohmann::json& j);

nlohmann::json scheme_to_json(const schemes::LinearScheme& s);
schemes::LinearScheme scheme_from_json(const nlohmann::json& j);

nlohmann::json bundle_to_json(const schemes::LinearScheme& s,
                              const schemes::ShareBundle& b);
schemes::ShareBundle bundle_from_json(const schemes::LinearScheme& s,
                                      const nlohmann::json& j);

// Bare integer matrix; entries may be negative on input and are reduced mod p.
nlohmann::json matrix_to_json(const gf::FieldMatrix& m);
gf::FieldMatrix matrix_from_json(const nlohmann::json& j, std::uint64_t p);

nlohmann::json report_to_json(const analysis::ClassificationReport& r,
                              const schemes::LinearScheme& s);

nlohmann::json load_json(const std::filesystem::path& path);
void save_json(const std::filesystem::path& path, const nlohmann::json& j);

// "S2 = 15*V3 + 12*V6 + 7*V15": monic secret combination on the left, the
// coalition's share symbols with explicit coefficients on the right.
std::string leak_string(const schemes::LinearScheme& s, access::Subset coalition,
                        const analysis::LeakFunctional& f);

// Left-hand sides like "S2" or "3*S1 + 2*S2" (coefficient 1 left bare).
std::string secret_combo_string(const schemes::LinearScheme& s,
                                const std::vector<std::uint64_t>& coeffs,
                                bool primed = false);

// One share symbol of the generator as a functional of inputs, secrets
// first: "S1 + 2*R2". primed renders secrets as S'1... for transformed
// schemes.
std::string share_functional_string(const schemes::LinearScheme& s, int column,
                                    bool primed = false);

}  // namespace rampss::io
