// JSON and CSV carriers for every public structure, plus the path config
// parser. Serialization is deterministic: object keys sorted, floats printed
// with 17 significant digits.
#ifndef HALFLINE_IO_HPP
#define HALFLINE_IO_HPP

#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "halfline/boundary.hpp"
#include "halfline/calderon.hpp"
#include "halfline/evolution.hpp"
#include "halfline/indices.hpp"
#include "halfline/models.hpp"
#include "halfline/spectral.hpp"
#include "halfline/subspace.hpp"
#include "halfline/verify.hpp"

namespace halfline {

// Carries a JSON pointer to the offending field.
struct config_error : std::runtime_error {
  std::string pointer;
  config_error(std::string ptr, const std::string& msg)
      : std::runtime_error(msg + " (at " + ptr + ")"), pointer(std::move(ptr)) {}
};

// Operators are flattened row major, frames column major, every complex
// entry a [re, im] pair.
nlohmann::json to_json(const DiracData& d);
DiracData dirac_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Subspace& s);
Subspace subspace_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BoundaryCondition& b);
BoundaryCondition condition_from_json(const nlohmann::json& j);

// The graph map is stored over canonical frames: the complements of E and F
// inside their spectral buckets, which the reader reconstructs from d.
nlohmann::json elliptic_to_json(const DiracData& d, const EllipticData& data);
EllipticData elliptic_from_json(const DiracData& d, const nlohmann::json& j);

nlohmann::json to_json(const GridSection& s);
GridSection section_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CalderonPair& cp);
nlohmann::json to_json(const IndexReport& rep);
nlohmann::json to_json(const VerifySummary& sum);

// Built-in families ("constant", "cylinder", "hyperbolic-even",
// "hyperbolic-odd", "random-coupled") or a piecewise linear matrix table
// ("table"). Throws config_error on schema violations.
CoefficientPath path_from_config(const nlohmann::json& config);

std::string dump_deterministic(const nlohmann::json& j, int indent = 2);

// Fixed header: lambda,norm_mid,norm_far,s
std::string scan_csv(const std::vector<ScanRow>& rows);

void write_text_file(const std::string& path, const std::string& content);
nlohmann::json read_json_file(const std::string& path);

}  // namespace halfline

#endif
