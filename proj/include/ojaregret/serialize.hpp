#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "ojaregret/linalg.hpp"
#include "ojaregret/quadform.hpp"

namespace ojaregret {

// Instance schema:
//   {"n": int, "T": int, "basis": [[f64...]...], "eigenvalues": [[f64...]...]}
// with one basis column per entry. Reading re-validates every invariant.
nlohmann::json family_to_json(const CommutingFamily& family);
CommutingFamily family_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const SymmetricMatrix& a);
SymmetricMatrix matrix_from_json(const nlohmann::json& j);

// Problem schema:
//   {"family": <instance>, "g": {"kind": str, "params": {...}}, "G": f64}
// Kinds: "neg_identity" | "square" | "interval" | "max" | "l1system" |
// "polybox". "G" is optional; the oracle's closed-form default applies.
QuadFormProblem problem_from_json(const nlohmann::json& j);

GKind g_kind_from_string(const std::string& s);
std::string g_kind_to_string(GKind kind);

nlohmann::json load_json_file(const std::filesystem::path& path);
void save_json_file(const std::filesystem::path& path,
                    const nlohmann::json& j);

}  // namespace ojaregret
