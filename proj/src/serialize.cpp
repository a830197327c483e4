#include "ojaregret/serialize.hpp"

#include <fstream>

#include "ojaregret/errors.hpp"

namespace ojaregret {

using nlohmann::json;

json family_to_json(const CommutingFamily& family) {
  json j;
  j["n"] = family.dim();
  j["T"] = family.rounds();
  json basis = json::array();
  for (std::size_t i = 0; i < family.dim(); ++i) {
    basis.push_back(family.basis().column(i));
  }
  j["basis"] = std::move(basis);
  j["eigenvalues"] = family.all_eigenvalues();
  return j;
}

CommutingFamily family_from_json(const json& j) {
  try {
    const std::size_t n = j.at("n").get<std::size_t>();
    const std::size_t rounds = j.at("T").get<std::size_t>();
    auto columns = j.at("basis").get<std::vector<std::vector<double>>>();
    auto eigenvalues =
        j.at("eigenvalues").get<std::vector<std::vector<double>>>();
    if (columns.size() != n) {
      throw ConfigError("instance field 'basis' must hold n columns");
    }
    if (eigenvalues.size() != rounds) {
      throw ConfigError("instance field 'eigenvalues' must hold T vectors");
    }
    // Constructors re-validate orthonormality and eigenvalue bounds.
    return CommutingFamily(OrthonormalBasis(std::move(columns)),
                           std::move(eigenvalues));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed instance JSON: ") + e.what());
  }
}

json matrix_to_json(const SymmetricMatrix& a) {
  json j;
  j["n"] = a.dim();
  json rows = json::array();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    std::vector<double> row(a.dim());
    for (std::size_t k = 0; k < a.dim(); ++k) row[k] = a(i, k);
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  return j;
}

SymmetricMatrix matrix_from_json(const json& j) {
  try {
    const std::size_t n = j.at("n").get<std::size_t>();
    const auto rows = j.at("entries").get<std::vector<std::vector<double>>>();
    if (rows.size() != n) {
      throw ConfigError("matrix field 'entries' must hold n rows");
    }
    std::vector<double> flat;
    flat.reserve(n * n);
    for (const auto& row : rows) {
      if (row.size() != n) {
        throw ConfigError("matrix rows must all have length n");
      }
      flat.insert(flat.end(), row.begin(), row.end());
    }
    return SymmetricMatrix(n, std::move(flat));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed matrix JSON: ") + e.what());
  }
}

GKind g_kind_from_string(const std::string& s) {
  if (s == "neg_identity") return GKind::kNegIdentity;
  if (s == "square") return GKind::kSquare;
  if (s == "interval") return GKind::kInterval;
  if (s == "max") return GKind::kMaxCoord;
  if (s == "l1system") return GKind::kL1System;
  if (s == "polybox") return GKind::kPolyBox;
  throw ConfigError("unknown g kind: " + s);
}

std::string g_kind_to_string(GKind kind) {
  switch (kind) {
    case GKind::kNegIdentity: return "neg_identity";
    case GKind::kSquare: return "square";
    case GKind::kInterval: return "interval";
    case GKind::kMaxCoord: return "max";
    case GKind::kL1System: return "l1system";
    case GKind::kPolyBox: return "polybox";
  }
  throw ConfigError("unknown g kind enum value");
}

QuadFormProblem problem_from_json(const json& j) {
  try {
    CommutingFamily family = family_from_json(j.at("family"));
    const auto& gj = j.at("g");
    const GKind kind = g_kind_from_string(gj.at("kind").get<std::string>());
    GParams params;
    if (gj.contains("params")) {
      const auto& pj = gj.at("params");
      if (pj.contains("a")) params.a = pj.at("a").get<double>();
      if (pj.contains("b")) {
        if (pj.at("b").is_array()) {
          params.targets = pj.at("b").get<std::vector<double>>();
        } else {
          params.b = pj.at("b").get<double>();
        }
      }
      if (pj.contains("lo")) params.lo = pj.at("lo").get<std::vector<double>>();
      if (pj.contains("hi")) params.hi = pj.at("hi").get<std::vector<double>>();
    }
    std::optional<double> lipschitz;
    if (j.contains("G")) lipschitz = j.at("G").get<double>();
    return QuadFormProblem(std::move(family), make_g_oracle(kind, params),
                           lipschitz);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed problem JSON: ") + e.what());
  }
}

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    // e.what() carries the byte offset and the offending token.
    throw ConfigError("JSON parse failure in " + path.string() + ": " +
                      e.what());
  }
}

void save_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
}

}  // namespace ojaregret
