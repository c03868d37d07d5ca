#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "lca/algebra.hpp"
#include "lca/bimap.hpp"
#include "lca/solver.hpp"

namespace lca {

/// Malformed JSON or a document that does not follow the file schema.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Algebra definition file:
//   {"name": str, "modulus": int, "families": [str], "b": "symbolic" | "p/q",
//    "rules": [{"left": str, "right": str, "target": str | null, "coeff": expr}]}
nlohmann::json algebra_to_json(const Algebra& algebra);
Algebra algebra_from_json(const nlohmann::json& doc);
/// Throws FormatError (syntax, schema, indexed target) or AlgebraError
/// (duplicate/missing rule, unknown family, bad coefficient variables).
Algebra load_algebra(const std::filesystem::path& path);

// Bilinear map file:
//   {"algebra": str, "entries": [{"left": "L:0", "right": "L:1",
//                                 "value": [{"gen": "L:1", "coeff": expr}]}]}
nlohmann::json element_to_json(const Algebra& algebra, const Element& e);
nlohmann::json map_to_json(const BilinearMap& phi);
/// The document's "algebra" must name `algebra`.
BilinearMap map_from_json(const nlohmann::json& doc, const AlgebraPtr& algebra);
BilinearMap load_map(const std::filesystem::path& path, const AlgebraPtr& algebra);

nlohmann::json read_json_file(const std::filesystem::path& path);

// Reports. Nonzero residuals always carry canonical polynomial strings.
nlohmann::json axiom_report_json(const Algebra& algebra, const AxiomReport& report);
nlohmann::json residual_json(const Algebra& algebra, const Residual& r);
nlohmann::json verify_report_json(const Algebra& algebra, const VerifyReport& report);
nlohmann::json match_report_json(const MatchReport& report);
/// {"algebra", "degree", "tags", "unknowns", "rows", "dimension", "basis",
///  "matched", "unmatched"}
nlohmann::json solver_report_json(const Algebra& algebra, unsigned degree, std::span<const Identity> tags,
                                  const SolutionSpace& space, const MatchReport& match);

}  // namespace lca
