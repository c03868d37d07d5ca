#include "lca/io.hpp"

#include <fstream>
#include <set>

namespace lca {

using nlohmann::json;

namespace {

const json& require(const json& obj, const char* key) {
  if (!obj.is_object()) throw FormatError("expected a JSON object");
  auto it = obj.find(key);
  if (it == obj.end()) throw FormatError(std::string("missing field '") + key + "'");
  return *it;
}

std::string require_string(const json& obj, const char* key) {
  const json& v = require(obj, key);
  if (!v.is_string()) throw FormatError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

Poly parse_field_poly(const json& obj, const char* key) {
  const std::string text = require_string(obj, key);
  try {
    return parse_poly(text);
  } catch (const ParseError& e) {
    throw FormatError(std::string("field '") + key + "': " + e.what());
  }
}

std::size_t family_of(const std::vector<std::string>& families, const std::string& name) {
  if (name.find(':') != std::string::npos)
    throw FormatError("index-law violation: rule family '" + name +
                      "' carries an index; brackets always land on index i+j");
  for (std::size_t i = 0; i < families.size(); ++i)
    if (families[i] == name) return i;
  throw AlgebraError("unknown family '" + name + "'");
}

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError("'" + path.string() + "': " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Algebra files

json algebra_to_json(const Algebra& algebra) {
  json rules = json::array();
  for (const auto& r : algebra.rules()) {
    rules.push_back({{"left", algebra.families()[r.left]},
                     {"right", algebra.families()[r.right]},
                     {"target", r.target ? json(algebra.families()[*r.target]) : json(nullptr)},
                     {"coeff", r.coeff.to_string()}});
  }
  return {{"name", algebra.name()},
          {"modulus", algebra.modulus()},
          {"families", algebra.families()},
          {"b", algebra.b().to_string()},
          {"rules", std::move(rules)}};
}

Algebra algebra_from_json(const json& doc) {
  const std::string name = require_string(doc, "name");
  const json& modulus = require(doc, "modulus");
  if (!modulus.is_number_integer()) throw FormatError("field 'modulus' must be an integer");
  const json& families_json = require(doc, "families");
  if (!families_json.is_array()) throw FormatError("field 'families' must be an array");
  std::vector<std::string> families;
  for (const auto& f : families_json) {
    if (!f.is_string()) throw FormatError("family names must be strings");
    families.push_back(f.get<std::string>());
  }

  BParameter b = BParameter::symbolic();
  if (auto it = doc.find("b"); it != doc.end()) {
    if (!it->is_string()) throw FormatError("field 'b' must be \"symbolic\" or a rational string");
    b = BParameter::parse(it->get<std::string>());
  }

  const json& rules_json = require(doc, "rules");
  if (!rules_json.is_array()) throw FormatError("field 'rules' must be an array");
  std::vector<BracketRule> rules;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& r : rules_json) {
    BracketRule rule;
    rule.left = family_of(families, require_string(r, "left"));
    rule.right = family_of(families, require_string(r, "right"));
    if (!seen.emplace(rule.left, rule.right).second)
      throw AlgebraError("duplicate rule for (" + families[rule.left] + ", " + families[rule.right] + ")");
    const json& target = require(r, "target");
    if (target.is_null()) {
      rule.target.reset();
    } else if (target.is_string()) {
      rule.target = family_of(families, target.get<std::string>());
    } else {
      throw FormatError("rule target must be a family name or null");
    }
    if (r.contains("coeff")) {
      rule.coeff = parse_field_poly(r, "coeff");
    } else if (rule.target) {
      throw FormatError("rule with a target needs a 'coeff'");
    }
    if (!rule.target && !rule.coeff.is_zero())
      throw AlgebraError("rule with null target must have a zero coefficient");
    rules.push_back(std::move(rule));
  }
  return Algebra(name, modulus.get<int>(), std::move(families), std::move(rules), std::move(b));
}

Algebra load_algebra(const std::filesystem::path& path) { return algebra_from_json(read_json_file(path)); }

// ---------------------------------------------------------------------------
// Map files

json element_to_json(const Algebra& algebra, const Element& e) {
  json out = json::array();
  for (const auto& [g, p] : e.terms()) out.push_back({{"gen", algebra.format(g)}, {"coeff", p.to_string()}});
  return out;
}

json map_to_json(const BilinearMap& phi) {
  const Algebra& A = phi.algebra();
  json entries = json::array();
  for (const auto& [key, value] : phi.table()) {
    entries.push_back({{"left", A.format(key.first)},
                       {"right", A.format(key.second)},
                       {"value", element_to_json(A, value)}});
  }
  return {{"algebra", A.name()}, {"entries", std::move(entries)}};
}

BilinearMap map_from_json(const json& doc, const AlgebraPtr& algebra) {
  const std::string name = require_string(doc, "algebra");
  if (name != algebra->name())
    throw MapError("map is defined over '" + name + "' but the algebra is '" + algebra->name() + "'");
  const json& entries = require(doc, "entries");
  if (!entries.is_array()) throw FormatError("field 'entries' must be an array");

  BilinearMap phi(algebra);
  std::set<BilinearMap::Key> seen;
  for (const auto& entry : entries) {
    const GeneratorId left = algebra->parse_generator(require_string(entry, "left"));
    const GeneratorId right = algebra->parse_generator(require_string(entry, "right"));
    if (!seen.emplace(left, right).second)
      throw MapError("duplicate map entry for (" + algebra->format(left) + ", " + algebra->format(right) + ")");
    const json& value = require(entry, "value");
    if (!value.is_array()) throw FormatError("entry 'value' must be an array");
    Element e;
    for (const auto& term : value) e.add(algebra->parse_generator(require_string(term, "gen")),
                                         parse_field_poly(term, "coeff"));
    phi.set(left, right, std::move(e));
  }
  return phi;
}

BilinearMap load_map(const std::filesystem::path& path, const AlgebraPtr& algebra) {
  return map_from_json(read_json_file(path), algebra);
}

// ---------------------------------------------------------------------------
// Reports

namespace {

json tuple_json(const Algebra& algebra, std::span<const GeneratorId> args) {
  json out = json::array();
  for (GeneratorId g : args) out.push_back(algebra.format(g));
  return out;
}

}  // namespace

json axiom_report_json(const Algebra& algebra, const AxiomReport& report) {
  json failures = json::array();
  for (const AxiomResidual* r : report.failures()) {
    failures.push_back({{"identity", r->identity},
                        {"args", tuple_json(algebra, r->args)},
                        {"value", element_to_json(algebra, r->value)}});
  }
  return {{"algebra", algebra.name()},
          {"modulus", algebra.modulus()},
          {"b", algebra.b().to_string()},
          {"skew_checked", report.skew.size()},
          {"jacobi_checked", report.jacobi.size()},
          {"passed", report.passed()},
          {"failures", std::move(failures)}};
}

json residual_json(const Algebra& algebra, const Residual& r) {
  return {{"identity", to_string(r.tag)},
          {"args", tuple_json(algebra, r.args)},
          {"value", element_to_json(algebra, r.value)}};
}

json verify_report_json(const Algebra& algebra, const VerifyReport& report) {
  json failures = json::array();
  for (const auto& r : report.failures) failures.push_back(residual_json(algebra, r));
  return {{"checked", report.checked}, {"passed", report.passed()}, {"failures", std::move(failures)}};
}

json match_report_json(const MatchReport& report) {
  json matched = json::array();
  for (const auto& m : report.matched) {
    json combination = json::object();
    for (const auto& [name, c] : m.combination) combination[name] = to_string(c);
    matched.push_back({{"index", m.index}, {"combination", std::move(combination)}});
  }
  json unmatched = json::array();
  for (const auto& u : report.unmatched)
    unmatched.push_back({{"index", u.index}, {"remainder", map_to_json(u.remainder)}});
  return {{"templates", report.templates}, {"matched", std::move(matched)}, {"unmatched", std::move(unmatched)}};
}

json solver_report_json(const Algebra& algebra, unsigned degree, std::span<const Identity> tags,
                        const SolutionSpace& space, const MatchReport& match) {
  json tag_names = json::array();
  for (Identity t : tags) tag_names.push_back(to_string(t));
  json basis = json::array();
  for (const auto& phi : space.basis) basis.push_back(map_to_json(phi));
  json m = match_report_json(match);
  return {{"algebra", algebra.name()},
          {"modulus", algebra.modulus()},
          {"b", algebra.b().to_string()},
          {"degree", degree},
          {"tags", std::move(tag_names)},
          {"unknowns", space.unknowns},
          {"rows", space.rows},
          {"dimension", space.dimension},
          {"basis", std::move(basis)},
          {"matched", std::move(m["matched"])},
          {"unmatched", std::move(m["unmatched"])}};
}

}  // namespace lca
