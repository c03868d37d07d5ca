// lca: command-line driver for the conformal algebra library.
//
// Exit codes: 0 success (and the check passed), 1 a check failed, 2 usage or
// input error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lca/io.hpp"
#include "lca/solver.hpp"

namespace {

using nlohmann::json;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

/// Input problem attributed to one flag.
struct UsageError {
  std::string flag;
  std::string message;
};

struct Options {
  std::string catalog;
  std::string algebra_file;
  std::optional<int> m;
  std::optional<std::string> b;
  std::optional<int> degree;
  std::optional<std::string> eq;
  std::string map_file;
  long shift = 0;
  std::string family;
  std::string t = "1";
  std::string a = "1";
  std::string g = "0";
  std::string format = "text";
  std::string out;
};

struct Report {
  json doc;
  std::string text;
  int code = kPass;
};

lca::Rational rational_flag(const std::string& flag, const std::string& value) {
  try {
    return lca::parse_rational(value);
  } catch (const std::invalid_argument& e) {
    throw UsageError{flag, e.what()};
  }
}

lca::AlgebraPtr load_algebra(const Options& o) {
  if (!o.algebra_file.empty()) {
    try {
      return std::make_shared<const lca::Algebra>(lca::load_algebra(o.algebra_file));
    } catch (const std::exception& e) {
      throw UsageError{"--algebra", e.what()};
    }
  }
  if (o.catalog.empty()) throw UsageError{"--catalog", "one of --catalog or --algebra is required"};
  const lca::CatalogKind kind = *lca::parse_catalog_kind(o.catalog);
  std::optional<lca::BParameter> b;
  if (o.b) {
    if (kind != lca::CatalogKind::CLW) throw UsageError{"--b", "only the clw catalog takes b"};
    try {
      b = lca::BParameter::parse(*o.b);
    } catch (const std::exception& e) {
      throw UsageError{"--b", e.what()};
    }
  }
  try {
    return std::make_shared<const lca::Algebra>(lca::make_catalog(kind, o.m.value_or(1), b));
  } catch (const lca::AlgebraError& e) {
    throw UsageError{"--m", e.what()};
  }
}

std::vector<lca::Identity> tags_from(const std::optional<std::string>& flag) {
  const std::string eq = flag.value_or("all");
  if (eq == "all") return {std::begin(lca::kAllIdentities), std::end(lca::kAllIdentities)};
  return {*lca::parse_identity(eq)};
}

std::string describe_algebra(const lca::Algebra& A) {
  return A.name() + " (m=" + std::to_string(A.modulus()) + ", b=" + A.b().to_string() + ")";
}

std::string tuple_text(const lca::Algebra& A, const std::vector<lca::GeneratorId>& args) {
  std::string out = "(";
  for (std::size_t k = 0; k < args.size(); ++k) out += (k ? ", " : "") + A.format(args[k]);
  return out + ")";
}

std::string verify_text(const lca::Algebra& A, const lca::VerifyReport& report) {
  std::ostringstream os;
  os << "checked " << report.checked << " residuals on " << describe_algebra(A) << "\n";
  for (const auto& r : report.failures)
    os << "  " << lca::to_string(r.tag) << " " << tuple_text(A, r.args) << " = " << A.format(r.value) << "\n";
  os << (report.passed() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string match_text(const lca::MatchReport& report, const lca::Algebra& A) {
  std::ostringstream os;
  for (const auto& m : report.matched) {
    os << "  vector " << m.index << " =";
    if (m.combination.empty()) os << " 0";
    for (std::size_t k = 0; k < m.combination.size(); ++k)
      os << (k ? " +" : "") << " (" << lca::to_string(m.combination[k].second) << ")*" << m.combination[k].first;
    os << "\n";
  }
  for (const auto& u : report.unmatched) {
    os << "  vector " << u.index << " unmatched, remainder:\n";
    for (const auto& [key, value] : u.remainder.table())
      os << "    phi(" << A.format(key.first) << ", " << A.format(key.second) << ") = " << A.format(value) << "\n";
  }
  return os.str();
}

Report check_axioms(const Options& o) {
  const auto A = load_algebra(o);
  const lca::AxiomReport report = lca::check_axioms(*A);
  std::ostringstream os;
  os << "checked " << report.skew.size() << " skew and " << report.jacobi.size() << " jacobi residuals on "
     << describe_algebra(*A) << "\n";
  for (const auto* r : report.failures())
    os << "  " << r->identity << " " << tuple_text(*A, r->args) << " = " << A->format(r->value) << "\n";
  os << (report.passed() ? "PASS" : "FAIL") << "\n";
  return {lca::axiom_report_json(*A, report), os.str(), report.passed() ? kPass : kFail};
}

lca::FamilySpec family_spec(const Options& o) {
  if (o.family == "inner") return lca::InnerFamily{rational_flag("--t", o.t)};
  if (o.family == "cw") return lca::CwShiftFamily{o.shift, rational_flag("--a", o.a)};
  if (o.family == "clw") return lca::ClwShiftFamily{o.shift, rational_flag("--a", o.a), rational_flag("--g", o.g)};
  throw UsageError{"--family", "--family is required"};
}

Report verify_family(const Options& o) {
  const auto A = load_algebra(o);
  const lca::FamilySpec spec = family_spec(o);
  lca::BilinearMap phi(A);
  try {
    phi = lca::make_family(A, spec);
  } catch (const lca::MapError& e) {
    throw UsageError{"--family", e.what()};
  }
  const auto tags = tags_from(o.eq);
  const lca::VerifyReport report = lca::verify_map(phi, tags);
  json doc = lca::verify_report_json(*A, report);
  doc["algebra"] = A->name();
  doc["family"] = lca::describe(spec);
  doc["map"] = lca::map_to_json(phi);
  return {std::move(doc), lca::describe(spec) + ": " + verify_text(*A, report), report.passed() ? kPass : kFail};
}

lca::BilinearMap load_map_flag(const Options& o, const lca::AlgebraPtr& A) {
  if (o.map_file.empty()) throw UsageError{"--map", "--map is required"};
  try {
    return lca::load_map(o.map_file, A);
  } catch (const std::exception& e) {
    throw UsageError{"--map", e.what()};
  }
}

Report residual(const Options& o) {
  const auto A = load_algebra(o);
  const lca::BilinearMap phi = load_map_flag(o, A);
  const lca::VerifyReport report = lca::verify_map(phi, tags_from(o.eq));
  json doc = lca::verify_report_json(*A, report);
  doc["algebra"] = A->name();
  return {std::move(doc), verify_text(*A, report), report.passed() ? kPass : kFail};
}

std::vector<lca::Identity> solver_tags(const Options& o) {
  const std::string eq = o.eq.value_or("def1b");
  if (eq == "all") return tags_from(eq);
  std::vector<lca::Identity> tags{lca::Identity::Def1a};
  const lca::Identity extra = *lca::parse_identity(eq);
  if (extra != lca::Identity::Def1a) tags.push_back(extra);
  return tags;
}

lca::AlgebraPtr solver_algebra(const Options& o) {
  auto A = load_algebra(o);
  if (A->uses_symbolic_b()) throw UsageError{"--b", "the solver needs a numeric b"};
  return A;
}

unsigned degree_flag(const Options& o) {
  if (!o.degree) throw UsageError{"--degree", "--degree is required"};
  if (*o.degree < 0) throw UsageError{"--degree", "must be non-negative"};
  return static_cast<unsigned>(*o.degree);
}

Report solve_bider(const Options& o) {
  const auto A = solver_algebra(o);
  const unsigned degree = degree_flag(o);
  const auto tags = solver_tags(o);
  const lca::SolutionSpace space = lca::solve_bider(A, degree, tags);
  const lca::MatchReport match = lca::match_templates(space, A);
  std::ostringstream os;
  os << describe_algebra(*A) << ", degree " << degree << ": " << space.unknowns << " unknowns, " << space.rows
     << " rows, dimension " << space.dimension << "\n";
  for (std::size_t k = 0; k < space.basis.size(); ++k) {
    os << "  basis " << k << ":\n";
    for (const auto& [key, value] : space.basis[k].table())
      os << "    phi(" << A->format(key.first) << ", " << A->format(key.second) << ") = " << A->format(value)
         << "\n";
  }
  os << match_text(match, *A);
  return {lca::solver_report_json(*A, degree, tags, space, match), os.str(), kPass};
}

Report match(const Options& o) {
  std::vector<lca::BilinearMap> vectors;
  lca::AlgebraPtr A;
  if (!o.map_file.empty()) {
    A = load_algebra(o);
    vectors.push_back(load_map_flag(o, A));
  } else {
    A = solver_algebra(o);
    vectors = lca::solve_bider(A, degree_flag(o), solver_tags(o)).basis;
  }
  const lca::MatchReport report = lca::match_templates(vectors, A);
  json doc = lca::match_report_json(report);
  doc["algebra"] = A->name();
  doc["fully_matched"] = report.fully_matched();
  std::string text = "matched " + std::to_string(report.matched.size()) + " of " + std::to_string(vectors.size()) +
                     " vectors on " + describe_algebra(*A) + "\n" + match_text(report, *A) +
                     (report.fully_matched() ? "PASS\n" : "FAIL\n");
  return {std::move(doc), std::move(text), report.fully_matched() ? kPass : kFail};
}

void add_algebra_flags(CLI::App* cmd, Options& o) {
  auto* catalog = cmd->add_option("--catalog", o.catalog, "Built-in algebra")
                      ->check(CLI::IsMember({"vir", "cw", "clw"}));
  auto* file = cmd->add_option("--algebra", o.algebra_file, "Algebra definition file (JSON)");
  catalog->excludes(file);
  cmd->add_option("--m", o.m, "Grading modulus")->check(CLI::PositiveNumber)->excludes(file);
  cmd->add_option("--b", o.b, "Parameter b: a rational or 'symbolic'")->excludes(file);
  cmd->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--out", o.out, "Write the report to a file");
}

void add_eq_flag(CLI::App* cmd, Options& o) {
  cmd->add_option("--eq", o.eq, "Identity to check")->check(CLI::IsMember({"def1a", "def1b", "lem1", "lem2", "all"}));
}

int emit(const Report& report, const Options& o) {
  const std::string body = o.format == "json" ? report.doc.dump(2) + "\n" : report.text;
  if (o.out.empty()) {
    std::cout << body;
  } else {
    std::ofstream file(o.out);
    if (!file || !(file << body)) {
      std::cerr << "lca: --out: cannot write '" << o.out << "'\n";
      return kUsage;
    }
  }
  return report.code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conformal biderivation toolkit"};
  app.require_subcommand(1);
  Options o;

  auto* axioms = app.add_subcommand("check-axioms", "Check skew-symmetry and Jacobi on all generator tuples");
  add_algebra_flags(axioms, o);

  auto* family = app.add_subcommand("verify-family", "Verify a closed-form biderivation family");
  add_algebra_flags(family, o);
  add_eq_flag(family, o);
  family->add_option("--family", o.family, "Family kind")->required()->check(CLI::IsMember({"inner", "cw", "clw"}));
  family->add_option("--shift", o.shift, "Index shift s");
  family->add_option("--t", o.t, "Inner family scale");
  family->add_option("--a", o.a, "L-component coefficient");
  family->add_option("--g", o.g, "G-component coefficient (b = -1 only)");

  auto* resid = app.add_subcommand("residual", "Evaluate identity residuals of a map file");
  add_algebra_flags(resid, o);
  add_eq_flag(resid, o);
  resid->add_option("--map", o.map_file, "Bilinear map file (JSON)")->required();

  auto* solve = app.add_subcommand("solve-bider", "Compute the biderivation space up to a degree bound");
  add_algebra_flags(solve, o);
  add_eq_flag(solve, o);
  solve->add_option("--degree", o.degree, "Degree bound in d and l")->required();

  auto* matcher = app.add_subcommand("match", "Match a map or a solved basis against the closed-form families");
  add_algebra_flags(matcher, o);
  add_eq_flag(matcher, o);
  matcher->add_option("--map", o.map_file, "Bilinear map file (JSON)");
  matcher->add_option("--degree", o.degree, "Degree bound when solving");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "lca: " << e.what() << "\n";
    return kUsage;
  }

  try {
    Report report;
    if (axioms->parsed()) report = check_axioms(o);
    else if (family->parsed()) report = verify_family(o);
    else if (resid->parsed()) report = residual(o);
    else if (solve->parsed()) report = solve_bider(o);
    else report = match(o);
    return emit(report, o);
  } catch (const UsageError& e) {
    std::cerr << "lca: " << e.flag << ": " << e.message << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "lca: error: " << e.what() << "\n";
    return kUsage;
  }
}
