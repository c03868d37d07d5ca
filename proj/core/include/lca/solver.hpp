#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lca/bimap.hpp"
#include "lca/linalg.hpp"

namespace lca {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coefficient of ∂^d_exp λ^l_exp · target in φ(left, right).
struct Unknown {
  GeneratorId left;
  GeneratorId right;
  GeneratorId target;
  unsigned d_exp = 0;
  unsigned l_exp = 0;

  Monomial monomial() const;
  constexpr auto operator<=>(const Unknown&) const = default;
};

/// General degree-bounded candidate φ: one unknown per generator pair, target
/// generator and monomial ∂^p λ^q with p + q <= degree. No grading or degree
/// structure is assumed beyond the bound.
class Ansatz {
 public:
  /// Throws SolverError if the algebra still carries a symbolic b.
  Ansatz(AlgebraPtr algebra, unsigned degree);

  const AlgebraPtr& algebra_ptr() const { return algebra_; }
  const Algebra& algebra() const { return *algebra_; }
  unsigned degree() const { return degree_; }
  std::size_t size() const { return unknowns_.size(); }
  const std::vector<Unknown>& unknowns() const { return unknowns_; }

  /// (#generators)^3 · (D+1)(D+2)/2.
  static std::size_t expected_size(std::size_t generators, unsigned degree);

  /// The map with unknown `index` set to 1 and all others 0.
  BilinearMap unit(std::size_t index) const;
  /// The map Σ values[k]·unit(k).
  BilinearMap realize(const SparseVector& values) const;

 private:
  AlgebraPtr algebra_;
  unsigned degree_;
  std::vector<Unknown> unknowns_;
};

/// Origin of one constraint row: the coefficient of `monomial` on `target`
/// in the residual of `tag` at `args`.
struct RowOrigin {
  Identity tag;
  std::vector<GeneratorId> args;
  GeneratorId target;
  Monomial monomial;

  auto operator<=>(const RowOrigin&) const = default;
};

struct ConstraintSystem {
  Ansatz ansatz;
  std::vector<SparseVector> rows;      // linear forms over ansatz unknowns
  std::vector<RowOrigin> provenance;   // parallel to rows, sorted
};

/// Expands the residual of every tag at every generator tuple (linear in the
/// unknowns) and turns each monomial coefficient into one row. All-zero rows
/// are dropped; rows are ordered by (tag, tuple, target, monomial).
ConstraintSystem assemble(const Ansatz& ansatz, std::span<const Identity> tags);

struct SolutionSpace {
  std::size_t dimension = 0;
  std::vector<BilinearMap> basis;
  std::size_t unknowns = 0;
  std::size_t rows = 0;
};

SolutionSpace nullspace(const ConstraintSystem& system);

/// assemble + nullspace, with every basis vector re-checked by verify_map on
/// `tags` (a failure throws std::logic_error).
SolutionSpace solve_bider(const AlgebraPtr& algebra, unsigned degree, std::span<const Identity> tags);

/// Coordinates of a map: one entry per (pair, target, monomial).
struct MapCoordinate {
  GeneratorId left;
  GeneratorId right;
  GeneratorId target;
  Monomial monomial;
  auto operator<=>(const MapCoordinate&) const = default;
};

struct Template {
  std::string name;
  BilinearMap map;
};

/// Closed-form families applicable to the algebra: the inner map, plus every
/// cw_shift for single-family L algebras, plus every clw_shift a-family (and
/// g-family when b = -1) for {L, G} algebras.
std::vector<Template> family_templates(const AlgebraPtr& algebra);

struct MatchedVector {
  std::size_t index = 0;
  std::vector<std::pair<std::string, Rational>> combination;  // template name, coefficient
};

struct UnmatchedVector {
  std::size_t index = 0;
  BilinearMap remainder;  // basis vector minus its projection on the template span
};

struct MatchReport {
  std::vector<std::string> templates;
  std::vector<MatchedVector> matched;
  std::vector<UnmatchedVector> unmatched;
  bool fully_matched() const { return unmatched.empty(); }
};

/// Expresses each basis vector as a rational combination of family templates.
MatchReport match_templates(const std::vector<BilinearMap>& basis, const AlgebraPtr& algebra);
MatchReport match_templates(const SolutionSpace& space, const AlgebraPtr& algebra);

/// True if every vector of `a` lies in span(b) and vice versa.
bool same_span(const std::vector<BilinearMap>& a, const std::vector<BilinearMap>& b);

/// Value of every row of `system` at the coordinates of `phi` (which must
/// lie in the ansatz); all zero iff phi satisfies the assembled identities.
std::vector<Rational> evaluate_rows(const ConstraintSystem& system, const BilinearMap& phi);

}  // namespace lca
