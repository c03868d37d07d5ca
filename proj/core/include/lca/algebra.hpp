#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lca/poly.hpp"

namespace lca {

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Basis symbol e_i of a Z_m-graded family; `family` indexes Algebra::families().
struct GeneratorId {
  std::size_t family = 0;
  int index = 0;

  constexpr auto operator<=>(const GeneratorId&) const = default;
};

/// Finite sum Σ p_k(∂, spectral...) e_k over generators. Zero coefficients are
/// never stored.
class Element {
 public:
  using TermMap = std::map<GeneratorId, Poly>;

  Element() = default;
  Element(GeneratorId gen, Poly coeff = Poly(1L));

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Poly coeff(GeneratorId gen) const;

  void add(GeneratorId gen, const Poly& coeff);

  Element operator-() const;
  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Poly& scalar, const Element& e);
  friend bool operator==(const Element&, const Element&) = default;

  /// Applies a substitution to every coefficient.
  Element substituted(const Substitution& assignments) const;

 private:
  TermMap terms_;
};

/// [left_i λ right_j] = coeff(∂, λ) · target_{i+j mod m}; no target means the
/// bracket of the family pair vanishes.
struct BracketRule {
  std::size_t left = 0;
  std::size_t right = 0;
  std::optional<std::size_t> target;
  Poly coeff;

  friend bool operator==(const BracketRule&, const BracketRule&) = default;
};

/// The value of the parameter b: either an indeterminate or a rational number.
class BParameter {
 public:
  static BParameter symbolic() { return BParameter(); }
  static BParameter numeric(Rational value) { return BParameter(std::move(value)); }
  /// Accepts "symbolic" or a rational literal.
  static BParameter parse(std::string_view text);

  bool is_symbolic() const { return !value_.has_value(); }
  const Rational& value() const;
  bool equals(long v) const { return value_.has_value() && *value_ == v; }
  std::string to_string() const;

  friend bool operator==(const BParameter&, const BParameter&) = default;

 private:
  BParameter() = default;
  explicit BParameter(Rational v) : value_(std::move(v)) {}
  std::optional<Rational> value_;
};

/// A Z_m-graded Lie conformal algebra given by one single-target,
/// index-additive bracket rule per ordered family pair.
class Algebra {
 public:
  /// Validates the table and substitutes b when it is numeric. Throws
  /// AlgebraError on a missing or duplicate rule, unknown family, or a
  /// coefficient using variables other than d, l, b.
  Algebra(std::string name, int modulus, std::vector<std::string> families,
          std::vector<BracketRule> rules, BParameter b = BParameter::symbolic());

  const std::string& name() const { return name_; }
  int modulus() const { return modulus_; }
  const std::vector<std::string>& families() const { return families_; }
  const BParameter& b() const { return b_; }
  std::optional<std::size_t> family_index(std::string_view family) const;

  const BracketRule& rule(std::size_t left, std::size_t right) const;
  const std::vector<BracketRule>& rules() const { return rules_; }
  /// True if some rule coefficient still contains the indeterminate b.
  bool uses_symbolic_b() const;

  /// All generators, family-major then by index.
  std::vector<GeneratorId> generators() const;
  /// Generator of `family` at index reduced mod m. Throws on unknown family.
  GeneratorId gen(std::string_view family, long index = 0) const;
  int reduce(long index) const;

  /// "L:3" form used in files and reports.
  std::string format(GeneratorId gen) const;
  GeneratorId parse_generator(std::string_view text) const;
  std::string format(const Element& e) const;

  /// Throws AlgebraError if `e` mentions a generator outside this algebra.
  void validate(const Element& e) const;
  bool contains(GeneratorId gen) const;

  /// Equal modulus, families, b and rules; the name is ignored.
  bool same_structure(const Algebra& other) const;
  friend bool operator==(const Algebra& a, const Algebra& b) {
    return a.name_ == b.name_ && a.same_structure(b);
  }

 private:
  std::string name_;
  int modulus_;
  std::vector<std::string> families_;
  std::vector<BracketRule> rules_;  // row-major over (left, right)
  BParameter b_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

enum class CatalogKind { Vir, CW, CLW };

std::optional<CatalogKind> parse_catalog_kind(std::string_view name);
std::string to_string(CatalogKind kind);

/// Built-in tables: Vir ([L λ L] = (∂+2λ)L, m = 1), the loop Virasoro algebra
/// CW and the loop algebra CLW with parameter b. `b` is accepted for CLW only
/// and defaults to symbolic there.
Algebra make_catalog(CatalogKind kind, int modulus, std::optional<BParameter> b = std::nullopt);

/// [x_s y] where s is any polynomial spectral argument (λ, μ, λ+μ, ...).
/// For x = p(∂)e_i and y = q(∂)e_j with rule coefficient c(∂, λ):
///   p(-s) · q(∂+s) · c(∂, s) on e_{i+j mod m}, extended bilinearly.
Element bracket(const Algebra& algebra, const Element& x, const Element& y, const Poly& spectral);
Element bracket(const Algebra& algebra, const Element& x, const Element& y, Var spectral);

/// Replaces `from` by -∂-from in every coefficient: turns [y_from x] into
/// [y_{-∂-from} x].
Element second_slot_subst(const Element& e, Var from);

struct AxiomResidual {
  std::string identity;  // "skew" or "jacobi"
  std::vector<GeneratorId> args;
  Element value;
};

struct AxiomReport {
  std::vector<AxiomResidual> skew;    // every ordered pair
  std::vector<AxiomResidual> jacobi;  // every ordered triple
  bool passed() const;
  std::vector<const AxiomResidual*> failures() const;
};

/// Skew residual [e_i λ e_j] + [e_j_{-∂-λ} e_i] for every ordered pair and
/// Jacobi residual [e_i λ [e_j μ e_k]] - [[e_i λ e_j]_{λ+μ} e_k] - [e_j μ [e_i λ e_k]]
/// for every ordered triple; entries sorted by generator tuple.
AxiomReport check_axioms(const Algebra& algebra);

}  // namespace lca
