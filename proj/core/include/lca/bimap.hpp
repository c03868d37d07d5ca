#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "lca/algebra.hpp"

namespace lca {

class MapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The biderivation identities, as left-minus-right residuals:
///   def1a  φ_λ(x,y) + φ_{-∂-λ}(y,x)
///   def1b  φ_λ(x,[y_μ z]) - [(φ_λ(x,y))_{λ+μ} z] - [y_μ φ_λ(x,z)]
///   lem1   φ_{λ+μ}([x_μ y],z) - [x_μ φ_λ(y,z)] + [y_λ φ_μ(x,z)]
///   lem2   [(φ_μ(x,y))_{μ+γ} [u_λ v]] - [[x_μ y]_{μ+γ} φ_λ(u,v)]
enum class Identity { Def1a, Def1b, Lem1, Lem2 };

inline constexpr Identity kAllIdentities[] = {Identity::Def1a, Identity::Def1b, Identity::Lem1,
                                              Identity::Lem2};

std::size_t arity(Identity tag);
std::string to_string(Identity tag);
std::optional<Identity> parse_identity(std::string_view name);

/// Conformal bilinear map given by its values φ_λ(e_i, e_j) on generator
/// pairs. Values are polynomials in ∂, λ and b; absent pairs are zero.
class BilinearMap {
 public:
  using Key = std::pair<GeneratorId, GeneratorId>;
  using Table = std::map<Key, Element>;

  explicit BilinearMap(AlgebraPtr algebra);

  const AlgebraPtr& algebra_ptr() const { return algebra_; }
  const Algebra& algebra() const { return *algebra_; }
  const Table& table() const { return table_; }
  bool is_zero() const { return table_.empty(); }

  Element value(GeneratorId x, GeneratorId y) const;

  /// Replaces the value on (x, y). Throws MapError if the value uses a
  /// variable other than d, l, b or a generator outside the algebra.
  void set(GeneratorId x, GeneratorId y, Element value);
  void add(GeneratorId x, GeneratorId y, const Element& value);

  BilinearMap& operator+=(const BilinearMap& other);
  BilinearMap& operator-=(const BilinearMap& other);
  BilinearMap& operator*=(const Rational& scale);
  friend BilinearMap operator+(BilinearMap a, const BilinearMap& b) { return a += b; }
  friend BilinearMap operator-(BilinearMap a, const BilinearMap& b) { return a -= b; }
  friend BilinearMap operator*(const Rational& s, BilinearMap a) { return a *= s; }

  /// Same algebra (structurally) and same table.
  friend bool operator==(const BilinearMap& a, const BilinearMap& b);

 private:
  void check_compatible(const BilinearMap& other) const;

  AlgebraPtr algebra_;
  Table table_;
};

/// φ_s(x, y) for x = p(∂)e_i, y = q(∂)e_j: p(-s)·q(∂+s)·φ(e_i,e_j)|_{λ=s}.
Element map_eval(const BilinearMap& phi, const Element& x, const Element& y, const Poly& spectral);
Element map_eval(const BilinearMap& phi, const Element& x, const Element& y, Var spectral);

struct Residual {
  Identity tag;
  std::vector<GeneratorId> args;
  Element value;
};

/// LHS - RHS of `tag` at the generator tuple `args`. Throws MapError on an
/// arity mismatch.
Residual residual(const BilinearMap& phi, Identity tag, std::span<const GeneratorId> args);

/// Every generator tuple of the arity of `tag`, in lexicographic order.
std::vector<std::vector<GeneratorId>> generator_tuples(const Algebra& algebra, std::size_t arity);

struct InnerFamily {
  Rational t{1};
};
/// φ(L_i, L_j) = a(∂+2λ) L_{i+j+s}.
struct CwShiftFamily {
  long shift = 0;
  Rational a{1};
};
/// φ(L_i,L_j) = (∂+2λ)(a L_{i+j+s} + g G_{i+j+s}),
/// φ(L_i,G_j) = a(∂+(1-b)λ) G_{i+j+s}, φ(G_i,L_j) = -a(b∂+(b-1)λ) G_{i+j+s},
/// φ(G_i,G_j) = 0. g must vanish unless b = -1.
struct ClwShiftFamily {
  long shift = 0;
  Rational a{1};
  Rational g{0};
};
using FamilySpec = std::variant<InnerFamily, CwShiftFamily, ClwShiftFamily>;

std::string describe(const FamilySpec& spec);

/// Table realization of a closed-form biderivation family over Z_m. Throws
/// MapError if the algebra lacks the families the kind needs, or g != 0
/// with b != -1.
BilinearMap make_family(const AlgebraPtr& algebra, const FamilySpec& spec);

struct VerifyReport {
  std::size_t checked = 0;
  /// Nonzero residuals ordered by (tag, tuple).
  std::vector<Residual> failures;
  bool passed() const { return failures.empty(); }
};

VerifyReport verify_map(const BilinearMap& phi, std::span<const Identity> tags);

}  // namespace lca
