#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "lca/rational.hpp"

namespace lca {

/// The closed set of formal variables: the module derivation ∂, the spectral
/// parameters λ, μ, γ and the algebra parameter b.
enum class Var : std::uint8_t { D = 0, L = 1, M = 2, G = 3, B = 4 };

inline constexpr std::array<Var, 5> kAllVars{Var::D, Var::L, Var::M, Var::G, Var::B};
inline constexpr std::size_t kVarCount = kAllVars.size();

/// Grammar symbol for a variable: d, l, m, g, b.
char var_symbol(Var v);

class VarSet {
 public:
  constexpr VarSet() = default;
  constexpr VarSet(std::initializer_list<Var> vars) {
    for (Var v : vars) mask_ |= bit(v);
  }

  constexpr bool contains(Var v) const { return (mask_ & bit(v)) != 0; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr void insert(Var v) { mask_ |= bit(v); }
  constexpr VarSet complement() const {
    VarSet out;
    out.mask_ = static_cast<std::uint8_t>(~mask_ & 0x1f);
    return out;
  }
  constexpr bool subset_of(VarSet other) const { return (mask_ & ~other.mask_) == 0; }
  constexpr bool operator==(const VarSet&) const = default;

 private:
  static constexpr std::uint8_t bit(Var v) { return static_cast<std::uint8_t>(1u << static_cast<unsigned>(v)); }
  std::uint8_t mask_ = 0;
};

/// Power product over the five variables, packed into one word so that the
/// integer order on keys is graded lexicographic with ∂ > λ > μ > γ > b.
class Monomial {
 public:
  static constexpr unsigned kMaxExponent = 255;

  constexpr Monomial() = default;

  static Monomial of(Var v, unsigned exponent = 1);
  static Monomial from_exponents(const std::array<unsigned, kVarCount>& exponents);

  unsigned exponent(Var v) const {
    return static_cast<unsigned>((key_ >> shift(v)) & 0xffu);
  }
  unsigned degree() const { return static_cast<unsigned>(key_ >> 40); }
  bool is_one() const { return key_ == 0; }
  std::uint64_t key() const { return key_; }

  /// Keeps only the exponents of variables in `vars`.
  Monomial restricted(VarSet vars) const;
  VarSet support() const;

  /// Throws std::overflow_error if any exponent would exceed kMaxExponent.
  Monomial operator*(Monomial other) const;

  constexpr auto operator<=>(const Monomial&) const = default;

  /// Grammar form, e.g. "d*d*l"; "1" for the unit monomial.
  std::string to_string() const;

 private:
  static constexpr unsigned shift(Var v) { return 32u - 8u * static_cast<unsigned>(v); }
  std::uint64_t key_ = 0;
};

class Poly {
 public:
  /// Terms in descending monomial order; never holds a zero coefficient.
  using TermMap = std::map<Monomial, Rational, std::greater<>>;

  Poly() = default;
  Poly(long constant);
  Poly(const Rational& constant);

  static Poly var(Var v);
  static Poly term(Monomial m, const Rational& coeff);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::size_t size() const { return terms_.size(); }

  Rational coeff(Monomial m) const;
  Rational constant_term() const { return coeff(Monomial{}); }
  unsigned total_degree() const;
  unsigned degree_in(Var v) const;
  VarSet variables() const;
  bool uses(Var v) const { return variables().contains(v); }

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  Poly& operator*=(const Rational& scalar);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  /// Canonical text in the expression grammar accepted by parse_poly.
  std::string to_string() const;

  /// Adds coeff·m in place.
  void add_term(Monomial m, const Rational& coeff);

 private:
  TermMap terms_;
};

Poly pow(const Poly& base, unsigned exponent);

/// Simultaneous substitution; variables without an assignment map to themselves.
using Substitution = std::map<Var, Poly>;
Poly substitute(const Poly& p, const Substitution& assignments);

/// Groups p by the monomials in `vars`. Each value is free of `vars`, and
/// Σ key·value == p. Keys are monomials in `vars` only.
std::map<Monomial, Poly, std::greater<>> coefficients(const Poly& p, VarSet vars);

/// Rational value of p after substituting every variable it uses; throws
/// std::invalid_argument if a used variable has no value.
Rational evaluate(const Poly& p, const std::map<Var, Rational>& values);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses the expression grammar
///   expr := term (("+"|"-") term)* ; term := factor ("*" factor)* ;
///   factor := rational | var | "(" expr ")" | "-" factor ;
///   rational := integer ("/" positive-integer)? ; var := d | l | m | g | b
Poly parse_poly(std::string_view text);

namespace sym {
inline Poly d() { return Poly::var(Var::D); }
inline Poly l() { return Poly::var(Var::L); }
inline Poly m() { return Poly::var(Var::M); }
inline Poly g() { return Poly::var(Var::G); }
inline Poly b() { return Poly::var(Var::B); }
}  // namespace sym

}  // namespace lca
