#include "lca/poly.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace lca {

char var_symbol(Var v) {
  static constexpr char kSymbols[] = {'d', 'l', 'm', 'g', 'b'};
  return kSymbols[static_cast<unsigned>(v)];
}

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::of(Var v, unsigned exponent) {
  std::array<unsigned, kVarCount> e{};
  e[static_cast<unsigned>(v)] = exponent;
  return from_exponents(e);
}

Monomial Monomial::from_exponents(const std::array<unsigned, kVarCount>& exponents) {
  Monomial m;
  std::uint64_t degree = 0;
  for (Var v : kAllVars) {
    unsigned e = exponents[static_cast<unsigned>(v)];
    if (e > kMaxExponent) throw std::overflow_error("monomial exponent exceeds 255");
    m.key_ |= static_cast<std::uint64_t>(e) << shift(v);
    degree += e;
  }
  m.key_ |= degree << 40;
  return m;
}

Monomial Monomial::restricted(VarSet vars) const {
  std::array<unsigned, kVarCount> e{};
  for (Var v : kAllVars)
    if (vars.contains(v)) e[static_cast<unsigned>(v)] = exponent(v);
  return from_exponents(e);
}

VarSet Monomial::support() const {
  VarSet out;
  for (Var v : kAllVars)
    if (exponent(v) != 0) out.insert(v);
  return out;
}

Monomial Monomial::operator*(Monomial other) const {
  std::array<unsigned, kVarCount> e{};
  for (Var v : kAllVars) e[static_cast<unsigned>(v)] = exponent(v) + other.exponent(v);
  return from_exponents(e);
}

std::string Monomial::to_string() const {
  if (is_one()) return "1";
  std::string out;
  for (Var v : kAllVars) {
    for (unsigned k = 0; k < exponent(v); ++k) {
      if (!out.empty()) out += '*';
      out += var_symbol(v);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(long constant) {
  if (constant != 0) terms_.emplace(Monomial{}, Rational(constant));
}

Poly::Poly(const Rational& constant) {
  if (!lca::is_zero(constant)) terms_.emplace(Monomial{}, constant);
}

Poly Poly::var(Var v) { return term(Monomial::of(v), Rational(1)); }

Poly Poly::term(Monomial m, const Rational& coeff) {
  Poly p;
  if (!lca::is_zero(coeff)) p.terms_.emplace(m, coeff);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Poly::coeff(Monomial m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

unsigned Poly::total_degree() const {
  // Descending grlex order puts a maximal-degree monomial first.
  return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

unsigned Poly::degree_in(Var v) const {
  unsigned out = 0;
  for (const auto& [m, c] : terms_) out = std::max(out, m.exponent(v));
  return out;
}

VarSet Poly::variables() const {
  VarSet out;
  for (const auto& [m, c] : terms_)
    for (Var v : kAllVars)
      if (m.exponent(v) != 0) out.insert(v);
  return out;
}

void Poly::add_term(Monomial m, const Rational& coeff) {
  if (lca::is_zero(coeff)) return;
  auto [it, inserted] = terms_.try_emplace(m, coeff);
  if (!inserted) {
    it->second += coeff;
    if (lca::is_zero(it->second)) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Poly& Poly::operator+=(const Poly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, Rational(ca * cb));
  return out;
}

Poly& Poly::operator*=(const Poly& other) {
  *this = *this * other;
  return *this;
}

Poly& Poly::operator*=(const Rational& scalar) {
  if (lca::is_zero(scalar)) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= scalar;
  return *this;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = sgn(c) < 0;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    Rational magnitude = abs(c);
    if (m.is_one()) {
      out += lca::to_string(magnitude);
    } else {
      if (magnitude != 1) out += lca::to_string(magnitude) + "*";
      out += m.to_string();
    }
  }
  return out;
}

Poly pow(const Poly& base, unsigned exponent) {
  Poly result(1L);
  Poly square = base;
  while (exponent != 0) {
    if (exponent & 1u) result *= square;
    exponent >>= 1;
    if (exponent != 0) square = square * square;
  }
  return result;
}

Poly substitute(const Poly& p, const Substitution& assignments) {
  if (assignments.empty()) return p;
  // powers[v][k] = image(v)^k, built lazily.
  std::array<std::vector<Poly>, kVarCount> powers;
  auto power_of = [&](Var v, unsigned k) -> const Poly& {
    auto& cache = powers[static_cast<unsigned>(v)];
    if (cache.empty()) {
      auto it = assignments.find(v);
      cache.emplace_back(1L);
      cache.push_back(it == assignments.end() ? Poly::var(v) : it->second);
    }
    while (cache.size() <= k) cache.push_back(cache.back() * cache[1]);
    return cache[k];
  };

  Poly out;
  for (const auto& [m, c] : p.terms()) {
    std::array<unsigned, kVarCount> kept{};
    Poly product(c);
    for (Var v : kAllVars) {
      const unsigned e = m.exponent(v);
      if (e == 0) continue;
      if (assignments.count(v) == 0) {
        kept[static_cast<unsigned>(v)] = e;
      } else {
        product = product * power_of(v, e);
      }
    }
    Monomial untouched = Monomial::from_exponents(kept);
    if (!untouched.is_one()) product = product * Poly::term(untouched, Rational(1));
    out += product;
  }
  return out;
}

std::map<Monomial, Poly, std::greater<>> coefficients(const Poly& p, VarSet vars) {
  std::map<Monomial, Poly, std::greater<>> out;
  const VarSet rest = vars.complement();
  for (const auto& [m, c] : p.terms()) out[m.restricted(vars)].add_term(m.restricted(rest), c);
  return out;
}

Rational evaluate(const Poly& p, const std::map<Var, Rational>& values) {
  Rational total(0);
  for (const auto& [m, c] : p.terms()) {
    Rational term = c;
    for (Var v : kAllVars) {
      const unsigned e = m.exponent(v);
      if (e == 0) continue;
      auto it = values.find(v);
      if (it == values.end())
        throw std::invalid_argument(std::string("no value for variable ") + var_symbol(v));
      for (unsigned k = 0; k < e; ++k) term *= it->second;
    }
    total += term;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Parser

ParseError::ParseError(const std::string& what, std::size_t position)
    : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Poly parse() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
    Poly result = expr();
    skip_space();
    if (pos_ != text_.size()) {
      if (text_[pos_] == '/') throw ParseError("division in a non-constant position", pos_);
      throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    }
    return result;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::optional<char> peek() {
    skip_space();
    if (pos_ == text_.size()) return std::nullopt;
    return text_[pos_];
  }

  Poly expr() {
    Poly acc = term();
    while (auto c = peek()) {
      if (*c == '+') {
        ++pos_;
        acc += term();
      } else if (*c == '-') {
        ++pos_;
        acc -= term();
      } else {
        break;
      }
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    while (auto c = peek()) {
      if (*c == '*') {
        ++pos_;
        acc *= factor();
      } else if (*c == '/') {
        throw ParseError("division in a non-constant position", pos_);
      } else {
        break;
      }
    }
    return acc;
  }

  mpz_class integer() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return mpz_class(std::string(text_.substr(start, pos_ - start)), 10);
  }

  Poly factor() {
    auto c = peek();
    if (!c) throw ParseError("unexpected end of expression", pos_);
    if (*c == '-') {
      ++pos_;
      return -factor();
    }
    if (*c == '(') {
      const std::size_t open = pos_;
      ++pos_;
      Poly inner = expr();
      if (peek() != ')') throw ParseError("unbalanced '(' opened at " + std::to_string(open), pos_);
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(*c))) {
      mpz_class num = integer();
      mpz_class den = 1;
      if (peek() == '/') {
        ++pos_;
        skip_space();
        if (pos_ == text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
          throw ParseError("division in a non-constant position", pos_);
        const std::size_t den_pos = pos_;
        den = integer();
        if (den == 0) throw ParseError("zero denominator", den_pos);
      }
      Rational r(num, den);
      r.canonicalize();
      return Poly(r);
    }
    if (std::isalpha(static_cast<unsigned char>(*c)) || *c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      if (name.size() == 1) {
        for (Var v : kAllVars)
          if (var_symbol(v) == name[0]) return Poly::var(v);
      }
      throw ParseError("unknown identifier '" + std::string(name) + "'", start);
    }
    throw ParseError(std::string("unexpected '") + *c + "'", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text) { return Parser(text).parse(); }

}  // namespace lca
