#include "lca/algebra.hpp"

#include <algorithm>
#include <charconv>

namespace lca {

// ---------------------------------------------------------------------------
// Element

Element::Element(GeneratorId gen, Poly coeff) {
  if (!coeff.is_zero()) terms_.emplace(gen, std::move(coeff));
}

Poly Element::coeff(GeneratorId gen) const {
  auto it = terms_.find(gen);
  return it == terms_.end() ? Poly() : it->second;
}

void Element::add(GeneratorId gen, const Poly& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(gen, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Element Element::operator-() const {
  Element out = *this;
  for (auto& [g, p] : out.terms_) p = -p;
  return out;
}

Element& Element::operator+=(const Element& other) {
  for (const auto& [g, p] : other.terms_) add(g, p);
  return *this;
}

Element& Element::operator-=(const Element& other) {
  for (const auto& [g, p] : other.terms_) add(g, -p);
  return *this;
}

Element operator*(const Poly& scalar, const Element& e) {
  Element out;
  for (const auto& [g, p] : e.terms_) out.add(g, scalar * p);
  return out;
}

Element Element::substituted(const Substitution& assignments) const {
  Element out;
  for (const auto& [g, p] : terms_) out.add(g, substitute(p, assignments));
  return out;
}

// ---------------------------------------------------------------------------
// BParameter

BParameter BParameter::parse(std::string_view text) {
  if (text == "symbolic") return symbolic();
  try {
    return numeric(parse_rational(text));
  } catch (const std::invalid_argument&) {
    throw AlgebraError("b must be 'symbolic' or a rational, got '" + std::string(text) + "'");
  }
}

const Rational& BParameter::value() const {
  if (!value_) throw AlgebraError("b is symbolic");
  return *value_;
}

std::string BParameter::to_string() const {
  return value_ ? lca::to_string(*value_) : std::string("symbolic");
}

// ---------------------------------------------------------------------------
// Algebra

Algebra::Algebra(std::string name, int modulus, std::vector<std::string> families,
                 std::vector<BracketRule> rules, BParameter b)
    : name_(std::move(name)), modulus_(modulus), families_(std::move(families)), b_(std::move(b)) {
  if (modulus_ < 1) throw AlgebraError("modulus must be >= 1");
  if (families_.empty()) throw AlgebraError("algebra needs at least one family");
  for (std::size_t i = 0; i < families_.size(); ++i) {
    if (families_[i].empty()) throw AlgebraError("empty family name");
    if (families_[i].find(':') != std::string::npos)
      throw AlgebraError("family name '" + families_[i] + "' contains ':'");
    for (std::size_t j = 0; j < i; ++j)
      if (families_[i] == families_[j]) throw AlgebraError("duplicate family '" + families_[i] + "'");
  }

  const std::size_t n = families_.size();
  std::vector<std::optional<BracketRule>> table(n * n);
  const VarSet allowed{Var::D, Var::L, Var::B};
  for (auto& r : rules) {
    if (r.left >= n || r.right >= n || (r.target && *r.target >= n))
      throw AlgebraError("rule refers to an unknown family");
    if (!r.coeff.variables().subset_of(allowed))
      throw AlgebraError("rule coefficient '" + r.coeff.to_string() + "' uses variables other than d, l, b");
    if (!b_.is_symbolic()) r.coeff = substitute(r.coeff, {{Var::B, Poly(b_.value())}});
    if (!r.target) r.coeff = Poly();
    if (r.coeff.is_zero()) r.target.reset();
    auto& slot = table[r.left * n + r.right];
    if (slot)
      throw AlgebraError("duplicate rule for (" + families_[r.left] + ", " + families_[r.right] + ")");
    slot = std::move(r);
  }
  rules_.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto& slot = table[i * n + j];
      if (!slot) throw AlgebraError("missing rule for (" + families_[i] + ", " + families_[j] + ")");
      rules_.push_back(std::move(*slot));
    }
  }
}

std::optional<std::size_t> Algebra::family_index(std::string_view family) const {
  for (std::size_t i = 0; i < families_.size(); ++i)
    if (families_[i] == family) return i;
  return std::nullopt;
}

const BracketRule& Algebra::rule(std::size_t left, std::size_t right) const {
  return rules_.at(left * families_.size() + right);
}

bool Algebra::uses_symbolic_b() const {
  return std::any_of(rules_.begin(), rules_.end(), [](const BracketRule& r) { return r.coeff.uses(Var::B); });
}

std::vector<GeneratorId> Algebra::generators() const {
  std::vector<GeneratorId> out;
  out.reserve(families_.size() * static_cast<std::size_t>(modulus_));
  for (std::size_t f = 0; f < families_.size(); ++f)
    for (int i = 0; i < modulus_; ++i) out.push_back({f, i});
  return out;
}

int Algebra::reduce(long index) const {
  long r = index % modulus_;
  if (r < 0) r += modulus_;
  return static_cast<int>(r);
}

GeneratorId Algebra::gen(std::string_view family, long index) const {
  auto f = family_index(family);
  if (!f) throw AlgebraError("unknown family '" + std::string(family) + "' in " + name_);
  return {*f, reduce(index)};
}

bool Algebra::contains(GeneratorId gen) const {
  return gen.family < families_.size() && gen.index >= 0 && gen.index < modulus_;
}

std::string Algebra::format(GeneratorId gen) const {
  if (!contains(gen)) throw AlgebraError("generator outside " + name_);
  return families_[gen.family] + ":" + std::to_string(gen.index);
}

GeneratorId Algebra::parse_generator(std::string_view text) const {
  auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw AlgebraError("generator '" + std::string(text) + "' must have the form FAMILY:INDEX");
  std::string_view family = text.substr(0, colon);
  std::string_view index_text = text.substr(colon + 1);
  long index = 0;
  auto [ptr, ec] = std::from_chars(index_text.data(), index_text.data() + index_text.size(), index);
  if (ec != std::errc() || ptr != index_text.data() + index_text.size() || index_text.empty())
    throw AlgebraError("bad generator index in '" + std::string(text) + "'");
  if (index < 0 || index >= modulus_)
    throw AlgebraError("generator index in '" + std::string(text) + "' outside Z_" + std::to_string(modulus_));
  return gen(family, index);
}

std::string Algebra::format(const Element& e) const {
  if (e.is_zero()) return "0";
  std::string out;
  for (const auto& [g, p] : e.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + p.to_string() + ")*" + format(g);
  }
  return out;
}

void Algebra::validate(const Element& e) const {
  for (const auto& [g, p] : e.terms())
    if (!contains(g)) throw AlgebraError("element has a generator outside " + name_);
}

bool Algebra::same_structure(const Algebra& other) const {
  return modulus_ == other.modulus_ && families_ == other.families_ && b_ == other.b_ &&
         rules_ == other.rules_;
}

// ---------------------------------------------------------------------------
// Catalog

std::optional<CatalogKind> parse_catalog_kind(std::string_view name) {
  if (name == "vir") return CatalogKind::Vir;
  if (name == "cw") return CatalogKind::CW;
  if (name == "clw") return CatalogKind::CLW;
  return std::nullopt;
}

std::string to_string(CatalogKind kind) {
  switch (kind) {
    case CatalogKind::Vir: return "vir";
    case CatalogKind::CW: return "cw";
    case CatalogKind::CLW: return "clw";
  }
  return "?";
}

Algebra make_catalog(CatalogKind kind, int modulus, std::optional<BParameter> b_param) {
  using namespace sym;
  if (modulus < 1) throw AlgebraError("modulus must be >= 1");
  if (b_param && kind != CatalogKind::CLW) throw AlgebraError("parameter b applies to clw only");
  const Poly virasoro = d() + 2 * l();
  switch (kind) {
    case CatalogKind::Vir:
      if (modulus != 1) throw AlgebraError("vir has no loop index; use cw for m > 1");
      return Algebra("Vir", 1, {"L"}, {{0, 0, 0, virasoro}});
    case CatalogKind::CW:
      return Algebra("CW", modulus, {"L"}, {{0, 0, 0, virasoro}});
    case CatalogKind::CLW: {
      // [L λ G] = (∂+(1-b)λ)G, [G λ L] = -(b∂+(b-1)λ)G, [G λ G] = 0
      const Poly lg = d() + (1 - b()) * l();
      const Poly gl = -(b() * d() + (b() - 1) * l());
      return Algebra("CLW", modulus, {"L", "G"},
                     {{0, 0, 0, virasoro}, {0, 1, 1, lg}, {1, 0, 1, gl}, {1, 1, std::nullopt, Poly()}},
                     b_param.value_or(BParameter::symbolic()));
    }
  }
  throw AlgebraError("unknown catalog kind");
}

// ---------------------------------------------------------------------------
// Bracket evaluation

Element bracket(const Algebra& algebra, const Element& x, const Element& y, const Poly& spectral) {
  algebra.validate(x);
  algebra.validate(y);
  Element out;
  if (x.is_zero() || y.is_zero()) return out;

  const Substitution left_slot{{Var::D, -spectral}};
  const Substitution right_slot{{Var::D, Poly::var(Var::D) + spectral}};
  const Substitution rule_slot{{Var::L, spectral}};

  std::vector<std::pair<GeneratorId, Poly>> lefts;
  for (const auto& [g, p] : x.terms()) lefts.emplace_back(g, substitute(p, left_slot));
  std::vector<std::pair<GeneratorId, Poly>> rights;
  for (const auto& [g, q] : y.terms()) rights.emplace_back(g, substitute(q, right_slot));

  const std::size_t n = algebra.families().size();
  std::vector<std::optional<Poly>> rule_coeffs(n * n);

  for (const auto& [gi, p] : lefts) {
    for (const auto& [gj, q] : rights) {
      const BracketRule& r = algebra.rule(gi.family, gj.family);
      if (!r.target) continue;
      auto& c = rule_coeffs[gi.family * n + gj.family];
      if (!c) c = substitute(r.coeff, rule_slot);
      const GeneratorId target{*r.target, algebra.reduce(static_cast<long>(gi.index) + gj.index)};
      out.add(target, p * q * *c);
    }
  }
  return out;
}

Element bracket(const Algebra& algebra, const Element& x, const Element& y, Var spectral) {
  return bracket(algebra, x, y, Poly::var(spectral));
}

Element second_slot_subst(const Element& e, Var from) {
  return e.substituted({{from, -Poly::var(Var::D) - Poly::var(from)}});
}

// ---------------------------------------------------------------------------
// Axioms

bool AxiomReport::passed() const { return failures().empty(); }

std::vector<const AxiomResidual*> AxiomReport::failures() const {
  std::vector<const AxiomResidual*> out;
  for (const auto& r : skew)
    if (!r.value.is_zero()) out.push_back(&r);
  for (const auto& r : jacobi)
    if (!r.value.is_zero()) out.push_back(&r);
  return out;
}

AxiomReport check_axioms(const Algebra& algebra) {
  AxiomReport report;
  const auto gens = algebra.generators();
  const Poly lam = Poly::var(Var::L);
  const Poly mu = Poly::var(Var::M);

  for (GeneratorId a : gens) {
    for (GeneratorId c : gens) {
      Element value = bracket(algebra, a, c, lam) + second_slot_subst(bracket(algebra, c, a, lam), Var::L);
      report.skew.push_back({"skew", {a, c}, std::move(value)});
    }
  }

  for (GeneratorId x : gens) {
    for (GeneratorId y : gens) {
      const Element xy = bracket(algebra, x, y, lam);
      for (GeneratorId z : gens) {
        Element value = bracket(algebra, x, bracket(algebra, y, z, mu), lam);
        value -= bracket(algebra, xy, z, lam + mu);
        value -= bracket(algebra, y, bracket(algebra, x, z, lam), mu);
        report.jacobi.push_back({"jacobi", {x, y, z}, std::move(value)});
      }
    }
  }
  return report;
}

}  // namespace lca
