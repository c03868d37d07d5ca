#include "lca/bimap.hpp"

#include <algorithm>
#include <sstream>

namespace lca {

std::size_t arity(Identity tag) {
  switch (tag) {
    case Identity::Def1a: return 2;
    case Identity::Def1b: return 3;
    case Identity::Lem1: return 3;
    case Identity::Lem2: return 4;
  }
  return 0;
}

std::string to_string(Identity tag) {
  switch (tag) {
    case Identity::Def1a: return "def1a";
    case Identity::Def1b: return "def1b";
    case Identity::Lem1: return "lem1";
    case Identity::Lem2: return "lem2";
  }
  return "?";
}

std::optional<Identity> parse_identity(std::string_view name) {
  for (Identity tag : kAllIdentities)
    if (to_string(tag) == name) return tag;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// BilinearMap

BilinearMap::BilinearMap(AlgebraPtr algebra) : algebra_(std::move(algebra)) {
  if (!algebra_) throw MapError("bilinear map needs an algebra");
}

Element BilinearMap::value(GeneratorId x, GeneratorId y) const {
  auto it = table_.find({x, y});
  return it == table_.end() ? Element() : it->second;
}

void BilinearMap::set(GeneratorId x, GeneratorId y, Element value) {
  if (!algebra_->contains(x) || !algebra_->contains(y))
    throw MapError("map entry on a generator outside " + algebra_->name());
  const VarSet allowed{Var::D, Var::L, Var::B};
  for (const auto& [g, p] : value.terms()) {
    if (!algebra_->contains(g)) throw MapError("map value on a generator outside " + algebra_->name());
    if (!p.variables().subset_of(allowed))
      throw MapError("map value '" + p.to_string() + "' uses variables other than d, l, b");
  }
  if (value.is_zero()) {
    table_.erase({x, y});
  } else {
    table_.insert_or_assign({x, y}, std::move(value));
  }
}

void BilinearMap::add(GeneratorId x, GeneratorId y, const Element& value) {
  set(x, y, this->value(x, y) + value);
}

void BilinearMap::check_compatible(const BilinearMap& other) const {
  if (algebra_ != other.algebra_ && !algebra_->same_structure(*other.algebra_))
    throw MapError("bilinear maps over different algebras");
}

BilinearMap& BilinearMap::operator+=(const BilinearMap& other) {
  check_compatible(other);
  for (const auto& [key, v] : other.table_) add(key.first, key.second, v);
  return *this;
}

BilinearMap& BilinearMap::operator-=(const BilinearMap& other) {
  check_compatible(other);
  for (const auto& [key, v] : other.table_) add(key.first, key.second, -v);
  return *this;
}

BilinearMap& BilinearMap::operator*=(const Rational& scale) {
  if (lca::is_zero(scale)) {
    table_.clear();
    return *this;
  }
  const Poly s(scale);
  for (auto& [key, v] : table_) v = s * v;
  return *this;
}

bool operator==(const BilinearMap& a, const BilinearMap& b) {
  return a.algebra_->same_structure(*b.algebra_) && a.table_ == b.table_;
}

// ---------------------------------------------------------------------------
// Evaluation

Element map_eval(const BilinearMap& phi, const Element& x, const Element& y, const Poly& spectral) {
  const Algebra& algebra = phi.algebra();
  algebra.validate(x);
  algebra.validate(y);
  Element out;
  if (x.is_zero() || y.is_zero() || phi.is_zero()) return out;

  const Substitution left_slot{{Var::D, -spectral}};
  const Substitution right_slot{{Var::D, Poly::var(Var::D) + spectral}};
  const Substitution value_slot{{Var::L, spectral}};

  std::vector<std::pair<GeneratorId, Poly>> rights;
  for (const auto& [gj, q] : y.terms()) rights.emplace_back(gj, substitute(q, right_slot));

  for (const auto& [gi, p_raw] : x.terms()) {
    std::optional<Poly> p;
    for (const auto& [gj, q] : rights) {
      auto it = phi.table().find({gi, gj});
      if (it == phi.table().end()) continue;
      if (!p) p = substitute(p_raw, left_slot);
      const Poly pq = *p * q;
      for (const auto& [gk, c] : it->second.terms()) out.add(gk, pq * substitute(c, value_slot));
    }
  }
  return out;
}

Element map_eval(const BilinearMap& phi, const Element& x, const Element& y, Var spectral) {
  return map_eval(phi, x, y, Poly::var(spectral));
}

Residual residual(const BilinearMap& phi, Identity tag, std::span<const GeneratorId> args) {
  if (args.size() != arity(tag))
    throw MapError(to_string(tag) + " takes " + std::to_string(arity(tag)) + " generators, got " +
                   std::to_string(args.size()));
  const Algebra& A = phi.algebra();
  for (GeneratorId g : args)
    if (!A.contains(g)) throw MapError("residual argument outside " + A.name());

  const Poly lam = Poly::var(Var::L);
  const Poly mu = Poly::var(Var::M);
  const Poly gam = Poly::var(Var::G);

  Residual out{tag, {args.begin(), args.end()}, {}};
  switch (tag) {
    case Identity::Def1a: {
      const Element x(args[0]), y(args[1]);
      out.value = map_eval(phi, x, y, lam) + second_slot_subst(map_eval(phi, y, x, lam), Var::L);
      break;
    }
    case Identity::Def1b: {
      const Element x(args[0]), y(args[1]), z(args[2]);
      Element v = map_eval(phi, x, bracket(A, y, z, mu), lam);
      v -= bracket(A, map_eval(phi, x, y, lam), z, lam + mu);
      v -= bracket(A, y, map_eval(phi, x, z, lam), mu);
      out.value = std::move(v);
      break;
    }
    case Identity::Lem1: {
      const Element x(args[0]), y(args[1]), z(args[2]);
      Element v = map_eval(phi, bracket(A, x, y, mu), z, lam + mu);
      v -= bracket(A, x, map_eval(phi, y, z, lam), mu);
      v += bracket(A, y, map_eval(phi, x, z, mu), lam);
      out.value = std::move(v);
      break;
    }
    case Identity::Lem2: {
      const Element x(args[0]), y(args[1]), u(args[2]), w(args[3]);
      Element v = bracket(A, map_eval(phi, x, y, mu), bracket(A, u, w, lam), mu + gam);
      v -= bracket(A, bracket(A, x, y, mu), map_eval(phi, u, w, lam), mu + gam);
      out.value = std::move(v);
      break;
    }
  }
  return out;
}

std::vector<std::vector<GeneratorId>> generator_tuples(const Algebra& algebra, std::size_t arity) {
  const auto gens = algebra.generators();
  std::vector<std::vector<GeneratorId>> out{{}};
  for (std::size_t k = 0; k < arity; ++k) {
    std::vector<std::vector<GeneratorId>> next;
    next.reserve(out.size() * gens.size());
    for (const auto& prefix : out) {
      for (GeneratorId g : gens) {
        auto t = prefix;
        t.push_back(g);
        next.push_back(std::move(t));
      }
    }
    out = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Families

std::string describe(const FamilySpec& spec) {
  std::ostringstream os;
  std::visit(
      [&os](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, InnerFamily>) {
          os << "inner(t=" << to_string(f.t) << ")";
        } else if constexpr (std::is_same_v<T, CwShiftFamily>) {
          os << "cw_shift(s=" << f.shift << ", a=" << to_string(f.a) << ")";
        } else {
          os << "clw_shift(s=" << f.shift << ", a=" << to_string(f.a) << ", g=" << to_string(f.g) << ")";
        }
      },
      spec);
  return os.str();
}

namespace {

Poly with_b(const Algebra& algebra, Poly p) {
  if (algebra.b().is_symbolic()) return p;
  return substitute(p, {{Var::B, Poly(algebra.b().value())}});
}

void require_families(const Algebra& algebra, const std::vector<std::string>& expected, const char* family) {
  if (algebra.families() == expected) return;
  std::string names;
  for (const auto& f : expected) names += (names.empty() ? "" : ", ") + f;
  throw MapError(std::string(family) + " family needs an algebra with families {" + names + "}");
}

}  // namespace

BilinearMap make_family(const AlgebraPtr& algebra_ptr, const FamilySpec& spec) {
  using namespace sym;
  BilinearMap phi(algebra_ptr);
  const Algebra& A = *algebra_ptr;
  const Poly virasoro = d() + 2 * l();

  if (const auto* inner = std::get_if<InnerFamily>(&spec)) {
    const Poly t(inner->t);
    for (GeneratorId x : A.generators())
      for (GeneratorId y : A.generators()) phi.set(x, y, t * bracket(A, x, y, Var::L));
    return phi;
  }

  if (const auto* cw = std::get_if<CwShiftFamily>(&spec)) {
    require_families(A, {"L"}, "cw_shift");
    const Poly coeff = Poly(cw->a) * virasoro;
    for (GeneratorId x : A.generators())
      for (GeneratorId y : A.generators())
        phi.set(x, y, Element({0, A.reduce(static_cast<long>(x.index) + y.index + cw->shift)}, coeff));
    return phi;
  }

  const auto& clw = std::get<ClwShiftFamily>(spec);
  require_families(A, {"L", "G"}, "clw_shift");
  if (!is_zero(clw.g) && !A.b().equals(-1))
    throw MapError("the G-component family exists only for b = -1 (b = " + A.b().to_string() + ")");

  const Poly a(clw.a);
  const Poly lg = with_b(A, d() + (1 - b()) * l());
  const Poly gl = with_b(A, -(b() * d() + (b() - 1) * l()));
  for (int i = 0; i < A.modulus(); ++i) {
    for (int j = 0; j < A.modulus(); ++j) {
      const int k = A.reduce(static_cast<long>(i) + j + clw.shift);
      const GeneratorId Li{0, i}, Lj{0, j}, Gi{1, i}, Gj{1, j};
      Element ll({0, k}, a * virasoro);
      ll.add({1, k}, Poly(clw.g) * virasoro);
      phi.set(Li, Lj, std::move(ll));
      phi.set(Li, Gj, Element({1, k}, a * lg));
      phi.set(Gi, Lj, Element({1, k}, a * gl));
    }
  }
  return phi;
}

VerifyReport verify_map(const BilinearMap& phi, std::span<const Identity> tags) {
  std::vector<Identity> ordered(tags.begin(), tags.end());
  std::sort(ordered.begin(), ordered.end());
  ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());

  VerifyReport report;
  for (Identity tag : ordered) {
    for (const auto& args : generator_tuples(phi.algebra(), arity(tag))) {
      Residual r = residual(phi, tag, args);
      ++report.checked;
      if (!r.value.is_zero()) report.failures.push_back(std::move(r));
    }
  }
  return report;
}

}  // namespace lca
