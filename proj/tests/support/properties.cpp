#include "properties.hpp"

#include <cstdlib>
#include <functional>

namespace lca::testing {

std::uint64_t seed_from_env(std::uint64_t fallback) {
  if (const char* env = std::getenv("LCA_SEED"); env != nullptr && *env != '\0')
    return std::strtoull(env, nullptr, 10);
  return fallback;
}

// ---------------------------------------------------------------------------
// Generators

long RandomSource::integer(long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(engine_);
}

Rational RandomSource::rational(long bound) {
  Rational r(integer(-bound, bound), integer(1, 3));
  r.canonicalize();
  return r;
}

Rational RandomSource::nonzero_rational(long bound) {
  Rational r;
  do r = rational(bound);
  while (is_zero(r));
  return r;
}

Monomial RandomSource::monomial(VarSet vars, unsigned max_degree) {
  std::array<unsigned, kVarCount> e{};
  std::vector<Var> pool;
  for (Var v : kAllVars)
    if (vars.contains(v)) pool.push_back(v);
  if (pool.empty()) return Monomial{};
  const unsigned degree = static_cast<unsigned>(integer(0, max_degree));
  for (unsigned k = 0; k < degree; ++k)
    ++e[static_cast<unsigned>(pool[static_cast<std::size_t>(integer(0, static_cast<long>(pool.size()) - 1))])];
  return Monomial::from_exponents(e);
}

Poly RandomSource::poly(VarSet vars, unsigned max_terms, unsigned max_degree) {
  Poly p;
  const long terms = integer(0, max_terms);
  for (long k = 0; k < terms; ++k) p.add_term(monomial(vars, max_degree), rational());
  return p;
}

Element RandomSource::element(const Algebra& algebra, VarSet vars, unsigned max_terms) {
  const auto gens = algebra.generators();
  Element e;
  const long terms = integer(0, max_terms);
  for (long k = 0; k < terms; ++k)
    e.add(gens[static_cast<std::size_t>(integer(0, static_cast<long>(gens.size()) - 1))], poly(vars, 3, 2));
  return e;
}

BilinearMap RandomSource::bilinear_map(const AlgebraPtr& algebra, unsigned max_entries) {
  const auto gens = algebra->generators();
  auto pick = [&] { return gens[static_cast<std::size_t>(integer(0, static_cast<long>(gens.size()) - 1))]; };
  BilinearMap phi(algebra);
  const long entries = integer(0, max_entries);
  for (long k = 0; k < entries; ++k) {
    Element value(pick(), poly({Var::D, Var::L}, 3, 2));
    phi.add(pick(), pick(), value);
  }
  return phi;
}

// ---------------------------------------------------------------------------
// Property suites

namespace {

PropertyOutcome run_cases(std::string name, std::size_t cases,
                          const std::function<std::string(std::size_t)>& body) {
  PropertyOutcome out{std::move(name), cases, 0, {}};
  for (std::size_t k = 0; k < cases; ++k) {
    std::string failure = body(k);
    if (!failure.empty()) {
      if (out.failures == 0) out.first_failure = "case " + std::to_string(k) + ": " + failure;
      ++out.failures;
    }
  }
  return out;
}

std::map<Var, Rational> random_point(RandomSource& rng) {
  std::map<Var, Rational> point;
  for (Var v : kAllVars) point[v] = rng.rational(7);
  return point;
}

}  // namespace

PropertyOutcome check_ring_axioms(std::uint64_t seed, std::size_t cases) {
  RandomSource rng(seed);
  return run_cases("poly ring axioms", cases, [&](std::size_t) -> std::string {
    const Poly p = rng.poly(), q = rng.poly(), r = rng.poly();
    const Poly zero, one(1L);
    if ((p + q) + r != p + (q + r)) return "additive associativity";
    if ((p * q) * r != p * (q * r)) return "multiplicative associativity";
    if (p + q != q + p) return "additive commutativity";
    if (p * q != q * p) return "multiplicative commutativity";
    if (p * (q + r) != p * q + p * r) return "distributivity";
    if (p + zero != p || p * one != p) return "identities";
    if (!(p - p).is_zero() || p + (-p) != zero) return "additive inverse";
    // Independent oracle: evaluation is a ring map into Q.
    const auto point = random_point(rng);
    if (evaluate(p * q, point) != evaluate(p, point) * evaluate(q, point)) return "product vs evaluation";
    if (evaluate(p + q, point) != evaluate(p, point) + evaluate(q, point)) return "sum vs evaluation";
    return {};
  });
}

PropertyOutcome check_substitution_homomorphism(std::uint64_t seed, std::size_t cases) {
  RandomSource rng(seed);
  return run_cases("substitution homomorphism", cases, [&](std::size_t) -> std::string {
    const Poly p = rng.poly(), q = rng.poly();
    Substitution s;
    for (Var v : kAllVars)
      if (rng.integer(0, 1) == 1) s[v] = rng.poly({Var::D, Var::L, Var::M, Var::G, Var::B}, 3, 2);
    if (substitute(p * q, s) != substitute(p, s) * substitute(q, s)) return "product: " + p.to_string();
    if (substitute(p + q, s) != substitute(p, s) + substitute(q, s)) return "sum: " + p.to_string();
    // Evaluation oracle: p(s(x)) at a point equals p at the image point.
    const auto point = random_point(rng);
    std::map<Var, Rational> image = point;
    for (const auto& [v, target] : s) image[v] = evaluate(target, point);
    if (evaluate(substitute(p, s), point) != evaluate(p, image)) return "evaluation: " + p.to_string();
    return {};
  });
}

PropertyOutcome check_double_skew_identity(std::uint64_t seed, std::size_t cases) {
  RandomSource rng(seed);
  const Substitution skew{{Var::L, -Poly::var(Var::D) - Poly::var(Var::L)}};
  return run_cases("double skew substitution", cases, [&](std::size_t) -> std::string {
    const Poly p = rng.poly();
    if (substitute(substitute(p, skew), skew) != p) return p.to_string();
    return {};
  });
}

PropertyOutcome check_coefficient_reconstruction(std::uint64_t seed, std::size_t cases) {
  RandomSource rng(seed);
  return run_cases("coefficient reconstruction", cases, [&](std::size_t) -> std::string {
    const Poly p = rng.poly();
    VarSet vars;
    while (vars.empty())
      for (Var v : kAllVars)
        if (rng.integer(0, 2) == 0) vars.insert(v);
    Poly rebuilt;
    for (const auto& [mono, value] : coefficients(p, vars)) {
      if (!mono.support().subset_of(vars)) return "key outside vars";
      for (const auto& [m, c] : value.terms())
        if (!(m.support().subset_of(vars.complement()))) return "value mentions a grouped variable";
      rebuilt += Poly::term(mono, Rational(1)) * value;
    }
    if (rebuilt != p) return p.to_string();
    return {};
  });
}

PropertyOutcome check_parse_print_roundtrip(std::uint64_t seed, std::size_t cases) {
  RandomSource rng(seed);
  return run_cases("parse/print round-trip", cases, [&](std::size_t) -> std::string {
    const Poly p = rng.poly({Var::D, Var::L, Var::M, Var::G, Var::B}, 5, 4);
    const std::string text = p.to_string();
    const Poly back = parse_poly(text);
    if (back != p) return text;
    if (back.to_string() != text) return "reprint differs: " + text;
    return {};
  });
}

namespace {

std::vector<AlgebraPtr> property_algebras() {
  return {std::make_shared<const Algebra>(make_catalog(CatalogKind::Vir, 1)),
          std::make_shared<const Algebra>(make_catalog(CatalogKind::CW, 3)),
          std::make_shared<const Algebra>(make_catalog(CatalogKind::CLW, 2)),
          std::make_shared<const Algebra>(make_catalog(CatalogKind::CLW, 2, BParameter::numeric(Rational(-3, 2))))};
}

}  // namespace

PropertyOutcome check_bracket_bilinearity(std::uint64_t seed, std::size_t cases) {
  RandomSource rng(seed);
  const auto algebras = property_algebras();
  const VarSet coeff_vars{Var::D, Var::M, Var::B};
  const Poly lam = Poly::var(Var::L);
  return run_cases("bracket bilinearity", cases, [&](std::size_t k) -> std::string {
    const Algebra& A = *algebras[k % algebras.size()];
    const Element x = rng.element(A, coeff_vars), x2 = rng.element(A, coeff_vars);
    const Element y = rng.element(A, coeff_vars), y2 = rng.element(A, coeff_vars);
    const Poly alpha(rng.rational());
    if (bracket(A, alpha * x + x2, y, lam) != alpha * bracket(A, x, y, lam) + bracket(A, x2, y, lam))
      return "left slot in " + A.name();
    if (bracket(A, x, alpha * y + y2, lam) != alpha * bracket(A, x, y, lam) + bracket(A, x, y2, lam))
      return "right slot in " + A.name();
    return {};
  });
}

PropertyOutcome check_bracket_sesquilinearity(std::uint64_t seed, std::size_t cases) {
  RandomSource rng(seed);
  const auto algebras = property_algebras();
  const VarSet coeff_vars{Var::D, Var::M, Var::B};
  const Poly d = Poly::var(Var::D), lam = Poly::var(Var::L);
  return run_cases("bracket sesquilinearity", cases, [&](std::size_t k) -> std::string {
    const Algebra& A = *algebras[k % algebras.size()];
    const Element x = rng.element(A, coeff_vars), y = rng.element(A, coeff_vars);
    const Element xy = bracket(A, x, y, lam);
    if (bracket(A, d * x, y, lam) != -lam * xy) return "left rule in " + A.name();
    if (bracket(A, x, d * y, lam) != (d + lam) * xy) return "right rule in " + A.name();
    return {};
  });
}

// ---------------------------------------------------------------------------
// Bareiss oracle

std::size_t bareiss_rank(const std::vector<SparseVector>& rows, std::size_t columns) {
  std::vector<std::vector<mpz_class>> a;
  for (const auto& row : rows) {
    mpz_class scale = 1;
    for (const auto& [c, v] : row) scale = lcm(scale, v.get_den());
    std::vector<mpz_class> dense(columns, 0);
    for (const auto& [c, v] : row) dense.at(c) = v.get_num() * (scale / v.get_den());
    a.push_back(std::move(dense));
  }
  std::size_t rank = 0;
  mpz_class prev = 1;
  for (std::size_t col = 0; col < columns && rank < a.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < a.size() && a[pivot][col] == 0) ++pivot;
    if (pivot == a.size()) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t i = rank + 1; i < a.size(); ++i) {
      for (std::size_t j = col + 1; j < columns; ++j) {
        mpz_class v = a[rank][col] * a[i][j] - a[i][col] * a[rank][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = v;
      }
      a[i][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

}  // namespace lca::testing
