#include "lca/solver.hpp"

#include <algorithm>
#include <future>
#include <thread>

namespace lca {

Monomial Unknown::monomial() const {
  return Monomial::from_exponents({d_exp, l_exp, 0, 0, 0});
}

// ---------------------------------------------------------------------------
// Ansatz

Ansatz::Ansatz(AlgebraPtr algebra, unsigned degree) : algebra_(std::move(algebra)), degree_(degree) {
  if (!algebra_) throw SolverError("ansatz needs an algebra");
  if (algebra_->uses_symbolic_b())
    throw SolverError("solver needs a numeric b; " + algebra_->name() + " has symbolic b");
  const auto gens = algebra_->generators();
  unknowns_.reserve(expected_size(gens.size(), degree));
  for (GeneratorId left : gens)
    for (GeneratorId right : gens)
      for (GeneratorId target : gens)
        for (unsigned total = 0; total <= degree; ++total)
          for (unsigned p = total + 1; p-- > 0;) unknowns_.push_back({left, right, target, p, total - p});
}

std::size_t Ansatz::expected_size(std::size_t generators, unsigned degree) {
  return generators * generators * generators * (degree + 1) * (degree + 2) / 2;
}

BilinearMap Ansatz::unit(std::size_t index) const {
  const Unknown& u = unknowns_.at(index);
  BilinearMap phi(algebra_);
  phi.set(u.left, u.right, Element(u.target, Poly::term(u.monomial(), Rational(1))));
  return phi;
}

BilinearMap Ansatz::realize(const SparseVector& values) const {
  std::map<BilinearMap::Key, Element> table;
  for (const auto& [index, value] : values) {
    const Unknown& u = unknowns_.at(index);
    table[{u.left, u.right}].add(u.target, Poly::term(u.monomial(), value));
  }
  BilinearMap phi(algebra_);
  for (auto& [key, element] : table) phi.set(key.first, key.second, std::move(element));
  return phi;
}

// ---------------------------------------------------------------------------
// Assembly

namespace {

struct Contribution {
  RowOrigin origin;
  Rational value;
};

std::vector<Contribution> column_contributions(const Ansatz& ansatz, std::size_t column,
                                               std::span<const Identity> tags) {
  std::vector<Contribution> out;
  const BilinearMap phi = ansatz.unit(column);
  for (Identity tag : tags) {
    for (const auto& args : generator_tuples(ansatz.algebra(), arity(tag))) {
      const Residual r = residual(phi, tag, args);
      for (const auto& [target, poly] : r.value.terms())
        for (const auto& [mono, c] : poly.terms()) out.push_back({{tag, args, target, mono}, c});
    }
  }
  return out;
}

}  // namespace

ConstraintSystem assemble(const Ansatz& ansatz, std::span<const Identity> tags) {
  if (tags.empty()) throw SolverError("assemble needs at least one identity");
  std::vector<Identity> ordered(tags.begin(), tags.end());
  std::sort(ordered.begin(), ordered.end());
  ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());

  // Columns are evaluated in parallel chunks and merged in column order.
  const std::size_t columns = ansatz.size();
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), columns / 8 + 1));
  std::vector<std::future<std::vector<std::vector<Contribution>>>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      std::vector<std::vector<Contribution>> chunk;
      for (std::size_t c = w; c < columns; c += workers)
        chunk.push_back(column_contributions(ansatz, c, ordered));
      return chunk;
    }));
  }
  std::vector<std::vector<Contribution>> per_column(columns);
  for (std::size_t w = 0; w < workers; ++w) {
    auto chunk = jobs[w].get();
    std::size_t k = 0;
    for (std::size_t c = w; c < columns; c += workers) per_column[c] = std::move(chunk[k++]);
  }

  std::map<RowOrigin, SparseVector> rows;
  for (std::size_t c = 0; c < columns; ++c)
    for (auto& contribution : per_column[c])
      rows[std::move(contribution.origin)].emplace(c, std::move(contribution.value));

  ConstraintSystem system{ansatz, {}, {}};
  system.rows.reserve(rows.size());
  system.provenance.reserve(rows.size());
  for (auto& [origin, row] : rows) {
    if (row.empty()) continue;
    system.provenance.push_back(origin);
    system.rows.push_back(std::move(row));
  }
  return system;
}

SolutionSpace nullspace(const ConstraintSystem& system) {
  EchelonBasis echelon(system.ansatz.size());
  for (const auto& row : system.rows) echelon.insert(row);

  SolutionSpace space;
  space.unknowns = system.ansatz.size();
  space.rows = system.rows.size();
  for (const auto& vector : echelon.nullspace()) space.basis.push_back(system.ansatz.realize(vector));
  space.dimension = space.basis.size();
  return space;
}

SolutionSpace solve_bider(const AlgebraPtr& algebra, unsigned degree, std::span<const Identity> tags) {
  const Ansatz ansatz(algebra, degree);
  SolutionSpace space = nullspace(assemble(ansatz, tags));
  for (std::size_t k = 0; k < space.basis.size(); ++k) {
    if (!verify_map(space.basis[k], tags).passed())
      throw std::logic_error("solver basis vector " + std::to_string(k) + " fails re-verification");
  }
  return space;
}

std::vector<Rational> evaluate_rows(const ConstraintSystem& system, const BilinearMap& phi) {
  const Ansatz& ansatz = system.ansatz;
  std::map<MapCoordinate, std::size_t> index;
  for (std::size_t k = 0; k < ansatz.size(); ++k) {
    const Unknown& u = ansatz.unknowns()[k];
    index.emplace(MapCoordinate{u.left, u.right, u.target, u.monomial()}, k);
  }
  SparseVector x;
  for (const auto& [key, element] : phi.table()) {
    for (const auto& [target, poly] : element.terms()) {
      for (const auto& [mono, c] : poly.terms()) {
        auto it = index.find({key.first, key.second, target, mono});
        if (it == index.end()) throw SolverError("map has a term outside the ansatz");
        x.emplace(it->second, c);
      }
    }
  }
  std::vector<Rational> out;
  out.reserve(system.rows.size());
  for (const auto& row : system.rows) out.push_back(dot(row, x));
  return out;
}

// ---------------------------------------------------------------------------
// Template matching

std::vector<Template> family_templates(const AlgebraPtr& algebra) {
  std::vector<Template> out;
  out.push_back({"inner(t=1)", make_family(algebra, InnerFamily{1})});
  const auto& families = algebra->families();
  const int m = algebra->modulus();
  if (families == std::vector<std::string>{"L"}) {
    for (int s = 0; s < m; ++s)
      out.push_back({"cw_shift(s=" + std::to_string(s) + ")", make_family(algebra, CwShiftFamily{s, 1})});
  } else if (families == std::vector<std::string>{"L", "G"}) {
    for (int s = 0; s < m; ++s)
      out.push_back({"clw_a(s=" + std::to_string(s) + ")", make_family(algebra, ClwShiftFamily{s, 1, 0})});
    if (algebra->b().equals(-1)) {
      for (int s = 0; s < m; ++s)
        out.push_back({"clw_g(s=" + std::to_string(s) + ")", make_family(algebra, ClwShiftFamily{s, 0, 1})});
    }
  }
  return out;
}

namespace {

class CoordinateIndex {
 public:
  void add(const BilinearMap& phi) {
    for (const auto& [key, element] : phi.table())
      for (const auto& [target, poly] : element.terms())
        for (const auto& [mono, c] : poly.terms())
          index_.try_emplace({key.first, key.second, target, mono}, 0);
  }
  void freeze() {
    std::size_t k = 0;
    for (auto& [coord, slot] : index_) slot = k++;
    coords_.clear();
    for (const auto& [coord, slot] : index_) coords_.push_back(coord);
  }
  std::size_t size() const { return index_.size(); }

  SparseVector flatten(const BilinearMap& phi) const {
    SparseVector v;
    for (const auto& [key, element] : phi.table())
      for (const auto& [target, poly] : element.terms())
        for (const auto& [mono, c] : poly.terms()) v.emplace(index_.at({key.first, key.second, target, mono}), c);
    return v;
  }

  BilinearMap unflatten(const SparseVector& v, const AlgebraPtr& algebra) const {
    BilinearMap phi(algebra);
    for (const auto& [k, c] : v) {
      const MapCoordinate& coord = coords_.at(k);
      phi.add(coord.left, coord.right, Element(coord.target, Poly::term(coord.monomial, c)));
    }
    return phi;
  }

 private:
  std::map<MapCoordinate, std::size_t> index_;
  std::vector<MapCoordinate> coords_;
};

}  // namespace

MatchReport match_templates(const std::vector<BilinearMap>& basis, const AlgebraPtr& algebra) {
  const std::vector<Template> templates = family_templates(algebra);
  CoordinateIndex coords;
  for (const auto& t : templates) coords.add(t.map);
  for (const auto& v : basis) coords.add(v);
  coords.freeze();

  // Template i is tracked in column N + (T-1-i): dependent templates then pivot
  // on the later column and combinations prefer earlier templates.
  const std::size_t n = coords.size();
  const std::size_t count = templates.size();
  EchelonBasis echelon(n + count);
  for (std::size_t i = 0; i < count; ++i) {
    SparseVector row = coords.flatten(templates[i].map);
    row.emplace(n + (count - 1 - i), 1);
    echelon.insert(std::move(row));
  }

  MatchReport report;
  for (const auto& t : templates) report.templates.push_back(t.name);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const SparseVector reduced = echelon.reduce(coords.flatten(basis[k]));
    SparseVector remainder;
    std::vector<std::pair<std::string, Rational>> combination;
    for (const auto& [col, c] : reduced) {
      if (col < n) {
        remainder.emplace(col, c);
      } else {
        combination.emplace_back(templates[count - 1 - (col - n)].name, Rational(-c));
      }
    }
    if (remainder.empty()) {
      std::reverse(combination.begin(), combination.end());
      report.matched.push_back({k, std::move(combination)});
    } else {
      report.unmatched.push_back({k, coords.unflatten(remainder, algebra)});
    }
  }
  return report;
}

MatchReport match_templates(const SolutionSpace& space, const AlgebraPtr& algebra) {
  return match_templates(space.basis, algebra);
}

bool same_span(const std::vector<BilinearMap>& a, const std::vector<BilinearMap>& b) {
  CoordinateIndex coords;
  for (const auto& v : a) coords.add(v);
  for (const auto& v : b) coords.add(v);
  coords.freeze();
  auto contained = [&coords](const std::vector<BilinearMap>& xs, const std::vector<BilinearMap>& span) {
    EchelonBasis echelon(coords.size());
    for (const auto& v : span) echelon.insert(coords.flatten(v));
    return std::all_of(xs.begin(), xs.end(),
                       [&](const BilinearMap& v) { return echelon.reduce(coords.flatten(v)).empty(); });
  };
  return contained(a, b) && contained(b, a);
}

}  // namespace lca
