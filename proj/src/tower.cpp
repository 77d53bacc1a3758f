#include "lforge/tower.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <numeric>

#include "lforge/errors.hpp"
#include "lforge/lift_filtered.hpp"

namespace lforge {

namespace {

constexpr std::uint32_t kMaxGroupOrder = 4096;
constexpr std::uint32_t kAssociativityCheckLimit = 512;

std::uint64_t resolve_budget(std::uint64_t budget) { return budget ? budget : enumeration_budget(); }

// Closure of generators under a multiplication with value keys.
template <class T, class Mul, class Label>
FiniteGroup closure(const std::vector<T>& gens, const T& identity, Mul mul, Label label) {
  std::map<T, std::uint32_t> index;
  std::vector<T> elems{identity};
  index.emplace(identity, 0);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& g : gens) {
      T prod = mul(elems[i], g);
      if (index.emplace(prod, static_cast<std::uint32_t>(elems.size())).second) {
        elems.push_back(std::move(prod));
        if (elems.size() > kMaxGroupOrder) throw BudgetExceeded("group closure exceeds " + std::to_string(kMaxGroupOrder) + " elements");
      }
    }
  }
  const std::size_t n = elems.size();
  std::vector<std::vector<std::uint32_t>> table(n, std::vector<std::uint32_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto it = index.find(mul(elems[a], elems[b]));
      if (it == index.end()) throw InputError("generators do not close to a group");
      table[a][b] = it->second;
    }
  std::vector<std::string> labels;
  for (const auto& e : elems) labels.push_back(label(e));
  return FiniteGroup::from_table(std::move(table), std::move(labels));
}

std::string key_of(const FilteredMap& m) { return m.to_string(); }

}  // namespace

std::uint64_t enumeration_budget() {
  if (const char* env = std::getenv("LAMBDA_FORGE_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return std::uint64_t{1} << 22;
}

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<std::uint32_t>> table, std::vector<std::string> labels) {
  FiniteGroup g;
  g.n_ = static_cast<std::uint32_t>(table.size());
  if (g.n_ == 0) throw InputError("a group needs at least one element");
  if (g.n_ > kMaxGroupOrder) throw BudgetExceeded("group order above " + std::to_string(kMaxGroupOrder));
  g.table_.reserve(static_cast<std::size_t>(g.n_) * g.n_);
  for (const auto& row : table) {
    if (row.size() != g.n_) throw InputError("multiplication table must be square");
    for (auto v : row) {
      if (v >= g.n_) throw InputError("multiplication table entry out of range");
      g.table_.push_back(v);
    }
  }
  if (!labels.empty() && labels.size() != g.n_) throw InputError("label count does not match group order");
  g.labels_ = std::move(labels);
  g.finish(true);
  return g;
}

void FiniteGroup::finish(bool check_associativity) {
  for (std::uint32_t a = 0; a < n_; ++a)
    if (mul(0, a) != a || mul(a, 0) != a) throw InputError("element 0 must be the identity");
  inverse_.assign(n_, n_);
  for (std::uint32_t a = 0; a < n_; ++a) {
    std::vector<char> seen(n_, 0);
    for (std::uint32_t b = 0; b < n_; ++b) {
      const auto c = mul(a, b);
      if (seen[c]) throw InputError("multiplication table row is not a permutation");
      seen[c] = 1;
      if (c == 0) inverse_[a] = b;
    }
  }
  for (std::uint32_t a = 0; a < n_; ++a)
    if (mul(inverse_[a], a) != 0) throw InputError("left and right inverses differ");
  if (check_associativity) {
    if (n_ > kAssociativityCheckLimit)
      throw BudgetExceeded("associativity check limited to " + std::to_string(kAssociativityCheckLimit) + " elements");
    for (std::uint32_t a = 0; a < n_; ++a)
      for (std::uint32_t b = 0; b < n_; ++b) {
        const auto ab = mul(a, b);
        for (std::uint32_t c = 0; c < n_; ++c)
          if (mul(ab, c) != mul(a, mul(b, c))) throw InputError("multiplication is not associative");
      }
  }
  if (labels_.empty())
    for (std::uint32_t a = 0; a < n_; ++a) labels_.push_back(std::to_string(a));
}

FiniteGroup FiniteGroup::trivial() { return from_table({{0}}, {"e"}); }

FiniteGroup FiniteGroup::cyclic(std::uint32_t n) {
  if (n == 0) throw InputError("cyclic group order must be positive");
  std::vector<std::vector<std::uint32_t>> t(n, std::vector<std::uint32_t>(n));
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return from_table(std::move(t));
}

FiniteGroup FiniteGroup::from_permutations(const std::vector<std::vector<unsigned>>& generators, unsigned degree) {
  for (const auto& g : generators) {
    if (g.size() != degree) throw InputError("permutation has the wrong degree");
    std::vector<char> seen(degree, 0);
    for (auto x : g) {
      if (x >= degree || seen[x]) throw InputError("not a permutation");
      seen[x] = 1;
    }
  }
  std::vector<unsigned> id(degree);
  std::iota(id.begin(), id.end(), 0u);
  auto mul = [](const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
    std::vector<unsigned> r(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) r[x] = a[b[x]];
    return r;
  };
  auto label = [](const std::vector<unsigned>& p) {
    std::string s = "[";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? " " : "") + std::to_string(p[i]);
    return s + "]";
  };
  return closure(generators, id, mul, label);
}

FiniteGroup FiniteGroup::symmetric(unsigned degree) {
  if (degree <= 1) return from_permutations({}, degree);
  std::vector<unsigned> swap(degree), cycle(degree);
  std::iota(swap.begin(), swap.end(), 0u);
  std::swap(swap[0], swap[1]);
  for (unsigned i = 0; i < degree; ++i) cycle[i] = (i + 1) % degree;
  return from_permutations({swap, cycle}, degree);
}

FiniteGroup FiniteGroup::from_matrices(const std::vector<IntMatrix>& generators, unsigned long modulus) {
  if (modulus < 2) throw InputError("matrix modulus must be at least 2");
  const auto ring = CoefficientRing::integers_mod(modulus);
  if (generators.empty()) return trivial();
  const std::size_t n = generators.front().size();
  using Key = std::vector<unsigned long>;
  auto to_key = [&](const IntMatrix& m) {
    Key k;
    for (const auto& row : m)
      for (auto v : row) {
        mpz_class x = v;
        ring.normalize(x);
        k.push_back(x.get_ui());
      }
    return k;
  };
  std::vector<Key> gens;
  for (const auto& g : generators) {
    if (g.size() != n) throw InputError("matrices must share one size");
    for (const auto& row : g)
      if (row.size() != n) throw InputError("matrices must be square");
    if (!inverse(g, ring)) throw InputError("matrix generator is not invertible modulo " + std::to_string(modulus));
    gens.push_back(to_key(g));
  }
  auto mul = [&](const Key& a, const Key& b) {
    Key r(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        unsigned long long acc = 0;
        for (std::size_t t = 0; t < n; ++t) acc = (acc + static_cast<unsigned long long>(a[i * n + t]) * b[t * n + j]) % modulus;
        r[i * n + j] = static_cast<unsigned long>(acc);
      }
    return r;
  };
  auto label = [&](const Key& k) {
    std::string s = "[";
    for (std::size_t i = 0; i < n; ++i) {
      if (i) s += "; ";
      for (std::size_t j = 0; j < n; ++j) s += (j ? " " : "") + std::to_string(k[i * n + j]);
    }
    return s + "]";
  };
  return closure(gens, to_key(identity_matrix(n)), mul, label);
}

std::optional<std::uint32_t> FiniteGroup::find(const std::string& label) const {
  for (std::uint32_t a = 0; a < n_; ++a)
    if (labels_[a] == label) return a;
  return std::nullopt;
}

std::vector<std::uint32_t> FiniteGroup::generators() const {
  std::vector<std::uint32_t> gens;
  std::vector<char> in(n_, 0);
  in[0] = 1;
  for (std::uint32_t cand = 1; cand < n_; ++cand) {
    if (in[cand]) continue;
    gens.push_back(cand);
    std::vector<std::uint32_t> elems;
    std::fill(in.begin(), in.end(), 0);
    in[0] = 1;
    elems.push_back(0);
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (auto g : gens) {
        const auto p = mul(elems[i], g);
        if (!in[p]) {
          in[p] = 1;
          elems.push_back(p);
        }
      }
  }
  return gens;
}

bool is_homomorphism(const FiniteGroup& from, const FiniteGroup& to, const GroupMap& f) {
  if (f.size() != from.order()) return false;
  for (auto v : f)
    if (v >= to.order()) return false;
  for (std::uint32_t a = 0; a < from.order(); ++a)
    for (std::uint32_t b = 0; b < from.order(); ++b)
      if (f[from.mul(a, b)] != to.mul(f[a], f[b])) return false;
  return true;
}

std::optional<GroupMap> extend_homomorphism(const FiniteGroup& from, const FiniteGroup& to,
                                            const std::vector<std::uint32_t>& generators,
                                            const std::vector<std::uint32_t>& images) {
  if (generators.size() != images.size()) throw InputError("generator and image lists differ in length");
  constexpr std::uint32_t unset = ~std::uint32_t{0};
  GroupMap f(from.order(), unset);
  f[0] = 0;
  std::deque<std::uint32_t> queue{0};
  while (!queue.empty()) {
    const auto a = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < generators.size(); ++i) {
      const auto b = from.mul(a, generators[i]);
      const auto img = to.mul(f[a], images[i]);
      if (f[b] == unset) {
        f[b] = img;
        queue.push_back(b);
      } else if (f[b] != img) {
        return std::nullopt;
      }
    }
  }
  for (auto v : f)
    if (v == unset) return std::nullopt;  // generators do not generate
  if (!is_homomorphism(from, to, f)) return std::nullopt;
  return f;
}

FiniteGroupTower::FiniteGroupTower(std::vector<FiniteGroup> levels, std::vector<GroupMap> maps)
    : levels_(std::move(levels)), maps_(std::move(maps)) {
  if (levels_.empty()) throw InputError("a tower needs at least one level");
  if (maps_.size() + 1 != levels_.size()) throw InputError("a tower of depth D needs D structure maps");
  for (std::size_t n = 0; n < maps_.size(); ++n)
    if (!is_homomorphism(levels_[n + 1], levels_[n], maps_[n]))
      throw InputError("structure map from level " + std::to_string(n + 1) + " to level " + std::to_string(n) +
                       " is not a homomorphism");
}

OrbitReport lim1_orbits(const FiniteGroupTower& tower, Execution exec, std::uint64_t budget) {
  budget = resolve_budget(budget);
  const auto& G = tower.levels();
  const std::size_t D = tower.depth();
  std::vector<std::uint64_t> stride(D + 2, 1);
  for (std::size_t n = 0; n <= D; ++n) {
    stride[n + 1] = stride[n] * G[n].order();
    if (stride[n + 1] > budget)
      throw BudgetExceeded("lim1 state space exceeds the enumeration budget of " + std::to_string(budget));
  }
  const std::uint64_t states = stride[D + 1];

  std::vector<std::uint64_t> parent(states);
  std::iota(parent.begin(), parent.end(), std::uint64_t{0});
  auto find = [&](std::uint64_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };

  std::vector<std::uint64_t> target(states);
  for (std::size_t n = 0; n <= D; ++n) {
    for (auto g : G[n].generators()) {
      // alpha = g at level n: beta_n -> g beta_n, beta_{n-1} -> beta_{n-1} rho_n(g)^{-1}.
      const std::uint32_t below = n > 0 ? G[n - 1].inv(tower.maps()[n - 1][g]) : 0;
      auto move = [&](std::uint64_t s) {
        const std::uint64_t bn = (s / stride[n]) % G[n].order();
        std::uint64_t t = s + (static_cast<std::uint64_t>(G[n].mul(g, static_cast<std::uint32_t>(bn))) - bn) * stride[n];
        if (n > 0) {
          const std::uint64_t bm = (s / stride[n - 1]) % G[n - 1].order();
          t = t + (static_cast<std::uint64_t>(G[n - 1].mul(static_cast<std::uint32_t>(bm), below)) - bm) * stride[n - 1];
        }
        return t;
      };
      if (exec == Execution::Parallel) {
        const auto total = static_cast<std::int64_t>(states);
#pragma omp parallel for schedule(static)
        for (std::int64_t s = 0; s < total; ++s) target[static_cast<std::uint64_t>(s)] = move(static_cast<std::uint64_t>(s));
      } else {
        for (std::uint64_t s = 0; s < states; ++s) target[s] = move(s);
      }
      for (std::uint64_t s = 0; s < states; ++s) {
        const auto a = find(s), b = find(target[s]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }

  OrbitReport report;
  const std::uint64_t base_root = find(0);
  for (std::uint64_t s = 0; s < states; ++s) {
    const auto r = find(s);
    if (r == s) {
      ++report.orbit_count;
      std::vector<std::uint32_t> tuple(D + 1);
      for (std::size_t n = 0; n <= D; ++n) tuple[n] = static_cast<std::uint32_t>((s / stride[n]) % G[n].order());
      report.representatives.push_back(std::move(tuple));
    }
    if (r == base_root) ++report.basepoint_orbit_size;
  }
  std::sort(report.representatives.begin(), report.representatives.end());
  report.basepoint_is_everything = report.basepoint_orbit_size == states;
  return report;
}

TowerSurjectivity surjectivity_verdict(const FiniteGroupTower& tower) {
  TowerSurjectivity v;
  for (std::size_t n = 0; n < tower.maps().size(); ++n) {
    std::vector<char> hit(tower.levels()[n].order(), 0);
    for (auto x : tower.maps()[n]) hit[x] = 1;
    if (std::find(hit.begin(), hit.end(), 0) != hit.end()) {
      v.surjective = false;
      v.failing_level = n;
      break;
    }
  }
  v.conclusion = v.surjective ? "single orbit" : "not surjective at level " + std::to_string(*v.failing_level);
  return v;
}

std::vector<Monomial> module_basis(const Presentation& p) {
  std::vector<int> weights;
  for (const auto& g : p.generators()) weights.push_back(g.filtration);
  std::vector<Monomial> out;
  for (long w = 0; w < p.truncation(); ++w)
    for (const auto& J : enumerate_Jj(weights, w)) {
      Monomial m;
      for (std::size_t i = 0; i < J.size(); ++i) m[i] = J[i];
      bool reducible = false;
      for (const auto& r : p.relations())
        if (r.leading.divides(m)) reducible = true;
      if (!reducible) out.push_back(m);
    }
  return out;
}

IntMatrix module_matrix(const FilteredMap& sigma, const std::vector<Monomial>& basis) {
  const auto& P = sigma.source();
  IntMatrix m;
  for (const auto& b : basis) {
    auto img = sigma.apply(TruncatedSeries::monomial(P, b));
    std::vector<mpz_class> row;
    for (const auto& c : basis) row.push_back(img.coefficient(c));
    m.push_back(std::move(row));
  }
  return m;
}

bool is_bijective_exhaustive(const FilteredMap& sigma, std::uint64_t budget) {
  budget = resolve_budget(budget);
  const auto& ring = sigma.source()->ring();
  if (!ring.is_finite()) throw InputError("exhaustive bijectivity needs a finite coefficient ring");
  const auto basis = module_basis(*sigma.source());
  const IntMatrix M = module_matrix(sigma, basis);
  const unsigned long q = ring.modulus().get_ui();
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    size *= q;
    if (size > budget) throw BudgetExceeded("truncated module has more than " + std::to_string(budget) + " elements");
  }
  const std::size_t dim = basis.size();
  std::vector<char> seen(size, 0);
  std::vector<unsigned long> coords(dim, 0);
  for (std::uint64_t x = 0; x < size; ++x) {
    std::uint64_t rest = x;
    for (std::size_t i = 0; i < dim; ++i) {
      coords[i] = rest % q;
      rest /= q;
    }
    std::uint64_t image = 0;
    for (std::size_t c = dim; c-- > 0;) {
      unsigned long long acc = 0;
      for (std::size_t r = 0; r < dim; ++r) {
        if (!coords[r]) continue;
        mpz_class e = M[r][c];
        ring.normalize(e);
        acc = (acc + static_cast<unsigned long long>(coords[r]) * e.get_ui()) % q;
      }
      image = image * q + acc;
    }
    if (seen[image]) return false;
    seen[image] = 1;
  }
  return true;
}

AutGroup aut_group_of_truncation(const PresentationPtr& p, std::uint64_t budget, Execution exec) {
  budget = resolve_budget(budget);
  const auto& ring = p->ring();
  if (!ring.is_finite()) throw InputError("automorphism groups are enumerated only over finite coefficient rings");
  const unsigned long q = ring.modulus().get_ui();
  const std::size_t n = p->generator_count();
  const auto basis = module_basis(*p);

  // Candidate monomials per generator image.
  std::vector<std::vector<Monomial>> slots(n);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& g = p->generators()[i];
    for (const auto& b : basis) {
      if (b.is_one()) continue;
      const bool ok = p->grading() == Grading::Graded ? p->degree(b) == g.degree : p->weight(b) >= g.filtration;
      if (ok) slots[i].push_back(b);
    }
    for (std::size_t k = 0; k < slots[i].size(); ++k) {
      total *= q;
      if (total > budget) throw BudgetExceeded("automorphism search space exceeds the budget of " + std::to_string(budget));
    }
  }

  auto build = [&](std::uint64_t code) -> std::optional<FilteredMap> {
    std::vector<TruncatedSeries> images;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Term> terms;
      for (const auto& m : slots[i]) {
        const unsigned long c = code % q;
        code /= q;
        if (c) terms.push_back({m, mpz_class(c)});
      }
      images.push_back(TruncatedSeries::from_terms(p, std::move(terms)));
    }
    try {
      FilteredMap sigma(p, std::move(images));
      mpz_class det = determinant(module_matrix(sigma, basis));
      ring.normalize(det);
      if (!ring.is_unit(det)) return std::nullopt;
      return sigma;
    } catch (const RelationViolation&) {
      return std::nullopt;
    } catch (const FiltrationViolation&) {
      return std::nullopt;
    }
  };

  std::vector<char> valid(total, 0);
  if (exec == Execution::Parallel) {
    const auto t = static_cast<std::int64_t>(total);
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t c = 0; c < t; ++c) valid[static_cast<std::uint64_t>(c)] = build(static_cast<std::uint64_t>(c)).has_value();
  } else {
    for (std::uint64_t c = 0; c < total; ++c) valid[c] = build(c).has_value();
  }

  AutGroup out{FiniteGroup::trivial(), {}};
  const auto id = FilteredMap::identity(p);
  out.elements.push_back(id);
  for (std::uint64_t c = 0; c < total; ++c) {
    if (!valid[c]) continue;
    auto sigma = *build(c);
    if (!(sigma == id)) out.elements.push_back(std::move(sigma));
  }
  std::map<std::string, std::uint32_t> index;
  std::vector<std::string> labels;
  for (std::uint32_t i = 0; i < out.elements.size(); ++i) {
    labels.push_back(key_of(out.elements[i]));
    index.emplace(labels.back(), i);
  }
  const std::size_t order = out.elements.size();
  if (order > kMaxGroupOrder) throw BudgetExceeded("automorphism group too large for a multiplication table");
  std::vector<std::vector<std::uint32_t>> table(order, std::vector<std::uint32_t>(order));
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b) {
      auto it = index.find(key_of(out.elements[a].after(out.elements[b])));
      if (it == index.end()) throw Error("automorphisms are not closed under composition");
      table[a][b] = it->second;
    }
  out.group = FiniteGroup::from_table(std::move(table), std::move(labels));
  return out;
}

FiniteGroupTower aut_tower(const PresentationPtr& p, const std::vector<int>& truncations, std::uint64_t budget) {
  if (truncations.empty()) throw InputError("aut tower needs at least one truncation");
  std::vector<AutGroup> auts;
  for (int t : truncations) auts.push_back(aut_group_of_truncation(p->with_truncation(t), budget));
  std::vector<GroupMap> maps;
  for (std::size_t n = 0; n + 1 < auts.size(); ++n) {
    if (truncations[n] >= truncations[n + 1]) throw InputError("truncations must increase");
    GroupMap f;
    for (const auto& sigma : auts[n + 1].elements) {
      auto r = auts[n].group.find(key_of(sigma.reduce_truncation(truncations[n])));
      if (!r) throw Error("reduction of an automorphism is not an automorphism");
      f.push_back(*r);
    }
    maps.push_back(std::move(f));
  }
  std::vector<FiniteGroup> levels;
  for (auto& a : auts) levels.push_back(std::move(a.group));
  return FiniteGroupTower(std::move(levels), std::move(maps));
}

}  // namespace lforge
