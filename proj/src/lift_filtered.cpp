#include "lforge/lift_filtered.hpp"

#include <algorithm>
#include <functional>

#include "lforge/errors.hpp"

namespace lforge {

namespace {

void enumerate_rec(const std::vector<int>& w, std::size_t i, long rest, ExponentTuple& cur,
                   std::vector<ExponentTuple>& out) {
  if (i + 1 == w.size()) {
    if (rest % w[i] == 0) {
      cur[i] = static_cast<unsigned>(rest / w[i]);
      out.push_back(cur);
    }
    return;
  }
  for (long e = rest / w[i]; e >= 0; --e) {
    cur[i] = static_cast<unsigned>(e);
    enumerate_rec(w, i + 1, rest - e * w[i], cur, out);
  }
}

Monomial to_monomial(const ExponentTuple& t) {
  Monomial m;
  for (std::size_t i = 0; i < t.size(); ++i) m[i] = t[i];
  return m;
}

std::vector<int> generator_weights(const Presentation& p) {
  std::vector<int> w;
  for (const auto& g : p.generators()) w.push_back(g.filtration);
  return w;
}

mpz_class uniform(std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  return dist(rng);
}

mpz_class random_unit(const CoefficientRing& ring, std::mt19937_64& rng) {
  if (!ring.is_finite()) return (rng() & 1u) ? 1 : -1;
  const unsigned long m = ring.modulus().get_ui();
  std::uniform_int_distribution<unsigned long> dist(1, m - 1);
  while (true) {
    mpz_class v = dist(rng);
    if (ring.is_unit(v)) return v;
  }
}

}  // namespace

std::vector<ExponentTuple> enumerate_Jj(const std::vector<int>& weights, long j) {
  std::vector<ExponentTuple> out;
  if (weights.empty()) {
    if (j == 0) out.emplace_back();
    return out;
  }
  for (int d : weights)
    if (d < 1) throw InputError("weights must be positive");
  if (j < 0) return out;
  ExponentTuple cur(weights.size(), 0);
  enumerate_rec(weights, 0, j, cur, out);
  return out;
}

int lifting_bound(const Presentation& p) {
  int m = 0;
  for (const auto& g : p.generators()) m = std::max(m, g.filtration);
  return m + 1;
}

IntMatrix linear_block(const FilteredMap& sigma) {
  const auto& P = *sigma.source();
  const std::size_t n = P.generator_count();
  IntMatrix m(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (P.generators()[k].filtration != P.generators()[i].filtration) continue;
      Monomial ck;
      ck[k] = 1;
      m[i][k] = sigma.image(i).coefficient(ck);
    }
  return m;
}

AutomorphismCertificate certify_automorphism(const FilteredMap& sigma) {
  const PresentationPtr& P = sigma.source();
  const auto& ring = P->ring();
  const std::size_t n = P->generator_count();
  const IntMatrix L = linear_block(sigma);
  mpz_class det = determinant(L);
  ring.normalize(det);
  auto W = inverse(L, ring);
  if (!W) throw NotInvertible("linear block determinant " + det.get_str() + " is not a unit");

  std::vector<TruncatedSeries> gens, h;
  for (std::size_t i = 0; i < n; ++i) gens.push_back(TruncatedSeries::generator(P, i));
  for (std::size_t i = 0; i < n; ++i) {
    TruncatedSeries lin(P);
    for (std::size_t k = 0; k < n; ++k)
      if (L[i][k] != 0) lin += gens[k].scaled(L[i][k]);
    h.push_back(sigma.image(i) - lin);
  }
  auto apply_W = [&](const std::vector<TruncatedSeries>& v) {
    std::vector<TruncatedSeries> out;
    for (std::size_t i = 0; i < n; ++i) {
      TruncatedSeries acc(P);
      for (std::size_t k = 0; k < n; ++k)
        if ((*W)[i][k] != 0) acc += v[k].scaled((*W)[i][k]);
      out.push_back(std::move(acc));
    }
    return out;
  };

  std::vector<TruncatedSeries> T = apply_W(gens);
  const int max_iter = P->truncation() * static_cast<int>(n + 1) + 4;
  bool stable = false;
  for (int it = 0; it < max_iter && !stable; ++it) {
    FilteredMap tau(P, T);
    std::vector<TruncatedSeries> rhs;
    for (std::size_t k = 0; k < n; ++k) rhs.push_back(gens[k] - tau.apply(h[k]));
    auto next = apply_W(rhs);
    stable = next == T;
    T = std::move(next);
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!(sigma.apply(T[i]) == gens[i]))
      throw NotInvertible("fixed-point inverse did not converge for " + P->generators()[i].name);
  return AutomorphismCertificate{sigma, std::move(T), det};
}

std::vector<TruncatedSeries> correct_preimages(const FilteredMap& lifted, const std::vector<TruncatedSeries>& preimages,
                                               CorrectionData* data) {
  const PresentationPtr& P1 = lifted.source();
  const long j = P1->truncation() - 1;
  const std::size_t n = P1->generator_count();
  std::vector<TruncatedSeries> g;
  for (const auto& s : preimages) g.push_back(s.rebind(P1));
  const FilteredMap tau(P1, g);

  if (data) {
    data->level = j;
    data->index_set = enumerate_Jj(generator_weights(*P1), j);
    data->coefficients.assign(n, {});
  }
  std::vector<TruncatedSeries> out;
  for (std::size_t i = 0; i < n; ++i) {
    TruncatedSeries alpha = lifted.apply(g[i]) - TruncatedSeries::generator(P1, i);
    for (const auto& t : alpha.terms())
      if (P1->weight(t.monomial) != j)
        throw Error("preimage of " + P1->generators()[i].name + " is wrong below level " + std::to_string(j));
    if (data)
      for (const auto& J : data->index_set) data->coefficients[i].push_back(alpha.coefficient(to_monomial(J)));
    out.push_back(g[i] - tau.apply(alpha));
  }
  return out;
}

AutomorphismCertificate lift_automorphism(const AutomorphismCertificate& sigma, const FilteredMap& chosen,
                                          CorrectionData* data) {
  const auto& P = *sigma.map.source();
  if (!P.is_free()) throw InputError("filtered lifting needs a free presentation");
  const int j = P.truncation();
  const int N = lifting_bound(P);
  if (j <= N) throw LevelTooLow(j, N);
  if (chosen.source()->truncation() != j + 1 || !(chosen.reduce_truncation(j) == sigma.map))
    throw InputError("chosen map is not a lift of the automorphism to level " + std::to_string(j + 1));
  auto pre = correct_preimages(chosen, sigma.preimages, data);
  mpz_class det = determinant(linear_block(chosen));
  P.ring().normalize(det);
  if (!P.ring().is_unit(det)) throw NotInvertible("linear block determinant " + det.get_str() + " is not a unit");
  return AutomorphismCertificate{chosen, std::move(pre), det};
}

AutomorphismCertificate lift_automorphism(const AutomorphismCertificate& sigma, CorrectionData* data) {
  const auto& P = *sigma.map.source();
  const int N = lifting_bound(P);
  if (P.truncation() <= N) throw LevelTooLow(P.truncation(), N);
  return lift_automorphism(sigma, sigma.map.lift_truncation(P.truncation() + 1), data);
}

FilteredMap random_automorphism(const PresentationPtr& p, std::mt19937_64& rng, int bound) {
  const auto& ring = p->ring();
  const std::size_t n = p->generator_count();
  const auto weights = generator_weights(*p);

  // Invertible linear block per weight class: unit diagonal times elementary
  // row operations.
  IntMatrix M = identity_matrix(n);
  for (std::size_t i = 0; i < n; ++i) M[i][i] = random_unit(ring, rng);
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < n; ++i) {
    auto it = std::find_if(classes.begin(), classes.end(), [&](const auto& c) { return weights[c[0]] == weights[i]; });
    if (it == classes.end())
      classes.push_back({i});
    else
      it->push_back(i);
  }
  for (const auto& c : classes) {
    if (c.size() < 2) continue;
    for (std::size_t step = 0; step < 2 * c.size(); ++step) {
      const std::size_t a = c[rng() % c.size()], b = c[rng() % c.size()];
      if (a == b) continue;
      const mpz_class f = uniform(rng, 2);
      for (std::size_t k = 0; k < n; ++k) M[a][k] += f * M[b][k];
    }
  }

  std::vector<TruncatedSeries> images;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Term> terms;
    for (std::size_t k = 0; k < n; ++k) {
      if (M[i][k] == 0) continue;
      Monomial ck;
      ck[k] = 1;
      terms.push_back({ck, M[i][k]});
    }
    for (long w = weights[i]; w < p->truncation(); ++w)
      for (const auto& J : enumerate_Jj(weights, w)) {
        unsigned degree = 0;
        for (auto e : J) degree += e;
        if (degree == 1 && w == weights[i]) continue;
        terms.push_back({to_monomial(J), uniform(rng, bound)});
      }
    images.push_back(TruncatedSeries::from_terms(p, std::move(terms)));
  }
  return FilteredMap(p, std::move(images));
}

FilteredMap random_lift(const FilteredMap& sigma, std::mt19937_64& rng, int bound) {
  const auto& P = *sigma.source();
  const int j = P.truncation();
  auto P1 = P.with_truncation(j + 1);
  const auto weights = generator_weights(P);
  const auto J = enumerate_Jj(weights, j);
  std::vector<TruncatedSeries> images;
  for (std::size_t i = 0; i < P.generator_count(); ++i) {
    std::vector<Term> terms = sigma.image(i).terms();
    if (j >= weights[i])
      for (const auto& t : J) terms.push_back({to_monomial(t), uniform(rng, bound)});
    images.push_back(TruncatedSeries::from_terms(P1, std::move(terms)));
  }
  return FilteredMap(P1, std::move(images));
}

SurjectivityVerdict tower_surjectivity(const PresentationPtr& p, int lo, int hi, const HarnessOptions& options) {
  if (!p->is_free()) throw InputError("filtered tower harness needs a free presentation");
  const int N = lifting_bound(*p);
  if (lo <= N) throw LevelTooLow(lo, N);
  if (hi < lo) throw InputError("empty level range");
  const std::size_t levels = static_cast<std::size_t>(hi - lo + 1);
  const int trials = options.trials;

  struct TrialResult {
    std::vector<char> lifted, restriction, det;
    std::string failure;
  };
  std::vector<TrialResult> results(static_cast<std::size_t>(trials));

  auto run_trial = [&](int t) {
    TrialResult r;
    r.lifted.assign(levels, 0);
    r.restriction.assign(levels, 0);
    r.det.assign(levels, 0);
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(t)};
    std::mt19937_64 rng(seq);
    try {
      auto cert = certify_automorphism(random_automorphism(p->with_truncation(lo), rng, options.coefficient_bound));
      for (int j = lo; j <= hi; ++j) {
        const std::size_t idx = static_cast<std::size_t>(j - lo);
        auto chosen = random_lift(cert.map, rng, options.coefficient_bound);
        auto next = lift_automorphism(cert, chosen);
        r.restriction[idx] = next.map.reduce_truncation(j) == cert.map;
        r.det[idx] = next.map.source()->ring().is_unit(next.linear_determinant);
        bool hits = true;
        for (std::size_t i = 0; i < next.preimages.size() && hits; ++i)
          hits = next.map.apply(next.preimages[i]) == TruncatedSeries::generator(next.map.source(), i);
        r.lifted[idx] = hits;
        if (!hits && r.failure.empty()) r.failure = "preimage check failed at level " + std::to_string(j);
        cert = std::move(next);
      }
    } catch (const Error& e) {
      r.failure = e.what();
    }
    results[static_cast<std::size_t>(t)] = std::move(r);
  };

  if (options.exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < trials; ++t) run_trial(t);
  } else {
    for (int t = 0; t < trials; ++t) run_trial(t);
  }

  SurjectivityVerdict v;
  v.bound = N;
  v.surjective = true;
  for (std::size_t l = 0; l < levels; ++l) {
    LevelWitness w;
    w.level = lo + static_cast<int>(l);
    w.trials = trials;
    for (const auto& r : results) {
      w.lifted += r.lifted[l];
      w.restriction_ok += r.restriction[l];
      w.determinant_ok += r.det[l];
    }
    if (w.lifted != trials || w.restriction_ok != trials || w.determinant_ok != trials) v.surjective = false;
    v.levels.push_back(w);
  }
  for (int t = 0; t < trials; ++t)
    if (!results[static_cast<std::size_t>(t)].failure.empty() && v.failure.empty())
      v.failure = "trial " + std::to_string(t) + ": " + results[static_cast<std::size_t>(t)].failure;
  v.conclusion = v.surjective ? "SNT^ trivial (surjective tower)" : "no conclusion";
  return v;
}

}  // namespace lforge
