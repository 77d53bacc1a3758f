#include "lforge/graded_snt.hpp"

#include <algorithm>
#include <random>

#include "lforge/errors.hpp"
#include "lforge/int_matrix.hpp"
#include "lforge/lift_filtered.hpp"
#include "lforge/polynomial_io.hpp"
#include "lforge/tower.hpp"

namespace lforge {

GradedPresentation::GradedPresentation(CoefficientRing ring, std::vector<std::pair<std::string, int>> generators,
                                       std::vector<std::string> relations, std::optional<int> n_override) {
  if (!(ring.kind() == RingKind::Integers || ring.kind() == RingKind::PrimeField))
    throw InputError("graded presentations need the integers or a prime field as coefficients");
  std::vector<Generator> gens;
  int top = 0;
  for (auto& [name, d] : generators) {
    gens.push_back({name, d, d});
    top = std::max(top, d);
  }
  // Parse relations against a relation-free presentation first.
  auto scratch = Presentation::make(ring, gens, {}, 1, Grading::Graded);
  std::vector<std::vector<Term>> rels;
  for (const auto& r : relations) {
    auto terms = parse_polynomial_terms(*scratch, r);
    for (const auto& t : terms)
      if (!t.monomial.is_one()) top = std::max<long>(top, scratch->degree(t.monomial));
    rels.push_back(std::move(terms));
  }
  computed_n_ = top + 1;
  n_ = computed_n_;
  if (n_override) {
    if (*n_override < computed_n_)
      throw InputError("N may only be raised; computed N = " + std::to_string(computed_n_));
    n_ = *n_override;
  }
  base_ = Presentation::make(std::move(ring), std::move(gens), std::move(rels), n_ + 1, Grading::Graded);
}

PresentationPtr GradedPresentation::at_level(int j) const {
  if (j < 0) throw InputError("graded level must be nonnegative");
  return base_->with_truncation(j + 1);
}

GradedTruncation truncate_graded(const GradedPresentation& P, int j) {
  GradedTruncation out{P.at_level(j), {}};
  for (const auto& m : module_basis(*out.presentation)) ++out.ranks[out.presentation->degree(m)];
  return out;
}

GradedLift lift_graded_automorphism(const FilteredMap& sigma, const GradedPresentation& P) {
  const int j = sigma.source()->truncation() - 1;
  if (j <= P.bound()) throw LevelTooLow(j, P.bound());
  if (!sigma.source()->same_ring(*P.base())) throw PresentationMismatch();
  // Generator images live in degrees below N, so the lift keeps them; the
  // constructor re-checks that every relation maps to zero at level j + 1.
  FilteredMap lifted = sigma.lift_truncation(j + 2);
  GradedLift out{lifted, determinant(linear_block(lifted)), true};
  for (const auto& r : lifted.source()->relations())
    if (!lifted.apply_terms(r.terms).is_zero()) throw RelationViolation("relation image is nonzero after lifting");
  const auto& ring = lifted.source()->ring();
  ring.normalize(out.linear_determinant);
  if (!ring.is_unit(out.linear_determinant))
    throw NotInvertible("linear block determinant " + out.linear_determinant.get_str() + " is not a unit");
  return out;
}

FilteredMap random_graded_automorphism(const GradedPresentation& P, int j, std::uint64_t seed, int bound) {
  auto p = P.at_level(j);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(j)};
  std::mt19937_64 rng(seq);
  const auto basis = module_basis(*p);
  const auto& ring = p->ring();
  std::uniform_int_distribution<int> coeff(-bound, bound);
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<TruncatedSeries> images;
    for (std::size_t i = 0; i < p->generator_count(); ++i) {
      std::vector<Term> terms;
      for (const auto& m : basis)
        if (!m.is_one() && p->degree(m) == p->generators()[i].degree) terms.push_back({m, coeff(rng)});
      images.push_back(TruncatedSeries::from_terms(p, std::move(terms)));
    }
    try {
      FilteredMap sigma(p, std::move(images));
      mpz_class det = determinant(linear_block(sigma));
      ring.normalize(det);
      if (!ring.is_unit(det)) continue;
      if (!ring.is_finite()) {
        mpz_class full = determinant(module_matrix(sigma, basis));
        if (!ring.is_unit(full)) continue;
      }
      return sigma;
    } catch (const RelationViolation&) {
    }
  }
  // Unit scalings of single generators often survive homogeneous relations.
  for (int attempt = 0; attempt < 16; ++attempt) {
    std::vector<TruncatedSeries> images;
    for (std::size_t i = 0; i < p->generator_count(); ++i)
      images.push_back(TruncatedSeries::generator(p, i).scaled((rng() & 1u) ? 1 : -1));
    try {
      return FilteredMap(p, std::move(images));
    } catch (const RelationViolation&) {
    }
  }
  return FilteredMap::identity(p);
}

GradedVerdict graded_tower_verdict(const GradedPresentation& P, int lo, int hi, const GradedHarnessOptions& options) {
  if (lo <= P.bound()) throw LevelTooLow(lo, P.bound());
  if (hi < lo) throw InputError("empty level range");
  const std::size_t levels = static_cast<std::size_t>(hi - lo + 1);
  struct Trial {
    std::vector<char> lifted, restriction, relations, det;
    std::string failure;
  };
  std::vector<Trial> trials(static_cast<std::size_t>(options.trials));
  auto run = [&](int t) {
    Trial r;
    r.lifted.assign(levels, 0);
    r.restriction.assign(levels, 0);
    r.relations.assign(levels, 0);
    r.det.assign(levels, 0);
    try {
      FilteredMap sigma =
          random_graded_automorphism(P, lo, options.seed + static_cast<std::uint64_t>(t) * 0x9e3779b97f4a7c15ULL,
                                     options.coefficient_bound);
      for (int j = lo; j <= hi; ++j) {
        const std::size_t idx = static_cast<std::size_t>(j - lo);
        auto lift = lift_graded_automorphism(sigma, P);
        r.lifted[idx] = 1;
        r.relations[idx] = lift.relations_vanish;
        r.restriction[idx] = lift.map.reduce_truncation(j + 1) == sigma;
        r.det[idx] = lift.map.source()->ring().is_unit(lift.linear_determinant);
        sigma = lift.map;
      }
    } catch (const Error& e) {
      r.failure = e.what();
    }
    trials[static_cast<std::size_t>(t)] = std::move(r);
  };
  if (options.exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < options.trials; ++t) run(t);
  } else {
    for (int t = 0; t < options.trials; ++t) run(t);
  }

  GradedVerdict v;
  v.bound = P.bound();
  v.surjective = true;
  for (std::size_t l = 0; l < levels; ++l) {
    GradedLevelWitness w;
    w.level = lo + static_cast<int>(l);
    w.trials = options.trials;
    for (const auto& r : trials) {
      w.lifted += r.lifted[l];
      w.restriction_ok += r.restriction[l];
      w.relations_ok += r.relations[l];
      w.determinant_ok += r.det[l];
    }
    if (P.ring().is_finite() && options.exhaustive_budget) {
      try {
        auto tower = aut_tower(P.base(), {w.level + 1, w.level + 2}, options.exhaustive_budget);
        w.exhaustive_surjective = surjectivity_verdict(tower).surjective;
      } catch (const BudgetExceeded&) {
      }
    }
    const int t = options.trials;
    if (w.lifted != t || w.restriction_ok != t || w.relations_ok != t || w.determinant_ok != t ||
        w.exhaustive_surjective == false)
      v.surjective = false;
    v.levels.push_back(w);
  }
  for (int t = 0; t < options.trials; ++t)
    if (!trials[static_cast<std::size_t>(t)].failure.empty() && v.failure.empty())
      v.failure = "trial " + std::to_string(t) + ": " + trials[static_cast<std::size_t>(t)].failure;
  v.conclusion = v.surjective ? "SNT trivial (surjective tower)" : "no conclusion";
  return v;
}

}  // namespace lforge
