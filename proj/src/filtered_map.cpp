#include "lforge/filtered_map.hpp"

#include <algorithm>
#include <map>

#include "lforge/detail/term_ops.hpp"
#include "lforge/errors.hpp"
#include "lforge/polynomial_io.hpp"

namespace lforge {

namespace {

// Evaluates a polynomial at generator images by grouping on the highest
// generator first. Each group is evaluated with the weight budget left after
// its power of that generator, so intermediate products never carry terms
// that the truncation would discard anyway.
class Evaluator {
 public:
  Evaluator(const Presentation& p, const std::vector<TruncatedSeries>& images) : p_(p), images_(images) {
    powers_.resize(images.size());
  }

  std::vector<Term> eval(std::vector<Term> terms) {
    const std::size_t n = p_.generator_count();
    // Split off coefficient symbols, which map to themselves.
    std::map<Monomial, std::vector<Term>> by_symbol;
    for (auto& t : terms) {
      Monomial sym;
      for (std::size_t s = n; s < p_.slot_count(); ++s) {
        sym[s] = t.monomial[s];
        t.monomial[s] = 0;
      }
      by_symbol[sym].push_back(std::move(t));
    }
    std::vector<Term> total;
    for (auto& [sym, group] : by_symbol) {
      auto part = eval_group(std::move(group), static_cast<long>(n) - 1, p_.truncation());
      if (!sym.is_one()) {
        for (auto& t : part) t.monomial = t.monomial * sym;
        part = p_.normal_form(std::move(part));
      }
      total = detail::add_terms(p_, total, part);
    }
    return total;
  }

 private:
  const std::vector<Term>& power(std::size_t var, std::uint32_t e) {
    auto& cache = powers_[var];
    if (cache.empty()) cache.push_back(p_.normal_form({Term{Monomial{}, 1}}));
    while (cache.size() <= e)
      cache.push_back(detail::multiply_terms(p_, cache.back(), images_[var].terms(), p_.truncation()));
    return cache[e];
  }

  std::vector<Term> eval_group(std::vector<Term> terms, long var, long cap) {
    if (cap <= 0 || terms.empty()) return {};
    if (var < 0) {
      mpz_class c = 0;
      for (const auto& t : terms) c += t.coeff;
      return p_.normal_form({Term{Monomial{}, c}});
    }
    const auto v = static_cast<std::size_t>(var);
    const long d = p_.slot_weight(v);
    std::map<std::uint32_t, std::vector<Term>> buckets;
    for (auto& t : terms) {
      const std::uint32_t e = t.monomial[v];
      if (static_cast<long>(e) * d >= cap) continue;
      t.monomial[v] = 0;
      buckets[e].push_back(std::move(t));
    }
    std::vector<Term> out;
    for (auto& [e, group] : buckets) {
      const long sub_cap = cap - static_cast<long>(e) * d;
      auto inner = eval_group(std::move(group), var - 1, sub_cap);
      if (inner.empty()) continue;
      if (e == 0) {
        out = detail::add_terms(p_, out, inner);
      } else {
        out = detail::add_terms(p_, out, detail::multiply_terms(p_, power(v, e), inner, cap));
      }
    }
    return out;
  }

  const Presentation& p_;
  const std::vector<TruncatedSeries>& images_;
  std::vector<std::vector<std::vector<Term>>> powers_;
};

}  // namespace

FilteredMap::FilteredMap(PresentationPtr source, std::vector<TruncatedSeries> images, bool)
    : source_(source), target_(std::move(source)), images_(std::move(images)) {}

FilteredMap::FilteredMap(PresentationPtr source, std::vector<TruncatedSeries> images)
    : source_(source), target_(source) {
  const Presentation& P = *source_;
  if (images.size() != P.generator_count())
    throw InputError("map needs " + std::to_string(P.generator_count()) + " generator images, got " +
                     std::to_string(images.size()));
  images_.reserve(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    auto& img = images[i];
    TruncatedSeries bound = img.presentation() ? img.rebind(source_) : TruncatedSeries(source_);
    const auto& g = P.generators()[i];
    auto f = bound.filtration();
    if (f && *f < g.filtration)
      throw FiltrationViolation("image of " + g.name + " has filtration " + std::to_string(*f) +
                                " below the generator weight " + std::to_string(g.filtration));
    if (P.grading() == Grading::Graded && !bound.is_homogeneous(g.degree))
      throw FiltrationViolation("image of " + g.name + " is not homogeneous of degree " +
                                std::to_string(g.degree));
    images_.push_back(std::move(bound));
  }
  for (std::size_t r = 0; r < P.relations().size(); ++r) {
    auto image = apply_terms(P.relations()[r].terms);
    if (!image.is_zero())
      throw RelationViolation("relation " + format_terms(P, P.relations()[r].terms) + " maps to " +
                              image.to_string() + " instead of 0");
  }
}

FilteredMap FilteredMap::identity(PresentationPtr p) {
  std::vector<TruncatedSeries> images;
  for (std::size_t i = 0; i < p->generator_count(); ++i) images.push_back(TruncatedSeries::generator(p, i));
  return FilteredMap(std::move(p), std::move(images), true);
}

TruncatedSeries FilteredMap::apply_terms(const std::vector<Term>& terms) const {
  Evaluator ev(*target_, images_);
  return TruncatedSeries(target_, ev.eval(terms));
}

TruncatedSeries FilteredMap::apply(const TruncatedSeries& f) const {
  if (!f.presentation()) return TruncatedSeries(target_);
  if (f.presentation() != source_ && !(*f.presentation() == *source_)) throw PresentationMismatch();
  return apply_terms(f.terms());
}

FilteredMap FilteredMap::after(const FilteredMap& inner) const {
  if (inner.target_ != source_ && !(*inner.target_ == *source_)) throw PresentationMismatch();
  Evaluator ev(*target_, images_);
  std::vector<TruncatedSeries> out;
  out.reserve(images_.size());
  for (const auto& img : inner.images_) out.push_back(TruncatedSeries(target_, ev.eval(img.terms())));
  return FilteredMap(inner.source_, std::move(out), true);
}

FilteredMap FilteredMap::reduce_truncation(int j) const {
  if (j > source_->truncation())
    throw TruncationError("cannot reduce a map at truncation " + std::to_string(source_->truncation()) +
                          " to " + std::to_string(j));
  auto p = source_->with_truncation(j);
  std::vector<TruncatedSeries> out;
  out.reserve(images_.size());
  for (const auto& img : images_) out.push_back(img.rebind(p));
  return FilteredMap(std::move(p), std::move(out), true);
}

FilteredMap FilteredMap::lift_truncation(int j) const {
  if (j < source_->truncation())
    throw TruncationError("lift target " + std::to_string(j) + " is below the current truncation");
  auto p = source_->with_truncation(j);
  std::vector<TruncatedSeries> out;
  out.reserve(images_.size());
  for (const auto& img : images_) out.push_back(img.rebind(p));
  // Relations are only known to vanish below the old truncation.
  return FilteredMap(std::move(p), std::move(out));
}

bool FilteredMap::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (!(images_[i] == TruncatedSeries::generator(source_, i))) return false;
  return true;
}

bool operator==(const FilteredMap& a, const FilteredMap& b) {
  if (!(*a.source_ == *b.source_) || a.images_.size() != b.images_.size()) return false;
  for (std::size_t i = 0; i < a.images_.size(); ++i)
    if (a.images_[i].terms() != b.images_[i].terms()) return false;
  return true;
}

std::string FilteredMap::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) out += ", ";
    out += source_->generators()[i].name + " -> " + images_[i].to_string();
  }
  return out;
}

}  // namespace lforge
