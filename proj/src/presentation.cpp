#include "lforge/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "lforge/errors.hpp"

namespace lforge {

namespace {

bool valid_identifier(const std::string& name) {
  if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_'))
    return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

}  // namespace

PresentationPtr Presentation::make(CoefficientRing ring, std::vector<Generator> generators,
                                   std::vector<std::vector<Term>> relations, int truncation,
                                   Grading grading) {
  if (generators.size() > kMaxGenerators)
    throw InputError("at most " + std::to_string(kMaxGenerators) + " generators are supported");
  if (truncation < 1) throw InputError("truncation must be a positive integer");

  std::shared_ptr<Presentation> p(new Presentation());
  p->ring_ = std::move(ring);
  p->truncation_ = truncation;
  p->grading_ = grading;

  std::set<std::string> names;
  for (const auto& g : generators) {
    if (!valid_identifier(g.name)) throw InputError("invalid generator name '" + g.name + "'");
    if (g.name == "xi" || g.name == "bR")
      throw InputError("generator name '" + g.name + "' is reserved for KOEven coefficients");
    if (!names.insert(g.name).second) throw InputError("duplicate generator name '" + g.name + "'");
    if (g.filtration < 1)
      throw InputError("generator '" + g.name + "' needs a positive filtration weight");
    if (grading == Grading::Graded && g.degree != g.filtration)
      throw InputError("graded generator '" + g.name + "' must have weight equal to its degree");
  }
  p->generators_ = std::move(generators);

  for (const auto& g : p->generators_) {
    p->weights_.push_back(g.filtration);
    p->degrees_.push_back(g.degree);
  }
  if (p->ring_.kind() == RingKind::KOEven) {
    p->weights_.insert(p->weights_.end(), {0, 0});
    p->degrees_.insert(p->degrees_.end(), {-4, -8});
  }

  for (auto& raw : relations) {
    std::map<Monomial, mpz_class> merged;
    for (auto& t : raw) {
      for (std::size_t s = p->slot_count(); s < kMaxSlots; ++s)
        if (t.monomial[s] != 0) throw InputError("relation uses an unknown slot");
      merged[t.monomial] += t.coeff;
    }
    Relation rel;
    for (auto& [m, c] : merged) {
      mpz_class v = c;
      p->ring_.normalize(v);
      if (v != 0) rel.terms.push_back({m, v});
    }
    if (rel.terms.empty()) continue;
    const long w0 = p->weight(rel.terms.front().monomial);
    const long d0 = p->degree(rel.terms.front().monomial);
    for (const auto& t : rel.terms) {
      if (p->weight(t.monomial) != w0 || p->degree(t.monomial) != d0)
        throw InputError("relations must be homogeneous in weight and degree");
    }
    auto lead = std::max_element(rel.terms.begin(), rel.terms.end(), [&](const Term& a, const Term& b) {
      return p->order_less(a.monomial, b.monomial);
    });
    rel.leading = lead->monomial;
    rel.leading_coeff = lead->coeff;
    if (rel.leading.is_one()) throw InputError("relation with a constant leading term collapses the ring");
    if (!p->ring_.is_unit(rel.leading_coeff))
      throw InputError("relation leading coefficient must be a unit");
    p->relations_.push_back(std::move(rel));
  }
  return p;
}

PresentationPtr Presentation::free(CoefficientRing ring, const std::vector<int>& weights, int truncation,
                                   Grading grading) {
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < weights.size(); ++i)
    gens.push_back({"c" + std::to_string(i + 1), weights[i], weights[i]});
  return make(std::move(ring), std::move(gens), {}, truncation, grading);
}

long Presentation::weight(const Monomial& m) const noexcept {
  long w = 0;
  for (std::size_t i = 0; i < weights_.size(); ++i) w += static_cast<long>(weights_[i]) * m[i];
  return w;
}

long Presentation::degree(const Monomial& m) const noexcept {
  long d = 0;
  for (std::size_t i = 0; i < degrees_.size(); ++i) d += static_cast<long>(degrees_[i]) * m[i];
  return d;
}

std::optional<std::size_t> Presentation::find_generator(const std::string& name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (generators_[i].name == name) return i;
  return std::nullopt;
}

std::string Presentation::slot_name(std::size_t slot) const {
  if (slot < generators_.size()) return generators_[slot].name;
  return slot == xi_slot() ? "xi" : "bR";
}

PresentationPtr Presentation::with_truncation(int truncation) const {
  if (truncation < 1) throw InputError("truncation must be a positive integer");
  std::shared_ptr<Presentation> p(new Presentation(*this));
  p->truncation_ = truncation;
  return p;
}

bool Presentation::same_ring(const Presentation& other) const {
  return ring_ == other.ring_ && generators_ == other.generators_ && relations_ == other.relations_ &&
         grading_ == other.grading_;
}

bool operator==(const Presentation& a, const Presentation& b) {
  return a.truncation_ == b.truncation_ && a.same_ring(b);
}

bool Presentation::order_less(const Monomial& a, const Monomial& b) const noexcept {
  const long wa = weight(a), wb = weight(b);
  if (wa != wb) return wa < wb;
  return a < b;
}

std::vector<Term> Presentation::normal_form(std::vector<Term> terms) const {
  const bool ko = ring_.kind() == RingKind::KOEven;
  if (ko) {
    const std::size_t xs = xi_slot(), bs = br_slot();
    for (auto& t : terms) {
      const std::uint32_t q = t.monomial[xs] / 2;
      if (q == 0) continue;
      t.monomial[xs] -= 2 * q;
      t.monomial[bs] += q;
      mpz_class four_q;
      mpz_ui_pow_ui(four_q.get_mpz_t(), 4, q);
      t.coeff *= four_q;
    }
  }

  if (!relations_.empty()) {
    // Reduce largest-first; replacements are smaller in the monomial order.
    auto cmp = [this](const Monomial& a, const Monomial& b) { return order_less(b, a); };
    std::map<Monomial, mpz_class, decltype(cmp)> work(cmp);
    for (auto& t : terms) {
      if (weight(t.monomial) >= truncation_) continue;
      work[t.monomial] += t.coeff;
    }
    std::vector<Term> done;
    while (!work.empty()) {
      auto it = work.begin();
      Monomial m = it->first;
      mpz_class c = std::move(it->second);
      work.erase(it);
      ring_.normalize(c);
      if (c == 0) continue;
      const Relation* hit = nullptr;
      for (const auto& r : relations_)
        if (r.leading.divides(m)) {
          hit = &r;
          break;
        }
      if (!hit) {
        done.push_back({m, std::move(c)});
        continue;
      }
      const Monomial shift = m.quotient(hit->leading);
      mpz_class factor = c;
      if (ring_.is_finite()) {
        factor *= ring_.inverse(hit->leading_coeff);
      } else {
        factor *= hit->leading_coeff;  // leading coefficient is +-1 over torsion-free rings
      }
      for (const auto& rt : hit->terms) {
        if (rt.monomial == hit->leading) continue;
        mpz_class delta = factor * rt.coeff;
        work[rt.monomial * shift] -= delta;
      }
    }
    terms = std::move(done);
  }

  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (weight(t.monomial) >= truncation_) continue;
    ring_.normalize(t.coeff);
    if (t.coeff == 0) continue;
    out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.monomial < b.monomial; });
  // Merge duplicates.
  std::vector<Term> merged;
  merged.reserve(out.size());
  for (auto& t : out) {
    if (!merged.empty() && merged.back().monomial == t.monomial) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::vector<Term> result;
  result.reserve(merged.size());
  for (auto& t : merged) {
    ring_.normalize(t.coeff);
    if (t.coeff != 0) result.push_back(std::move(t));
  }
  return result;
}

}  // namespace lforge
