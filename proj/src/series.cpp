#include "lforge/series.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "lforge/detail/term_ops.hpp"
#include "lforge/errors.hpp"
#include "lforge/polynomial_io.hpp"

namespace lforge {

namespace {

// Dense accumulation is used when the mixed-radix box of possible product
// exponents is at most this large.
constexpr std::size_t kDenseLimit = std::size_t{1} << 16;

struct DenseScratch {
  std::vector<mpz_class> acc;
  std::vector<std::uint32_t> touched;
  std::vector<char> used;

  void ensure(std::size_t n) {
    if (acc.size() < n) {
      acc.resize(n);
      used.resize(n, 0);
    }
  }
};

DenseScratch& scratch() {
  thread_local DenseScratch s;
  return s;
}

}  // namespace

TruncatedSeries TruncatedSeries::constant(PresentationPtr p, const mpz_class& value) {
  std::vector<Term> t;
  t.push_back({Monomial{}, value});
  auto nf = p->normal_form(std::move(t));
  return TruncatedSeries(std::move(p), std::move(nf));
}

TruncatedSeries TruncatedSeries::generator(PresentationPtr p, std::size_t index) {
  if (index >= p->generator_count()) throw InputError("generator index out of range");
  Monomial m;
  m[index] = 1;
  return monomial(std::move(p), m, 1);
}

TruncatedSeries TruncatedSeries::monomial(PresentationPtr p, const Monomial& m, const mpz_class& coeff) {
  std::vector<Term> t;
  t.push_back({m, coeff});
  auto nf = p->normal_form(std::move(t));
  return TruncatedSeries(std::move(p), std::move(nf));
}

TruncatedSeries TruncatedSeries::from_terms(PresentationPtr p, std::vector<Term> terms) {
  auto nf = p->normal_form(std::move(terms));
  return TruncatedSeries(std::move(p), std::move(nf));
}

std::optional<long> TruncatedSeries::filtration() const {
  if (terms_.empty()) return std::nullopt;
  long best = pres_->weight(terms_.front().monomial);
  for (const auto& t : terms_) best = std::min(best, pres_->weight(t.monomial));
  return best;
}

mpz_class TruncatedSeries::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return t.monomial < key; });
  if (it != terms_.end() && it->monomial == m) return it->coeff;
  return 0;
}

bool TruncatedSeries::is_homogeneous(long degree) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const Term& t) { return pres_->degree(t.monomial) == degree; });
}

TruncatedSeries TruncatedSeries::reduce_truncation(int j) const {
  if (!pres_) return *this;
  if (j > pres_->truncation())
    throw TruncationError("cannot reduce truncation " + std::to_string(pres_->truncation()) + " to finer level " +
                          std::to_string(j));
  if (j == pres_->truncation()) return *this;
  auto p = pres_->with_truncation(j);
  std::vector<Term> kept;
  for (const auto& t : terms_)
    if (p->weight(t.monomial) < j) kept.push_back(t);
  return TruncatedSeries(std::move(p), std::move(kept));
}

TruncatedSeries TruncatedSeries::lift_truncation(int j) const {
  if (j < pres_->truncation())
    throw TruncationError("lift target " + std::to_string(j) + " is below the current truncation");
  if (j == pres_->truncation()) return *this;
  return TruncatedSeries(pres_->with_truncation(j), terms_);
}

TruncatedSeries TruncatedSeries::rebind(PresentationPtr p) const {
  if (!p->same_ring(*pres_)) throw PresentationMismatch();
  if (p->truncation() >= pres_->truncation()) return TruncatedSeries(std::move(p), terms_);
  return from_terms(std::move(p), terms_);
}

TruncatedSeries TruncatedSeries::component(long w) const {
  std::vector<Term> kept;
  for (const auto& t : terms_)
    if (pres_->weight(t.monomial) == w) kept.push_back(t);
  return TruncatedSeries(pres_, std::move(kept));
}

TruncatedSeries TruncatedSeries::scaled(const mpz_class& factor) const {
  std::vector<Term> out = terms_;
  for (auto& t : out) t.coeff *= factor;
  if (!pres_->ring().is_finite() && factor != 0) return TruncatedSeries(pres_, std::move(out));
  return from_terms(pres_, std::move(out));
}

std::optional<TruncatedSeries> TruncatedSeries::divided_exact(const mpz_class& divisor) const {
  if (pres_->ring().is_finite()) throw TorsionCoefficients();
  std::vector<Term> out = terms_;
  for (auto& t : out) {
    if (!mpz_divisible_p(t.coeff.get_mpz_t(), divisor.get_mpz_t())) return std::nullopt;
    mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), divisor.get_mpz_t());
  }
  return TruncatedSeries(pres_, std::move(out));
}

TruncatedSeries TruncatedSeries::pow(unsigned exponent) const {
  TruncatedSeries result = one(pres_);
  TruncatedSeries base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent) base = base * base;
  }
  return result;
}

void TruncatedSeries::require_same(const TruncatedSeries& other) const {
  if (pres_ == other.pres_) return;
  if (!pres_ || !other.pres_ || !(*pres_ == *other.pres_)) throw PresentationMismatch();
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& other) {
  if (!pres_) return *this = other;
  if (!other.pres_) return *this;
  require_same(other);
  terms_ = detail::add_terms(*pres_, terms_, other.terms_);
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& other) { return *this += -other; }

TruncatedSeries operator-(const TruncatedSeries& a) {
  std::vector<Term> out = a.terms_;
  for (auto& t : out) t.coeff = -t.coeff;
  if (a.pres_ && a.pres_->ring().is_finite()) return TruncatedSeries::from_terms(a.pres_, std::move(out));
  return TruncatedSeries(a.pres_, std::move(out));
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (!a.pres_ || !b.pres_) return a.terms_ == b.terms_;
  a.require_same(b);
  return a.terms_ == b.terms_;
}

namespace detail {

std::vector<Term> multiply_terms(const Presentation& P, const std::vector<Term>& fa, const std::vector<Term>& ga,
                                 long cap) {
  if (fa.empty() || ga.empty()) return {};
  const long trunc = std::min<long>(cap, P.truncation());
  const std::size_t slots = P.slot_count();

  // Order the second operand by weight so the inner loop can stop early.
  std::vector<long> wg(ga.size());
  std::vector<std::uint32_t> order(ga.size());
  for (std::size_t i = 0; i < wg.size(); ++i) wg[i] = P.weight(ga[i].monomial);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return wg[x] < wg[y]; });

  std::array<std::uint64_t, kMaxSlots> radix{};
  std::uint64_t box = 1;
  for (std::size_t s = 0; s < slots; ++s) {
    std::uint64_t mf = 0, mg = 0;
    for (const auto& t : fa) mf = std::max<std::uint64_t>(mf, t.monomial[s]);
    for (const auto& t : ga) mg = std::max<std::uint64_t>(mg, t.monomial[s]);
    std::uint64_t top = mf + mg;
    if (P.slot_weight(s) > 0 && trunc > 0)
      top = std::min<std::uint64_t>(top, static_cast<std::uint64_t>((trunc - 1) / P.slot_weight(s)));
    radix[s] = top + 1;
    box = box * radix[s];
    if (box > kDenseLimit) break;
  }

  std::vector<Term> raw;
  if (box <= kDenseLimit) {
    auto& sc = scratch();
    sc.ensure(box);
    sc.touched.clear();
    for (const auto& tf : fa) {
      const long wf = P.weight(tf.monomial);
      if (wf >= trunc) continue;
      for (auto gi : order) {
        if (wf + wg[gi] >= trunc) break;
        const auto& tg = ga[gi];
        std::uint64_t idx = 0;
        for (std::size_t s = slots; s-- > 0;) idx = idx * radix[s] + (tf.monomial[s] + tg.monomial[s]);
        if (!sc.used[idx]) {
          sc.used[idx] = 1;
          sc.touched.push_back(static_cast<std::uint32_t>(idx));
          mpz_mul(sc.acc[idx].get_mpz_t(), tf.coeff.get_mpz_t(), tg.coeff.get_mpz_t());
        } else {
          mpz_addmul(sc.acc[idx].get_mpz_t(), tf.coeff.get_mpz_t(), tg.coeff.get_mpz_t());
        }
      }
    }
    raw.reserve(sc.touched.size());
    for (auto idx : sc.touched) {
      sc.used[idx] = 0;
      if (sc.acc[idx] == 0) continue;
      Monomial m;
      std::uint64_t rest = idx;
      for (std::size_t s = 0; s < slots; ++s) {
        m[s] = static_cast<std::uint32_t>(rest % radix[s]);
        rest /= radix[s];
      }
      raw.push_back({m, std::move(sc.acc[idx])});
      sc.acc[idx] = 0;
    }
  } else {
    std::unordered_map<Monomial, mpz_class, MonomialHash> acc;
    for (const auto& tf : fa) {
      const long wf = P.weight(tf.monomial);
      for (auto gi : order) {
        if (wf + wg[gi] >= trunc) break;
        const auto& tg = ga[gi];
        auto& slot = acc[tf.monomial * tg.monomial];
        mpz_addmul(slot.get_mpz_t(), tf.coeff.get_mpz_t(), tg.coeff.get_mpz_t());
      }
    }
    raw.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (c != 0) raw.push_back({m, std::move(c)});
  }
  return P.normal_form(std::move(raw));
}

std::vector<Term> add_terms(const Presentation& P, const std::vector<Term>& x, const std::vector<Term>& y) {
  std::vector<Term> out;
  out.reserve(x.size() + y.size());
  auto a = x.begin(), ae = x.end();
  auto b = y.begin(), be = y.end();
  const auto& ring = P.ring();
  while (a != ae || b != be) {
    if (b == be || (a != ae && a->monomial < b->monomial)) {
      out.push_back(*a++);
    } else if (a == ae || b->monomial < a->monomial) {
      out.push_back(*b++);
    } else {
      mpz_class c = a->coeff + b->coeff;
      ring.normalize(c);
      if (c != 0) out.push_back({a->monomial, std::move(c)});
      ++a;
      ++b;
    }
  }
  return out;
}

}  // namespace detail

TruncatedSeries operator*(const TruncatedSeries& f, const TruncatedSeries& g) {
  if (!f.pres_ || !g.pres_) return f.pres_ ? TruncatedSeries(f.pres_) : TruncatedSeries(g.pres_);
  f.require_same(g);
  return TruncatedSeries(f.pres_, detail::multiply_terms(*f.pres_, f.terms_, g.terms_, f.pres_->truncation()));
}

TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g) { return f + g; }
TruncatedSeries mul(const TruncatedSeries& f, const TruncatedSeries& g) { return f * g; }

std::string TruncatedSeries::to_string() const {
  if (!pres_) return "0";
  return format_terms(*pres_, terms_);
}

}  // namespace lforge
