#include "lforge/newton.hpp"

#include "lforge/errors.hpp"

namespace lforge {

namespace {

void require_torsion_free(const Presentation& p) {
  if (!p.ring().torsion_free()) throw TorsionCoefficients();
}

int least_prime_factor(int k) {
  for (int d = 2; d * d <= k; ++d)
    if (k % d == 0) return d;
  return k;
}

}  // namespace

LambdaFamily::LambdaFamily(PresentationPtr p, std::vector<std::vector<TruncatedSeries>> entries)
    : pres_(std::move(p)), entries_(std::move(entries)) {
  if (entries_.size() != pres_->generator_count())
    throw InputError("lambda family needs one row per generator");
  bound_ = entries_.empty() ? 0 : static_cast<int>(entries_.front().size());
  for (std::size_t g = 0; g < entries_.size(); ++g) {
    auto& row = entries_[g];
    if (static_cast<int>(row.size()) != bound_) throw InputError("lambda rows must share one bound");
    for (auto& e : row) e = e.presentation() ? e.rebind(pres_) : TruncatedSeries(pres_);
    if (bound_ >= 1 && !(row.front() == TruncatedSeries::generator(pres_, g)))
      throw InputError("lambda^1 of " + pres_->generators()[g].name + " must be the generator itself");
  }
}

LambdaFamily LambdaFamily::lines(PresentationPtr p, int bound) {
  std::vector<std::vector<TruncatedSeries>> rows;
  for (std::size_t g = 0; g < p->generator_count(); ++g) {
    std::vector<TruncatedSeries> row;
    for (int i = 1; i <= bound; ++i)
      row.push_back(i == 1 ? TruncatedSeries::generator(p, g) : TruncatedSeries::zero(p));
    rows.push_back(std::move(row));
  }
  return LambdaFamily(std::move(p), std::move(rows));
}

const TruncatedSeries& LambdaFamily::at(std::size_t generator, int i) const {
  if (i < 1 || i > bound_ || generator >= entries_.size())
    throw MissingEntry("lambda^" + std::to_string(i) + " is not available (bound " + std::to_string(bound_) + ")");
  return entries_[generator][static_cast<std::size_t>(i - 1)];
}

bool operator==(const LambdaFamily& a, const LambdaFamily& b) {
  return a.bound_ == b.bound_ && *a.pres_ == *b.pres_ && a.entries_ == b.entries_;
}

AdamsFamily::AdamsFamily(PresentationPtr p) : pres_(std::move(p)) {
  ops_.emplace(1, FilteredMap::identity(pres_));
}

void AdamsFamily::set(int k, FilteredMap map) {
  if (k < 1) throw InputError("Adams operations are indexed by k >= 1");
  if (!(*map.source() == *pres_)) throw PresentationMismatch();
  ops_.insert_or_assign(k, std::move(map));
}

const FilteredMap& AdamsFamily::at(int k) const {
  auto it = ops_.find(k);
  if (it == ops_.end()) throw MissingEntry("psi^" + std::to_string(k) + " is not available");
  return it->second;
}

std::vector<int> AdamsFamily::indices() const {
  std::vector<int> out;
  for (const auto& [k, m] : ops_) out.push_back(k);
  return out;
}

void AdamsFamily::complete_composites(int bound) {
  for (int k = 2; k <= bound; ++k) {
    if (has(k)) continue;
    const int a = least_prime_factor(k);
    if (a == k) throw MissingEntry("psi^" + std::to_string(k) + " is prime and must be supplied");
    set(k, at(a).after(at(k / a)));
  }
}

AdamsFamily AdamsFamily::reduce_truncation(int j) const {
  AdamsFamily out(pres_->with_truncation(j));
  for (const auto& [k, m] : ops_) {
    auto r = m.reduce_truncation(j);
    out.ops_.insert_or_assign(k, FilteredMap(out.pres_, r.images()));
  }
  return out;
}

bool operator==(const AdamsFamily& a, const AdamsFamily& b) {
  return *a.pres_ == *b.pres_ && a.ops_ == b.ops_;
}

FilteredMap psi_from_lambda(const LambdaFamily& L, int k, const AdamsFamily& known) {
  const auto& P = L.presentation();
  if (k < 1) throw InputError("k must be positive");
  if (k == 1) return FilteredMap::identity(P);
  std::vector<TruncatedSeries> images;
  for (std::size_t g = 0; g < P->generator_count(); ++g) {
    TruncatedSeries acc = L.at(g, k).scaled((k % 2 == 1) ? k : -k);
    for (int i = 1; i < k; ++i) {
      TruncatedSeries term = L.at(g, i) * known.at(k - i).image(g);
      if (i % 2 == 1)
        acc += term;
      else
        acc -= term;
    }
    images.push_back(std::move(acc));
  }
  return FilteredMap(P, std::move(images));
}

AdamsFamily adams_from_lambda(const LambdaFamily& L, int bound) {
  AdamsFamily A(L.presentation());
  for (int k = 2; k <= bound; ++k) A.set(k, psi_from_lambda(L, k, A));
  return A;
}

std::vector<TruncatedSeries> lambda_from_psi(const AdamsFamily& A, int k, const LambdaFamily& known) {
  const auto& P = A.presentation();
  require_torsion_free(*P);
  std::vector<TruncatedSeries> out;
  for (std::size_t g = 0; g < P->generator_count(); ++g) {
    if (k == 1) {
      out.push_back(TruncatedSeries::generator(P, g));
      continue;
    }
    TruncatedSeries sum = A.at(k).image(g);
    for (int i = 1; i < k; ++i) {
      TruncatedSeries term = known.at(g, i) * A.at(k - i).image(g);
      if (i % 2 == 1)
        sum -= term;
      else
        sum += term;
    }
    auto q = sum.divided_exact(k);
    if (!q) throw DivisibilityFailure(k, P->generators()[g].name);
    out.push_back(k % 2 == 1 ? *q : -*q);
  }
  return out;
}

LambdaFamily lambda_family_from_adams(const AdamsFamily& A, int bound) {
  const auto& P = A.presentation();
  require_torsion_free(*P);
  LambdaFamily L;
  L.pres_ = P;
  L.entries_.assign(P->generator_count(), {});
  for (int k = 1; k <= bound; ++k) {
    L.bound_ = k - 1;
    auto row = lambda_from_psi(A, k, L);
    for (std::size_t g = 0; g < row.size(); ++g) L.entries_[g].push_back(std::move(row[g]));
  }
  L.bound_ = bound;
  return L;
}

}  // namespace lforge
