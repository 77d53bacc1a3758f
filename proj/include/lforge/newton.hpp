#pragma once

#include <map>
#include <vector>

#include "lforge/filtered_map.hpp"

namespace lforge {

inline constexpr int kDefaultExponentBound = 12;

/// lambda^i(g) for every generator g and 1 <= i <= bound. Entries beyond the
/// bound are absent rather than zero.
class LambdaFamily {
 public:
  /// entries[g][i - 1] is lambda^i of generator g; every row must have the
  /// same length and start with the generator itself.
  LambdaFamily(PresentationPtr p, std::vector<std::vector<TruncatedSeries>> entries);

  /// Family of line elements: lambda^i = 0 for i >= 2.
  static LambdaFamily lines(PresentationPtr p, int bound);

  const PresentationPtr& presentation() const noexcept { return pres_; }
  int bound() const noexcept { return bound_; }
  /// Throws MissingEntry outside 1..bound.
  const TruncatedSeries& at(std::size_t generator, int i) const;

  friend bool operator==(const LambdaFamily& a, const LambdaFamily& b);

 private:
  friend LambdaFamily lambda_family_from_adams(const class AdamsFamily&, int);
  LambdaFamily() = default;

  PresentationPtr pres_;
  int bound_ = 0;
  std::vector<std::vector<TruncatedSeries>> entries_;
};

/// Candidate Adams operations psi^k as ring endomorphisms.
class AdamsFamily {
 public:
  explicit AdamsFamily(PresentationPtr p);

  const PresentationPtr& presentation() const noexcept { return pres_; }

  /// Installs psi^k; psi^1 is installed as the identity at construction but
  /// may be overwritten (check_identity then detects it).
  void set(int k, FilteredMap map);
  void set_images(int k, std::vector<TruncatedSeries> images) { set(k, FilteredMap(pres_, std::move(images))); }
  bool has(int k) const { return ops_.count(k) != 0; }
  /// Throws MissingEntry when absent.
  const FilteredMap& at(int k) const;
  std::vector<int> indices() const;

  /// Fills every missing psi^k, k <= bound, as a composite of installed
  /// entries (psi^{ab} = psi^a after psi^b with a the least prime factor).
  void complete_composites(int bound);

  /// Same operations at a coarser truncation.
  AdamsFamily reduce_truncation(int j) const;

  friend bool operator==(const AdamsFamily& a, const AdamsFamily& b);

 private:
  PresentationPtr pres_;
  std::map<int, FilteredMap> ops_;
};

/// Solves the Newton formula for psi^k on generators from lambda^1..lambda^k
/// and the already known psi^1..psi^{k-1} in `known`.
FilteredMap psi_from_lambda(const LambdaFamily& L, int k, const AdamsFamily& known);

/// psi^1..psi^K from a lambda family of bound K.
AdamsFamily adams_from_lambda(const LambdaFamily& L, int bound);

/// lambda^k on generators by exact division by k. `known` must hold
/// lambda^1..lambda^{k-1}. Throws DivisibilityFailure or TorsionCoefficients.
std::vector<TruncatedSeries> lambda_from_psi(const AdamsFamily& A, int k, const LambdaFamily& known);

/// lambda^1..lambda^K from psi^1..psi^K.
LambdaFamily lambda_family_from_adams(const AdamsFamily& A, int bound);

}  // namespace lforge
