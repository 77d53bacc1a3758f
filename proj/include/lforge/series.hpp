#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lforge/presentation.hpp"

namespace lforge {

class FilteredMap;

/// Element of R / I^j for a presentation R with truncation j.
///
/// Terms are kept sorted by exponent vector with nonzero, reduced
/// coefficients in relation normal form, so equality is term-list equality.
/// Values are immutable in spirit; every operation returns a new series.
class TruncatedSeries {
 public:
  /// Detached zero without a presentation; only useful as a placeholder.
  TruncatedSeries() = default;
  explicit TruncatedSeries(PresentationPtr presentation) : pres_(std::move(presentation)) {}

  static TruncatedSeries zero(PresentationPtr p) { return TruncatedSeries(std::move(p)); }
  static TruncatedSeries constant(PresentationPtr p, const mpz_class& value);
  static TruncatedSeries one(PresentationPtr p) { return constant(std::move(p), 1); }
  static TruncatedSeries generator(PresentationPtr p, std::size_t index);
  static TruncatedSeries monomial(PresentationPtr p, const Monomial& m, const mpz_class& coeff = 1);
  static TruncatedSeries from_terms(PresentationPtr p, std::vector<Term> terms);

  const PresentationPtr& presentation() const noexcept { return pres_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Minimal weighted filtration of a stored monomial; nullopt is infinity.
  std::optional<long> filtration() const;
  mpz_class coefficient(const Monomial& m) const;

  bool is_homogeneous(long degree) const;

  /// Image in the coarser quotient R / I^j.
  TruncatedSeries reduce_truncation(int j) const;
  /// Same terms read in the finer quotient R / I^j (the canonical lift).
  TruncatedSeries lift_truncation(int j) const;
  /// Moves the series to an equal-ring presentation object.
  TruncatedSeries rebind(PresentationPtr p) const;

  /// Terms of weighted filtration exactly w.
  TruncatedSeries component(long w) const;

  TruncatedSeries scaled(const mpz_class& factor) const;
  /// Exact division of every integer coefficient; nullopt if some coefficient
  /// is not divisible.
  std::optional<TruncatedSeries> divided_exact(const mpz_class& divisor) const;
  TruncatedSeries pow(unsigned exponent) const;

  TruncatedSeries& operator+=(const TruncatedSeries& other);
  TruncatedSeries& operator-=(const TruncatedSeries& other);

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator-(const TruncatedSeries& a);
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

  std::string to_string() const;

 private:
  friend class FilteredMap;

  TruncatedSeries(PresentationPtr p, std::vector<Term> normalized)
      : pres_(std::move(p)), terms_(std::move(normalized)) {}

  void require_same(const TruncatedSeries& other) const;

  PresentationPtr pres_;
  std::vector<Term> terms_;
};

TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g);
TruncatedSeries mul(const TruncatedSeries& f, const TruncatedSeries& g);

/// Minimal filtration, with nullopt for the zero series.
inline std::optional<long> filtration_of(const TruncatedSeries& f) { return f.filtration(); }

inline TruncatedSeries reduce_truncation(const TruncatedSeries& f, int j) {
  return f.reduce_truncation(j);
}

}  // namespace lforge
