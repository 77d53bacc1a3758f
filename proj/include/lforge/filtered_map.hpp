#pragma once

#include <string>
#include <vector>

#include "lforge/series.hpp"

namespace lforge {

/// Ring map given by generator images. Coefficient symbols are fixed.
///
/// Construction checks the filtered condition (image of a weight-d generator
/// has filtration >= d), homogeneity for graded presentations, and that every
/// relation of the source maps to zero in the target.
class FilteredMap {
 public:
  FilteredMap(PresentationPtr source, std::vector<TruncatedSeries> images);

  static FilteredMap identity(PresentationPtr p);

  const PresentationPtr& source() const noexcept { return source_; }
  const PresentationPtr& target() const noexcept { return target_; }
  const std::vector<TruncatedSeries>& images() const noexcept { return images_; }
  const TruncatedSeries& image(std::size_t i) const { return images_.at(i); }

  TruncatedSeries apply(const TruncatedSeries& f) const;
  /// Evaluates raw terms (not truncated in the source) at the images.
  TruncatedSeries apply_terms(const std::vector<Term>& terms) const;

  /// (*this) after inner: generator i goes to this->apply(inner.image(i)).
  FilteredMap after(const FilteredMap& inner) const;

  FilteredMap reduce_truncation(int j) const;
  /// Canonical lift: same image data read at the finer truncation j.
  FilteredMap lift_truncation(int j) const;

  bool is_identity() const;

  friend bool operator==(const FilteredMap& a, const FilteredMap& b);

  std::string to_string() const;

 private:
  FilteredMap(PresentationPtr source, std::vector<TruncatedSeries> images, bool);

  PresentationPtr source_;
  PresentationPtr target_;
  std::vector<TruncatedSeries> images_;
};

inline TruncatedSeries substitute(const TruncatedSeries& f, const FilteredMap& images) {
  return images.apply(f);
}

}  // namespace lforge
