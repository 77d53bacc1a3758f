#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lforge/coefficient_ring.hpp"
#include "lforge/monomial.hpp"

namespace lforge {

struct Generator {
  std::string name;
  int filtration = 1;  // weight d_i, >= 1
  int degree = 0;      // cohomological degree

  friend bool operator==(const Generator&, const Generator&) = default;
};

enum class Grading {
  Filtered,  // truncation discards filtration >= j
  Graded     // maps must be homogeneous; weights equal degrees
};

/// A relation, with its leading term under the weighted lex order.
struct Relation {
  std::vector<Term> terms;
  Monomial leading;
  mpz_class leading_coeff;

  friend bool operator==(const Relation& a, const Relation& b) { return a.terms == b.terms; }
};

class Presentation;
using PresentationPtr = std::shared_ptr<const Presentation>;

/// Generators with weights and degrees, optional relations, and a truncation
/// level j. Elements live in R / I^j where I^j is spanned by monomials of
/// weighted filtration >= j.
///
/// Relations must be homogeneous for both the weight and the degree grading
/// and have a unit leading coefficient; reduction rewrites the leading
/// monomial. Normal forms are canonical when the relations are monomials or
/// form a Groebner basis for the weighted lex order.
class Presentation {
 public:
  static PresentationPtr make(CoefficientRing ring, std::vector<Generator> generators,
                              std::vector<std::vector<Term>> relations, int truncation,
                              Grading grading = Grading::Filtered);

  /// Free presentation over the integers with unnamed-style generators c1..cn.
  static PresentationPtr free(CoefficientRing ring, const std::vector<int>& weights, int truncation,
                              Grading grading = Grading::Filtered);

  const CoefficientRing& ring() const noexcept { return ring_; }
  const std::vector<Generator>& generators() const noexcept { return generators_; }
  std::size_t generator_count() const noexcept { return generators_.size(); }
  std::size_t slot_count() const noexcept { return generators_.size() + ring_.symbol_count(); }
  int truncation() const noexcept { return truncation_; }
  Grading grading() const noexcept { return grading_; }
  bool is_free() const noexcept { return relations_.empty(); }
  const std::vector<Relation>& relations() const noexcept { return relations_; }

  /// Slot index of the KOEven symbols (xi, bR); only valid for KOEven.
  std::size_t xi_slot() const noexcept { return generators_.size(); }
  std::size_t br_slot() const noexcept { return generators_.size() + 1; }

  int slot_weight(std::size_t slot) const noexcept { return weights_[slot]; }
  int slot_degree(std::size_t slot) const noexcept { return degrees_[slot]; }
  long weight(const Monomial& m) const noexcept;
  long degree(const Monomial& m) const noexcept;

  std::optional<std::size_t> find_generator(const std::string& name) const;
  /// Name of a generator or coefficient symbol slot.
  std::string slot_name(std::size_t slot) const;

  PresentationPtr with_truncation(int truncation) const;

  /// Same ring data, possibly different truncation.
  bool same_ring(const Presentation& other) const;

  /// Weighted lex order used for leading terms: weight first, then exponents.
  bool order_less(const Monomial& a, const Monomial& b) const noexcept;

  /// Reduces coefficients, applies xi^2 -> 4 bR and the relations, drops
  /// monomials at or above the truncation and zero coefficients, and sorts.
  std::vector<Term> normal_form(std::vector<Term> terms) const;

  friend bool operator==(const Presentation& a, const Presentation& b);

 private:
  Presentation() = default;

  CoefficientRing ring_ = CoefficientRing::integers();
  std::vector<Generator> generators_;
  std::vector<Relation> relations_;
  int truncation_ = 1;
  Grading grading_ = Grading::Filtered;
  std::vector<int> weights_;
  std::vector<int> degrees_;
};

}  // namespace lforge
