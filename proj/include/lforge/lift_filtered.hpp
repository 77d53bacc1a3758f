#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lforge/execution.hpp"
#include "lforge/filtered_map.hpp"
#include "lforge/int_matrix.hpp"

namespace lforge {

using ExponentTuple = std::vector<unsigned>;

/// All tuples (i_1..i_n) with sum d_l * i_l == j, in lexicographically
/// descending order (largest i_1 first).
std::vector<ExponentTuple> enumerate_Jj(const std::vector<int>& weights, long j);

/// N = max d_i + 1, the least integer strictly above every generator weight.
int lifting_bound(const Presentation& p);

/// Coefficients of same-weight generators in the generator images: row i
/// holds the coefficient of c_k in sigma(c_i) when d_k == d_i, zero otherwise.
IntMatrix linear_block(const FilteredMap& sigma);

/// A filtered automorphism with preimages of the generators
/// (sigma(preimages[i]) == c_i) and its linear-block determinant.
struct AutomorphismCertificate {
  FilteredMap map;
  std::vector<TruncatedSeries> preimages;
  mpz_class linear_determinant;

  int level() const { return map.source()->truncation(); }
  /// The inverse map c_i -> preimages[i].
  FilteredMap inverse() const { return FilteredMap(map.source(), preimages); }
};

/// Record of one correction step: for each generator, the filtration-j
/// discrepancy expanded over J_j.
struct CorrectionData {
  long level = 0;
  std::vector<ExponentTuple> index_set;
  std::vector<std::vector<mpz_class>> coefficients;  // [generator][index in index_set]
};

/// Certifies bijectivity: the linear block must be invertible over the ring,
/// and the generator preimages are computed by the fixed point
/// T = W (c - h(T)) with W the inverse linear block and h the rest of sigma.
/// Throws NotInvertible.
AutomorphismCertificate certify_automorphism(const FilteredMap& sigma);

/// Given a lift sigma_hat to level j+1 of an automorphism at level j and the
/// level-j preimages g_i, returns g_i - sum a_J g^J where
/// sigma_hat(g_i) - c_i = sum a_J c^J over J_j.
std::vector<TruncatedSeries> correct_preimages(const FilteredMap& lifted, const std::vector<TruncatedSeries>& preimages,
                                               CorrectionData* data = nullptr);

/// Canonical lift (same image data) from level j to j+1 with corrected
/// preimages. Requires a free presentation and j > N; throws LevelTooLow.
AutomorphismCertificate lift_automorphism(const AutomorphismCertificate& sigma, CorrectionData* data = nullptr);

/// Same, with an arbitrary caller-chosen lift; `chosen` must reduce to sigma.
AutomorphismCertificate lift_automorphism(const AutomorphismCertificate& sigma, const FilteredMap& chosen,
                                          CorrectionData* data = nullptr);

/// Random automorphism at the presentation's truncation: invertible linear
/// block and higher coefficients uniform in [-bound, bound].
FilteredMap random_automorphism(const PresentationPtr& p, std::mt19937_64& rng, int bound = 9);

/// Random lift of sigma to truncation j+1: adds uniform weight-j terms.
FilteredMap random_lift(const FilteredMap& sigma, std::mt19937_64& rng, int bound = 9);

struct LevelWitness {
  int level = 0;
  int trials = 0;
  int lifted = 0;            // lift succeeded and hit every generator
  int restriction_ok = 0;    // reduce(lift) == sigma exactly
  int determinant_ok = 0;    // linear block determinant is a unit
  friend bool operator==(const LevelWitness&, const LevelWitness&) = default;
};

struct SurjectivityVerdict {
  bool surjective = false;
  int bound = 0;
  std::vector<LevelWitness> levels;
  std::string conclusion;  // "SNT^ trivial (surjective tower)" on success
  std::string failure;
  friend bool operator==(const SurjectivityVerdict&, const SurjectivityVerdict&) = default;
};

struct HarnessOptions {
  int trials = 50;
  std::uint64_t seed = 0x5eedULL;
  int coefficient_bound = 9;
  Execution exec = Execution::Parallel;
};

/// Lifts `trials` random automorphisms through every level in [lo, hi]; each
/// trial starts from a random automorphism at level lo and continues with a
/// random lift, so every level sees a fresh random automorphism.
SurjectivityVerdict tower_surjectivity(const PresentationPtr& p, int lo, int hi, const HarnessOptions& options = {});

}  // namespace lforge
