#pragma once

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "lforge/coefficient_ring.hpp"

namespace lforge {

using IntMatrix = std::vector<std::vector<mpz_class>>;

IntMatrix identity_matrix(std::size_t n);

/// Fraction-free Bareiss elimination over the integers.
mpz_class determinant(IntMatrix m);

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b, const CoefficientRing& ring);

/// Inverse over the given ring via the adjugate; nullopt unless the
/// determinant is a unit of the ring.
std::optional<IntMatrix> inverse(const IntMatrix& m, const CoefficientRing& ring);

}  // namespace lforge
