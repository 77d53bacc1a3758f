#pragma once

#include <vector>

#include "lforge/presentation.hpp"

namespace lforge::detail {

/// Product of two normalized term lists keeping only monomials of weight
/// below `cap` (cap <= truncation); result is in normal form.
std::vector<Term> multiply_terms(const Presentation& p, const std::vector<Term>& a,
                                 const std::vector<Term>& b, long cap);

/// Sum of two normalized term lists.
std::vector<Term> add_terms(const Presentation& p, const std::vector<Term>& a, const std::vector<Term>& b);

}  // namespace lforge::detail
