#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lforge/series.hpp"

namespace lforge {

/// Parses the polynomial grammar
///
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := atom ('^' integer)?
///   atom   := integer | identifier | '(' expr ')' | '-' factor
///
/// Identifiers are generator names, plus `xi` and `bR` for KOEven
/// coefficients. Whitespace is ignored. The result is not truncated, so it
/// can represent relations whose monomials lie above the truncation.
/// Errors carry the 1-based line and column inside `text`. Juxtaposition
/// such as `6v^2` is read as a product. A positive `cap` discards monomials
/// of weight >= cap while parsing.
std::vector<Term> parse_polynomial_terms(const Presentation& p, std::string_view text, long cap = 0);

TruncatedSeries parse_series(const PresentationPtr& p, std::string_view text);

/// Canonical printer: terms by descending filtration, then descending
/// exponent vector; coefficients as reduced representatives.
std::string format_terms(const Presentation& p, const std::vector<Term>& terms);

inline std::string format_series(const TruncatedSeries& f) {
  return format_terms(*f.presentation(), f.terms());
}

}  // namespace lforge
