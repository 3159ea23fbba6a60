#pragma once

#include <string>
#include <string_view>

#include "phase_space.hpp"
#include "symcore.hpp"

namespace canonsym {

// Expression grammar (the wire format for every expression field):
//
//   expr  := term (("+"|"-") term)*
//   term  := unary (("*"|"/") unary)*
//   unary := "-" unary | power
//   power := atom ("^" unary)?          right associative
//   atom  := NUMBER | IDENT | IDENT "(" expr ")" | "(" expr ")"
//
// NUMBER is decimal with optional fractional part and optional exponent,
// converted exactly to a rational. Identifiers resolve against the declared
// phase-space names plus the functions sin, cos, exp, log, sqrt. "^"
// requires an integer-constant exponent. Whitespace is insignificant.

/// Parses text against the grammar; diagnostics carry byte offsets.
ExprPtr parse(std::string_view text, const PhaseSpace& space);

/// Emits text that re-parses to a structurally identical tree, with minimal
/// but unambiguous parenthesization.
std::string render(const ExprPtr& e);

} // namespace canonsym
