#pragma once

#include <string_view>

#include "selfred/formula.hpp"

namespace selfred {

/// Parses the infix grammar
///
///   formula := or ;  or := and ("|" and)* ;  and := unary ("&" unary)* ;
///   unary := "!" unary | atom ;  atom := "T" | "F" | VAR | "(" formula ")" ;
///   VAR := "x" [1-9][0-9]*
///
/// Whitespace is ignored between tokens. No simplification is applied.
/// Throws SyntaxError carrying the byte offset of the offending token.
Formula parse(std::string_view text);

/// Parses DIMACS CNF ("p cnf V C" header, `c` comment lines, clauses
/// terminated by 0) into an And of Or-of-literal clauses. An empty clause
/// is F; an empty clause list is T.
Formula parse_dimacs(std::string_view text);

}  // namespace selfred
