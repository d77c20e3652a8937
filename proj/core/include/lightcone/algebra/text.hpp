#pragma once

#include <string>
#include <string_view>

#include "lightcone/algebra/operator_expr.hpp"

namespace lightcone::algebra {

// Plain-text form of an expression, e.g.
//
//   i*Omega*sy[A] - 2*i*dA*g[1]*ph[A,1]^-1*sz[A]*ad[-1]
//
// Grammar (whitespace ignored):
//   expr    := ["+"|"-"] term { ("+"|"-") term }  |  "0"
//   term    := factor { "*" factor }
//   factor  := atom [ "^" ["-"] integer ]
//   atom    := integer [ "/" integer ] | "i" | "1"
//            | "Omega" | "dA" | "dB" | "g[" int "]" | "w[" int "]"
//            | "ph[" site "," int "]" | "S[" int "]"
//            | ("sx"|"sy"|"sz"|"sp"|"sm") "[" site "]"
//            | "a[" int "]" | "ad[" int "]" | "E[" site ["," int] "]"
//   site    := "A" | "B"
//
// Operator factors multiply in the order written and the result is
// canonicalized. Only ph[...] accepts a negative power.
std::string to_string(const OperatorExpr& expr);

// Throws ArgumentError with the offending column on malformed input.
OperatorExpr parse_expr(std::string_view text);

}  // namespace lightcone::algebra
