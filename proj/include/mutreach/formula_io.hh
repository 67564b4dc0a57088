#pragma once

#include <string>
#include <variant>

#include "mutreach/presburger.hh"

namespace mutreach {

// S-expression text format. Grammar (indices 1-based, ';' starts a comment):
//
//   mutual  := (mutual-formula (dim d) (certified 0|1) (complete 0|1) disjunct*)
//   disjunct:= (disjunct (I i*) (a n*) (b n*) (v n*) gamma (certified 0|1))
//   bottom  := (bottom-formula (dim d) (certified 0|1) (complete 0|1) tuple*)
//   tuple   := (tuple (I i*) (r n*) gamma (entry (n*)*) (offsets (n*)*)
//               (certified 0|1) (phi F))
//   gamma   := (gamma (pair n a1 .. ad)*)
//   F       := true | false | (and F*) | (or F*) | (not F) | (=> F F)
//            | (>= (k1 .. kn) c) | (= (k1 .. kn) c) | (mod n (k1 .. kn) c)
std::string write_formula(const MutualFormula& f);
std::string write_formula(const BottomFormula& f);
std::string write_qfp(const Formula& f);

using AnyFormula = std::variant<MutualFormula, BottomFormula>;

struct formula_parse_error : std::runtime_error {
  explicit formula_parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

AnyFormula read_formula(const std::string& text);
Formula read_qfp(const std::string& text, std::size_t nvars);

// Integers that fit in 64 bits are JSON numbers, larger ones decimal strings.
std::string to_json(const MutualFormula& f);
std::string to_json(const BottomFormula& f);

}  // namespace mutreach
