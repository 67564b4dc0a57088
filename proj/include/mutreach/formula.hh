#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mutreach/vec.hh"

namespace mutreach {

// Variable naming for printing: relations use x1..xd, y1..yd; sets use c1..cd.
enum class Environment { Relation, Set };

std::vector<std::string> variable_names(Environment env, std::size_t d);

enum class NodeKind { True, False, And, Or, Not, Implies, Compare, Div };
enum class CmpRel { Ge, Eq };

struct FormulaNode;

// Immutable quantifier-free Presburger formula.
class Formula {
 public:
  Formula();  // true

  static Formula top();
  static Formula bottom();
  static Formula conj(std::vector<Formula> parts);
  static Formula disj(std::vector<Formula> parts);
  static Formula negate(Formula f);
  static Formula implies(Formula lhs, Formula rhs);
  // coeffs . vars  rel  constant
  static Formula compare(IntVec coeffs, CmpRel rel, Int constant);
  // coeffs . vars == constant (mod modulus), modulus >= 1
  static Formula divides(Int modulus, IntVec coeffs, Int constant);
  // vars[i] >= z
  static Formula at_least(std::size_t nvars, std::size_t i, Int z);

  NodeKind kind() const;
  const std::vector<Formula>& children() const;
  const IntVec& coeffs() const;
  const Int& constant() const;
  CmpRel rel() const;
  const Int& modulus() const;

  bool eval(const IntVec& vars) const;

  std::size_t atom_count() const;
  // Largest |constant| over comparison atoms.
  Int max_constant() const;
  // Every atom is a single-variable comparison with coefficient 1.
  bool is_threshold() const;

  bool operator==(const Formula& o) const;

 private:
  explicit Formula(std::shared_ptr<const FormulaNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const FormulaNode> node_;
};

struct FormulaNode {
  NodeKind kind = NodeKind::True;
  std::vector<Formula> children;
  IntVec coeffs;
  Int constant = 0;
  CmpRel rel = CmpRel::Ge;
  Int modulus = 0;
};

// Affine map used for substitution: var = coeffs . new_vars + constant.
struct Affine {
  IntVec coeffs;
  Int constant = 0;
};

Formula substitute(const Formula& f, const std::vector<Affine>& map);

// A conjunction of per-variable intervals; unset ends are unbounded.
struct IntervalBox {
  std::vector<std::optional<Int>> lo, hi;
  bool empty() const;
  bool contains(const IntVec& x) const;
  bool operator==(const IntervalBox&) const = default;
};

// Disjunctive normal form of a threshold formula (or its negation) as boxes,
// with empty and subsumed boxes removed. Throws on non-threshold atoms.
std::vector<IntervalBox> threshold_dnf(const Formula& f, std::size_t nvars, bool negated);

// Infix rendering for humans.
std::string to_text(const Formula& f, const std::vector<std::string>& names);

// SMT-LIB 2 term.
std::string to_smtlib_term(const Formula& f, const std::vector<std::string>& names);

}  // namespace mutreach
