#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mutreach/formula.hh"
#include "mutreach/lattice.hh"
#include "mutreach/net.hh"
#include "mutreach/witness.hh"

namespace mutreach {

// x|_I = a|_I, x >= a off I, y likewise with b, and y - x - v in gamma.
struct MutualDisjunct {
  IndexSet I;
  IntVec a, b, v;
  LatticeRepresentation gamma;
  bool certified = false;  // built with tau at least certified_tau

  bool holds(const Config& x, const Config& y) const;
  // Canonical order: I by size then lexicographically, a, b, v, gamma.
  bool operator<(const MutualDisjunct& o) const;
  bool operator==(const MutualDisjunct& o) const;
};

struct MutualFormula {
  std::size_t dim = 0;
  std::vector<MutualDisjunct> disjuncts;  // sorted, no duplicates
  bool certified = false;  // every disjunct certified
  bool complete = true;    // no budget or basis truncation
};

struct CompileParams {
  PumpingParams pumping;
  std::size_t workers = 1;
  std::size_t max_disjuncts = 2000000;
};

MutualFormula compile_mutual(const PetriNet& net, const CompileParams& params);

bool eval_mutual(const MutualFormula& f, const Config& x, const Config& y);

// The same relation as one formula over x1..xd, y1..yd.
Formula to_formula(const MutualFormula& f);
Formula disjunct_formula(const MutualDisjunct& dj, std::size_t d);

struct BottomTuple {
  IndexSet I;
  IConfig r;
  LatticeRepresentation gamma;
  std::vector<IntVec> entry;   // minimal elements of U_{r,G}: c must dominate one
  std::vector<IntVec> offsets; // v_p per state of G, elementary paths from r
  Formula phi;                 // threshold formula over x1..xd
  bool certified = false;
};

struct BottomFormula {
  std::size_t dim = 0;
  std::vector<BottomTuple> tuples;  // sorted by (I, r)
  bool certified = false;
  bool complete = true;
};

BottomFormula compile_bottom(const PetriNet& net, const CompileParams& params);

enum class Tri { True, False, Inconclusive };
std::string to_string(Tri t);

enum class EvalMethod { Exact, Enumerate };

struct EvalOptions {
  EvalMethod method = EvalMethod::Exact;
  Int radius = 6;             // enumeration radius in the infinity norm
  std::size_t node_limit = 200000;  // branch-and-bound nodes per box
};

Tri eval_bottom(const BottomFormula& f, const Config& c, const EvalOptions& opts = {});
Tri eval_bottom_tuple(const BottomTuple& t, const Config& c, const EvalOptions& opts = {});

// Some v in the lattice with c + v inside the box; nullopt when the search
// gave up.
std::optional<bool> lattice_meets_box(const LatticeRepresentation& gamma, const IntVec& c,
                                      const IntervalBox& box, std::size_t node_limit);

// A basis (as columns) of the lattice a representation denotes.
std::vector<IntVec> representation_basis(const LatticeRepresentation& gamma);

// forall x: AND_a  phi(c,x) & x >= a- => phi(c, x + delta(a)).
struct BottomWrapper {
  std::size_t dim = 0;
  std::vector<Config> pre;
  std::vector<IntVec> delta;
  MutualFormula mutual;
};

BottomWrapper bottom_wrapper(const PetriNet& net, const MutualFormula& mutual);

// Instantiates x over [0, radius]^d only; a heuristic check.
bool eval_wrapper_bounded(const BottomWrapper& w, const Config& c, unsigned long radius);

std::string to_smtlib(const MutualFormula& f);
std::string to_smtlib(const BottomWrapper& w);
// The bottom formula's lattice quantifiers are expanded over the lattice
// basis: forall t, phi(c + B t).
std::string to_smtlib(const BottomFormula& f);
std::string to_smtlib(const Formula& f, const std::vector<std::string>& names);

}  // namespace mutreach
