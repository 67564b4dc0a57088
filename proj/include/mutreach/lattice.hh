#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mutreach/vec.hh"

namespace mutreach {

// One constraint a . x in nZ; n = 0 encodes a . x = 0.
struct LatticePair {
  Int n;
  IntVec a;
  bool operator==(const LatticePair&) const = default;
};

class LatticeRepresentation {
 public:
  LatticeRepresentation() = default;
  LatticeRepresentation(std::size_t dim, std::vector<LatticePair> pairs);

  std::size_t dim() const { return dim_; }
  const std::vector<LatticePair>& pairs() const { return pairs_; }
  const Int& norm() const { return norm_; }

  bool contains(const IntVec& x) const;

  // One line per pair: "n : a1 ... ad".
  std::string serialize() const;
  static LatticeRepresentation parse(std::istream& in, std::size_t dim);

  bool operator==(const LatticeRepresentation& o) const { return pairs_ == o.pairs_; }

 private:
  std::size_t dim_ = 0;
  std::vector<LatticePair> pairs_;
  Int norm_ = 0;
};

LatticeRepresentation representation_from_generators(const std::vector<IntVec>& gens,
                                                     std::size_t dim);

bool lattice_contains(const LatticeRepresentation& g, const IntVec& x);

// (d!)^2 m^d, floored at 1 so that the trivial lattice's identity rows fit.
Int representation_norm_bound(std::size_t dim, const Int& m);

struct LatticeCoset {
  IntVec offset;
  LatticeRepresentation rep;

  bool contains(const IntVec& w) const;
};

bool coset_contains(const LatticeCoset& c, const IntVec& w);

}  // namespace mutreach
