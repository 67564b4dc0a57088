#pragma once

#include <optional>
#include <vector>

#include "mutreach/vec.hh"

namespace mutreach {

class VectorBag {
 public:
  VectorBag(std::size_t dim, std::vector<IntVec> vectors);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return vectors_.size(); }
  const std::vector<IntVec>& vectors() const { return vectors_; }
  const IntVec& operator[](std::size_t j) const { return vectors_[j]; }
  const Int& norm() const { return norm_; }  // max entry magnitude
  IntVec sum() const;

 private:
  std::size_t dim_;
  std::vector<IntVec> vectors_;
  Int norm_ = 0;
};

using Permutation = std::vector<std::size_t>;  // position -> original index

enum class SteinitzMethod {
  Auto,           // greedy, then the constructive procedure if the greedy order fails
  Greedy,         // may fail the bound; returns nullopt then
  Constructive,   // shrinking-support vertex procedure
  BruteForce,     // all permutations, k <= 9
};

// For all n in {d..k}: |sum_{j<=n} z_sigma(j) - ((n-d)/k) z|_inf <= d m.
bool steinitz_bound_holds(const VectorBag& bag, const Permutation& p);

// For all n in {0..k} and i: sum_{j<=n} z_sigma(j)(i) >= min(z(i),0) - m d.
bool prefix_bound_holds(const VectorBag& bag, const Permutation& p);

std::optional<Permutation> steinitz_permutation(const VectorBag& bag,
                                                SteinitzMethod method = SteinitzMethod::Auto);

Permutation prefix_safe_reorder(const VectorBag& bag);

struct PruneResult {
  std::vector<std::size_t> kept;  // J, increasing
  // No nonempty zero-sum subset of J remains (exhaustively confirmed within budget).
  bool minimal = false;
  bool bound_met = false;  // |J| <= 2 |z|_1 (3dm)^d
  // z = 0 makes the bound 0 and forces J to be empty.
  bool zero_sum_edge_case = false;
};

// Removes nonempty zero-sum subsequences: first the contiguous zero runs
// exposed by a Steinitz ordering, then any remaining zero-sum subsets found
// by a dynamic program limited to `budget` partial sums per step.
PruneResult prune_zero_subsequences(const VectorBag& bag, std::size_t budget = 200000);

Int prune_bound(const VectorBag& bag);

}  // namespace mutreach
