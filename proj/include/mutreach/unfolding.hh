#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mutreach/lattice.hh"
#include "mutreach/net.hh"

namespace mutreach {

using IConfig = IntVec;  // entries indexed by position in the index set

struct Transition {
  std::size_t src = 0;
  std::size_t action = 0;
  std::size_t dst = 0;
  auto operator<=>(const Transition&) const = default;
};

// An I-unfolding. States are kept sorted lexicographically and transitions
// sorted; both refer to the net by pointer, which must outlive the unfolding.
class Unfolding {
 public:
  const PetriNet& net() const { return *net_; }
  const IndexSet& index_set() const { return index_set_; }
  const std::vector<IConfig>& states() const { return states_; }
  const std::vector<Transition>& transitions() const { return transitions_; }
  std::size_t num_states() const { return states_.size(); }

  std::optional<std::size_t> state_index(const IConfig& q) const;
  // Transition indices leaving each state, in increasing order.
  const std::vector<std::size_t>& out(std::size_t s) const { return out_[s]; }
  const IntVec& delta(std::size_t t) const { return net_->delta(transitions_[t].action); }

  bool full_index_set() const { return index_set_.size() == net_->dim(); }

 private:
  friend struct UnfoldingBuilder;
  const PetriNet* net_ = nullptr;
  IndexSet index_set_;
  std::vector<IConfig> states_;
  std::vector<Transition> transitions_;
  std::vector<std::vector<std::size_t>> out_;
};

struct UnfoldingCheck {
  std::optional<Unfolding> unfolding;
  std::string reason;  // set when rejected
};

// Canonicalizes (sorts, deduplicates) and validates a candidate graph.
UnfoldingCheck validate_unfolding(const PetriNet& net, const IndexSet& I,
                                  const std::vector<IConfig>& states,
                                  const std::vector<Transition>& transitions);

// Like validate_unfolding but throws std::invalid_argument on rejection.
Unfolding make_unfolding(const PetriNet& net, const IndexSet& I,
                         const std::vector<IConfig>& states,
                         const std::vector<Transition>& transitions);

struct UPath {
  std::size_t start = 0;
  std::vector<std::size_t> steps;  // transition indices
};

std::size_t path_end(const Unfolding& g, const UPath& p);
Word path_word(const Unfolding& g, const UPath& p);
IntVec path_displacement(const Unfolding& g, const UPath& p);
bool path_valid(const Unfolding& g, const UPath& p);
bool path_is_cycle(const Unfolding& g, const UPath& p);
bool path_full_state(const Unfolding& g, const UPath& p);
UPath concat(const Unfolding& g, const UPath& a, const UPath& b);
// Rotation of a cycle so that it starts at `state`; nullopt if not visited.
std::optional<UPath> rotate_cycle(const Unfolding& g, const UPath& c, std::size_t state);

struct ReversibilityResult {
  bool reversible = false;
  RatVec flow;  // strictly positive per transition when reversible
};

ReversibilityResult is_structurally_reversible(const Unfolding& g);

// Direct check of the definition: for every transition t = (p,a,q) some path
// from q to p cancels its displacement, searched with entries clamped to
// [-clamp, clamp].
bool definitionally_reversible(const Unfolding& g, const Int& clamp);

struct CycleList {
  std::vector<UPath> cycles;
  bool truncated = false;
};

// Each simple cycle exactly once, rooted at its least state.
CycleList simple_cycles(const Unfolding& g, std::size_t cap);

struct UnfoldingLattice {
  LatticeRepresentation rep;
  // True when the simple-cycle enumeration hit its cap and the generators
  // were taken from a spanning tree instead (same lattice).
  bool used_tree_generators = false;
};

UnfoldingLattice lattice_of_unfolding(const Unfolding& g, std::size_t cycle_cap = 20000);

// Generators of L_G from a spanning tree: pot(u) + delta(t) - pot(v).
std::vector<IntVec> tree_cycle_generators(const Unfolding& g);

// First path from p to q in breadth-first order over increasing transition indices.
UPath elementary_path(const Unfolding& g, std::size_t p, std::size_t q);

LatticeCoset coset_between(const Unfolding& g, const LatticeRepresentation& lg, std::size_t p,
                           std::size_t q);

std::optional<UPath> reverse_path_for(const Unfolding& g, std::size_t t, const Int& bound);

struct ZeroCycleResult {
  std::optional<UPath> cycle;
  std::string diagnostics;
};

ZeroCycleResult zero_full_state_cycle(const Unfolding& g, std::size_t anchor);

UPath embed_simple_cycle(const Unfolding& g, const UPath& zero_cycle, const UPath& simple,
                         std::size_t anchor);

UnfoldingCheck unfolding_from_sccc(const PetriNet& net, const std::vector<Config>& C,
                                   const IndexSet& I);

// All I-configurations of norm < B, lexicographic.
std::vector<IConfig> small_iconfigs(std::size_t k, const Int& B);

// Index sets ordered by cardinality, then lexicographically.
std::vector<IndexSet> canonical_index_sets(std::size_t d);

struct EnumerationLimits {
  std::size_t max_transitions = 20;  // subsets of at most 2^this many
  std::size_t max_results = 100000;
};

struct UnfoldingStream {
  std::vector<Unfolding> unfoldings;
  bool truncated = false;
};

// Every valid (strongly connected) unfolding over states of norm < B,
// reversible or not.
UnfoldingStream enumerate_candidate_unfoldings(const PetriNet& net, const IndexSet& I,
                                               const Int& B, const EnumerationLimits& lim);

// The structurally reversible ones among the above.
UnfoldingStream enumerate_unfoldings(const PetriNet& net, const IndexSet& I, const Int& B,
                                     const EnumerationLimits& lim);

// The maximal structurally reversible unfoldings over states of norm < B.
// They partition the states and every structurally reversible unfolding over
// those states is a subgraph of exactly one of them.
std::vector<Unfolding> maximal_unfoldings(const PetriNet& net, const IndexSet& I, const Int& B);

// Forward-closed structurally reversible unfoldings over states of norm < B:
// bottom components of the I-successor graph that never leave the bound.
std::vector<Unfolding> forward_closed_unfoldings(const PetriNet& net, const IndexSet& I,
                                                 const Int& B);

std::string to_dot(const Unfolding& g);

}  // namespace mutreach
