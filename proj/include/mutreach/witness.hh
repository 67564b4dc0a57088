#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mutreach/lattice.hh"
#include "mutreach/net.hh"
#include "mutreach/unfolding.hh"

namespace mutreach {

struct PumpingParams {
  Int state_bound = 4;         // B: unfolding states have norm < B
  std::size_t cycle_length = 4;  // l: pumping cycles have length <= l
  // tau: off-I threshold. Unset means m r^3 (3 d r m)^d for the unfolding
  // at hand, which is what the sufficiency argument needs.
  std::optional<Int> tau;
  std::size_t basis_budget = 200000;  // search nodes per upward basis
};

// m r^3 (3 d r m)^d.
Int certified_tau(std::size_t d, const Int& m, std::size_t r);

// tau in force for G under params.
Int effective_tau(const PumpingParams& params, const Unfolding& g);

// A verdict is certified when tau is at least certified_tau for G;
// l and B only matter for completeness.
bool certified_for(const PumpingParams& params, const Unfolding& g);

// Symbolic and, where small enough, exact completeness parameters for display.
struct CompletenessParameters {
  std::string b;        // (3dm)^((d+2)^(2d+1))
  std::string ell;      // d b^d
  std::string s;        // 2 m b^(3d) (3 d b^d m)^d
  std::string tau;      // m r^3 (3 d r m)^d as a function of r
  std::size_t b_decimal_digits = 0;
  std::optional<Int> b_exact;  // only when it has few digits
};

CompletenessParameters completeness_parameters(std::size_t d, const Int& m);

struct BasisElement {
  IntVec c;  // c_{u,v}
  UPath u;   // cycle on q: c^- -u-> c
  UPath v;   // cycle on q: c -v-> c^+
};

struct UpwardBasis {
  std::vector<BasisElement> elements;  // an antichain
  bool truncated = false;              // budget hit: the set is an under-approximation
};

// Minimal elements of the upward closure of {c_{u,v}} over cycles u, v on q
// of length at most params.cycle_length, with threshold tau.
UpwardBasis upward_basis(const Unfolding& g, std::size_t q, const PumpingParams& params,
                         const Int& tau);

// Index of a basis element below c, if any.
std::optional<std::size_t> membership_upward(const std::vector<BasisElement>& basis, const IntVec& c);
bool membership_upward(const std::vector<IntVec>& basis, const IntVec& c);

struct ConfigCertificate {
  Config config;
  std::size_t state = 0;
  BasisElement pumping;
};

struct PairCertificate {
  std::size_t from = 0, to = 0;  // indices into the configs
  UPath path;                    // elementary path between the states
  IntVec offset;                 // its displacement
};

struct MutualWitness {
  Unfolding unfolding;
  LatticeRepresentation lattice;
  Int tau;
  bool certified = false;
  std::vector<ConfigCertificate> configs;
  std::vector<PairCertificate> pairs;
};

struct WitnessCheck {
  std::optional<MutualWitness> witness;
  std::string reason;     // set when rejected
  bool structural = false;  // rejected for a reason independent of l and tau
};

WitnessCheck check_witness(const PetriNet& net, const std::vector<Config>& C, const Unfolding& g,
                           const PumpingParams& params);

// Direct re-validation of a certificate: G is a structurally reversible
// unfolding, pumping cycles fire with the recorded threshold, cosets hold.
bool revalidate_witness(const PetriNet& net, const MutualWitness& w, std::string* reason = nullptr);

std::string serialize_witness(const MutualWitness& w);
MutualWitness parse_witness(const PetriNet& net, const std::string& text);

enum class SearchStatus {
  Found,
  // No unfolding within B can host a witness, whatever l and tau are: no
  // structurally reversible unfolding holds both states or the coset fails.
  Exhausted,
  Inconclusive,  // some candidate failed only on the pumping condition
};

struct SearchResult {
  SearchStatus status = SearchStatus::Inconclusive;
  std::optional<MutualWitness> witness;
  std::vector<std::string> log;  // one line per rejected candidate
};

// Tries bounds B' = 1..B, index sets by cardinality then lexicographically,
// and the maximal structurally reversible unfolding holding both states.
SearchResult search_witness(const PetriNet& net, const Config& x, const Config& y,
                            const PumpingParams& params);

struct SynthesisResult {
  bool ok = false;
  Word word;
  std::string diagnostics;
  std::size_t blocked_step = 0;  // 1-based, when firing failed
  // Pieces of alpha pi theta beta, for reporting.
  std::size_t alpha_length = 0, pi_length = 0, theta_length = 0, beta_length = 0;
};

// A firing sequence from configs[from] to configs[to] built from the witness.
SynthesisResult synthesize_path(const PetriNet& net, const MutualWitness& w, std::size_t from,
                                std::size_t to);

struct ProbeReport {
  std::size_t checked = 0;
  std::vector<std::string> failures;
};

// Every exact SCCC of the box (forward closure never leaves it) is checked
// against its full-index-set unfolding.
ProbeReport completeness_probe(const PetriNet& net, const std::vector<unsigned long>& box);

}  // namespace mutreach
