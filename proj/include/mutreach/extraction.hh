#pragma once

#include <vector>

#include "mutreach/net.hh"

namespace mutreach {

// Thresholds lambda_0 <= ... <= lambda_{d+1}, all positive.
class Extractor {
 public:
  explicit Extractor(std::vector<Int> thresholds);

  std::size_t dim() const { return thresholds_.size() - 2; }
  const Int& operator[](std::size_t n) const { return thresholds_.at(n); }
  const std::vector<Int>& thresholds() const { return thresholds_; }

  // lambda_{n+1} >= lambda_n + m lambda_n^n for every n in {0..d}.
  bool m_adapted(const Int& m) const;

 private:
  std::vector<Int> thresholds_;
};

// lambda_0 = 1, lambda_{n+1} = m sum_{j=1}^n lambda_j^j + m lambda_n^{3n} (3 d lambda_n^n m)^d.
Extractor exact_lambda(std::size_t d, const Int& m);

// The least m-adapted extractor with the given lambda_0:
// lambda_{n+1} = lambda_n + m lambda_n^n.
Extractor minimal_adapted_extractor(std::size_t d, const Int& m, const Int& lambda0 = 1);

// Whether lambda_d <= (3dm)^((d+2)^(2d+1)), decided without materializing the
// power whenever bit lengths already separate the two sides.
bool lambda_bound_holds(const Extractor& lambda, const Int& m);

// The maximal J subset of I with c(j) < lambda_{|J|} for all j in J, c in C.
IndexSet maximal_small_set(const Extractor& lambda, const IndexSet& I, const std::vector<Config>& C);

// Left fold of single-configuration extraction along e, starting from I.
IndexSet extract_along_word(const Extractor& lambda, const IndexSet& I, const std::vector<Config>& e);

// Extraction after every prefix: result[n] is the value on e_0 .. e_{n-1}.
std::vector<IndexSet> extraction_prefixes(const Extractor& lambda, const IndexSet& I,
                                          const std::vector<Config>& e);

class Execution {
 public:
  // Fires `word` from `source`; throws std::invalid_argument if a step is blocked.
  Execution(const PetriNet& net, Config source, Word word);

  const std::vector<Config>& configs() const { return configs_; }
  const Word& word() const { return word_; }
  const Config& source() const { return configs_.front(); }
  const Config& target() const { return configs_.back(); }

 private:
  std::vector<Config> configs_;
  Word word_;
};

struct RackoffResult {
  Word word;
  Config final_config;
  IndexSet I;                     // extraction of the full index set along e
  std::vector<std::size_t> kept;  // 1-based step indices of e that survive, increasing
  Int length_bound;               // d lambda_d^d
  Int lower_bound_j0;             // lambda_{|I|+1} - m sum_{j=0}^{|I|} lambda_j^j
  Int lower_bound_j1;             // lambda_{|I|+1} - m sum_{j=1}^{|I|} lambda_j^j
  bool meets_j0 = false;          // off-I coordinates of final_config meet the j=0 form
  bool meets_j1 = false;          // ... and the j=1 form
};

// Removes I-cycles from e level by level: the leftmost repeated configuration
// in the all-small prefix is cut first, then the procedure recurses on the
// coordinates that are still small once the prefix ends. The result is
// checked by firing; throws std::logic_error if it fails to fire.
RackoffResult rackoff_shorten(const PetriNet& net, const Execution& e, const Extractor& lambda);

// Each gap between consecutive kept steps is I-cyclic in e.
bool removes_only_i_cycles(const Execution& e, const std::vector<std::size_t>& kept,
                           const IndexSet& I);

}  // namespace mutreach
