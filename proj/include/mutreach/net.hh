#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "mutreach/vec.hh"

namespace mutreach {

// A configuration is a non-negative IntVec of the net's dimension.
using Config = IntVec;

struct Action {
  Config pre;
  Config post;

  IntVec delta() const { return sub(post, pre); }
};

// Words are index sequences into the net's action table.
using Word = std::vector<std::size_t>;

class PetriNet {
 public:
  struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
  };

  PetriNet(std::size_t dim, std::vector<Action> actions);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return actions_.size(); }
  const std::vector<Action>& actions() const { return actions_; }
  const Action& action(std::size_t a) const { return actions_.at(a); }
  const IntVec& delta(std::size_t a) const { return deltas_.at(a); }

  // m = max over actions of max(|a-|, |a+|).
  const Int& norm() const { return norm_; }

  bool enabled(const Config& x, std::size_t a) const;
  Config successor(const Config& x, std::size_t a) const;

 private:
  std::size_t dim_;
  std::vector<Action> actions_;
  std::vector<IntVec> deltas_;
  Int norm_;
};

IntVec displacement(const PetriNet& net, const Word& w);

// H(eps) = 0, H(a w) = max(a-, H(w) - delta(a)).
Config hurdle(const PetriNet& net, const Word& w);

struct FireResult {
  bool ok = false;
  Config result;                // final configuration when ok
  std::size_t blocked_step = 0; // 1-based first failing step otherwise
};

FireResult fire(const PetriNet& net, const Config& x, const Word& w);

// Text format: "dim d", then one "pre: ... post: ..." line per action.
PetriNet parse_net(std::istream& in);
PetriNet parse_net_string(const std::string& text);
PetriNet load_net(const std::string& path);
std::string format_net(const PetriNet& net);

std::string format_word(const Word& w);  // "a1 a3 a2" (1-based), "eps" if empty

}  // namespace mutreach
