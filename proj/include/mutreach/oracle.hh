#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mutreach/net.hh"

namespace mutreach {

enum class Verdict { True, False, Unreliable };

std::string to_string(Verdict v);

// All configurations c with 0 <= c(i) <= box[i], single-action edges inside
// the box, and an escape flag on configurations that can fire out of it.
class BoxSpace {
 public:
  BoxSpace(const PetriNet& net, std::vector<unsigned long> box);

  const PetriNet& net() const { return *net_; }
  const std::vector<unsigned long>& box() const { return box_; }
  std::size_t size() const { return size_; }

  bool inside(const Config& c) const;
  std::size_t id(const Config& c) const;  // throws if outside
  Config config(std::size_t id) const;

  const std::vector<std::size_t>& successors(std::size_t id) const { return adj_[id]; }
  bool escapes(std::size_t id) const { return escapes_[id]; }

  std::size_t component(std::size_t id) const { return comp_[id]; }
  std::size_t num_components() const { return members_.size(); }
  const std::vector<std::size_t>& members(std::size_t comp) const { return members_[comp]; }
  // No configuration reachable from the component fires out of the box, so
  // the component is an exact SCCC and its reachability is exact.
  bool exact(std::size_t comp) const { return !closure_escape_[comp]; }
  // No firing from a member leaves the component (inside or outside the box).
  bool closed(std::size_t comp) const { return closed_[comp]; }

 private:
  const PetriNet* net_;
  std::vector<unsigned long> box_;
  std::vector<std::size_t> radix_;
  std::size_t size_ = 1;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<bool> escapes_;
  std::vector<std::size_t> comp_;
  std::vector<std::vector<std::size_t>> members_;
  std::vector<bool> closure_escape_, closed_;
};

std::vector<unsigned long> uniform_box(std::size_t d, unsigned long b);

struct BoundedReach {
  std::vector<Config> configs;  // sorted
  bool frontier = false;        // some firing left the box
};

BoundedReach bounded_reach(const PetriNet& net, const Config& x, const std::vector<unsigned long>& box);

struct SccInBox {
  std::vector<std::vector<Config>> components;  // each sorted; ordered by least member
  std::vector<bool> reliable;                   // exact SCCC
};

SccInBox sccc_in_box(const PetriNet& net, const std::vector<unsigned long>& box);

// True is always reliable (a cycle inside the box is real); False needs the
// forward closure of x or of y to stay inside the box.
Verdict oracle_mutual(const BoxSpace& space, const Config& x, const Config& y);
Verdict oracle_mutual(const PetriNet& net, const Config& x, const Config& y,
                      const std::vector<unsigned long>& box);

// Reliable when the forward closure of c's component stays inside the box.
Verdict oracle_bottom(const BoxSpace& space, const Config& c);
Verdict oracle_bottom(const PetriNet& net, const Config& c, const std::vector<unsigned long>& box);

std::string box_to_dot(const BoxSpace& space);
std::string box_to_json(const BoxSpace& space);

}  // namespace mutreach
