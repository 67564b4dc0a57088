#include <deque>
#include <set>

#include "doctest.h"
#include "json.hpp"
#include "mutreach/oracle.hh"
#include "test_util.hh"

using namespace mutreach;
using namespace mutreach::testing;

namespace {

// Plain BFS over configurations with every entry at most `cap`.
std::set<Config> reach(const PetriNet& net, const Config& x, long cap) {
  std::set<Config> seen{x};
  std::deque<Config> queue{x};
  while (!queue.empty()) {
    Config c = queue.front();
    queue.pop_front();
    for (std::size_t a = 0; a < net.size(); ++a) {
      if (!net.enabled(c, a)) continue;
      Config n = net.successor(c, a);
      if (norm_inf(n) > cap) continue;
      if (seen.insert(n).second) queue.push_back(n);
    }
  }
  return seen;
}

}  // namespace

TEST_CASE("bounded reachability examples") {
  PetriNet empty = load_fixture("empty");
  BoundedReach e = bounded_reach(empty, iv({3}), {5});
  CHECK(e.configs == std::vector<Config>{iv({3})});
  CHECK_FALSE(e.frontier);
  PetriNet swap = load_fixture("token_swap");
  BoundedReach s = bounded_reach(swap, iv({2, 0}), {4, 4});
  CHECK(s.configs == std::vector<Config>{iv({0, 2}), iv({1, 1}), iv({2, 0})});
  CHECK_FALSE(s.frontier);
  PetriNet consumer = load_fixture("consumer");
  BoundedReach c = bounded_reach(consumer, iv({3}), {3});
  CHECK(c.configs == std::vector<Config>{iv({0}), iv({1}), iv({2}), iv({3})});
  PetriNet ring = load_fixture("ring");
  CHECK_FALSE(bounded_reach(ring, iv({1, 0}), {1, 1}).frontier);
  CHECK(bounded_reach(ring, iv({1, 1}), {1, 1}).frontier);
  CHECK_THROWS(bounded_reach(ring, iv({2, 0}), {1, 1}));
}

TEST_CASE("components in the box") {
  PetriNet swap = load_fixture("token_swap");
  SccInBox s = sccc_in_box(swap, {3, 3});
  for (std::size_t k = 0; k < s.components.size(); ++k) {
    const auto& comp = s.components[k];
    Int total = norm_1(comp.front());
    for (const auto& c : comp) CHECK(norm_1(c) == total);
    if (total <= 3) {
      CHECK(s.reliable[k]);
      CHECK(Int(static_cast<unsigned long>(comp.size())) == total + 1);
    } else {
      CHECK_FALSE(s.reliable[k]);
    }
  }
  for (const char* name : {"consumer", "empty"}) {
    SccInBox t = sccc_in_box(load_fixture(name), {4});
    CHECK(t.components.size() == 5);
    for (const auto& comp : t.components) CHECK(comp.size() == 1);
  }
}

TEST_CASE("bottom verdicts") {
  PetriNet consumer = load_fixture("consumer");
  CHECK(oracle_bottom(consumer, iv({0}), {4}) == Verdict::True);
  CHECK(oracle_bottom(consumer, iv({1}), {4}) == Verdict::False);
  PetriNet swap = load_fixture("token_swap");
  for_each_point(2, 0, 3, [&](const IntVec& c) {
    if (norm_1(c) <= 3) CHECK(oracle_bottom(swap, c, {3, 3}) == Verdict::True);
  });
  PetriNet empty = load_fixture("empty");
  for (long v = 0; v <= 4; ++v) CHECK(oracle_bottom(empty, iv({v}), {4}) == Verdict::True);
}

TEST_CASE("mutual verdicts agree with plain BFS") {
  for (const char* name : {"token_swap", "ring", "mixed3", "consumer"}) {
    PetriNet net = load_fixture(name);
    unsigned long b = net.dim() == 3 ? 2 : 3;
    BoxSpace space(net, uniform_box(net.dim(), b));
    for (std::size_t i = 0; i < space.size(); ++i) {
      Config x = space.config(i);
      CHECK(space.id(x) == i);
      auto rx = reach(net, x, 12);
      for (std::size_t j = 0; j < space.size(); ++j) {
        Config y = space.config(j);
        Verdict v = oracle_mutual(space, x, y);
        CHECK(v == oracle_mutual(space, y, x));
        if (v == Verdict::Unreliable) continue;
        bool truth = rx.count(y) && reach(net, y, 12).count(x);
        CHECK((v == Verdict::True) == truth);
      }
    }
  }
}

TEST_CASE("box exports") {
  PetriNet swap = load_fixture("token_swap");
  BoxSpace space(swap, {2, 2});
  std::string dot = box_to_dot(space);
  CHECK(dot.rfind("digraph", 0) == 0);
  auto j = nlohmann::json::parse(box_to_json(space));
  CHECK(j.is_object());
  CHECK_THROWS(space.id(iv({3, 0})));
  CHECK_FALSE(space.inside(iv({3, 0})));
}
