#include <algorithm>
#include <set>

#include "doctest.h"
#include "mutreach/oracle.hh"
#include "mutreach/unfolding.hh"
#include "test_util.hh"

using namespace mutreach;
using namespace mutreach::testing;

namespace {

// dim 1 with actions +1, -1, -2.
PetriNet line_net() { return parse_net_string("dim 1\npre: 0 post: 1\npre: 1 post: 0\npre: 2 post: 0\n"); }

// Counts simple cycles (as transition sequences rooted at their least state) by DFS.
std::size_t count_simple_cycles(const Unfolding& g) {
  std::size_t count = 0;
  for (std::size_t root = 0; root < g.num_states(); ++root) {
    std::vector<bool> on(g.num_states(), false);
    auto dfs = [&](auto&& self, std::size_t s) -> void {
      for (std::size_t t : g.out(s)) {
        std::size_t nxt = g.transitions()[t].dst;
        if (nxt == root) {
          ++count;
        } else if (nxt > root && !on[nxt]) {
          on[nxt] = true;
          self(self, nxt);
          on[nxt] = false;
        }
      }
    };
    on[root] = true;
    dfs(dfs, root);
  }
  return count;
}

bool subgraph_of(const Unfolding& small, const Unfolding& big) {
  for (std::size_t t = 0; t < small.transitions().size(); ++t) {
    const Transition& tr = small.transitions()[t];
    auto s = big.state_index(small.states()[tr.src]);
    auto d = big.state_index(small.states()[tr.dst]);
    if (!s || !d) return false;
    Transition mapped{*s, tr.action, *d};
    const auto& bt = big.transitions();
    if (!std::binary_search(bt.begin(), bt.end(), mapped)) return false;
  }
  for (const auto& q : small.states())
    if (!big.state_index(q)) return false;
  return true;
}

std::vector<Unfolding> fixture_unfoldings(const PetriNet& net, long B) {
  std::vector<Unfolding> out;
  EnumerationLimits lim;
  lim.max_transitions = 12;
  for (const auto& I : canonical_index_sets(net.dim())) {
    auto s = enumerate_candidate_unfoldings(net, I, B, lim);
    for (auto& g : s.unfoldings)
      if (g.num_states() <= 3) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace

TEST_CASE("validation examples") {
  PetriNet net = parse_net_string("dim 1\npre: 1 post: 1\npre: 0 post: 1\n");
  // One state on I = {1}, a self-loop with zero displacement on I.
  CHECK(validate_unfolding(net, {0}, {iv({1})}, {{0, 0, 0}}).unfolding.has_value());
  // Two states with a single edge.
  auto one_edge = validate_unfolding(net, {0}, {iv({0}), iv({1})}, {{0, 1, 1}});
  CHECK_FALSE(one_edge.unfolding.has_value());
  CHECK(one_edge.reason.find("strongly connected") != std::string::npos);
  // An edge whose target is not src + delta.
  auto bad = validate_unfolding(net, {0}, {iv({0}), iv({2})}, {{0, 1, 1}, {1, 1, 0}});
  CHECK_FALSE(bad.unfolding.has_value());
  CHECK(bad.reason.find("not a step") != std::string::npos);
  CHECK_THROWS_AS(make_unfolding(net, {0}, {}, {}), std::invalid_argument);
}

TEST_CASE("structural reversibility examples") {
  PetriNet net = line_net();
  Unfolding up = make_unfolding(net, {}, {IntVec{}}, {{0, 0, 0}});
  CHECK_FALSE(is_structurally_reversible(up).reversible);
  Unfolding both = make_unfolding(net, {}, {IntVec{}}, {{0, 0, 0}, {0, 1, 0}});
  auto r = is_structurally_reversible(both);
  CHECK(r.reversible);
  REQUIRE(r.flow.size() == 2);
  CHECK(r.flow[0] == r.flow[1]);
  Unfolding ring = make_unfolding(net, {0}, {iv({0}), iv({1})}, {{0, 0, 1}, {1, 1, 0}});
  CHECK(is_structurally_reversible(ring).reversible);
}

TEST_CASE("simple cycles against DFS") {
  PetriNet net = line_net();
  Unfolding loop = make_unfolding(net, {}, {IntVec{}}, {{0, 0, 0}});
  CHECK(simple_cycles(loop, 100).cycles.size() == 1);
  Unfolding two = make_unfolding(net, {}, {IntVec{}}, {{0, 0, 0}, {0, 1, 0}});
  CHECK(simple_cycles(two, 100).cycles.size() == 2);
  Unfolding tri = make_unfolding(net, {0}, {iv({0}), iv({1}), iv({2})},
                                 {{0, 0, 1}, {1, 0, 2}, {2, 2, 0}, {1, 1, 0}, {2, 1, 1}});
  CycleList cl = simple_cycles(tri, 100);
  CHECK(cl.cycles.size() == 3);
  CHECK(cl.cycles.size() == count_simple_cycles(tri));
  for (const auto& c : cl.cycles) {
    CHECK(path_valid(tri, c));
    CHECK(path_is_cycle(tri, c));
  }
  PetriNet mixed = load_fixture("mixed3");
  for (const auto& g : fixture_unfoldings(mixed, 3)) {
    CycleList all = simple_cycles(g, 100000);
    REQUIRE_FALSE(all.truncated);
    CHECK(all.cycles.size() == count_simple_cycles(g));
  }
}

TEST_CASE("lattice of an unfolding") {
  PetriNet even = parse_net_string("dim 2\npre: 0 0 post: 2 0\npre: 0 0 post: 0 2\n");
  Unfolding g = make_unfolding(even, {}, {IntVec{}}, {{0, 0, 0}, {0, 1, 0}});
  LatticeRepresentation l = lattice_of_unfolding(g).rep;
  CHECK(l.contains(iv({2, -4})));
  CHECK_FALSE(l.contains(iv({1, 0})));
  PetriNet swap = load_fixture("token_swap");
  Unfolding s = make_unfolding(swap, {}, {IntVec{}}, {{0, 0, 0}, {0, 1, 0}});
  LatticeRepresentation ls = lattice_of_unfolding(s).rep;
  for_each_point(2, -4, 4, [&](const IntVec& x) { CHECK(ls.contains(x) == (x[0] + x[1] == 0)); });
  // Tree generators span the same lattice as the simple cycles.
  PetriNet ring = load_fixture("ring");
  for (const auto& u : fixture_unfoldings(ring, 3)) {
    UnfoldingLattice a = lattice_of_unfolding(u);
    UnfoldingLattice b = lattice_of_unfolding(u, 0);
    CHECK_FALSE(a.used_tree_generators);
    CHECK(b.used_tree_generators == !simple_cycles(u, 1000).cycles.empty());
    for_each_point(2, -4, 4, [&](const IntVec& x) { CHECK(a.rep.contains(x) == b.rep.contains(x)); });
  }
}

TEST_CASE("cosets, elementary paths and reverse paths") {
  PetriNet net = line_net();
  Unfolding pair = make_unfolding(net, {}, {IntVec{}}, {{0, 0, 0}, {0, 1, 0}});
  auto rev = reverse_path_for(pair, 0, 4);
  REQUIRE(rev.has_value());
  CHECK(path_displacement(pair, *rev) == iv({-1}));
  PetriNet ring = load_fixture("ring");
  for (const auto& g : fixture_unfoldings(ring, 4)) {
    if (!is_structurally_reversible(g).reversible) continue;
    LatticeRepresentation l = lattice_of_unfolding(g).rep;
    for (std::size_t p = 0; p < g.num_states(); ++p)
      for (std::size_t q = 0; q < g.num_states(); ++q) {
        UPath e = elementary_path(g, p, q);
        CHECK(path_valid(g, e));
        CHECK(path_end(g, e) == q);
        if (p == q) CHECK(e.steps.empty());
        LatticeCoset pq = coset_between(g, l, p, q);
        LatticeCoset qp = coset_between(g, l, q, p);
        CHECK(l.contains(add(pq.offset, qp.offset)));
      }
  }
}

TEST_CASE("zero full-state cycles and embedding") {
  PetriNet net = line_net();
  Unfolding pair = make_unfolding(net, {}, {IntVec{}}, {{0, 0, 0}, {0, 1, 0}});
  auto z = zero_full_state_cycle(pair, 0);
  REQUIRE(z.cycle.has_value());
  CHECK(is_zero(path_displacement(pair, *z.cycle)));
  for (const char* name : {"token_swap", "ring", "mixed3"}) {
    PetriNet f = load_fixture(name);
    for (const auto& g : fixture_unfoldings(f, 3)) {
      if (!is_structurally_reversible(g).reversible) continue;
      for (std::size_t anchor = 0; anchor < g.num_states(); ++anchor) {
        auto zc = zero_full_state_cycle(g, anchor);
        REQUIRE(zc.cycle.has_value());
        CHECK(zc.cycle->start == anchor);
        CHECK(path_valid(g, *zc.cycle));
        CHECK(path_is_cycle(g, *zc.cycle));
        CHECK(path_full_state(g, *zc.cycle));
        CHECK(is_zero(path_displacement(g, *zc.cycle)));
        for (const auto& c : simple_cycles(g, 1000).cycles) {
          UPath e = embed_simple_cycle(g, *zc.cycle, c, anchor);
          CHECK(e.start == anchor);
          CHECK(path_is_cycle(g, e));
          CHECK(path_full_state(g, e));
          CHECK(path_displacement(g, e) == path_displacement(g, c));
        }
      }
    }
  }
}

TEST_CASE("unfolding of a token-swap level set") {
  PetriNet net = load_fixture("token_swap");
  auto res = unfolding_from_sccc(net, {iv({2, 0}), iv({1, 1}), iv({0, 2})}, {0, 1});
  REQUIRE(res.unfolding.has_value());
  const Unfolding& g = *res.unfolding;
  CHECK(g.num_states() == 3);
  CHECK(g.transitions().size() == 4);
  CHECK(is_structurally_reversible(g).reversible);
  auto single = unfolding_from_sccc(net, {iv({0, 0})}, {0, 1});
  REQUIRE(single.unfolding.has_value());
  CHECK(single.unfolding->transitions().empty());
}

TEST_CASE("enumeration contains the level-set unfoldings") {
  PetriNet net = load_fixture("token_swap");
  EnumerationLimits lim;
  auto stream = enumerate_unfoldings(net, {0, 1}, 3, lim);
  CHECK_FALSE(stream.truncated);
  auto scc = sccc_in_box(net, uniform_box(2, 2));
  for (const auto& comp : scc.components) {
    if (norm_1(comp.front()) >= 3) continue;
    auto g = unfolding_from_sccc(net, comp, {0, 1});
    REQUIRE(g.unfolding.has_value());
    bool found = false;
    for (const auto& u : stream.unfoldings)
      if (u.states() == g.unfolding->states() && u.transitions() == g.unfolding->transitions()) found = true;
    CHECK(found);
  }
}

TEST_CASE("maximal unfoldings cover every reversible unfolding exactly once") {
  EnumerationLimits lim;
  lim.max_transitions = 14;
  for (const char* name : {"token_swap", "ring", "mixed3", "consumer"}) {
    PetriNet net = load_fixture(name);
    for (const auto& I : canonical_index_sets(net.dim())) {
      auto maximal = maximal_unfoldings(net, I, 3);
      std::set<IConfig> seen;
      for (const auto& m : maximal) {
        CHECK(is_structurally_reversible(m).reversible);
        for (const auto& q : m.states()) CHECK(seen.insert(q).second);
      }
      auto all = enumerate_unfoldings(net, I, 3, lim);
      if (all.truncated) continue;
      for (const auto& u : all.unfoldings) {
        std::size_t hosts = 0;
        for (const auto& m : maximal)
          if (subgraph_of(u, m)) ++hosts;
        CHECK(hosts == 1);
      }
    }
  }
}

TEST_CASE("index sets and small configurations") {
  auto sets = canonical_index_sets(3);
  REQUIRE(sets.size() == 8);
  CHECK(sets[0].empty());
  CHECK(sets[1] == IndexSet{0});
  CHECK(sets[3] == IndexSet{2});
  CHECK(sets[4] == IndexSet{0, 1});
  CHECK(sets[7] == IndexSet{0, 1, 2});
  // Configurations with every entry below B: B^k of them.
  CHECK(small_iconfigs(2, 3).size() == 9);
  CHECK(small_iconfigs(3, 4).size() == 64);
  CHECK(small_iconfigs(0, 1).size() == 1);
  CHECK(small_iconfigs(2, 0).empty());
}

TEST_CASE("forward-closed unfoldings of the consumer") {
  PetriNet net = load_fixture("consumer");
  auto fc = forward_closed_unfoldings(net, {0}, 4);
  REQUIRE(fc.size() == 1);
  CHECK(fc[0].states() == std::vector<IConfig>{iv({0})});
}
