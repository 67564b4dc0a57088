#include "doctest.h"
#include "mutreach/oracle.hh"
#include "mutreach/witness.hh"
#include "test_util.hh"

using namespace mutreach;
using namespace mutreach::testing;

namespace {

Unfolding level_set(const PetriNet& net, std::vector<Config> C) {
  auto res = unfolding_from_sccc(net, C, full_index_set(net.dim()));
  REQUIRE(res.unfolding.has_value());
  return *res.unfolding;
}

void check_synthesis(const PetriNet& net, const MutualWitness& w, std::size_t from, std::size_t to) {
  SynthesisResult s = synthesize_path(net, w, from, to);
  REQUIRE_MESSAGE(s.ok, s.diagnostics);
  FireResult f = fire(net, w.configs[from].config, s.word);
  REQUIRE(f.ok);
  CHECK(f.result == w.configs[to].config);
  CHECK(displacement(net, s.word) == sub(w.configs[to].config, w.configs[from].config));
}

}  // namespace

TEST_CASE("certified tau") {
  // m r^3 (3 d r m)^d with d = 2, m = 1, r = 3: 27 * 18^2.
  CHECK(certified_tau(2, 1, 3) == 27 * 324);
  CHECK(certified_tau(1, 2, 1) == 2 * 6);
}

TEST_CASE("upward basis examples") {
  PetriNet swap = load_fixture("token_swap");
  Unfolding g = level_set(swap, {iv({2, 0}), iv({1, 1}), iv({0, 2})});
  PumpingParams params;
  for (std::size_t q = 0; q < g.num_states(); ++q) {
    UpwardBasis b = upward_basis(g, q, params, 0);
    REQUIRE(b.elements.size() == 1);
    CHECK(b.elements[0].c == g.states()[q]);
    CHECK(membership_upward(b.elements, g.states()[q]).has_value());
  }
  // A zero-displacement self-loop needing one token, observed off I. The pair
  // (a, a) contributes max(1, tau); the empty pair contributes tau.
  PetriNet keep = parse_net_string("dim 1\npre: 1 post: 1\n");
  Unfolding h = make_unfolding(keep, {}, {IntVec{}}, {{0, 0, 0}});
  for (long tau : {0, 1, 5}) {
    UpwardBasis b = upward_basis(h, 0, params, tau);
    REQUIRE(b.elements.size() == 1);
    CHECK(b.elements[0].c == iv({tau}));
  }
}

TEST_CASE("upward membership") {
  CHECK(membership_upward(std::vector<IntVec>{iv({2, 3})}, iv({2, 3})));
  CHECK_FALSE(membership_upward(std::vector<IntVec>{}, iv({2, 3})));
  CHECK_FALSE(membership_upward(std::vector<IntVec>{iv({2, 0}), iv({0, 2})}, iv({1, 1})));
  CHECK(membership_upward(std::vector<IntVec>{iv({2, 0}), iv({0, 2})}, iv({0, 5})));
}

TEST_CASE("witness checking") {
  PetriNet swap = load_fixture("token_swap");
  PumpingParams params;
  Unfolding single = level_set(swap, {iv({3, 1})});
  CHECK(check_witness(swap, {iv({3, 1})}, single, params).witness.has_value());
  Unfolding g = level_set(swap, {iv({2, 0}), iv({1, 1}), iv({0, 2})});
  WitnessCheck ok = check_witness(swap, {iv({2, 0}), iv({0, 2})}, g, params);
  REQUIRE(ok.witness.has_value());
  CHECK(revalidate_witness(swap, *ok.witness));
  // Different token totals never share a coset.
  Unfolding both = make_unfolding(swap, {}, {IntVec{}}, {{0, 0, 0}, {0, 1, 0}});
  PumpingParams low;
  low.tau = 0;
  WitnessCheck bad = check_witness(swap, {iv({2, 0}), iv({1, 0})}, both, low);
  CHECK_FALSE(bad.witness.has_value());
  CHECK(bad.structural);
  CHECK(bad.reason.find("coset") != std::string::npos);
}

TEST_CASE("witness search examples") {
  PetriNet swap = load_fixture("token_swap");
  PumpingParams params;
  params.state_bound = 4;
  SearchResult same = search_witness(swap, iv({5, 7}), iv({5, 7}), params);
  REQUIRE(same.status == SearchStatus::Found);
  CHECK(synthesize_path(swap, *same.witness, 0, 0).word.empty());
  SearchResult r = search_witness(swap, iv({3, 0}), iv({0, 3}), params);
  REQUIRE(r.status == SearchStatus::Found);
  CHECK(revalidate_witness(swap, *r.witness));
  check_synthesis(swap, *r.witness, 0, 1);
  check_synthesis(swap, *r.witness, 1, 0);
  SearchResult small = search_witness(swap, iv({2, 0}), iv({0, 2}), params);
  REQUIRE(small.status == SearchStatus::Found);
  SynthesisResult s = synthesize_path(swap, *small.witness, 0, 1);
  REQUIRE(s.ok);
  CHECK(fire(swap, iv({2, 0}), s.word).result == iv({0, 2}));
  PetriNet consumer = load_fixture("consumer");
  for (long B : {1, 2, 4}) {
    params.state_bound = B;
    CHECK(search_witness(consumer, iv({1}), iv({0}), params).status == SearchStatus::Exhausted);
  }
}

TEST_CASE("found witnesses are sound and synthesize in both directions") {
  PumpingParams params;
  params.state_bound = 3;
  params.tau = 0;
  for (const char* name : {"token_swap", "ring", "mixed3"}) {
    PetriNet net = load_fixture(name);
    BoxSpace space(net, uniform_box(net.dim(), net.dim() == 3 ? 2 : 3));
    std::size_t found = 0;
    for (std::size_t i = 0; i < space.size(); ++i)
      for (std::size_t j = 0; j < space.size(); ++j) {
        Config x = space.config(i), y = space.config(j);
        if (x == y) continue;
        SearchResult r = search_witness(net, x, y, params);
        if (r.status != SearchStatus::Found) continue;
        ++found;
        // tau = 0 may leave pumping unsound; synthesis and simulation decide.
        SynthesisResult fw = synthesize_path(net, *r.witness, 0, 1);
        SynthesisResult bw = synthesize_path(net, *r.witness, 1, 0);
        if (fw.ok && bw.ok) {
          CHECK(oracle_mutual(space, x, y) != Verdict::False);
          CHECK(fire(net, x, fw.word).result == y);
          CHECK(fire(net, y, bw.word).result == x);
        }
      }
    CHECK(found > 0);
  }
}

TEST_CASE("witness serialization round trip") {
  PetriNet swap = load_fixture("token_swap");
  PumpingParams params;
  SearchResult r = search_witness(swap, iv({3, 0}), iv({1, 2}), params);
  REQUIRE(r.status == SearchStatus::Found);
  std::string text = serialize_witness(*r.witness);
  MutualWitness back = parse_witness(swap, text);
  CHECK(serialize_witness(back) == text);
  CHECK(revalidate_witness(swap, back));
  CHECK_THROWS(parse_witness(swap, "garbage"));
}

TEST_CASE("completeness probe") {
  for (const char* name : {"token_swap", "ring", "empty"}) {
    PetriNet net = load_fixture(name);
    ProbeReport rep = completeness_probe(net, uniform_box(net.dim(), 4));
    CHECK(rep.checked > 0);
    for (const auto& f : rep.failures) FAIL_CHECK(f);
  }
}

TEST_CASE("completeness parameters are reported") {
  CompletenessParameters p = completeness_parameters(2, 1);
  CHECK_FALSE(p.b.empty());
  CHECK(p.b_decimal_digits > 10);
  CompletenessParameters none = completeness_parameters(1, 0);
  REQUIRE(none.b_exact.has_value());
  CHECK(*none.b_exact == 0);
  CHECK(none.b_decimal_digits == 1);
}
