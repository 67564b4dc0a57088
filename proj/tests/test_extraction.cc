#include <algorithm>

#include "doctest.h"
#include "mutreach/extraction.hh"
#include "test_util.hh"

using namespace mutreach;
using namespace mutreach::testing;

namespace {

Extractor lam(std::initializer_list<long> xs) {
  std::vector<Int> t;
  for (long x : xs) t.emplace_back(x);
  return Extractor(t);
}

// Union of all (lambda, I)-small subsets found by enumerating every subset of I.
IndexSet brute_small_set(const Extractor& l, const IndexSet& I, const std::vector<Config>& C) {
  IndexSet best;
  for (unsigned long mask = 0; mask < (1ul << I.size()); ++mask) {
    IndexSet J;
    for (std::size_t k = 0; k < I.size(); ++k)
      if (mask >> k & 1) J.push_back(I[k]);
    bool small = true;
    for (auto j : J)
      for (const auto& c : C)
        if (c[j] >= l[J.size()]) small = false;
    if (!small) continue;
    IndexSet u;
    std::set_union(best.begin(), best.end(), J.begin(), J.end(), std::back_inserter(u));
    best = u;
  }
  return best;
}

Extractor random_extractor(Rng& rng, std::size_t d) {
  std::vector<Int> t{rng.uniform(1, 3)};
  for (std::size_t n = 0; n <= d; ++n) t.push_back(t.back() + rng.uniform(0, 4));
  return Extractor(t);
}

std::vector<Execution> random_executions(const PetriNet& net, Rng& rng, int count) {
  std::vector<Execution> out;
  while (static_cast<int>(out.size()) < count) {
    Config x = rng.vec(net.dim(), 0, 6);
    Word w;
    Config cur = x;
    for (long n = rng.uniform(0, 25); n > 0; --n) {
      std::vector<std::size_t> en;
      for (std::size_t a = 0; a < net.size(); ++a)
        if (net.enabled(cur, a)) en.push_back(a);
      if (en.empty()) break;
      std::size_t a = en[rng.uniform(0, en.size() - 1)];
      w.push_back(a);
      cur = net.successor(cur, a);
    }
    out.emplace_back(net, x, w);
  }
  return out;
}

}  // namespace

TEST_CASE("two-dimensional example table") {
  Extractor l = lam({1, 2, 4, 8});
  IndexSet I{0, 1};
  // {1,2} if m,n < lambda_2
  CHECK(maximal_small_set(l, I, {iv({0, 0})}) == IndexSet{0, 1});
  CHECK(maximal_small_set(l, I, {iv({3, 3})}) == IndexSet{0, 1});
  // empty if (m >= lambda_2 and n >= lambda_1) or (m >= lambda_1 and n >= lambda_2)
  CHECK(maximal_small_set(l, I, {iv({4, 2})}).empty());
  CHECK(maximal_small_set(l, I, {iv({2, 4})}).empty());
  // {1} if m < lambda_1 and n >= lambda_2
  CHECK(maximal_small_set(l, I, {iv({1, 5})}) == IndexSet{0});
  // {2} if m >= lambda_2 and n < lambda_1
  CHECK(maximal_small_set(l, I, {iv({5, 1})}) == IndexSet{1});
  CHECK(maximal_small_set(l, {}, {iv({0, 0})}).empty());
}

TEST_CASE("maximal small set equals brute force") {
  Rng rng(37);
  for (int t = 0; t < 300; ++t) {
    std::size_t d = rng.uniform(1, 5);
    Extractor l = random_extractor(rng, d);
    IndexSet I;
    for (std::size_t i = 0; i < d; ++i)
      if (rng.uniform(0, 3) > 0) I.push_back(i);
    std::vector<Config> C;
    for (long n = rng.uniform(1, 6); n > 0; --n) C.push_back(rng.vec(d, 0, 16));
    IndexSet J = maximal_small_set(l, I, C);
    CHECK(J == brute_small_set(l, I, C));
    // Every dropped index is large somewhere.
    for (auto i : I) {
      if (contains_index(J, i)) continue;
      bool large = false;
      for (const auto& c : C)
        if (c[i] >= l[J.size() + 1]) large = true;
      CHECK(large);
    }
  }
}

TEST_CASE("extraction along words") {
  Rng rng(41);
  for (int t = 0; t < 200; ++t) {
    std::size_t d = rng.uniform(1, 4);
    Extractor l = random_extractor(rng, d);
    IndexSet I = full_index_set(d);
    std::vector<Config> C;
    for (long n = rng.uniform(1, 5); n > 0; --n) C.push_back(rng.vec(d, 0, 12));
    CHECK(extract_along_word(l, I, {}) == I);
    std::vector<Config> constant(4, C[0]);
    CHECK(extract_along_word(l, I, constant) == maximal_small_set(l, I, {C[0]}));
    std::vector<Config> twice = C;
    twice.insert(twice.end(), C.begin(), C.end());
    IndexSet along = extract_along_word(l, I, twice);
    CHECK(along == brute_small_set(l, I, C));
    auto prefixes = extraction_prefixes(l, I, twice);
    REQUIRE(prefixes.size() == twice.size() + 1);
    for (std::size_t n = 1; n < prefixes.size(); ++n)
      CHECK(std::includes(prefixes[n - 1].begin(), prefixes[n - 1].end(), prefixes[n].begin(), prefixes[n].end()));
    // A single pass contains the set extraction.
    IndexSet once = extract_along_word(l, I, C);
    IndexSet all = maximal_small_set(l, I, C);
    CHECK(std::includes(once.begin(), once.end(), all.begin(), all.end()));
  }
}

TEST_CASE("extractor recurrences") {
  // d = 1, m = 1: lambda_1 = 1 * 1 * (3 * 1 * 1 * 1)^1 = 3, lambda_2 = 3 + 27 * 9 = 246.
  Extractor p = exact_lambda(1, 1);
  REQUIRE(p.thresholds().size() == 3);
  CHECK(p[0] == 1);
  CHECK(p[1] == 3);
  CHECK(p[2] == 246);
  for (std::size_t d = 1; d <= 3; ++d)
    for (long m = 1; m <= 3; ++m) {
      Extractor e = exact_lambda(d, m);
      // Recompute the recurrence independently.
      std::vector<Int> ref{1};
      for (std::size_t n = 0; n <= d; ++n) {
        Int sum = 0;
        for (std::size_t j = 1; j <= n; ++j) sum += power(ref[j], j);
        Int ln = power(ref[n], n);
        ref.push_back(m * sum + m * power(ref[n], 3 * n) * power(3 * Int(static_cast<long>(d)) * ln * m, d));
      }
      CHECK(e.thresholds() == ref);
      CHECK(e.m_adapted(m));
      CHECK(std::is_sorted(e.thresholds().begin(), e.thresholds().end()));
      Extractor minimal = minimal_adapted_extractor(d, m, 2);
      CHECK(minimal.m_adapted(m));
      CHECK(minimal[0] == 2);
      for (std::size_t n = 0; n <= d; ++n)
        CHECK(minimal[n + 1] == minimal[n] + m * power(minimal[n], n));
    }
  CHECK_FALSE(lam({1, 1, 1}).m_adapted(1));
  CHECK_THROWS(lam({2, 1, 3}));
  CHECK_THROWS(lam({0, 1, 3}));
}

TEST_CASE("execution validation") {
  PetriNet net = load_fixture("consumer");
  Execution e(net, iv({2}), {0, 0});
  CHECK(e.configs().size() == 3);
  CHECK(e.target() == iv({0}));
  CHECK_THROWS_AS(Execution(net, iv({1}), {0, 0}), std::invalid_argument);
}

TEST_CASE("Rackoff shortening examples") {
  PetriNet net = load_fixture("token_swap");
  Extractor l = minimal_adapted_extractor(2, net.norm(), 8);
  // Short, distinct and small: the word is kept.
  Execution shortw(net, iv({2, 0}), {0, 0});
  RackoffResult a = rackoff_shorten(net, shortw, l);
  CHECK(a.word == shortw.word());
  // A repeated configuration: the loop between repeats is removed.
  Execution loop(net, iv({2, 0}), {0, 1, 0});
  RackoffResult b = rackoff_shorten(net, loop, l);
  CHECK(b.word == Word{0});
  CHECK(b.final_config == loop.target());
}

TEST_CASE("Rackoff postconditions on random executions") {
  Rng rng(43);
  for (const char* name : {"token_swap", "ring", "mixed3", "consumer"}) {
    PetriNet net = load_fixture(name);
    const std::size_t d = net.dim();
    for (long l0 : {1, 2, 3}) {
      Extractor l = minimal_adapted_extractor(d, net.norm(), l0);
      for (const auto& e : random_executions(net, rng, 15)) {
        RackoffResult r = rackoff_shorten(net, e, l);
        FireResult f = fire(net, e.source(), r.word);
        REQUIRE(f.ok);
        CHECK(f.result == r.final_config);
        CHECK(r.I == extract_along_word(l, full_index_set(d), e.configs()));
        CHECK(Int(static_cast<unsigned long>(r.word.size())) <= r.length_bound);
        CHECK(r.length_bound == Int(static_cast<unsigned long>(d)) * power(l[d], d));
        CHECK(restrict_to(r.final_config, r.I) == restrict_to(e.target(), r.I));
        Int s0 = 0;
        for (std::size_t j = 0; j <= r.I.size(); ++j) s0 += power(l[j], j);
        Int lb0 = l[r.I.size() + 1] - net.norm() * s0;
        CHECK(r.lower_bound_j0 == lb0);
        bool meets = true;
        for (auto i : complement(r.I, d))
          if (r.final_config[i] < lb0) meets = false;
        CHECK(meets == r.meets_j0);
        CHECK(r.meets_j0);
        CHECK(removes_only_i_cycles(e, r.kept, r.I));
        Word from_kept;
        for (auto k : r.kept) from_kept.push_back(e.word()[k - 1]);
        CHECK(from_kept == r.word);
      }
    }
  }
}
