#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "mutreach/steinitz.hh"
#include "test_util.hh"

using namespace mutreach;
using namespace mutreach::testing;

namespace {

VectorBag random_bag(Rng& rng, std::size_t d, std::size_t k, long m, bool zero_sum) {
  std::vector<IntVec> vs;
  for (std::size_t j = 0; j < k; ++j) vs.push_back(rng.vec(d, -m, m));
  if (zero_sum && k > 0) {
    // Push the sum to zero with extra vectors of norm <= m.
    IntVec s = zeros(d);
    for (const auto& v : vs) s = add(s, v);
    while (!is_zero(s)) {
      IntVec fix(d);
      for (std::size_t i = 0; i < d; ++i) fix[i] = std::clamp<Int>(-s[i], -m, m);
      vs.push_back(fix);
      s = add(s, fix);
    }
  }
  return VectorBag(d, std::move(vs));
}

// Direct evaluation of the Steinitz inequality with rationals.
bool bound_direct(const VectorBag& bag, const Permutation& p) {
  const std::size_t d = bag.dim(), k = bag.size();
  IntVec z = bag.sum();
  IntVec prefix = zeros(d);
  for (std::size_t n = 1; n <= k; ++n) {
    prefix = add(prefix, bag[p[n - 1]]);
    if (n < d) continue;
    for (std::size_t i = 0; i < d; ++i) {
      Rational diff = Rational(prefix[i]) - Rational(Int(static_cast<long>(n) - static_cast<long>(d)), k) * z[i];
      if (abs(diff) > Rational(Int(d) * bag.norm())) return false;
    }
  }
  return true;
}

bool some_permutation_meets(const VectorBag& bag) {
  Permutation p(bag.size());
  std::iota(p.begin(), p.end(), 0);
  do {
    if (bound_direct(bag, p)) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

bool is_permutation_of(const Permutation& p, std::size_t k) {
  Permutation s = p;
  std::sort(s.begin(), s.end());
  for (std::size_t j = 0; j < s.size(); ++j)
    if (s[j] != j) return false;
  return s.size() == k;
}

bool has_zero_subset(const VectorBag& bag, const std::vector<std::size_t>& idx) {
  const std::size_t n = idx.size();
  for (unsigned long mask = 1; mask < (1ul << n); ++mask) {
    IntVec s = zeros(bag.dim());
    for (std::size_t j = 0; j < n; ++j)
      if (mask >> j & 1) s = add(s, bag[idx[j]]);
    if (is_zero(s)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("Steinitz examples") {
  VectorBag one(1, {iv({3})});
  auto p = steinitz_permutation(one);
  REQUIRE(p.has_value());
  CHECK(*p == Permutation{0});
  VectorBag alt(1, {iv({1}), iv({-1}), iv({1}), iv({-1})});
  auto q = steinitz_permutation(alt);
  REQUIRE(q.has_value());
  CHECK(steinitz_bound_holds(alt, *q));
  CHECK(bound_direct(alt, *q));
}

TEST_CASE("Steinitz permutations meet the bound and agree with brute force") {
  Rng rng(21);
  for (int t = 0; t < 120; ++t) {
    std::size_t d = rng.uniform(1, 3), k = rng.uniform(1, 7);
    VectorBag bag = random_bag(rng, d, k, rng.uniform(1, 2), false);
    for (auto method : {SteinitzMethod::Auto, SteinitzMethod::Constructive, SteinitzMethod::BruteForce}) {
      auto p = steinitz_permutation(bag, method);
      REQUIRE(p.has_value());
      CHECK(is_permutation_of(*p, bag.size()));
      CHECK(bound_direct(bag, *p));
      CHECK(steinitz_bound_holds(bag, *p));
    }
    CHECK(some_permutation_meets(bag));
    auto greedy = steinitz_permutation(bag, SteinitzMethod::Greedy);
    if (greedy) CHECK(bound_direct(bag, *greedy));
  }
}

TEST_CASE("library bound check agrees with direct evaluation") {
  Rng rng(23);
  for (int t = 0; t < 200; ++t) {
    std::size_t d = rng.uniform(1, 3), k = rng.uniform(1, 6);
    VectorBag bag = random_bag(rng, d, k, 2, false);
    Permutation p(k);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng.gen);
    CHECK(steinitz_bound_holds(bag, p) == bound_direct(bag, p));
  }
}

TEST_CASE("zero-subsequence pruning") {
  VectorBag small(1, {iv({1}), iv({-1}), iv({1})});
  PruneResult r = prune_zero_subsequences(small);
  CHECK(r.kept.size() == 1);
  CHECK(r.minimal);
  VectorBag zero(1, {iv({1}), iv({-1}), iv({2}), iv({-2})});
  PruneResult z = prune_zero_subsequences(zero);
  CHECK(z.kept.empty());
  CHECK(z.zero_sum_edge_case);
  VectorBag minimal(2, {iv({1, 0}), iv({0, 1}), iv({1, 1})});
  PruneResult m = prune_zero_subsequences(minimal);
  CHECK(m.kept == std::vector<std::size_t>{0, 1, 2});

  Rng rng(29);
  for (int t = 0; t < 150; ++t) {
    std::size_t d = rng.uniform(1, 3), k = rng.uniform(1, 12);
    VectorBag bag = random_bag(rng, d, k, rng.uniform(1, 2), false);
    PruneResult p = prune_zero_subsequences(bag);
    IntVec s = zeros(d);
    for (auto j : p.kept) s = add(s, bag[j]);
    CHECK(s == bag.sum());
    CHECK(std::is_sorted(p.kept.begin(), p.kept.end()));
    CHECK(p.minimal);
    CHECK_FALSE(has_zero_subset(bag, p.kept));
    CHECK(p.bound_met);
    CHECK(Int(p.kept.size()) <= prune_bound(bag));
  }
}

TEST_CASE("prefix-safe reordering") {
  VectorBag pos(2, {iv({1, 0}), iv({0, 2}), iv({1, 1})});
  Permutation id = prefix_safe_reorder(pos);
  CHECK(prefix_bound_holds(pos, id));
  VectorBag pair(1, {iv({-3}), iv({3})});
  CHECK(prefix_bound_holds(pair, prefix_safe_reorder(pair)));
  CHECK(prefix_bound_holds(pair, Permutation{0, 1}));
  Rng rng(31);
  for (int t = 0; t < 150; ++t) {
    std::size_t d = rng.uniform(1, 3);
    VectorBag bag = random_bag(rng, d, rng.uniform(1, 8), 2, t % 2 == 0);
    Permutation p = prefix_safe_reorder(bag);
    CHECK(is_permutation_of(p, bag.size()));
    // Direct evaluation of min(z(i), 0) - m d on every prefix.
    IntVec z = bag.sum(), prefix = zeros(d);
    Int md = bag.norm() * static_cast<unsigned long>(d);
    bool ok = true;
    for (std::size_t n = 0; n <= bag.size(); ++n) {
      if (n > 0) prefix = add(prefix, bag[p[n - 1]]);
      for (std::size_t i = 0; i < d; ++i)
        if (prefix[i] < std::min<Int>(z[i], 0) - md) ok = false;
    }
    CHECK(ok);
    CHECK(prefix_bound_holds(bag, p));
  }
}
