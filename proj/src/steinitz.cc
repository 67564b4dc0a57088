#include "mutreach/steinitz.hh"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "mutreach/lp.hh"

namespace mutreach {

VectorBag::VectorBag(std::size_t dim, std::vector<IntVec> vectors)
    : dim_(dim), vectors_(std::move(vectors)) {
  for (const auto& v : vectors_) {
    if (v.size() != dim_) throw std::invalid_argument("vector bag dimension mismatch");
    Int n = norm_inf(v);
    if (n > norm_) norm_ = n;
  }
}

IntVec VectorBag::sum() const {
  IntVec s = zeros(dim_);
  for (const auto& v : vectors_) s = add(s, v);
  return s;
}

namespace {

bool is_permutation_of(const Permutation& p, std::size_t k) {
  if (p.size() != k) return false;
  std::vector<bool> seen(k, false);
  for (auto j : p) {
    if (j >= k || seen[j]) return false;
    seen[j] = true;
  }
  return true;
}

Permutation identity(std::size_t k) {
  Permutation p(k);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

// |k * S - (n - d) z|_inf <= k d m, all in integers.
bool prefix_ok(const IntVec& S, const IntVec& z, std::size_t n, std::size_t k, std::size_t d,
               const Int& kdm) {
  Int coef = static_cast<long>(n) - static_cast<long>(d);
  for (std::size_t i = 0; i < S.size(); ++i) {
    Int dev = S[i] * static_cast<unsigned long>(k) - coef * z[i];
    if (abs(dev) > kdm) return false;
  }
  return true;
}

std::optional<Permutation> greedy(const VectorBag& bag) {
  const std::size_t k = bag.size(), d = bag.dim();
  IntVec z = bag.sum(), S = zeros(d);
  std::vector<bool> used(k, false);
  Permutation p;
  for (std::size_t n = 1; n <= k; ++n) {
    Int coef = n > d ? Int(static_cast<unsigned long>(n - d)) : Int(0);
    std::size_t best = k;
    Int best_dev;
    for (std::size_t j = 0; j < k; ++j) {
      if (used[j]) continue;
      Int dev = 0;
      for (std::size_t i = 0; i < d; ++i) {
        Int e = abs((S[i] + bag[j][i]) * static_cast<unsigned long>(k) - coef * z[i]);
        if (e > dev) dev = e;
      }
      if (best == k || dev < best_dev) {
        best = j;
        best_dev = dev;
      }
    }
    used[best] = true;
    p.push_back(best);
    S = add(S, bag[best]);
  }
  if (!steinitz_bound_holds(bag, p)) return std::nullopt;
  return p;
}

std::optional<Permutation> constructive(const VectorBag& bag) {
  const std::size_t k = bag.size(), d = bag.dim();
  if (k <= d) return identity(k);
  IntVec z = bag.sum();
  std::vector<std::size_t> active = identity(k);
  Permutation p(k);
  for (std::size_t n = k; n > d; --n) {
    // Find a vertex lambda in [0,1]^active with sum lambda_j z_j = ((n-1-d)/k) z
    // and sum lambda_j = n-1-d; one of its coordinates is 0.
    LinearProgram lp;
    lp.num_vars = active.size();
    Rational frac(static_cast<long>(n - 1 - d), static_cast<long>(k));
    frac.canonicalize();
    for (std::size_t i = 0; i < d; ++i) {
      RatVec row(active.size());
      for (std::size_t j = 0; j < active.size(); ++j) row[j] = bag[active[j]][i];
      lp.rows.push_back({row, Rel::Eq, frac * Rational(z[i])});
    }
    lp.rows.push_back({RatVec(active.size(), Rational(1)), Rel::Eq,
                       Rational(static_cast<long>(n - 1 - d))});
    for (std::size_t j = 0; j < active.size(); ++j) {
      RatVec row(active.size());
      row[j] = 1;
      lp.rows.push_back({row, Rel::Le, 1});
    }
    LpResult r = solve_lp(lp);
    if (r.status != LpStatus::Optimal) return std::nullopt;
    std::size_t eject = active.size();
    for (std::size_t j = 0; j < active.size(); ++j)
      if (r.x[j] == 0) {
        eject = j;
        break;
      }
    if (eject == active.size()) return std::nullopt;
    p[n - 1] = active[eject];
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(eject));
  }
  for (std::size_t j = 0; j < active.size(); ++j) p[j] = active[j];
  if (!steinitz_bound_holds(bag, p)) return std::nullopt;
  return p;
}

std::optional<Permutation> brute_force(const VectorBag& bag) {
  if (bag.size() > 9) throw std::invalid_argument("brute-force Steinitz search is limited to k <= 9");
  Permutation p = identity(bag.size());
  do {
    if (steinitz_bound_holds(bag, p)) return p;
  } while (std::next_permutation(p.begin(), p.end()));
  return std::nullopt;
}

}  // namespace

bool steinitz_bound_holds(const VectorBag& bag, const Permutation& p) {
  const std::size_t k = bag.size(), d = bag.dim();
  if (!is_permutation_of(p, k)) return false;
  IntVec z = bag.sum(), S = zeros(d);
  Int kdm = bag.norm() * static_cast<unsigned long>(k * d);
  for (std::size_t n = 1; n <= k; ++n) {
    S = add(S, bag[p[n - 1]]);
    if (n >= d && !prefix_ok(S, z, n, k, d, kdm)) return false;
  }
  return true;
}

bool prefix_bound_holds(const VectorBag& bag, const Permutation& p) {
  const std::size_t k = bag.size(), d = bag.dim();
  if (!is_permutation_of(p, k)) return false;
  IntVec z = bag.sum(), S = zeros(d);
  Int md = bag.norm() * static_cast<unsigned long>(d);
  for (std::size_t n = 0; n <= k; ++n) {
    if (n > 0) S = add(S, bag[p[n - 1]]);
    for (std::size_t i = 0; i < d; ++i)
      if (S[i] < std::min(z[i], Int(0)) - md) return false;
  }
  return true;
}

std::optional<Permutation> steinitz_permutation(const VectorBag& bag, SteinitzMethod method) {
  switch (method) {
    case SteinitzMethod::Greedy:
      return greedy(bag);
    case SteinitzMethod::Constructive:
      return constructive(bag);
    case SteinitzMethod::BruteForce:
      return brute_force(bag);
    case SteinitzMethod::Auto:
      break;
  }
  if (auto p = greedy(bag)) return p;
  if (auto p = constructive(bag)) return p;
  if (bag.size() <= 7) return brute_force(bag);
  return std::nullopt;
}

Permutation prefix_safe_reorder(const VectorBag& bag) {
  auto p = steinitz_permutation(bag);
  if (!p || !prefix_bound_holds(bag, *p))
    throw std::logic_error("prefix_safe_reorder: no ordering meets the prefix bound");
  return *p;
}

Int prune_bound(const VectorBag& bag) {
  Int three_dm = bag.norm() * static_cast<unsigned long>(3 * bag.dim());
  return 2 * norm_1(bag.sum()) * power(three_dm, bag.dim());
}

namespace {

// One pass of the contiguous-run removal from the proof: returns true and
// shrinks J when a zero run between equal prefixes was found.
bool remove_steinitz_run(const VectorBag& bag, const IntVec& z, std::vector<std::size_t>& J) {
  const std::size_t d = bag.dim();
  // Flip coordinates so that z >= 0, then split z_j = e_j + v_j.
  std::vector<IntVec> e, v;
  IntVec c = zeros(d);
  for (auto j : J) {
    IntVec zj = bag[j], ej(d), cn(d);
    for (std::size_t i = 0; i < d; ++i) {
      if (z[i] < 0) zj[i] = -zj[i];
      Int zi = abs(z[i]);
      cn[i] = std::max<Int>(c[i], c[i] + zj[i]);
      ej[i] = std::min<Int>(zi, cn[i]) - std::min<Int>(zi, c[i]);
    }
    c = cn;
    v.push_back(sub(zj, ej));
    e.push_back(std::move(ej));
  }
  VectorBag vb(d, v);
  auto perm = steinitz_permutation(vb);
  if (!perm) throw std::logic_error("prune_zero_subsequences: no Steinitz ordering");
  std::vector<IntVec> x{zeros(d)};
  for (auto j : *perm) x.push_back(add(x.back(), v[j]));
  for (std::size_t p = 0; p < perm->size(); ++p) {
    std::size_t found = p;
    for (std::size_t q = p + 1; q <= perm->size(); ++q) {
      if (!is_zero(e[(*perm)[q - 1]])) break;
      if (x[q] == x[p]) found = q;
    }
    if (found > p) {
      std::vector<bool> drop(J.size(), false);
      for (std::size_t q = p; q < found; ++q) drop[(*perm)[q]] = true;
      std::vector<std::size_t> next;
      for (std::size_t j = 0; j < J.size(); ++j)
        if (!drop[j]) next.push_back(J[j]);
      J = std::move(next);
      return true;
    }
  }
  return false;
}

enum class SubsetSearch { Found, None, Budget };

SubsetSearch find_zero_subset(const VectorBag& bag, const std::vector<std::size_t>& J,
                              std::size_t budget, std::vector<std::size_t>& subset) {
  struct Node {
    std::size_t parent;
    std::size_t index;
  };
  std::vector<Node> nodes{{SIZE_MAX, SIZE_MAX}};  // node 0: the empty subset
  std::map<IntVec, std::size_t> seen{{zeros(bag.dim()), 0}};
  std::vector<IntVec> sums{zeros(bag.dim())};
  for (std::size_t pos = 0; pos < J.size(); ++pos) {
    const std::size_t count = nodes.size();
    for (std::size_t n = 0; n < count; ++n) {
      IntVec s = add(sums[n], bag[J[pos]]);
      if (is_zero(s)) {
        subset.clear();
        subset.push_back(J[pos]);
        for (std::size_t k = n; k != 0; k = nodes[k].parent) subset.push_back(nodes[k].index);
        std::sort(subset.begin(), subset.end());
        return SubsetSearch::Found;
      }
      if (seen.count(s)) continue;
      if (nodes.size() >= budget) return SubsetSearch::Budget;
      seen.emplace(s, nodes.size());
      nodes.push_back({n, J[pos]});
      sums.push_back(std::move(s));
    }
  }
  return SubsetSearch::None;
}

}  // namespace

PruneResult prune_zero_subsequences(const VectorBag& bag, std::size_t budget) {
  PruneResult res;
  IntVec z = bag.sum();
  if (is_zero(z)) {
    res.zero_sum_edge_case = true;
    res.minimal = true;
    res.bound_met = true;
    return res;
  }
  std::vector<std::size_t> J = identity(bag.size());
  while (remove_steinitz_run(bag, z, J)) {
  }
  for (;;) {
    std::vector<std::size_t> subset;
    auto r = find_zero_subset(bag, J, budget, subset);
    if (r == SubsetSearch::None) {
      res.minimal = true;
      break;
    }
    if (r == SubsetSearch::Budget) break;
    std::vector<std::size_t> next;
    std::set_difference(J.begin(), J.end(), subset.begin(), subset.end(), std::back_inserter(next));
    J = std::move(next);
  }
  res.kept = std::move(J);
  res.bound_met = Int(static_cast<unsigned long>(res.kept.size())) <= prune_bound(bag);
  return res;
}

}  // namespace mutreach
