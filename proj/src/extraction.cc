#include "mutreach/extraction.hh"

#include <algorithm>
#include <stdexcept>

namespace mutreach {

Extractor::Extractor(std::vector<Int> thresholds) : thresholds_(std::move(thresholds)) {
  if (thresholds_.size() < 2) throw std::invalid_argument("an extractor has d+2 >= 2 thresholds");
  for (std::size_t n = 0; n < thresholds_.size(); ++n) {
    if (thresholds_[n] <= 0) throw std::invalid_argument("extractor thresholds must be positive");
    if (n > 0 && thresholds_[n] < thresholds_[n - 1])
      throw std::invalid_argument("extractor thresholds must be non-decreasing");
  }
}

bool Extractor::m_adapted(const Int& m) const {
  for (std::size_t n = 0; n + 1 < thresholds_.size(); ++n)
    if (thresholds_[n + 1] < thresholds_[n] + m * power(thresholds_[n], n)) return false;
  return true;
}

Extractor exact_lambda(std::size_t d, const Int& m) {
  if (d < 1 || m < 1) throw std::invalid_argument("exact_lambda needs d >= 1 and m >= 1");
  std::vector<Int> lam{Int(1)};
  Int sum = 0;  // sum_{j=1}^n lambda_j^j
  for (std::size_t n = 0; n <= d; ++n) {
    const Int& ln = lam[n];
    if (n >= 1) sum += power(ln, n);
    Int inner = 3 * static_cast<unsigned long>(d) * power(ln, n) * m;
    lam.push_back(m * sum + m * power(ln, 3 * n) * power(inner, d));
  }
  return Extractor(std::move(lam));
}

Extractor minimal_adapted_extractor(std::size_t d, const Int& m, const Int& lambda0) {
  std::vector<Int> lam{lambda0};
  for (std::size_t n = 0; n <= d; ++n) lam.push_back(lam[n] + m * power(lam[n], n));
  return Extractor(std::move(lam));
}

bool lambda_bound_holds(const Extractor& lambda, const Int& m) {
  const std::size_t d = lambda.dim();
  Int base = 3 * static_cast<unsigned long>(d) * m;
  Int E = power(Int(static_cast<unsigned long>(d + 2)), 2 * d + 1);
  if (!E.fits_ulong_p()) throw std::overflow_error("bound exponent too large");
  unsigned long e = E.get_ui();
  const Int& ld = lambda[d];
  std::size_t bl = mpz_sizeinbase(ld.get_mpz_t(), 2);
  std::size_t bb = mpz_sizeinbase(base.get_mpz_t(), 2);
  // ld < 2^bl and base^E >= 2^(E (bb - 1)).
  if (Int(static_cast<unsigned long>(bl)) <= E * static_cast<unsigned long>(bb - 1)) return true;
  // ld >= 2^(bl - 1) and base^E < 2^(E bb).
  if (Int(static_cast<unsigned long>(bl - 1)) >= E * static_cast<unsigned long>(bb)) return false;
  return ld <= power(base, e);
}

IndexSet maximal_small_set(const Extractor& lambda, const IndexSet& I, const std::vector<Config>& C) {
  IndexSet J = I;
  for (;;) {
    IndexSet next;
    const Int& t = lambda[J.size()];
    for (auto j : J) {
      bool small = true;
      for (const auto& c : C)
        if (c.at(j) >= t) {
          small = false;
          break;
        }
      if (small) next.push_back(j);
    }
    if (next == J) return J;
    J = std::move(next);
  }
}

std::vector<IndexSet> extraction_prefixes(const Extractor& lambda, const IndexSet& I,
                                          const std::vector<Config>& e) {
  std::vector<IndexSet> out{I};
  for (const auto& c : e) out.push_back(maximal_small_set(lambda, out.back(), {c}));
  return out;
}

IndexSet extract_along_word(const Extractor& lambda, const IndexSet& I, const std::vector<Config>& e) {
  return extraction_prefixes(lambda, I, e).back();
}

Execution::Execution(const PetriNet& net, Config source, Word word) : word_(std::move(word)) {
  if (source.size() != net.dim() || !non_negative(source))
    throw std::invalid_argument("execution source is not a configuration");
  configs_.push_back(std::move(source));
  for (std::size_t j = 0; j < word_.size(); ++j) {
    if (!net.enabled(configs_.back(), word_[j]))
      throw std::invalid_argument("execution step " + std::to_string(j + 1) + " is blocked");
    configs_.push_back(net.successor(configs_.back(), word_[j]));
  }
}

namespace {

// One level over the coordinates D: configurations are e_0 = c[start] and
// e_j = c[steps[j-1]]; off-D coordinates of those are ignored.
void shorten_level(const Execution& e, const Extractor& lambda, const IndexSet& D, std::size_t start,
                   std::vector<std::size_t> steps, std::vector<std::size_t>& kept, IndexSet& I) {
  const auto& c = e.configs();
  std::vector<IndexSet> pre;
  std::size_t h = 0;
  for (;;) {
    std::vector<Config> seq{c[start]};
    for (auto s : steps) seq.push_back(c[s]);
    pre = extraction_prefixes(lambda, D, seq);
    h = 0;
    for (std::size_t n = 0; n < pre.size(); ++n)
      if (pre[n] == D) h = n;
    // Leftmost repeated configuration among e_0 .. e_{h-1}, cut to its last copy.
    bool cut = false;
    for (std::size_t p = 0; p < h && !cut; ++p) {
      IntVec ep = restrict_to(seq[p], D);
      for (std::size_t q = h - 1; q > p; --q)
        if (restrict_to(seq[q], D) == ep) {
          steps.erase(steps.begin() + static_cast<std::ptrdiff_t>(p),
                      steps.begin() + static_cast<std::ptrdiff_t>(q));
          cut = true;
          break;
        }
    }
    if (!cut) break;
  }
  const std::size_t r = steps.size();
  if (h == r + 1) {
    kept.insert(kept.end(), steps.begin(), steps.end());
    I = pre[r + 1];
    return;
  }
  kept.insert(kept.end(), steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(h));
  std::size_t next_start = h == 0 ? start : steps[h - 1];
  std::vector<std::size_t> rest(steps.begin() + static_cast<std::ptrdiff_t>(h), steps.end());
  shorten_level(e, lambda, pre[h + 1], next_start, std::move(rest), kept, I);
}

}  // namespace

RackoffResult rackoff_shorten(const PetriNet& net, const Execution& e, const Extractor& lambda) {
  const std::size_t d = net.dim();
  if (lambda.dim() != d) throw std::invalid_argument("extractor dimension differs from the net's");
  if (!lambda.m_adapted(net.norm())) throw std::invalid_argument("extractor is not m-adapted");
  RackoffResult res;
  std::vector<std::size_t> steps(e.word().size());
  for (std::size_t j = 0; j < steps.size(); ++j) steps[j] = j + 1;
  IndexSet level_I;
  shorten_level(e, lambda, full_index_set(d), 0, std::move(steps), res.kept, level_I);
  res.I = extract_along_word(lambda, full_index_set(d), e.configs());
  if (level_I != res.I) throw std::logic_error("rackoff_shorten: extraction changed by cycle removal");
  for (auto s : res.kept) res.word.push_back(e.word()[s - 1]);
  FireResult f = fire(net, e.source(), res.word);
  if (!f.ok)
    throw std::logic_error("rackoff_shorten: shortened word blocked at step " +
                           std::to_string(f.blocked_step));
  res.final_config = f.result;
  const Int& m = net.norm();
  res.length_bound = static_cast<unsigned long>(d) * power(lambda[d], d);
  std::size_t k = res.I.size();
  Int s1 = 0;
  for (std::size_t j = 1; j <= k; ++j) s1 += power(lambda[j], j);
  res.lower_bound_j1 = lambda[k + 1] - m * s1;
  res.lower_bound_j0 = lambda[k + 1] - m * (s1 + 1);
  res.meets_j0 = res.meets_j1 = true;
  for (std::size_t i = 0; i < d; ++i) {
    if (contains_index(res.I, i)) continue;
    if (res.final_config[i] < res.lower_bound_j0) res.meets_j0 = false;
    if (res.final_config[i] < res.lower_bound_j1) res.meets_j1 = false;
  }
  return res;
}

bool removes_only_i_cycles(const Execution& e, const std::vector<std::size_t>& kept,
                           const IndexSet& I) {
  const auto& c = e.configs();
  std::size_t prev = 0;  // config index after the last kept step
  for (auto s : kept) {
    if (s <= prev || s >= c.size()) return false;
    if (restrict_to(c[prev], I) != restrict_to(c[s - 1], I)) return false;
    prev = s;
  }
  return restrict_to(c[prev], I) == restrict_to(c.back(), I);
}

}  // namespace mutreach
