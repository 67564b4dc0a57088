#include "mutreach/unfolding.hh"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "mutreach/graph.hh"
#include "mutreach/lp.hh"

namespace mutreach {

struct UnfoldingBuilder {
  static Unfolding build(const PetriNet& net, const IndexSet& I, std::vector<IConfig> states,
                         std::vector<Transition> transitions) {
    Unfolding g;
    g.net_ = &net;
    g.index_set_ = I;
    g.states_ = std::move(states);
    g.transitions_ = std::move(transitions);
    g.out_.assign(g.states_.size(), {});
    for (std::size_t t = 0; t < g.transitions_.size(); ++t) g.out_[g.transitions_[t].src].push_back(t);
    return g;
  }
};

std::optional<std::size_t> Unfolding::state_index(const IConfig& q) const {
  auto it = std::lower_bound(states_.begin(), states_.end(), q);
  if (it == states_.end() || *it != q) return std::nullopt;
  return static_cast<std::size_t>(it - states_.begin());
}

namespace {

std::vector<std::vector<std::size_t>> adjacency(std::size_t n, const std::vector<Transition>& ts) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& t : ts) adj[t.src].push_back(t.dst);
  return adj;
}

bool steps_on_index_set(const PetriNet& net, const IndexSet& I, const IConfig& p, std::size_t a,
                        const IConfig& q) {
  const Action& act = net.action(a);
  for (std::size_t k = 0; k < I.size(); ++k) {
    if (p[k] < act.pre[I[k]]) return false;
    if (q[k] != p[k] + net.delta(a)[I[k]]) return false;
  }
  return true;
}

}  // namespace

UnfoldingCheck validate_unfolding(const PetriNet& net, const IndexSet& I,
                                  const std::vector<IConfig>& states,
                                  const std::vector<Transition>& transitions) {
  UnfoldingCheck res;
  for (std::size_t k = 0; k < I.size(); ++k)
    if (I[k] >= net.dim() || (k > 0 && I[k] <= I[k - 1])) {
      res.reason = "index set must be sorted, duplicate-free and within the dimension";
      return res;
    }
  if (states.empty()) {
    res.reason = "no states";
    return res;
  }
  for (const auto& s : states)
    if (s.size() != I.size() || !non_negative(s)) {
      res.reason = "state " + to_string(s) + " is not an I-configuration";
      return res;
    }
  std::vector<IConfig> sorted = states;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  auto idx = [&](const IConfig& q) {
    return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), q) - sorted.begin());
  };
  std::vector<Transition> ts;
  for (const auto& t : transitions) {
    if (t.src >= states.size() || t.dst >= states.size() || t.action >= net.size()) {
      res.reason = "transition refers to an unknown state or action";
      return res;
    }
    if (!steps_on_index_set(net, I, states[t.src], t.action, states[t.dst])) {
      res.reason = "transition " + to_string(states[t.src]) + " -a" + std::to_string(t.action + 1) +
                   "-> " + to_string(states[t.dst]) + " is not a step on I-configurations";
      return res;
    }
    ts.push_back({idx(states[t.src]), t.action, idx(states[t.dst])});
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  auto adj = adjacency(sorted.size(), ts);
  std::size_t ncomp = 0;
  auto comp = tarjan_scc(adj, &ncomp);
  if (ncomp != 1) {
    std::size_t other = 0;
    while (comp[other] == comp[0]) ++other;
    res.reason = "not strongly connected: " + to_string(sorted[0]) + " and " +
                 to_string(sorted[other]) + " are not mutually connected";
    return res;
  }
  res.unfolding = UnfoldingBuilder::build(net, I, std::move(sorted), std::move(ts));
  return res;
}

Unfolding make_unfolding(const PetriNet& net, const IndexSet& I, const std::vector<IConfig>& states,
                         const std::vector<Transition>& transitions) {
  auto r = validate_unfolding(net, I, states, transitions);
  if (!r.unfolding) throw std::invalid_argument("invalid unfolding: " + r.reason);
  return std::move(*r.unfolding);
}

std::size_t path_end(const Unfolding& g, const UPath& p) {
  return p.steps.empty() ? p.start : g.transitions()[p.steps.back()].dst;
}

Word path_word(const Unfolding& g, const UPath& p) {
  Word w;
  for (auto t : p.steps) w.push_back(g.transitions()[t].action);
  return w;
}

IntVec path_displacement(const Unfolding& g, const UPath& p) {
  IntVec s = zeros(g.net().dim());
  for (auto t : p.steps) s = add(s, g.delta(t));
  return s;
}

bool path_valid(const Unfolding& g, const UPath& p) {
  if (p.start >= g.num_states()) return false;
  std::size_t cur = p.start;
  for (auto t : p.steps) {
    if (t >= g.transitions().size() || g.transitions()[t].src != cur) return false;
    cur = g.transitions()[t].dst;
  }
  return true;
}

bool path_is_cycle(const Unfolding& g, const UPath& p) {
  return path_valid(g, p) && path_end(g, p) == p.start;
}

bool path_full_state(const Unfolding& g, const UPath& p) {
  std::vector<bool> seen(g.num_states(), false);
  seen[p.start] = true;
  for (auto t : p.steps) seen[g.transitions()[t].dst] = true;
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

UPath concat(const Unfolding& g, const UPath& a, const UPath& b) {
  if (path_end(g, a) != b.start) throw std::invalid_argument("paths do not compose");
  UPath r = a;
  r.steps.insert(r.steps.end(), b.steps.begin(), b.steps.end());
  return r;
}

std::optional<UPath> rotate_cycle(const Unfolding& g, const UPath& c, std::size_t state) {
  if (c.start == state) return c;
  for (std::size_t i = 0; i < c.steps.size(); ++i) {
    if (g.transitions()[c.steps[i]].src != state) continue;
    UPath r{state, {}};
    r.steps.insert(r.steps.end(), c.steps.begin() + static_cast<std::ptrdiff_t>(i), c.steps.end());
    r.steps.insert(r.steps.end(), c.steps.begin(), c.steps.begin() + static_cast<std::ptrdiff_t>(i));
    return r;
  }
  return std::nullopt;
}

namespace {

// Rows of the Euler system: conservation at each state, then zero total
// displacement per coordinate. Variables are the transitions in `ts`.
std::vector<RatVec> euler_rows(const PetriNet& net, std::size_t nstates,
                               const std::vector<Transition>& ts) {
  std::vector<RatVec> rows(nstates + net.dim(), RatVec(ts.size()));
  for (std::size_t j = 0; j < ts.size(); ++j) {
    if (ts[j].src != ts[j].dst) {
      rows[ts[j].src][j] += 1;
      rows[ts[j].dst][j] -= 1;
    }
    const IntVec& dl = net.delta(ts[j].action);
    for (std::size_t i = 0; i < net.dim(); ++i) rows[nstates + i][j] = dl[i];
  }
  return rows;
}

}  // namespace

ReversibilityResult is_structurally_reversible(const Unfolding& g) {
  ReversibilityResult r;
  auto sol = rational_lp_feasible(euler_rows(g.net(), g.num_states(), g.transitions()),
                                  g.transitions().size());
  r.reversible = sol.feasible;
  r.flow = std::move(sol.witness);
  return r;
}

namespace {

// Breadth-first search over (state, displacement) for a path from `from` to
// `to` such that initial + delta(path) = 0, entries clamped to [-clamp, clamp].
std::optional<UPath> cancel_search(const Unfolding& g, std::size_t from, std::size_t to,
                                   const IntVec& initial, const Int& clamp) {
  using Key = std::pair<std::size_t, IntVec>;
  std::map<Key, std::pair<Key, std::size_t>> parent;
  std::deque<Key> queue;
  Key start{from, initial};
  parent.emplace(start, std::make_pair(start, SIZE_MAX));
  queue.push_back(start);
  while (!queue.empty()) {
    Key cur = queue.front();
    queue.pop_front();
    if (cur.first == to && is_zero(cur.second)) {
      UPath p{from, {}};
      Key k = cur;
      while (parent.at(k).second != SIZE_MAX) {
        p.steps.push_back(parent.at(k).second);
        k = parent.at(k).first;
      }
      std::reverse(p.steps.begin(), p.steps.end());
      return p;
    }
    for (auto t : g.out(cur.first)) {
      IntVec nd = add(cur.second, g.delta(t));
      if (norm_inf(nd) > clamp) continue;
      Key nk{g.transitions()[t].dst, std::move(nd)};
      if (parent.count(nk)) continue;
      parent.emplace(nk, std::make_pair(cur, t));
      queue.push_back(std::move(nk));
    }
  }
  return std::nullopt;
}

}  // namespace

bool definitionally_reversible(const Unfolding& g, const Int& clamp) {
  for (std::size_t t = 0; t < g.transitions().size(); ++t) {
    const auto& tr = g.transitions()[t];
    if (!cancel_search(g, tr.dst, tr.src, g.delta(t), clamp)) return false;
  }
  return true;
}

CycleList simple_cycles(const Unfolding& g, std::size_t cap) {
  CycleList res;
  const std::size_t n = g.num_states();
  std::vector<bool> on_path(n, false);
  std::vector<std::size_t> steps;
  // Explicit DFS: frames of (vertex, next out-edge position).
  for (std::size_t root = 0; root < n && !res.truncated; ++root) {
    std::vector<std::pair<std::size_t, std::size_t>> frames{{root, 0}};
    on_path[root] = true;
    while (!frames.empty() && !res.truncated) {
      auto& [v, pos] = frames.back();
      if (pos == g.out(v).size()) {
        on_path[v] = false;
        frames.pop_back();
        if (!steps.empty()) steps.pop_back();
        continue;
      }
      std::size_t t = g.out(v)[pos++];
      std::size_t w = g.transitions()[t].dst;
      if (w == root) {
        if (res.cycles.size() == cap) {
          res.truncated = true;
          break;
        }
        UPath c{root, steps};
        c.steps.push_back(t);
        res.cycles.push_back(std::move(c));
      } else if (w > root && !on_path[w]) {
        on_path[w] = true;
        steps.push_back(t);
        frames.push_back({w, 0});
      }
    }
    std::fill(on_path.begin(), on_path.end(), false);
    steps.clear();
  }
  return res;
}

std::vector<IntVec> tree_cycle_generators(const Unfolding& g) {
  const std::size_t n = g.num_states(), d = g.net().dim();
  std::vector<std::optional<IntVec>> pot(n);
  pot[0] = zeros(d);
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (auto t : g.out(v)) {
      std::size_t w = g.transitions()[t].dst;
      if (pot[w]) continue;
      pot[w] = add(*pot[v], g.delta(t));
      queue.push_back(w);
    }
  }
  std::vector<IntVec> gens;
  for (std::size_t t = 0; t < g.transitions().size(); ++t) {
    const auto& tr = g.transitions()[t];
    IntVec v = sub(add(*pot[tr.src], g.delta(t)), *pot[tr.dst]);
    if (!is_zero(v)) gens.push_back(std::move(v));
  }
  return gens;
}

UnfoldingLattice lattice_of_unfolding(const Unfolding& g, std::size_t cycle_cap) {
  UnfoldingLattice res;
  const std::size_t d = g.net().dim();
  CycleList cl = simple_cycles(g, cycle_cap);
  std::vector<IntVec> gens;
  if (cl.truncated) {
    res.used_tree_generators = true;
    gens = tree_cycle_generators(g);
  } else {
    for (const auto& c : cl.cycles) {
      IntVec v = path_displacement(g, c);
      if (!is_zero(v)) gens.push_back(std::move(v));
    }
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  res.rep = representation_from_generators(gens, d);
  Int m = g.net().norm() * static_cast<unsigned long>(g.num_states());
  if (res.rep.norm() > representation_norm_bound(d, m))
    throw std::logic_error("lattice_of_unfolding: representation norm bound violated");
  return res;
}

UPath elementary_path(const Unfolding& g, std::size_t p, std::size_t q) {
  std::vector<std::size_t> via(g.num_states(), SIZE_MAX);
  std::vector<bool> seen(g.num_states(), false);
  std::deque<std::size_t> queue{p};
  seen[p] = true;
  while (!queue.empty() && !seen[q]) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (auto t : g.out(v)) {
      std::size_t w = g.transitions()[t].dst;
      if (seen[w]) continue;
      seen[w] = true;
      via[w] = t;
      queue.push_back(w);
    }
  }
  if (!seen[q]) throw std::logic_error("elementary_path: target unreachable");
  UPath path{p, {}};
  for (std::size_t v = q; v != p; v = g.transitions()[via[v]].src) path.steps.push_back(via[v]);
  std::reverse(path.steps.begin(), path.steps.end());
  return path;
}

LatticeCoset coset_between(const Unfolding& g, const LatticeRepresentation& lg, std::size_t p,
                           std::size_t q) {
  IntVec v = path_displacement(g, elementary_path(g, p, q));
  if (norm_inf(v) > g.net().norm() * static_cast<unsigned long>(g.num_states()))
    throw std::logic_error("coset_between: elementary displacement bound violated");
  return LatticeCoset{v, lg};
}

std::optional<UPath> reverse_path_for(const Unfolding& g, std::size_t t, const Int& bound) {
  const auto& tr = g.transitions().at(t);
  Int clamp = bound * g.net().norm();
  if (auto p = cancel_search(g, tr.dst, tr.src, g.delta(t), clamp)) return p;
  return std::nullopt;
}

ZeroCycleResult zero_full_state_cycle(const Unfolding& g, std::size_t anchor) {
  ZeroCycleResult res;
  const auto& ts = g.transitions();
  if (ts.empty()) {
    if (g.num_states() == 1) {
      res.cycle = UPath{anchor, {}};
    } else {
      res.diagnostics = "no transitions";
    }
    return res;
  }
  // Minimal total flow with every transition used at least once.
  LinearProgram lp;
  lp.num_vars = ts.size();
  for (auto& row : euler_rows(g.net(), g.num_states(), ts)) {
    Rational s = std::accumulate(row.begin(), row.end(), Rational(0));
    lp.rows.push_back({row, Rel::Eq, -s});
  }
  lp.objective.assign(ts.size(), Rational(-1));
  LpResult sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) {
    res.diagnostics = "unfolding is not structurally reversible: the Euler system has no positive solution";
    return res;
  }
  Int den = 1;
  for (auto& v : sol.x) {
    v += 1;
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
  }
  std::vector<Int> remaining(ts.size());
  for (std::size_t j = 0; j < ts.size(); ++j) remaining[j] = sol.x[j] * Rational(den);
  // Hierholzer on the multigraph with those multiplicities.
  std::vector<std::size_t> pos(g.num_states(), 0);
  std::vector<std::pair<std::size_t, std::size_t>> stack{{anchor, SIZE_MAX}};
  std::vector<std::size_t> circuit;
  while (!stack.empty()) {
    std::size_t v = stack.back().first;
    const auto& out = g.out(v);
    while (pos[v] < out.size() && remaining[out[pos[v]]] == 0) ++pos[v];
    if (pos[v] < out.size()) {
      std::size_t t = out[pos[v]];
      remaining[t] -= 1;
      stack.push_back({ts[t].dst, t});
    } else {
      if (stack.back().second != SIZE_MAX) circuit.push_back(stack.back().second);
      stack.pop_back();
    }
  }
  std::reverse(circuit.begin(), circuit.end());
  UPath c{anchor, std::move(circuit)};
  if (!path_is_cycle(g, c) || !path_full_state(g, c) || !is_zero(path_displacement(g, c))) {
    res.diagnostics = "Euler assembly failed";
    return res;
  }
  res.cycle = std::move(c);
  return res;
}

UPath embed_simple_cycle(const Unfolding& g, const UPath& zero_cycle, const UPath& simple,
                         std::size_t anchor) {
  auto rz = rotate_cycle(g, zero_cycle, simple.start);
  if (!rz) throw std::invalid_argument("embed_simple_cycle: no shared state");
  UPath joined = concat(g, simple, *rz);
  auto ra = rotate_cycle(g, joined, anchor);
  if (!ra) throw std::invalid_argument("embed_simple_cycle: anchor not visited");
  return *ra;
}

UnfoldingCheck unfolding_from_sccc(const PetriNet& net, const std::vector<Config>& C,
                                   const IndexSet& I) {
  std::set<Config> members(C.begin(), C.end());
  std::vector<IConfig> states;
  for (const auto& c : C) states.push_back(restrict_to(c, I));
  std::sort(states.begin(), states.end());
  states.erase(std::unique(states.begin(), states.end()), states.end());
  auto idx = [&](const IConfig& q) {
    return static_cast<std::size_t>(std::lower_bound(states.begin(), states.end(), q) - states.begin());
  };
  std::vector<Transition> ts;
  for (const auto& x : C)
    for (std::size_t a = 0; a < net.size(); ++a) {
      if (!net.enabled(x, a)) continue;
      Config y = net.successor(x, a);
      if (!members.count(y)) continue;
      ts.push_back({idx(restrict_to(x, I)), a, idx(restrict_to(y, I))});
    }
  return validate_unfolding(net, I, states, ts);
}

std::vector<IConfig> small_iconfigs(std::size_t k, const Int& B) {
  std::vector<IConfig> out;
  if (B <= 0) return out;
  unsigned long b = B.get_ui();
  IConfig cur(k, Int(0));
  for (;;) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (cur[i] + 1 < b) {
        cur[i] += 1;
        break;
      }
      cur[i] = 0;
      if (i == 0) return out;
    }
    if (k == 0) return out;
  }
}

std::vector<IndexSet> canonical_index_sets(std::size_t d) {
  std::vector<IndexSet> out;
  for (std::size_t c = 0; c <= d; ++c) {
    std::vector<bool> pick(d, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(c), true);
    // prev_permutation over a leading-true mask yields lexicographic subsets.
    do {
      IndexSet s;
      for (std::size_t i = 0; i < d; ++i)
        if (pick[i]) s.push_back(i);
      out.push_back(std::move(s));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return out;
}

namespace {

struct FullGraph {
  std::vector<IConfig> states;
  std::vector<Transition> transitions;
  std::vector<bool> escapes;  // some enabled action leaves the bound
};

FullGraph full_graph(const PetriNet& net, const IndexSet& I, const Int& B) {
  FullGraph f;
  f.states = small_iconfigs(I.size(), B);
  f.escapes.assign(f.states.size(), false);
  for (std::size_t p = 0; p < f.states.size(); ++p)
    for (std::size_t a = 0; a < net.size(); ++a) {
      const IConfig& s = f.states[p];
      bool en = true;
      IConfig q(I.size());
      for (std::size_t k = 0; k < I.size() && en; ++k) {
        if (s[k] < net.action(a).pre[I[k]]) en = false;
        q[k] = s[k] + net.delta(a)[I[k]];
      }
      if (!en) continue;
      auto it = std::lower_bound(f.states.begin(), f.states.end(), q);
      if (it == f.states.end() || *it != q) {
        f.escapes[p] = true;
        continue;
      }
      f.transitions.push_back({p, a, static_cast<std::size_t>(it - f.states.begin())});
    }
  return f;
}

Unfolding induced(const PetriNet& net, const IndexSet& I, const FullGraph& f,
                  const std::vector<std::size_t>& state_ids, const std::vector<std::size_t>& trans_ids) {
  std::vector<IConfig> states;
  std::map<std::size_t, std::size_t> local;
  for (auto s : state_ids) {
    local[s] = states.size();
    states.push_back(f.states[s]);
  }
  std::vector<Transition> ts;
  for (auto t : trans_ids) {
    const auto& tr = f.transitions[t];
    ts.push_back({local.at(tr.src), tr.action, local.at(tr.dst)});
  }
  return make_unfolding(net, I, states, ts);
}

// Transitions lying on some non-negative zero-displacement circulation of
// the subgraph (states, trans).
std::vector<std::size_t> max_support(const PetriNet& net, const FullGraph& f, bool full_I,
                                     const std::vector<std::size_t>& states,
                                     const std::vector<std::size_t>& trans) {
  std::map<std::size_t, std::size_t> local;
  for (auto s : states) local.emplace(s, local.size());
  std::vector<std::vector<std::size_t>> adj(states.size());
  for (auto t : trans) adj[local.at(f.transitions[t].src)].push_back(local.at(f.transitions[t].dst));
  auto comp = tarjan_scc(adj);
  std::vector<std::size_t> cand;
  for (auto t : trans)
    if (comp[local.at(f.transitions[t].src)] == comp[local.at(f.transitions[t].dst)]) cand.push_back(t);
  if (full_I || cand.empty()) return cand;

  std::vector<Transition> ts;
  for (auto t : cand) {
    const auto& tr = f.transitions[t];
    ts.push_back({local.at(tr.src), tr.action, local.at(tr.dst)});
  }
  std::vector<RatVec> base = euler_rows(net, states.size(), ts);
  std::vector<bool> in_support(cand.size(), false);
  for (;;) {
    LinearProgram lp;
    lp.num_vars = cand.size();
    for (const auto& r : base) lp.rows.push_back({r, Rel::Eq, 0});
    RatVec unknown(cand.size());
    bool any = false;
    for (std::size_t j = 0; j < cand.size(); ++j)
      if (!in_support[j]) {
        unknown[j] = 1;
        any = true;
      }
    if (!any) break;
    lp.rows.push_back({unknown, Rel::Ge, 1});
    LpResult r = solve_lp(lp);
    if (r.status == LpStatus::Infeasible) break;
    for (std::size_t j = 0; j < cand.size(); ++j)
      if (r.x[j] > 0) in_support[j] = true;
  }
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < cand.size(); ++j)
    if (in_support[j]) out.push_back(cand[j]);
  return out;
}

}  // namespace

UnfoldingStream enumerate_candidate_unfoldings(const PetriNet& net, const IndexSet& I,
                                               const Int& B, const EnumerationLimits& lim) {
  UnfoldingStream res;
  FullGraph f = full_graph(net, I, B);
  auto push = [&](Unfolding u) {
    if (res.unfoldings.size() == lim.max_results) {
      res.truncated = true;
      return false;
    }
    res.unfoldings.push_back(std::move(u));
    return true;
  };
  for (std::size_t s = 0; s < f.states.size(); ++s)
    if (!push(induced(net, I, f, {s}, {}))) return res;
  std::size_t nt = f.transitions.size();
  if (nt > lim.max_transitions) {
    res.truncated = true;
    nt = lim.max_transitions;
  }
  for (unsigned long long mask = 1; mask < (1ull << nt); ++mask) {
    std::vector<std::size_t> trans;
    std::set<std::size_t> sts;
    for (std::size_t t = 0; t < nt; ++t)
      if (mask & (1ull << t)) {
        trans.push_back(t);
        sts.insert(f.transitions[t].src);
        sts.insert(f.transitions[t].dst);
      }
    std::vector<std::size_t> sv(sts.begin(), sts.end());
    std::map<std::size_t, std::size_t> local;
    for (auto s : sv) local.emplace(s, local.size());
    std::vector<std::vector<std::size_t>> adj(sv.size());
    for (auto t : trans) adj[local[f.transitions[t].src]].push_back(local[f.transitions[t].dst]);
    if (!strongly_connected(adj)) continue;
    if (!push(induced(net, I, f, sv, trans))) return res;
  }
  return res;
}

UnfoldingStream enumerate_unfoldings(const PetriNet& net, const IndexSet& I, const Int& B,
                                     const EnumerationLimits& lim) {
  UnfoldingStream all = enumerate_candidate_unfoldings(net, I, B, lim);
  UnfoldingStream res;
  res.truncated = all.truncated;
  for (auto& u : all.unfoldings)
    if (is_structurally_reversible(u).reversible) res.unfoldings.push_back(std::move(u));
  return res;
}

std::vector<Unfolding> maximal_unfoldings(const PetriNet& net, const IndexSet& I, const Int& B) {
  FullGraph f = full_graph(net, I, B);
  const bool full_I = I.size() == net.dim();
  std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> work, done;
  std::vector<std::size_t> all_states(f.states.size()), all_trans(f.transitions.size());
  std::iota(all_states.begin(), all_states.end(), 0);
  std::iota(all_trans.begin(), all_trans.end(), 0);
  if (!all_states.empty()) work.push_back({all_states, all_trans});
  while (!work.empty()) {
    auto [states, trans] = std::move(work.back());
    work.pop_back();
    auto support = max_support(net, f, full_I, states, trans);
    std::map<std::size_t, std::size_t> local;
    for (auto s : states) local.emplace(s, local.size());
    std::vector<std::vector<std::size_t>> adj(states.size());
    for (auto t : support) adj[local.at(f.transitions[t].src)].push_back(local.at(f.transitions[t].dst));
    std::size_t ncomp = 0;
    auto comp = tarjan_scc(adj, &ncomp);
    if (ncomp == 1 && support.size() == trans.size()) {
      done.push_back({states, trans});
      continue;
    }
    std::vector<std::vector<std::size_t>> cs(ncomp), ct(ncomp);
    for (auto s : states) cs[comp[local.at(s)]].push_back(s);
    for (auto t : support) {
      std::size_t a = comp[local.at(f.transitions[t].src)];
      if (a == comp[local.at(f.transitions[t].dst)]) ct[a].push_back(t);
    }
    for (std::size_t c = 0; c < ncomp; ++c) work.push_back({cs[c], ct[c]});
  }
  // Deterministic order: by least state.
  std::sort(done.begin(), done.end());
  std::vector<Unfolding> out;
  for (const auto& [s, t] : done) out.push_back(induced(net, I, f, s, t));
  return out;
}

std::vector<Unfolding> forward_closed_unfoldings(const PetriNet& net, const IndexSet& I,
                                                 const Int& B) {
  FullGraph f = full_graph(net, I, B);
  auto adj = adjacency(f.states.size(), f.transitions);
  std::size_t ncomp = 0;
  auto comp = tarjan_scc(adj, &ncomp);
  std::vector<bool> closed(ncomp, true);
  for (std::size_t s = 0; s < f.states.size(); ++s)
    if (f.escapes[s]) closed[comp[s]] = false;
  for (const auto& t : f.transitions)
    if (comp[t.src] != comp[t.dst]) closed[comp[t.src]] = false;
  std::vector<std::vector<std::size_t>> cs(ncomp), ct(ncomp);
  for (std::size_t s = 0; s < f.states.size(); ++s) cs[comp[s]].push_back(s);
  for (std::size_t t = 0; t < f.transitions.size(); ++t)
    if (comp[f.transitions[t].src] == comp[f.transitions[t].dst]) ct[comp[f.transitions[t].src]].push_back(t);
  std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> picked;
  for (std::size_t c = 0; c < ncomp; ++c)
    if (closed[c]) picked.push_back({cs[c], ct[c]});
  std::sort(picked.begin(), picked.end());
  std::vector<Unfolding> out;
  for (const auto& [s, t] : picked) {
    Unfolding u = induced(net, I, f, s, t);
    if (I.size() == net.dim() || is_structurally_reversible(u).reversible) out.push_back(std::move(u));
  }
  return out;
}

std::string to_dot(const Unfolding& g) {
  std::string s = "digraph unfolding {\n  label=\"I=" + index_set_string(g.index_set()) + "\";\n";
  for (std::size_t i = 0; i < g.num_states(); ++i)
    s += "  s" + std::to_string(i) + " [label=\"" + to_string(g.states()[i]) + "\"];\n";
  for (std::size_t t = 0; t < g.transitions().size(); ++t) {
    const auto& tr = g.transitions()[t];
    s += "  s" + std::to_string(tr.src) + " -> s" + std::to_string(tr.dst) + " [label=\"a" +
         std::to_string(tr.action + 1) + " " + to_string(g.delta(t)) + "\"];\n";
  }
  return s + "}\n";
}

}  // namespace mutreach
