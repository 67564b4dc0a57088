#include "mutreach/witness.hh"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

#include "mutreach/linalg.hh"
#include "mutreach/oracle.hh"
#include "mutreach/steinitz.hh"

namespace mutreach {

Int certified_tau(std::size_t d, const Int& m, std::size_t r) {
  Int R = static_cast<unsigned long>(r);
  return m * R * R * R * power(3 * static_cast<unsigned long>(d) * R * m, d);
}

Int effective_tau(const PumpingParams& params, const Unfolding& g) {
  if (params.tau) return *params.tau;
  return certified_tau(g.net().dim(), g.net().norm(), g.num_states());
}

bool certified_for(const PumpingParams& params, const Unfolding& g) {
  return effective_tau(params, g) >= certified_tau(g.net().dim(), g.net().norm(), g.num_states());
}

CompletenessParameters completeness_parameters(std::size_t d, const Int& m) {
  CompletenessParameters p;
  std::string D = std::to_string(d), M = m.get_str();
  Int base = 3 * static_cast<unsigned long>(d) * m;
  Int E = power(Int(static_cast<unsigned long>(d + 2)), 2 * d + 1);
  p.b = "(3*" + D + "*" + M + ")^((" + D + "+2)^(2*" + D + "+1)) = " + base.get_str() + "^" + E.get_str();
  p.ell = D + "*b^" + D;
  p.s = "2*" + M + "*b^" + std::to_string(3 * d) + "*(3*" + D + "*b^" + D + "*" + M + ")^" + D;
  p.tau = M + "*r^3*(3*" + D + "*r*" + M + ")^" + D;
  if (base <= 1) {
    p.b_decimal_digits = 1;
    p.b_exact = base;
    return p;
  }
  double digits = E.get_d() * std::log10(base.get_d());
  p.b_decimal_digits = static_cast<std::size_t>(std::floor(digits)) + 1;
  if (p.b_decimal_digits <= 60) p.b_exact = power(base, E.get_ui());
  return p;
}

namespace {

// Minimal elements; the first of equal vectors is kept.
std::vector<std::size_t> antichain(const std::vector<IntVec>& vs) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < vs.size() && !dominated; ++j) {
      if (i == j || !leq(vs[j], vs[i])) continue;
      if (vs[j] != vs[i] || j < i) dominated = true;
    }
    if (!dominated) keep.push_back(i);
  }
  return keep;
}

}  // namespace

UpwardBasis upward_basis(const Unfolding& g, std::size_t q, const PumpingParams& params,
                         const Int& tau) {
  UpwardBasis res;
  const PetriNet& net = g.net();
  const IndexSet off = complement(g.index_set(), net.dim());
  struct Node {
    std::size_t state, depth, parent, trans;
    IntVec H, D;  // hurdle and displacement on off-I coordinates
  };
  std::vector<Node> nodes{{q, 0, SIZE_MAX, SIZE_MAX, zeros(off.size()), zeros(off.size())}};
  std::map<std::tuple<std::size_t, IntVec, IntVec>, std::size_t> seen;
  seen.emplace(std::make_tuple(q, nodes[0].H, nodes[0].D), 0);
  std::vector<std::size_t> cycles;
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    if (nodes[n].state == q) cycles.push_back(n);
    if (nodes[n].depth == params.cycle_length) continue;
    for (auto t : g.out(nodes[n].state)) {
      const Action& a = net.action(g.transitions()[t].action);
      Node nx{g.transitions()[t].dst, nodes[n].depth + 1, n, t, nodes[n].H, nodes[n].D};
      for (std::size_t k = 0; k < off.size(); ++k) {
        Int need = a.pre[off[k]] - nx.D[k];
        if (need > nx.H[k]) nx.H[k] = need;
        nx.D[k] += g.delta(t)[off[k]];
      }
      auto key = std::make_tuple(nx.state, nx.H, nx.D);
      if (seen.count(key)) continue;
      if (nodes.size() >= params.basis_budget) {
        res.truncated = true;
        break;
      }
      seen.emplace(std::move(key), nodes.size());
      nodes.push_back(std::move(nx));
    }
    if (res.truncated) break;
  }
  auto path_of = [&](std::size_t n) {
    UPath p{q, {}};
    for (; nodes[n].parent != SIZE_MAX; n = nodes[n].parent) p.steps.push_back(nodes[n].trans);
    std::reverse(p.steps.begin(), p.steps.end());
    return p;
  };
  // f(u): constraints from c^- -u-> c; g(v): from c -v-> c^+.
  std::vector<IntVec> fs, gs;
  for (auto n : cycles) {
    IntVec f(off.size()), h(off.size());
    for (std::size_t k = 0; k < off.size(); ++k) {
      const Int& H = nodes[n].H[k];
      const Int& D = nodes[n].D[k];
      f[k] = std::max(Int(H + D), Int(D + tau));
      h[k] = std::max(H, Int(tau - D));
    }
    fs.push_back(std::move(f));
    gs.push_back(std::move(h));
  }
  auto fmin = antichain(fs), gmin = antichain(gs);
  std::vector<IntVec> combined;
  std::vector<std::pair<std::size_t, std::size_t>> source;
  for (auto i : fmin)
    for (auto j : gmin) {
      IntVec c(net.dim());
      const IntVec& state = g.states()[q];
      for (std::size_t k = 0; k < g.index_set().size(); ++k) c[g.index_set()[k]] = state[k];
      for (std::size_t k = 0; k < off.size(); ++k) c[off[k]] = std::max(fs[i][k], gs[j][k]);
      combined.push_back(std::move(c));
      source.push_back({cycles[i], cycles[j]});
    }
  for (auto k : antichain(combined))
    res.elements.push_back({combined[k], path_of(source[k].first), path_of(source[k].second)});
  std::sort(res.elements.begin(), res.elements.end(),
            [](const BasisElement& a, const BasisElement& b) { return a.c < b.c; });
  return res;
}

std::optional<std::size_t> membership_upward(const std::vector<BasisElement>& basis, const IntVec& c) {
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (leq(basis[k].c, c)) return k;
  return std::nullopt;
}

bool membership_upward(const std::vector<IntVec>& basis, const IntVec& c) {
  return std::any_of(basis.begin(), basis.end(), [&](const IntVec& m) { return leq(m, c); });
}

WitnessCheck check_witness(const PetriNet& net, const std::vector<Config>& C, const Unfolding& g,
                           const PumpingParams& params) {
  WitnessCheck res;
  res.structural = true;
  if (C.empty()) {
    res.reason = "empty configuration set";
    return res;
  }
  if (!is_structurally_reversible(g).reversible) {
    res.reason = "unfolding is not structurally reversible";
    return res;
  }
  const IndexSet& I = g.index_set();
  std::vector<std::size_t> states;
  for (const auto& c : C) {
    if (c.size() != net.dim() || !non_negative(c)) {
      res.reason = "not a configuration: " + to_string(c);
      return res;
    }
    auto s = g.state_index(restrict_to(c, I));
    if (!s) {
      res.reason = "state " + to_string(restrict_to(c, I)) + " of " + to_string(c) + " is not in the unfolding";
      return res;
    }
    states.push_back(*s);
  }
  LatticeRepresentation lat = lattice_of_unfolding(g).rep;
  std::vector<PairCertificate> pairs;
  std::map<std::pair<std::size_t, std::size_t>, UPath> paths;
  for (std::size_t i = 0; i < C.size(); ++i)
    for (std::size_t j = 0; j < C.size(); ++j) {
      if (i == j) continue;
      auto key = std::make_pair(states[i], states[j]);
      if (!paths.count(key)) paths.emplace(key, elementary_path(g, states[i], states[j]));
      const UPath& pi = paths.at(key);
      IntVec off = path_displacement(g, pi);
      if (!lat.contains(sub(sub(C[j], C[i]), off))) {
        res.reason = "coset condition fails: " + to_string(C[j]) + " - " + to_string(C[i]) +
                     " is not in the coset through " + to_string(off);
        return res;
      }
      pairs.push_back({i, j, pi, off});
    }
  res.structural = false;
  Int tau = effective_tau(params, g);
  std::map<std::size_t, UpwardBasis> bases;
  std::vector<ConfigCertificate> certs;
  for (std::size_t i = 0; i < C.size(); ++i) {
    if (!bases.count(states[i])) bases.emplace(states[i], upward_basis(g, states[i], params, tau));
    const UpwardBasis& ub = bases.at(states[i]);
    auto k = membership_upward(ub.elements, C[i]);
    if (!k) {
      res.reason = "pumping condition fails: " + to_string(C[i]) + " is not in U at state " +
                   to_string(g.states()[states[i]]) + (ub.truncated ? " (basis truncated)" : "");
      return res;
    }
    certs.push_back({C[i], states[i], ub.elements[*k]});
  }
  MutualWitness w{g, lat, tau, certified_for(params, g), std::move(certs), std::move(pairs)};
  res.witness = std::move(w);
  return res;
}

bool revalidate_witness(const PetriNet& net, const MutualWitness& w, std::string* reason) {
  auto fail = [&](const std::string& r) {
    if (reason) *reason = r;
    return false;
  };
  const Unfolding& g = w.unfolding;
  if (!is_structurally_reversible(g).reversible) return fail("unfolding is not structurally reversible");
  const IndexSet& I = g.index_set();
  const IndexSet off = complement(I, net.dim());
  for (const auto& cc : w.configs) {
    auto s = g.state_index(restrict_to(cc.config, I));
    if (!s || *s != cc.state) return fail("state mismatch for " + to_string(cc.config));
    const UPath& u = cc.pumping.u;
    const UPath& v = cc.pumping.v;
    if (!path_is_cycle(g, u) || u.start != cc.state) return fail("u is not a cycle on the state");
    if (!path_is_cycle(g, v) || v.start != cc.state) return fail("v is not a cycle on the state");
    Word uw = path_word(g, u), vw = path_word(g, v);
    IntVec du = displacement(net, uw), dv = displacement(net, vw);
    Config cminus = sub(cc.config, du);
    if (!fire(net, cminus, uw).ok) return fail("u does not fire into " + to_string(cc.config));
    if (!fire(net, cc.config, vw).ok) return fail("v does not fire from " + to_string(cc.config));
    IntVec cplus = add(cc.config, dv);
    for (auto i : off)
      if (cminus[i] < w.tau || cplus[i] < w.tau) return fail("pumping threshold not met at " + to_string(cc.config));
  }
  LatticeRepresentation lat = lattice_of_unfolding(g).rep;
  std::map<std::pair<std::size_t, std::size_t>, bool> covered;
  for (const auto& pc : w.pairs) {
    if (pc.from >= w.configs.size() || pc.to >= w.configs.size()) return fail("pair index out of range");
    std::size_t p = w.configs[pc.from].state, q = w.configs[pc.to].state;
    if (!path_valid(g, pc.path) || pc.path.start != p || path_end(g, pc.path) != q)
      return fail("pair path does not connect the states");
    if (path_displacement(g, pc.path) != pc.offset) return fail("pair offset is not the path displacement");
    if (!lat.contains(sub(sub(w.configs[pc.to].config, w.configs[pc.from].config), pc.offset)))
      return fail("coset condition fails");
    covered[{pc.from, pc.to}] = true;
  }
  for (std::size_t i = 0; i < w.configs.size(); ++i)
    for (std::size_t j = 0; j < w.configs.size(); ++j)
      if (i != j && !covered.count({i, j})) return fail("missing pair certificate");
  bool cert = w.tau >= certified_tau(net.dim(), net.norm(), g.num_states());
  if (cert != w.certified) return fail("certified flag does not match tau");
  return true;
}

namespace {

void put_path(std::ostringstream& os, const UPath& p) {
  os << p.start << " " << p.steps.size();
  for (auto t : p.steps) os << " " << t;
}

void put_vec(std::ostringstream& os, const IntVec& v) {
  for (const auto& x : v) os << " " << x.get_str();
}

struct Tokens {
  std::istringstream in;
  explicit Tokens(const std::string& s) : in(s) {}
  std::string next() {
    std::string t;
    if (!(in >> t)) throw std::invalid_argument("witness: unexpected end of input");
    return t;
  }
  void expect(const std::string& kw) {
    std::string t = next();
    if (t != kw) throw std::invalid_argument("witness: expected '" + kw + "', got '" + t + "'");
  }
  std::size_t size() {
    std::string t = next();
    std::size_t pos = 0;
    unsigned long v = std::stoul(t, &pos);
    if (pos != t.size()) throw std::invalid_argument("witness: bad count '" + t + "'");
    return v;
  }
  Int integer() { return parse_int(next()); }
  IntVec vec(std::size_t n) {
    IntVec v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(integer());
    return v;
  }
  UPath path() {
    UPath p;
    p.start = size();
    std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) p.steps.push_back(size());
    return p;
  }
};

}  // namespace

std::string serialize_witness(const MutualWitness& w) {
  const Unfolding& g = w.unfolding;
  std::ostringstream os;
  os << "mutreach-witness 1\n";
  os << "dim " << g.net().dim() << "\n";
  os << "index-set " << g.index_set().size();
  for (auto i : g.index_set()) os << " " << i + 1;
  os << "\ntau " << w.tau.get_str() << "\ncertified " << (w.certified ? 1 : 0) << "\n";
  os << "states " << g.num_states() << "\n";
  for (const auto& s : g.states()) {
    os << "state";
    put_vec(os, s);
    os << "\n";
  }
  os << "transitions " << g.transitions().size() << "\n";
  for (const auto& t : g.transitions())
    os << "transition " << t.src << " " << t.action + 1 << " " << t.dst << "\n";
  os << "configs " << w.configs.size() << "\n";
  for (const auto& c : w.configs) {
    os << "config";
    put_vec(os, c.config);
    os << " state " << c.state << " u ";
    put_path(os, c.pumping.u);
    os << " v ";
    put_path(os, c.pumping.v);
    os << "\n";
  }
  os << "pairs " << w.pairs.size() << "\n";
  for (const auto& p : w.pairs) {
    os << "pair " << p.from << " " << p.to << " path ";
    put_path(os, p.path);
    os << "\n";
  }
  os << "end\n";
  return os.str();
}

MutualWitness parse_witness(const PetriNet& net, const std::string& text) {
  Tokens tk(text);
  tk.expect("mutreach-witness");
  tk.expect("1");
  tk.expect("dim");
  if (tk.size() != net.dim()) throw std::invalid_argument("witness: dimension differs from the net's");
  tk.expect("index-set");
  IndexSet I;
  for (std::size_t n = tk.size(), k = 0; k < n; ++k) {
    std::size_t i = tk.size();
    if (i == 0 || i > net.dim()) throw std::invalid_argument("witness: index out of range");
    I.push_back(i - 1);
  }
  tk.expect("tau");
  Int tau = tk.integer();
  tk.expect("certified");
  bool certified = tk.size() != 0;
  tk.expect("states");
  std::vector<IConfig> states;
  for (std::size_t n = tk.size(), k = 0; k < n; ++k) {
    tk.expect("state");
    states.push_back(tk.vec(I.size()));
  }
  tk.expect("transitions");
  std::vector<Transition> ts;
  for (std::size_t n = tk.size(), k = 0; k < n; ++k) {
    tk.expect("transition");
    Transition t;
    t.src = tk.size();
    std::size_t a = tk.size();
    if (a == 0) throw std::invalid_argument("witness: actions are 1-based");
    t.action = a - 1;
    t.dst = tk.size();
    ts.push_back(t);
  }
  Unfolding g = make_unfolding(net, I, states, ts);
  if (g.states() != states || g.transitions().size() != ts.size())
    throw std::invalid_argument("witness: unfolding is not in canonical order");
  std::vector<ConfigCertificate> configs;
  tk.expect("configs");
  for (std::size_t n = tk.size(), k = 0; k < n; ++k) {
    tk.expect("config");
    ConfigCertificate cc;
    cc.config = tk.vec(net.dim());
    tk.expect("state");
    cc.state = tk.size();
    tk.expect("u");
    cc.pumping.u = tk.path();
    tk.expect("v");
    cc.pumping.v = tk.path();
    configs.push_back(std::move(cc));
  }
  std::vector<PairCertificate> pairs;
  tk.expect("pairs");
  for (std::size_t n = tk.size(), k = 0; k < n; ++k) {
    tk.expect("pair");
    PairCertificate pc;
    pc.from = tk.size();
    pc.to = tk.size();
    tk.expect("path");
    pc.path = tk.path();
    if (!path_valid(g, pc.path)) throw std::invalid_argument("witness: invalid pair path");
    pc.offset = path_displacement(g, pc.path);
    pairs.push_back(std::move(pc));
  }
  tk.expect("end");
  LatticeRepresentation lat = lattice_of_unfolding(g).rep;
  MutualWitness w{std::move(g), std::move(lat), tau, certified, std::move(configs), std::move(pairs)};
  // Recompute c_{u,v}; revalidation checks the pumping conditions directly.
  for (auto& cc : w.configs) {
    if (!path_valid(w.unfolding, cc.pumping.u) || !path_valid(w.unfolding, cc.pumping.v))
      throw std::invalid_argument("witness: invalid pumping path");
    Word uw = path_word(w.unfolding, cc.pumping.u), vw = path_word(w.unfolding, cc.pumping.v);
    cc.pumping.c = vmax(hurdle(net, vw), add(hurdle(net, uw), displacement(net, uw)));
  }
  return w;
}

SearchResult search_witness(const PetriNet& net, const Config& x, const Config& y,
                            const PumpingParams& params) {
  SearchResult res;
  const std::size_t d = net.dim();
  if (x.size() != d || y.size() != d || !non_negative(x) || !non_negative(y))
    throw std::invalid_argument("search_witness: arguments are not configurations");
  if (x == y) {
    Unfolding g = make_unfolding(net, full_index_set(d), {x}, {});
    WitnessCheck chk = check_witness(net, {x}, g, params);
    if (!chk.witness) throw std::logic_error("singleton witness rejected: " + chk.reason);
    res.status = SearchStatus::Found;
    res.witness = std::move(chk.witness);
    return res;
  }
  bool all_structural = true;
  for (Int b = 1; b <= params.state_bound; ++b)
    for (const auto& I : canonical_index_sets(d)) {
      IConfig p = restrict_to(x, I), q = restrict_to(y, I);
      if (!I.empty() && (norm_inf(p) >= b || norm_inf(q) >= b)) continue;
      std::string where = "B=" + b.get_str() + " I=" + index_set_string(I) + ": ";
      bool hosted = false;
      for (const auto& g : maximal_unfoldings(net, I, b)) {
        if (!g.state_index(p) || !g.state_index(q)) continue;
        hosted = true;
        WitnessCheck chk = check_witness(net, {x, y}, g, params);
        if (chk.witness) {
          res.status = SearchStatus::Found;
          res.witness = std::move(chk.witness);
          res.log.push_back(where + "accepted");
          return res;
        }
        if (!chk.structural) all_structural = false;
        res.log.push_back(where + chk.reason);
      }
      if (!hosted) res.log.push_back(where + "no structurally reversible unfolding holds both states");
    }
  res.status = all_structural ? SearchStatus::Exhausted : SearchStatus::Inconclusive;
  return res;
}

namespace {

// Closed walks whose displacements generate L_G: the simple cycles, or
// when there are too many, tree walks through each transition and each state.
std::vector<UPath> lattice_walks(const Unfolding& g) {
  CycleList cl = simple_cycles(g, 5000);
  if (!cl.truncated) return cl.cycles;
  std::vector<UPath> walks;
  const std::size_t root = 0;
  for (std::size_t t = 0; t < g.transitions().size(); ++t) {
    const auto& tr = g.transitions()[t];
    UPath w = elementary_path(g, root, tr.src);
    w.steps.push_back(t);
    walks.push_back(concat(g, w, elementary_path(g, tr.dst, root)));
  }
  for (std::size_t s = 0; s < g.num_states(); ++s)
    walks.push_back(concat(g, elementary_path(g, root, s), elementary_path(g, s, root)));
  return walks;
}

std::vector<UPath> split_simple(const Unfolding& g, const UPath& walk) {
  std::vector<UPath> out;
  std::vector<std::size_t> st{walk.start}, ed;
  std::map<std::size_t, std::size_t> pos{{walk.start, 0}};
  for (auto t : walk.steps) {
    ed.push_back(t);
    std::size_t v = g.transitions()[t].dst;
    auto it = pos.find(v);
    if (it == pos.end()) {
      pos[v] = st.size();
      st.push_back(v);
      continue;
    }
    std::size_t k = it->second;
    out.push_back(UPath{v, std::vector<std::size_t>(ed.begin() + static_cast<std::ptrdiff_t>(k), ed.end())});
    ed.resize(k);
    for (std::size_t j = k + 1; j < st.size(); ++j) pos.erase(st[j]);
    st.resize(k + 1);
  }
  return out;
}

// A cycle on q with displacement z, assembled from simple cycles ordered so
// that partial sums stay close to the line towards z.
std::optional<UPath> build_theta(const Unfolding& g, std::size_t q, const IntVec& z, std::string& why) {
  if (is_zero(z)) return UPath{q, {}};
  const std::size_t d = g.net().dim();
  auto zero = zero_full_state_cycle(g, q);
  if (!zero.cycle) {
    why = zero.diagnostics;
    return std::nullopt;
  }
  std::vector<UPath> walks = lattice_walks(g);
  std::vector<IntVec> cols;
  for (const auto& w : walks) cols.push_back(path_displacement(g, w));
  auto h = cols.empty() ? std::nullopt : solve_integer(IntMatrix::from_columns(cols, d), z);
  if (!h) {
    why = "displacement " + to_string(z) + " is not in the lattice of the unfolding";
    return std::nullopt;
  }
  std::map<std::size_t, UPath> reverse;  // per transition: a return path cancelling it
  auto reverse_of = [&](std::size_t t) -> const UPath& {
    auto it = reverse.find(t);
    if (it != reverse.end()) return it->second;
    auto r = reverse_path_for(g, t, Int(static_cast<unsigned long>(g.num_states() + 2)));
    if (!r) {
      const auto& zs = zero.cycle->steps;
      std::size_t i = std::find(zs.begin(), zs.end(), t) - zs.begin();
      UPath rho{g.transitions()[t].dst, {}};
      rho.steps.insert(rho.steps.end(), zs.begin() + static_cast<std::ptrdiff_t>(i) + 1, zs.end());
      rho.steps.insert(rho.steps.end(), zs.begin(), zs.begin() + static_cast<std::ptrdiff_t>(i));
      r = rho;
    }
    return reverse.emplace(t, *r).first->second;
  };
  std::vector<UPath> pieces;
  for (std::size_t c = 0; c < walks.size(); ++c) {
    const Int& hc = (*h)[c];
    if (hc == 0) continue;
    UPath w = walks[c];
    if (hc < 0) {
      UPath rev{w.start, {}};
      for (auto it = w.steps.rbegin(); it != w.steps.rend(); ++it) {
        const UPath& r = reverse_of(*it);
        rev.steps.insert(rev.steps.end(), r.steps.begin(), r.steps.end());
      }
      w = std::move(rev);
    }
    auto simple = split_simple(g, w);
    for (Int k = 0; k < abs(hc); ++k) pieces.insert(pieces.end(), simple.begin(), simple.end());
  }
  std::vector<IntVec> vs;
  for (const auto& p : pieces) vs.push_back(path_displacement(g, p));
  VectorBag bag(d, vs);
  PruneResult pr = prune_zero_subsequences(bag, 20000);
  std::vector<IntVec> kept_vs;
  for (auto j : pr.kept) kept_vs.push_back(vs[j]);
  VectorBag kept(d, kept_vs);
  Permutation order = prefix_safe_reorder(kept);
  UPath theta{q, {}};
  for (auto j : order) {
    UPath e = embed_simple_cycle(g, *zero.cycle, pieces[pr.kept[j]], q);
    theta.steps.insert(theta.steps.end(), e.steps.begin(), e.steps.end());
  }
  if (path_displacement(g, theta) != z) {
    why = "assembled cycle has the wrong displacement";
    return std::nullopt;
  }
  return theta;
}

}  // namespace

SynthesisResult synthesize_path(const PetriNet& net, const MutualWitness& w, std::size_t from,
                                std::size_t to) {
  SynthesisResult res;
  const Unfolding& g = w.unfolding;
  const auto& cx = w.configs.at(from);
  const auto& cy = w.configs.at(to);
  const UPath& alpha = cx.pumping.v;
  const UPath& beta = cy.pumping.u;
  UPath pi = elementary_path(g, cx.state, cy.state);
  Config xplus = add(cx.config, path_displacement(g, alpha));
  Config yminus = sub(cy.config, path_displacement(g, beta));
  IntVec z = sub(sub(yminus, xplus), path_displacement(g, pi));
  auto theta = build_theta(g, cy.state, z, res.diagnostics);
  if (!theta) return res;
  for (const UPath* p : std::initializer_list<const UPath*>{&alpha, &pi, &*theta, &beta}) {
    Word part = path_word(g, *p);
    res.word.insert(res.word.end(), part.begin(), part.end());
  }
  res.alpha_length = alpha.steps.size();
  res.pi_length = pi.steps.size();
  res.theta_length = theta->steps.size();
  res.beta_length = beta.steps.size();
  FireResult f = fire(net, cx.config, res.word);
  if (!f.ok) {
    res.blocked_step = f.blocked_step;
    res.diagnostics = "word blocked at step " + std::to_string(f.blocked_step) +
                      " (thresholds too small for this pair)";
    return res;
  }
  if (f.result != cy.config) {
    res.diagnostics = "word reaches " + to_string(f.result) + " instead of " + to_string(cy.config);
    return res;
  }
  res.ok = true;
  return res;
}

ProbeReport completeness_probe(const PetriNet& net, const std::vector<unsigned long>& box) {
  ProbeReport rep;
  BoxSpace space(net, box);
  PumpingParams params;
  for (std::size_t k = 0; k < space.num_components(); ++k) {
    if (!space.exact(k)) continue;
    std::vector<Config> C;
    for (auto id : space.members(k)) C.push_back(space.config(id));
    ++rep.checked;
    auto u = unfolding_from_sccc(net, C, full_index_set(net.dim()));
    if (!u.unfolding) {
      rep.failures.push_back(to_string(C.front()) + ": " + u.reason);
      continue;
    }
    WitnessCheck chk = check_witness(net, C, *u.unfolding, params);
    if (!chk.witness) rep.failures.push_back(to_string(C.front()) + ": " + chk.reason);
  }
  return rep;
}

}  // namespace mutreach
