#include "mutreach/presburger.hh"

#include <algorithm>
#include <atomic>
#include <functional>
#include <stdexcept>
#include <thread>

#include "mutreach/unfolding.hh"

namespace mutreach {

namespace {

bool index_set_less(const IndexSet& a, const IndexSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// Runs job(k) for k in [0, n) on up to `workers` threads.
void run_jobs(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& job) {
  workers = std::max<std::size_t>(1, std::min(workers, n));
  if (workers == 1) {
    for (std::size_t k = 0; k < n; ++k) job(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t k; (k = next.fetch_add(1)) < n;) job(k);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

struct Shard {
  IndexSet I;
  Int bound;
};

std::vector<Shard> shards(std::size_t d, const Int& B) {
  std::vector<Shard> out;
  for (Int b = 1; b <= B; ++b)
    for (const auto& I : canonical_index_sets(d)) out.push_back({I, b});
  return out;
}

Formula at_least_vec(std::size_t nvars, std::size_t offset, const IntVec& w) {
  std::vector<Formula> parts;
  for (std::size_t i = 0; i < w.size(); ++i) parts.push_back(Formula::at_least(nvars, offset + i, w[i]));
  if (parts.empty()) return Formula::top();
  return Formula::conj(std::move(parts));
}

Formula any_of(std::vector<Formula> parts) {
  if (parts.empty()) return Formula::bottom();
  return Formula::disj(std::move(parts));
}

Formula all_of(std::vector<Formula> parts) {
  if (parts.empty()) return Formula::top();
  return Formula::conj(std::move(parts));
}

}  // namespace

bool MutualDisjunct::holds(const Config& x, const Config& y) const {
  if (!leq(a, x) || !leq(b, y)) return false;
  for (auto i : I)
    if (x[i] != a[i] || y[i] != b[i]) return false;
  return gamma.contains(sub(sub(y, x), v));
}

bool MutualDisjunct::operator<(const MutualDisjunct& o) const {
  if (I != o.I) return index_set_less(I, o.I);
  if (a != o.a) return a < o.a;
  if (b != o.b) return b < o.b;
  if (v != o.v) return v < o.v;
  return gamma.serialize() < o.gamma.serialize();
}

bool MutualDisjunct::operator==(const MutualDisjunct& o) const {
  return I == o.I && a == o.a && b == o.b && v == o.v && gamma == o.gamma;
}

MutualFormula compile_mutual(const PetriNet& net, const CompileParams& params) {
  const std::size_t d = net.dim();
  const auto jobs = shards(d, params.pumping.state_bound);
  struct Out {
    std::vector<MutualDisjunct> ds;
    bool complete = true;
  };
  std::vector<Out> outs(jobs.size());
  std::atomic<std::size_t> total{0};
  run_jobs(jobs.size(), params.workers, [&](std::size_t k) {
    Out& out = outs[k];
    for (const auto& g : maximal_unfoldings(net, jobs[k].I, jobs[k].bound)) {
      LatticeRepresentation lat = lattice_of_unfolding(g).rep;
      Int tau = effective_tau(params.pumping, g);
      bool cert = certified_for(params.pumping, g);
      std::vector<std::vector<IntVec>> bases(g.num_states());
      for (std::size_t q = 0; q < g.num_states(); ++q) {
        UpwardBasis ub = upward_basis(g, q, params.pumping, tau);
        if (ub.truncated) out.complete = false;
        for (auto& e : ub.elements) bases[q].push_back(std::move(e.c));
      }
      for (std::size_t p = 0; p < g.num_states(); ++p)
        for (std::size_t q = 0; q < g.num_states(); ++q) {
          IntVec v = path_displacement(g, elementary_path(g, p, q));
          std::size_t n = bases[p].size() * bases[q].size();
          if (total.fetch_add(n) + n > params.max_disjuncts) {
            out.complete = false;
            return;
          }
          for (const auto& a : bases[p])
            for (const auto& b : bases[q]) out.ds.push_back({jobs[k].I, a, b, v, lat, cert});
        }
    }
  });
  MutualFormula f;
  f.dim = d;
  for (auto& o : outs) {
    f.complete = f.complete && o.complete;
    f.disjuncts.insert(f.disjuncts.end(), std::make_move_iterator(o.ds.begin()),
                       std::make_move_iterator(o.ds.end()));
  }
  std::sort(f.disjuncts.begin(), f.disjuncts.end());
  std::vector<MutualDisjunct> uniq;
  for (auto& dj : f.disjuncts) {
    if (!uniq.empty() && uniq.back() == dj) {
      uniq.back().certified = uniq.back().certified || dj.certified;
      continue;
    }
    uniq.push_back(std::move(dj));
  }
  f.disjuncts = std::move(uniq);
  f.certified = !f.disjuncts.empty();
  for (const auto& dj : f.disjuncts) f.certified = f.certified && dj.certified;
  return f;
}

bool eval_mutual(const MutualFormula& f, const Config& x, const Config& y) {
  if (x.size() != f.dim || y.size() != f.dim) throw std::invalid_argument("eval_mutual: dimension mismatch");
  for (const auto& dj : f.disjuncts)
    if (dj.holds(x, y)) return true;
  return false;
}

Formula disjunct_formula(const MutualDisjunct& dj, std::size_t d) {
  const std::size_t n = 2 * d;
  std::vector<Formula> parts;
  for (int side = 0; side < 2; ++side) {
    const IntVec& w = side == 0 ? dj.a : dj.b;
    for (std::size_t i = 0; i < d; ++i) {
      IntVec c = zeros(n);
      c[side * d + i] = 1;
      parts.push_back(Formula::compare(std::move(c), contains_index(dj.I, i) ? CmpRel::Eq : CmpRel::Ge, w[i]));
    }
  }
  for (const auto& pr : dj.gamma.pairs()) {
    if (pr.n == 1) continue;  // always satisfied
    IntVec c = zeros(n);
    for (std::size_t i = 0; i < d; ++i) {
      c[i] = -pr.a[i];
      c[d + i] = pr.a[i];
    }
    Int k = dot(pr.a, dj.v);
    if (pr.n == 0) {
      parts.push_back(Formula::compare(std::move(c), CmpRel::Eq, std::move(k)));
    } else {
      Int r;
      mpz_fdiv_r(r.get_mpz_t(), k.get_mpz_t(), pr.n.get_mpz_t());
      parts.push_back(Formula::divides(pr.n, std::move(c), std::move(r)));
    }
  }
  return all_of(std::move(parts));
}

Formula to_formula(const MutualFormula& f) {
  std::vector<Formula> parts;
  for (const auto& dj : f.disjuncts) parts.push_back(disjunct_formula(dj, f.dim));
  return any_of(std::move(parts));
}

BottomFormula compile_bottom(const PetriNet& net, const CompileParams& params) {
  const std::size_t d = net.dim();
  const auto jobs = shards(d, params.pumping.state_bound);
  struct Out {
    std::vector<BottomTuple> ts;
    bool complete = true;
  };
  std::vector<Out> outs(jobs.size());
  run_jobs(jobs.size(), params.workers, [&](std::size_t k) {
    Out& out = outs[k];
    for (const auto& g : forward_closed_unfoldings(net, jobs[k].I, jobs[k].bound)) {
      LatticeRepresentation lat = lattice_of_unfolding(g).rep;
      Int tau = effective_tau(params.pumping, g);
      bool cert = certified_for(params.pumping, g);
      std::vector<std::vector<IntVec>> M(g.num_states());
      for (std::size_t q = 0; q < g.num_states(); ++q) {
        UpwardBasis ub = upward_basis(g, q, params.pumping, tau);
        if (ub.truncated) out.complete = false;
        for (auto& e : ub.elements) M[q].push_back(std::move(e.c));
      }
      for (std::size_t r = 0; r < g.num_states(); ++r) {
        BottomTuple t;
        t.I = jobs[k].I;
        t.r = g.states()[r];
        t.gamma = lat;
        t.entry = M[r];
        t.certified = cert;
        for (std::size_t p = 0; p < g.num_states(); ++p)
          t.offsets.push_back(path_displacement(g, elementary_path(g, r, p)));
        std::vector<Formula> conj;
        for (const auto& tr : g.transitions()) {
          const Action& a = net.action(tr.action);
          const IntVec& vp = t.offsets[tr.src];
          std::vector<Formula> lhs, rhs;
          for (const auto& m : M[tr.src]) lhs.push_back(at_least_vec(d, 0, sub(vmax(m, a.pre), vp)));
          for (const auto& m : M[tr.dst]) rhs.push_back(at_least_vec(d, 0, sub(sub(m, net.delta(tr.action)), vp)));
          conj.push_back(Formula::implies(any_of(std::move(lhs)), any_of(std::move(rhs))));
        }
        t.phi = all_of(std::move(conj));
        out.ts.push_back(std::move(t));
      }
    }
  });
  BottomFormula f;
  f.dim = d;
  for (auto& o : outs) {
    f.complete = f.complete && o.complete;
    for (auto& t : o.ts) f.tuples.push_back(std::move(t));
  }
  // Jobs run by bound first; the same tuple found at several bounds is kept once.
  std::stable_sort(f.tuples.begin(), f.tuples.end(), [](const BottomTuple& a, const BottomTuple& b) {
    if (a.I != b.I) return index_set_less(a.I, b.I);
    if (a.r != b.r) return a.r < b.r;
    return a.gamma.serialize() < b.gamma.serialize();
  });
  std::vector<BottomTuple> uniq;
  for (auto& t : f.tuples) {
    if (!uniq.empty()) {
      const auto& u = uniq.back();
      if (u.I == t.I && u.r == t.r && u.gamma == t.gamma && u.entry == t.entry &&
          u.offsets == t.offsets && u.phi == t.phi)
        continue;
    }
    uniq.push_back(std::move(t));
  }
  f.tuples = std::move(uniq);
  f.certified = !f.tuples.empty();
  for (const auto& t : f.tuples) f.certified = f.certified && t.certified;
  return f;
}

BottomWrapper bottom_wrapper(const PetriNet& net, const MutualFormula& mutual) {
  if (mutual.dim != net.dim()) throw std::invalid_argument("bottom_wrapper: dimension mismatch");
  BottomWrapper w;
  w.dim = net.dim();
  for (std::size_t a = 0; a < net.size(); ++a) {
    w.pre.push_back(net.action(a).pre);
    w.delta.push_back(net.delta(a));
  }
  w.mutual = mutual;
  return w;
}

bool eval_wrapper_bounded(const BottomWrapper& w, const Config& c, unsigned long radius) {
  const std::size_t d = w.dim;
  Config x = zeros(d);
  for (;;) {
    if (eval_mutual(w.mutual, c, x))
      for (std::size_t a = 0; a < w.pre.size(); ++a)
        if (leq(w.pre[a], x) && !eval_mutual(w.mutual, c, add(x, w.delta[a]))) return false;
    std::size_t i = 0;
    while (i < d && x[i] == radius) x[i++] = 0;
    if (i == d) return true;
    x[i] += 1;
  }
}

namespace {

std::string declarations(const std::vector<std::string>& names) {
  std::string s;
  for (const auto& n : names) s += "(declare-const " + n + " Int)\n";
  return s;
}

std::string forall(const std::vector<std::string>& vars, const std::string& body) {
  if (vars.empty()) return body;
  std::string s = "(forall (";
  for (std::size_t i = 0; i < vars.size(); ++i) s += (i ? " (" : "(") + vars[i] + " Int)";
  return s + ") " + body + ")";
}

}  // namespace

std::string to_smtlib(const Formula& f, const std::vector<std::string>& names) {
  return "(set-logic QF_LIA)\n" + declarations(names) + "(assert " + to_smtlib_term(f, names) +
         ")\n(check-sat)\n";
}

std::string to_smtlib(const MutualFormula& f) {
  auto names = variable_names(Environment::Relation, f.dim);
  return "; mutual reachability relation, " + std::to_string(f.disjuncts.size()) + " disjuncts, " +
         (f.certified ? "certified" : "heuristic") + (f.complete ? "" : ", incomplete") + "\n" +
         to_smtlib(to_formula(f), names);
}

std::string to_smtlib(const BottomWrapper& w) {
  const std::size_t d = w.dim;
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= d; ++i) names.push_back("c" + std::to_string(i));
  std::vector<std::string> xs;
  for (std::size_t i = 1; i <= d; ++i) xs.push_back("x" + std::to_string(i));
  std::vector<std::string> all = names;
  all.insert(all.end(), xs.begin(), xs.end());
  Formula phi = to_formula(w.mutual);  // over (c, x) as (x, y)
  std::vector<Formula> body;
  for (std::size_t a = 0; a < w.pre.size(); ++a) {
    std::vector<Affine> shift;
    for (std::size_t j = 0; j < 2 * d; ++j) {
      Affine af{zeros(2 * d), 0};
      af.coeffs[j] = 1;
      if (j >= d) af.constant = w.delta[a][j - d];
      shift.push_back(std::move(af));
    }
    IntVec pre2 = zeros(d);
    pre2.insert(pre2.end(), w.pre[a].begin(), w.pre[a].end());
    std::vector<Formula> guard{phi};
    for (std::size_t i = 0; i < d; ++i) guard.push_back(Formula::at_least(2 * d, d + i, w.pre[a][i]));
    body.push_back(Formula::implies(Formula::conj(std::move(guard)), substitute(phi, shift)));
  }
  std::string term = to_smtlib_term(all_of(std::move(body)), all);
  return "; bottom configurations through the mutual reachability formula\n(set-logic LIA)\n" +
         declarations(names) + "(assert " + forall(xs, term) + ")\n(check-sat)\n";
}

std::string to_smtlib(const BottomFormula& f) {
  const std::size_t d = f.dim;
  auto names = variable_names(Environment::Set, d);
  std::vector<std::string> tuples;
  for (const auto& t : f.tuples) {
    std::vector<Formula> fixed;
    for (std::size_t k = 0; k < t.I.size(); ++k) {
      IntVec c = zeros(d);
      c[t.I[k]] = 1;
      fixed.push_back(Formula::compare(std::move(c), CmpRel::Eq, t.r[k]));
    }
    std::vector<Formula> entry;
    for (const auto& m : t.entry) entry.push_back(at_least_vec(d, 0, m));
    fixed.push_back(any_of(std::move(entry)));
    std::string head = to_smtlib_term(all_of(std::move(fixed)), names);
    auto basis = representation_basis(t.gamma);
    std::vector<std::string> ts, all = names;
    for (std::size_t j = 1; j <= basis.size(); ++j) ts.push_back("t" + std::to_string(j));
    all.insert(all.end(), ts.begin(), ts.end());
    std::vector<Affine> map;
    for (std::size_t i = 0; i < d; ++i) {
      Affine af{zeros(d + basis.size()), 0};
      af.coeffs[i] = 1;
      for (std::size_t j = 0; j < basis.size(); ++j) af.coeffs[d + j] = basis[j][i];
      map.push_back(std::move(af));
    }
    std::string body = forall(ts, to_smtlib_term(substitute(t.phi, map), all));
    tuples.push_back("(and " + head + " " + body + ")");
  }
  std::string term;
  if (tuples.empty()) {
    term = "false";
  } else if (tuples.size() == 1) {
    term = tuples[0];
  } else {
    term = "(or";
    for (const auto& s : tuples) term += "\n  " + s;
    term += ")";
  }
  return "; bottom configurations, " + std::to_string(f.tuples.size()) + " tuples, " +
         (f.certified ? "certified" : "heuristic") + (f.complete ? "" : ", incomplete") +
         "\n(set-logic LIA)\n" + declarations(names) + "(assert " + term + ")\n(check-sat)\n";
}

}  // namespace mutreach
