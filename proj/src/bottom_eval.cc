#include "mutreach/presburger.hh"

#include <stdexcept>

#include "mutreach/linalg.hh"
#include "mutreach/lp.hh"

namespace mutreach {

std::string to_string(Tri t) {
  switch (t) {
    case Tri::True:
      return "true";
    case Tri::False:
      return "false";
    case Tri::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::vector<IntVec> representation_basis(const LatticeRepresentation& gamma) {
  const std::size_t d = gamma.dim();
  const auto& pairs = gamma.pairs();
  if (pairs.empty()) {
    std::vector<IntVec> id;
    for (std::size_t i = 0; i < d; ++i) {
      IntVec e = zeros(d);
      e[i] = 1;
      id.push_back(std::move(e));
    }
    return id;
  }
  // Integer kernel of [A | -diag(n)], projected on the first d coordinates.
  const std::size_t k = pairs.size();
  IntMatrix M(k, d + k);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < d; ++i) M(j, i) = pairs[j].a[i];
    M(j, d + j) = -pairs[j].n;
  }
  EchelonResult ech = column_echelon(M);
  std::vector<IntVec> gens;
  for (std::size_t c = ech.rank; c < d + k; ++c) {
    IntVec g(d);
    for (std::size_t i = 0; i < d; ++i) g[i] = ech.U(i, c);
    if (!is_zero(g)) gens.push_back(std::move(g));
  }
  if (gens.empty()) return {};
  return lattice_basis(IntMatrix::from_columns(gens, d));
}

namespace {

struct Row {
  IntVec coeff;
  std::optional<Int> lo, hi;
};

Int floor_of(const Rational& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

RatVec to_rat(const IntVec& v) {
  RatVec r;
  for (const auto& x : v) r.emplace_back(x);
  return r;
}

// Direction g of the recession cone that strictly increases row `which`
// in its unbounded sense.
bool row_unbounded(const std::vector<Row>& rows, std::size_t which, std::size_t k) {
  LinearProgram lp;
  lp.num_vars = k;
  lp.free_vars.assign(k, true);
  for (const auto& r : rows) {
    Rel rel = r.lo && r.hi ? Rel::Eq : (r.lo ? Rel::Ge : Rel::Le);
    lp.rows.push_back({to_rat(r.coeff), rel, 0});
  }
  IntVec s = rows[which].lo ? rows[which].coeff : neg(rows[which].coeff);
  lp.rows.push_back({to_rat(s), Rel::Le, 1});
  lp.objective = to_rat(s);
  LpResult res = solve_lp(lp);
  return res.status == LpStatus::Optimal && res.value > 0;
}

// Branch and bound over integer h with lo <= W h <= hi; the region is bounded.
std::optional<bool> branch(const std::vector<Row>& rows, std::size_t k, std::vector<LpRow>& extra,
                           std::size_t& nodes, std::size_t limit) {
  if (++nodes > limit) return std::nullopt;
  LinearProgram lp;
  lp.num_vars = k;
  lp.free_vars.assign(k, true);
  for (const auto& r : rows) {
    if (r.lo) lp.rows.push_back({to_rat(r.coeff), Rel::Ge, Rational(*r.lo)});
    if (r.hi) lp.rows.push_back({to_rat(r.coeff), Rel::Le, Rational(*r.hi)});
  }
  lp.rows.insert(lp.rows.end(), extra.begin(), extra.end());
  LpResult res = solve_lp(lp);
  if (res.status == LpStatus::Infeasible) return false;
  for (std::size_t j = 0; j < k; ++j) {
    if (res.x[j].get_den() == 1) continue;
    Int f = floor_of(res.x[j]);
    RatVec e(k, Rational(0));
    e[j] = 1;
    extra.push_back({e, Rel::Le, Rational(f)});
    auto lower = branch(rows, k, extra, nodes, limit);
    extra.pop_back();
    if (!lower || *lower) return lower;
    extra.push_back({e, Rel::Ge, Rational(f + 1)});
    auto upper = branch(rows, k, extra, nodes, limit);
    extra.pop_back();
    return upper;
  }
  return true;
}

}  // namespace

std::optional<bool> lattice_meets_box(const LatticeRepresentation& gamma, const IntVec& c,
                                      const IntervalBox& box, std::size_t node_limit) {
  const std::size_t d = c.size();
  if (gamma.dim() != d || box.lo.size() != d) throw std::invalid_argument("lattice_meets_box: dimension mismatch");
  if (box.empty()) return false;
  std::vector<IntVec> basis = representation_basis(gamma);
  const std::size_t k = basis.size();
  std::vector<Row> rows;
  for (std::size_t i = 0; i < d; ++i) {
    if (!box.lo[i] && !box.hi[i]) continue;
    Row r;
    for (std::size_t j = 0; j < k; ++j) r.coeff.push_back(basis[j][i]);
    if (box.lo[i]) r.lo = *box.lo[i] - c[i];
    if (box.hi[i]) r.hi = *box.hi[i] - c[i];
    if (is_zero(r.coeff)) {
      if ((r.lo && *r.lo > 0) || (r.hi && *r.hi < 0)) return false;
      continue;
    }
    rows.push_back(std::move(r));
  }
  // A one-sided row that some recession direction pushes to infinity can be
  // satisfied by moving along that direction without breaking the others.
  for (bool dropped = true; dropped && !rows.empty();) {
    dropped = false;
    std::vector<bool> drop(rows.size(), false);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (!(rows[i].lo && rows[i].hi) && row_unbounded(rows, i, k)) drop[i] = dropped = true;
    std::vector<Row> kept;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (!drop[i]) kept.push_back(std::move(rows[i]));
    rows = std::move(kept);
  }
  if (rows.empty()) return true;
  // Project on the image lattice of the remaining rows; the region is bounded there.
  std::vector<IntVec> cols(k, IntVec(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < k; ++j) cols[j][i] = rows[i].coeff[j];
  std::vector<IntVec> W = lattice_basis(IntMatrix::from_columns(cols, rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].coeff.assign(W.size(), 0);
    for (std::size_t j = 0; j < W.size(); ++j) rows[i].coeff[j] = W[j][i];
  }
  std::vector<LpRow> extra;
  std::size_t nodes = 0;
  return branch(rows, W.size(), extra, nodes, node_limit);
}

Tri eval_bottom_tuple(const BottomTuple& t, const Config& c, const EvalOptions& opts) {
  const std::size_t d = c.size();
  if (restrict_to(c, t.I) != t.r) return Tri::False;
  if (!membership_upward(t.entry, c)) return Tri::False;
  if (opts.method == EvalMethod::Exact) {
    bool unsure = false;
    for (const auto& box : threshold_dnf(t.phi, d, true)) {
      auto hit = lattice_meets_box(t.gamma, c, box, opts.node_limit);
      if (!hit)
        unsure = true;
      else if (*hit)
        return Tri::False;
    }
    return unsure ? Tri::Inconclusive : Tri::True;
  }
  if (representation_basis(t.gamma).empty()) return t.phi.eval(c) ? Tri::True : Tri::False;
  const Int& R = opts.radius;
  IntVec v(d, -R);
  for (;;) {
    if (t.gamma.contains(v) && !t.phi.eval(add(c, v))) return Tri::False;
    std::size_t i = 0;
    while (i < d && v[i] == R) v[i++] = -R;
    if (i == d) break;
    v[i] += 1;
  }
  return Tri::Inconclusive;
}

Tri eval_bottom(const BottomFormula& f, const Config& c, const EvalOptions& opts) {
  if (c.size() != f.dim) throw std::invalid_argument("eval_bottom: dimension mismatch");
  if (!non_negative(c)) throw std::invalid_argument("eval_bottom: not a configuration");
  bool unsure = false;
  for (const auto& t : f.tuples) {
    Tri r = eval_bottom_tuple(t, c, opts);
    if (r == Tri::True) return Tri::True;
    if (r == Tri::Inconclusive) unsure = true;
  }
  return unsure ? Tri::Inconclusive : Tri::False;
}

}  // namespace mutreach
