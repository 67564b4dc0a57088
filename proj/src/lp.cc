#include "mutreach/lp.hh"

#include <stdexcept>

namespace mutreach {

namespace {

struct Tableau {
  std::size_t m = 0, n = 0;  // rows, columns (without rhs)
  std::vector<RatVec> a;     // m rows of n + 1 entries, last is rhs
  std::vector<std::size_t> basis;
  std::vector<bool> banned;  // columns that may not enter

  void pivot(std::size_t r, std::size_t c) {
    Rational p = a[r][c];
    for (auto& v : a[r]) v /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = 0; j <= n; ++j)
        if (a[r][j] != 0) a[i][j] -= f * a[r][j];
    }
    basis[r] = c;
  }

  // Maximize obj . x from the current basic feasible solution.
  // Returns false when unbounded.
  bool optimize(const RatVec& obj) {
    for (;;) {
      std::size_t enter = n;
      for (std::size_t j = 0; j < n && enter == n; ++j) {
        if (banned[j]) continue;
        Rational rc = obj[j];
        for (std::size_t i = 0; i < m; ++i)
          if (a[i][j] != 0) rc -= obj[basis[i]] * a[i][j];
        if (rc > 0) enter = j;
      }
      if (enter == n) return true;
      std::size_t leave = m;
      Rational best;
      for (std::size_t i = 0; i < m; ++i) {
        if (a[i][enter] <= 0) continue;
        Rational ratio = a[i][n] / a[i][enter];
        if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m) return false;
      pivot(leave, enter);
    }
  }

  void drop_row(std::size_t r) {
    a.erase(a.begin() + static_cast<std::ptrdiff_t>(r));
    basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(r));
    --m;
  }
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  const std::size_t nv = lp.num_vars;
  auto is_free = [&](std::size_t j) { return !lp.free_vars.empty() && lp.free_vars[j]; };

  // Column layout: one column per variable, a second (negated) column for
  // free variables, then slacks/surpluses, then artificials.
  std::vector<std::size_t> neg_col(nv, SIZE_MAX);
  std::size_t ncols = nv;
  for (std::size_t j = 0; j < nv; ++j)
    if (is_free(j)) neg_col[j] = ncols++;
  const std::size_t nstruct = ncols;

  struct Norm {
    RatVec c;
    Rel rel;
    Rational rhs;
  };
  std::vector<Norm> rows;
  for (const auto& row : lp.rows) {
    if (row.coeffs.size() != nv) throw std::invalid_argument("LP row length mismatch");
    Norm nr{row.coeffs, row.rel, row.rhs};
    if (nr.rhs < 0) {
      for (auto& v : nr.c) v = -v;
      nr.rhs = -nr.rhs;
      if (nr.rel == Rel::Le)
        nr.rel = Rel::Ge;
      else if (nr.rel == Rel::Ge)
        nr.rel = Rel::Le;
    }
    rows.push_back(std::move(nr));
  }
  std::size_t nslack = 0, nart = 0;
  for (const auto& r : rows) {
    if (r.rel != Rel::Eq) ++nslack;
    if (r.rel != Rel::Le) ++nart;
  }
  Tableau t;
  t.m = rows.size();
  t.n = nstruct + nslack + nart;
  t.a.assign(t.m, RatVec(t.n + 1));
  t.basis.assign(t.m, 0);
  t.banned.assign(t.n, false);
  std::size_t sc = nstruct, ac = nstruct + nslack;
  for (std::size_t i = 0; i < t.m; ++i) {
    for (std::size_t j = 0; j < nv; ++j) {
      t.a[i][j] = rows[i].c[j];
      if (neg_col[j] != SIZE_MAX) t.a[i][neg_col[j]] = -rows[i].c[j];
    }
    t.a[i][t.n] = rows[i].rhs;
    if (rows[i].rel == Rel::Le) {
      t.a[i][sc] = 1;
      t.basis[i] = sc++;
    } else {
      if (rows[i].rel == Rel::Ge) t.a[i][sc++] = -1;
      t.a[i][ac] = 1;
      t.basis[i] = ac++;
    }
  }

  LpResult res;
  const std::size_t art0 = nstruct + nslack;
  if (nart > 0) {
    RatVec obj(t.n);
    for (std::size_t j = art0; j < t.n; ++j) obj[j] = -1;
    t.optimize(obj);
    Rational phase1 = 0;
    for (std::size_t i = 0; i < t.m; ++i)
      if (t.basis[i] >= art0) phase1 += t.a[i][t.n];
    if (phase1 != 0) {
      res.status = LpStatus::Infeasible;
      return res;
    }
    for (std::size_t i = 0; i < t.m;) {
      if (t.basis[i] < art0) {
        ++i;
        continue;
      }
      std::size_t c = 0;
      while (c < art0 && t.a[i][c] == 0) ++c;
      if (c == art0) {
        t.drop_row(i);
      } else {
        t.pivot(i, c);
        ++i;
      }
    }
    for (std::size_t j = art0; j < t.n; ++j) t.banned[j] = true;
  }

  RatVec obj(t.n);
  if (!lp.objective.empty()) {
    if (lp.objective.size() != nv) throw std::invalid_argument("LP objective length mismatch");
    for (std::size_t j = 0; j < nv; ++j) {
      obj[j] = lp.objective[j];
      if (neg_col[j] != SIZE_MAX) obj[neg_col[j]] = -lp.objective[j];
    }
  }
  bool bounded = t.optimize(obj);

  RatVec col_val(t.n);
  for (std::size_t i = 0; i < t.m; ++i) col_val[t.basis[i]] = t.a[i][t.n];
  res.x.assign(nv, Rational(0));
  for (std::size_t j = 0; j < nv; ++j) {
    res.x[j] = col_val[j];
    if (neg_col[j] != SIZE_MAX) res.x[j] -= col_val[neg_col[j]];
  }
  res.status = bounded ? LpStatus::Optimal : LpStatus::Unbounded;
  if (!lp.objective.empty())
    for (std::size_t j = 0; j < nv; ++j) res.value += lp.objective[j] * res.x[j];
  return res;
}

PositiveSolution rational_lp_feasible(const std::vector<RatVec>& rows, std::size_t num_vars,
                                      bool maximize_margin) {
  PositiveSolution out;
  LinearProgram lp;
  if (!maximize_margin) {
    // Substitute f = g + 1 with g >= 0: rows . g = -rows . 1.
    lp.num_vars = num_vars;
    for (const auto& r : rows) {
      if (r.size() != num_vars) throw std::invalid_argument("LP row length mismatch");
      Rational s = 0;
      for (const auto& v : r) s += v;
      lp.rows.push_back({r, Rel::Eq, -s});
    }
    LpResult res = solve_lp(lp);
    if (res.status == LpStatus::Infeasible) return out;
    out.feasible = true;
    out.witness = res.x;
    for (auto& v : out.witness) v += 1;
    return out;
  }
  // Variables f_1..f_n, t: maximize t with f_j - t >= 0, t <= 1.
  lp.num_vars = num_vars + 1;
  for (const auto& r : rows) {
    if (r.size() != num_vars) throw std::invalid_argument("LP row length mismatch");
    RatVec c = r;
    c.push_back(0);
    lp.rows.push_back({c, Rel::Eq, 0});
  }
  for (std::size_t j = 0; j < num_vars; ++j) {
    RatVec c(num_vars + 1);
    c[j] = 1;
    c[num_vars] = -1;
    lp.rows.push_back({c, Rel::Ge, 0});
  }
  RatVec cap(num_vars + 1);
  cap[num_vars] = 1;
  lp.rows.push_back({cap, Rel::Le, 1});
  lp.objective = cap;
  LpResult res = solve_lp(lp);
  if (res.status != LpStatus::Optimal || res.value <= 0) return out;
  out.feasible = true;
  out.witness.assign(res.x.begin(), res.x.begin() + static_cast<std::ptrdiff_t>(num_vars));
  return out;
}

}  // namespace mutreach
