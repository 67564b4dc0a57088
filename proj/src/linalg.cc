#include "mutreach/linalg.hh"

#include <algorithm>
#include <stdexcept>

namespace mutreach {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Int(0)) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVec>& cols, std::size_t rows) {
  IntMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw std::invalid_argument("generator dimension mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows) {
  std::size_t c = rows.empty() ? 0 : rows[0].size();
  IntMatrix m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("ragged matrix");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntVec IntMatrix::row(std::size_t i) const {
  return IntVec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

IntVec IntMatrix::col(std::size_t j) const {
  IntVec c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product dimension mismatch");
  IntMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
    }
  return r;
}

IntVec IntMatrix::operator*(const IntVec& v) const {
  if (cols_ != v.size()) throw std::invalid_argument("matrix-vector dimension mismatch");
  IntVec r(rows_, Int(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
  return r;
}

Int IntMatrix::norm_inf() const { return mutreach::norm_inf(data_); }

std::string IntMatrix::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) s += ", ";
    s += "[" + join(row(i), ",") + "]";
  }
  return s + "]";
}

Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  std::size_t n = m.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  IntMatrix a = m;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

IntMatrix comatrix(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("comatrix of non-square matrix");
  std::size_t n = m.rows();
  IntMatrix c(n, n);
  if (n == 1) {
    c(0, 0) = 1;
    return c;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      IntMatrix minor(n - 1, n - 1);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t s = 0, ss = 0; s < n; ++s) {
          if (s == j) continue;
          minor(rr, ss++) = m(r, s);
        }
        ++rr;
      }
      Int det = determinant(minor);
      c(i, j) = ((i + j) % 2 == 0) ? det : Int(-det);
    }
  return c;
}

namespace {

// Rational row echelon; returns pivot columns of the rows in `order`
// that are independent of the earlier ones, along with those rows.
struct RowSelection {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> pivots;
};

RowSelection select_rows(const IntMatrix& m) {
  RowSelection sel;
  std::vector<RatVec> basis;  // reduced rows, pivot at sel.pivots[t]
  for (std::size_t i = 0; i < m.rows(); ++i) {
    RatVec v(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) v[j] = m(i, j);
    for (std::size_t t = 0; t < basis.size(); ++t) {
      std::size_t p = sel.pivots[t];
      if (v[p] == 0) continue;
      Rational f = v[p] / basis[t][p];
      for (std::size_t j = 0; j < m.cols(); ++j) v[j] -= f * basis[t][j];
    }
    std::size_t p = 0;
    while (p < v.size() && v[p] == 0) ++p;
    if (p == v.size()) continue;
    sel.rows.push_back(i);
    sel.pivots.push_back(p);
    basis.push_back(std::move(v));
  }
  return sel;
}

std::vector<std::size_t> complete_perm(std::vector<std::size_t> head, std::size_t n) {
  std::vector<bool> used(n, false);
  for (auto h : head) used[h] = true;
  for (std::size_t i = 0; i < n; ++i)
    if (!used[i]) head.push_back(i);
  return head;
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Column operations on a working matrix together with the multiplier U.
struct ColumnOps {
  IntMatrix& n;
  IntMatrix& u;

  void swap_cols(std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < n.rows(); ++i) std::swap(n(i, a), n(i, b));
    for (std::size_t i = 0; i < u.rows(); ++i) std::swap(u(i, a), u(i, b));
  }
  void negate_col(std::size_t a) {
    for (std::size_t i = 0; i < n.rows(); ++i) n(i, a) = -n(i, a);
    for (std::size_t i = 0; i < u.rows(); ++i) u(i, a) = -u(i, a);
  }
  // col_b -= q * col_a
  void axpy(std::size_t b, std::size_t a, const Int& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < n.rows(); ++i) n(i, b) -= q * n(i, a);
    for (std::size_t i = 0; i < u.rows(); ++i) u(i, b) -= q * u(i, a);
  }
  // Combine columns a and b so that row r of column b becomes zero and row r
  // of column a becomes gcd.
  void gcd_step(std::size_t r, std::size_t a, std::size_t b) {
    Int x = n(r, a), y = n(r, b);
    if (y == 0) return;
    if (x == 0) {
      swap_cols(a, b);
      return;
    }
    Int g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    Int xg = x / g, yg = y / g;
    auto apply = [&](IntMatrix& mat) {
      for (std::size_t i = 0; i < mat.rows(); ++i) {
        Int ca = mat(i, a), cb = mat(i, b);
        mat(i, a) = s * ca + t * cb;
        mat(i, b) = -yg * ca + xg * cb;
      }
    };
    apply(n);
    apply(u);
  }
};

}  // namespace

std::size_t rank(const IntMatrix& m) { return select_rows(m).rows.size(); }

IntMatrix permute(const IntMatrix& m, const std::vector<std::size_t>& row_perm,
                  const std::vector<std::size_t>& col_perm) {
  IntMatrix r(row_perm.size(), col_perm.size());
  for (std::size_t i = 0; i < row_perm.size(); ++i)
    for (std::size_t j = 0; j < col_perm.size(); ++j) r(i, j) = m(row_perm[i], col_perm[j]);
  return r;
}

HnfResult hermite_normal_form(const IntMatrix& m, bool reverse_order) {
  HnfResult res;
  RowSelection sel = select_rows(m);
  std::size_t r = sel.rows.size(), k = m.cols();
  res.rank = r;
  res.row_perm = complete_perm(sel.rows, m.rows());
  // Pivot columns of the selected rows, left to right.
  std::vector<std::size_t> pivots;
  {
    IntMatrix top(r, k);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < k; ++j) top(i, j) = m(sel.rows[i], j);
    // Column pivots: greedy left-to-right choice of independent columns.
    RowSelection cs = select_rows(top.transpose());
    pivots = cs.rows;
  }
  res.col_perm = complete_perm(pivots, k);
  res.U = IntMatrix::identity(k);
  IntMatrix n = permute(m, std::vector<std::size_t>(res.row_perm.begin(), res.row_perm.begin() + r),
                        res.col_perm);
  ColumnOps ops{n, res.U};
  for (std::size_t i = 0; i < r; ++i) {
    if (reverse_order) {
      for (std::size_t j = k; j-- > i + 1;) ops.gcd_step(i, i, j);
    } else {
      for (std::size_t j = i + 1; j < k; ++j) ops.gcd_step(i, i, j);
    }
    if (n(i, i) == 0) throw std::logic_error("hermite_normal_form: singular leading block");
    if (n(i, i) < 0) ops.negate_col(i);
    for (std::size_t j = 0; j < i; ++j) ops.axpy(j, i, floor_div(n(i, j), n(i, i)));
  }
  res.H = IntMatrix(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) res.H(i, j) = n(i, j);
  return res;
}

EchelonResult column_echelon(const IntMatrix& m) {
  EchelonResult res;
  res.E = m;
  res.U = IntMatrix::identity(m.cols());
  ColumnOps ops{res.E, res.U};
  std::size_t p = 0;
  for (std::size_t i = 0; i < m.rows() && p < m.cols(); ++i) {
    for (std::size_t j = p + 1; j < m.cols(); ++j) ops.gcd_step(i, p, j);
    if (res.E(i, p) == 0) continue;
    if (res.E(i, p) < 0) ops.negate_col(p);
    for (std::size_t j = 0; j < p; ++j) ops.axpy(j, p, floor_div(res.E(i, j), res.E(i, p)));
    ++p;
  }
  res.rank = p;
  return res;
}

std::vector<IntVec> lattice_basis(const IntMatrix& m) {
  EchelonResult e = column_echelon(m);
  std::vector<IntVec> b;
  for (std::size_t j = 0; j < e.rank; ++j) b.push_back(e.E.col(j));
  return b;
}

std::optional<IntVec> solve_integer(const IntMatrix& m, const IntVec& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve_integer dimension mismatch");
  EchelonResult e = column_echelon(m);
  IntVec y(m.cols(), Int(0));
  std::size_t row = 0;
  for (std::size_t j = 0; j < e.rank; ++j) {
    while (row < m.rows() && e.E(row, j) == 0) ++row;
    Int rest = b[row];
    for (std::size_t l = 0; l < j; ++l) rest -= e.E(row, l) * y[l];
    if (!mpz_divisible_p(rest.get_mpz_t(), e.E(row, j).get_mpz_t())) return std::nullopt;
    y[j] = rest / e.E(row, j);
  }
  if (e.E * y != b) return std::nullopt;
  return e.U * y;
}

}  // namespace mutreach
