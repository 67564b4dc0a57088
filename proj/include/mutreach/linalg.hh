#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mutreach/vec.hh"

namespace mutreach {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix identity(std::size_t n);
  // Columns are the given vectors, each of length rows.
  static IntMatrix from_columns(const std::vector<IntVec>& cols, std::size_t rows);
  static IntMatrix from_rows(const std::vector<IntVec>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVec row(std::size_t i) const;
  IntVec col(std::size_t j) const;
  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& o) const;
  IntVec operator*(const IntVec& v) const;
  bool operator==(const IntMatrix& o) const = default;

  Int norm_inf() const;
  std::string to_string() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> data_;
};

Int determinant(const IntMatrix& m);

// com(M)_ij = det of M with column j replaced by e_i, so that
// transpose(M) * com(M) = det(M) * I.
IntMatrix comatrix(const IntMatrix& m);

std::size_t rank(const IntMatrix& m);

struct HnfResult {
  std::size_t rank = 0;
  IntMatrix H;  // rank x rank, lower triangular
  IntMatrix U;  // cols x cols, unimodular
  // Position i of the permuted matrix holds original row row_perm[i]
  // (resp. column col_perm[i]); the leading rank x rank block is non-singular.
  std::vector<std::size_t> row_perm;
  std::vector<std::size_t> col_perm;
};

// Permuted view M'(i,j) = M(row_perm[i], col_perm[j]).
IntMatrix permute(const IntMatrix& m, const std::vector<std::size_t>& row_perm,
                  const std::vector<std::size_t>& col_perm);

// Hermite normal form of the leading full-row-rank block of the permuted
// matrix: M'[0..r) * U = [H 0]. With reverse_order the columns are
// eliminated right to left; H is the same either way.
HnfResult hermite_normal_form(const IntMatrix& m, bool reverse_order = false);

struct EchelonResult {
  std::size_t rank = 0;
  IntMatrix E;  // m * U, the first `rank` columns in column echelon form, the rest zero
  IntMatrix U;  // unimodular
};

EchelonResult column_echelon(const IntMatrix& m);

// A basis (as columns) of the lattice generated by the columns of m.
std::vector<IntVec> lattice_basis(const IntMatrix& m);

// Integer h with m * h = b, if any.
std::optional<IntVec> solve_integer(const IntMatrix& m, const IntVec& b);

}  // namespace mutreach
