#include "mutreach/lattice.hh"

#include <istream>
#include <sstream>
#include <stdexcept>

#include "mutreach/linalg.hh"

namespace mutreach {

LatticeRepresentation::LatticeRepresentation(std::size_t dim, std::vector<LatticePair> pairs)
    : dim_(dim), pairs_(std::move(pairs)) {
  if (pairs_.size() != dim_) throw std::invalid_argument("a representation has exactly d pairs");
  for (const auto& p : pairs_) {
    if (p.a.size() != dim_) throw std::invalid_argument("representation pair dimension mismatch");
    if (p.n < 0) throw std::invalid_argument("representation modulus must be non-negative");
    if (p.n > norm_) norm_ = p.n;
    Int an = norm_inf(p.a);
    if (an > norm_) norm_ = an;
  }
}

bool LatticeRepresentation::contains(const IntVec& x) const {
  if (x.size() != dim_) throw std::invalid_argument("lattice membership dimension mismatch");
  for (const auto& p : pairs_) {
    Int s = dot(p.a, x);
    if (p.n == 0) {
      if (s != 0) return false;
    } else if (!mpz_divisible_p(s.get_mpz_t(), p.n.get_mpz_t())) {
      return false;
    }
  }
  return true;
}

std::string LatticeRepresentation::serialize() const {
  std::string s;
  for (const auto& p : pairs_) s += p.n.get_str() + " : " + join(p.a) + "\n";
  return s;
}

LatticeRepresentation LatticeRepresentation::parse(std::istream& in, std::size_t dim) {
  std::vector<LatticePair> pairs;
  std::string line;
  while (pairs.size() < dim && std::getline(in, line)) {
    std::istringstream ss(line);
    std::string n, colon;
    if (!(ss >> n)) continue;
    if (!(ss >> colon) || colon != ":") throw std::invalid_argument("expected 'n : a1 ... ad'");
    LatticePair p;
    p.n = parse_int(n);
    std::string tok;
    while (ss >> tok) p.a.push_back(parse_int(tok));
    pairs.push_back(std::move(p));
  }
  return LatticeRepresentation(dim, std::move(pairs));
}

Int representation_norm_bound(std::size_t dim, const Int& m) {
  Int f = factorial(static_cast<unsigned>(dim));
  Int b = f * f * power(m, dim);
  return b < 1 ? Int(1) : b;
}

LatticeRepresentation representation_from_generators(const std::vector<IntVec>& gens,
                                                     std::size_t d) {
  for (const auto& g : gens)
    if (g.size() != d) throw std::invalid_argument("generator dimension mismatch");
  IntMatrix L = IntMatrix::from_columns(gens, d);
  std::vector<LatticePair> permuted;  // pairs over permuted coordinates
  HnfResult h;
  if (!gens.empty()) h = hermite_normal_form(L);
  std::size_t r = h.rank;
  if (r == 0) {
    std::vector<LatticePair> pairs;
    for (std::size_t i = 0; i < d; ++i) {
      IntVec a = zeros(d);
      a[i] = 1;
      pairs.push_back({Int(0), a});
    }
    return LatticeRepresentation(d, std::move(pairs));
  }
  IntMatrix P = permute(L, h.row_perm, h.col_perm);
  IntMatrix A(r, r), B(d - r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) A(i, j) = P(i, j);
  for (std::size_t i = r; i < d; ++i)
    for (std::size_t j = 0; j < r; ++j) B(i - r, j) = P(i, j);

  // (i) det(H) divides every coefficient of x_top . com(H).
  Int detH = determinant(h.H);
  IntMatrix comH = comatrix(h.H);
  for (std::size_t j = 0; j < r; ++j) {
    IntVec a = zeros(d);
    for (std::size_t i = 0; i < r; ++i) a[i] = comH(i, j);
    permuted.push_back({detH, a});
  }
  // (ii) det(A) x_bottom = x_top . com(A) . B^T.
  if (r < d) {
    Int detA = determinant(A);
    IntMatrix cAB = comatrix(A) * B.transpose();  // r x (d - r)
    for (std::size_t l = 0; l < d - r; ++l) {
      IntVec a = zeros(d);
      for (std::size_t i = 0; i < r; ++i) a[i] = -cAB(i, l);
      a[r + l] = detA;
      if (detA < 0) a = neg(a);
      permuted.push_back({Int(0), a});
    }
  }
  // Back to the original coordinate order.
  std::vector<LatticePair> pairs;
  for (auto& p : permuted) {
    IntVec a = zeros(d);
    for (std::size_t i = 0; i < d; ++i) a[h.row_perm[i]] = p.a[i];
    pairs.push_back({p.n, a});
  }
  return LatticeRepresentation(d, std::move(pairs));
}

bool lattice_contains(const LatticeRepresentation& g, const IntVec& x) { return g.contains(x); }

bool LatticeCoset::contains(const IntVec& w) const { return rep.contains(sub(w, offset)); }

bool coset_contains(const LatticeCoset& c, const IntVec& w) { return c.contains(w); }

}  // namespace mutreach
