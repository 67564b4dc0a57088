#include "mutreach/vec.hh"

#include <algorithm>
#include <stdexcept>

namespace mutreach {

IntVec zeros(std::size_t d) { return IntVec(d, Int(0)); }

static void check_same(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("dimension mismatch");
}

IntVec add(const IntVec& a, const IntVec& b) {
  check_same(a, b);
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

IntVec sub(const IntVec& a, const IntVec& b) {
  check_same(a, b);
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

IntVec neg(const IntVec& a) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

IntVec scale(const Int& k, const IntVec& a) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = k * a[i];
  return r;
}

IntVec vmax(const IntVec& a, const IntVec& b) {
  check_same(a, b);
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] < b[i] ? b[i] : a[i];
  return r;
}

Int dot(const IntVec& a, const IntVec& b) {
  check_same(a, b);
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool leq(const IntVec& a, const IntVec& b) {
  check_same(a, b);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

bool is_zero(const IntVec& a) {
  return std::all_of(a.begin(), a.end(), [](const Int& v) { return v == 0; });
}

bool non_negative(const IntVec& a) {
  return std::all_of(a.begin(), a.end(), [](const Int& v) { return v >= 0; });
}

Int norm_inf(const IntVec& a) {
  Int m = 0;
  for (const auto& v : a) {
    Int av = abs(v);
    if (av > m) m = av;
  }
  return m;
}

Int norm_1(const IntVec& a) {
  Int s = 0;
  for (const auto& v : a) s += abs(v);
  return s;
}

IntVec restrict_to(const IntVec& x, const IndexSet& idx) {
  IntVec r;
  r.reserve(idx.size());
  for (auto i : idx) r.push_back(x.at(i));
  return r;
}

IndexSet full_index_set(std::size_t d) {
  IndexSet r(d);
  for (std::size_t i = 0; i < d; ++i) r[i] = i;
  return r;
}

IndexSet complement(const IndexSet& idx, std::size_t d) {
  IndexSet r;
  for (std::size_t i = 0; i < d; ++i)
    if (!contains_index(idx, i)) r.push_back(i);
  return r;
}

bool contains_index(const IndexSet& idx, std::size_t i) {
  return std::find(idx.begin(), idx.end(), i) != idx.end();
}

Int factorial(unsigned n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Int power(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

std::string to_string(const Int& v) { return v.get_str(); }

std::string to_string(const Rational& v) { return v.get_str(); }

std::string to_string(const IntVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

std::string join(const IntVec& v, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += v[i].get_str();
  }
  return s;
}

std::string index_set_string(const IndexSet& idx) {
  std::string s = "{";
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(idx[i] + 1);
  }
  return s + "}";
}

Int parse_int(const std::string& s) {
  Int r;
  std::string t = s;
  if (!t.empty() && t[0] == '+') t = t.substr(1);
  if (t.empty() || r.set_str(t, 10) != 0)
    throw std::invalid_argument("not an integer: '" + s + "'");
  return r;
}

}  // namespace mutreach
