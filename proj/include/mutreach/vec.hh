#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace mutreach {

using Int = mpz_class;
using Rational = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rational>;

// Coordinates are 0-based internally and printed 1-based.
using IndexSet = std::vector<std::size_t>;

IntVec zeros(std::size_t d);
IntVec add(const IntVec& a, const IntVec& b);
IntVec sub(const IntVec& a, const IntVec& b);
IntVec neg(const IntVec& a);
IntVec scale(const Int& k, const IntVec& a);
IntVec vmax(const IntVec& a, const IntVec& b);
Int dot(const IntVec& a, const IntVec& b);

// Componentwise a <= b.
bool leq(const IntVec& a, const IntVec& b);
bool is_zero(const IntVec& a);
bool non_negative(const IntVec& a);

Int norm_inf(const IntVec& a);
Int norm_1(const IntVec& a);

IntVec restrict_to(const IntVec& x, const IndexSet& idx);
IndexSet full_index_set(std::size_t d);
IndexSet complement(const IndexSet& idx, std::size_t d);
bool contains_index(const IndexSet& idx, std::size_t i);

Int factorial(unsigned n);
Int power(const Int& base, unsigned long e);

std::string to_string(const Int& v);
std::string to_string(const Rational& v);
std::string to_string(const IntVec& v);  // "(a,b,c)"
std::string join(const IntVec& v, const std::string& sep = " ");
std::string index_set_string(const IndexSet& idx);  // "{1,3}"

Int parse_int(const std::string& s);

}  // namespace mutreach
