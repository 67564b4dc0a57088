#include "mutreach/formula.hh"

#include <algorithm>
#include <stdexcept>

namespace mutreach {

std::vector<std::string> variable_names(Environment env, std::size_t d) {
  std::vector<std::string> out;
  if (env == Environment::Set) {
    for (std::size_t i = 1; i <= d; ++i) out.push_back("c" + std::to_string(i));
  } else {
    for (std::size_t i = 1; i <= d; ++i) out.push_back("x" + std::to_string(i));
    for (std::size_t i = 1; i <= d; ++i) out.push_back("y" + std::to_string(i));
  }
  return out;
}

Formula::Formula() : Formula(top()) {}

Formula Formula::top() {
  static const auto node = std::make_shared<const FormulaNode>();
  return Formula(node);
}

Formula Formula::bottom() {
  FormulaNode n;
  n.kind = NodeKind::False;
  return Formula(std::make_shared<const FormulaNode>(std::move(n)));
}

Formula Formula::conj(std::vector<Formula> parts) {
  if (parts.size() == 1) return parts[0];
  FormulaNode n;
  n.kind = NodeKind::And;
  n.children = std::move(parts);
  return Formula(std::make_shared<const FormulaNode>(std::move(n)));
}

Formula Formula::disj(std::vector<Formula> parts) {
  if (parts.size() == 1) return parts[0];
  FormulaNode n;
  n.kind = NodeKind::Or;
  n.children = std::move(parts);
  return Formula(std::make_shared<const FormulaNode>(std::move(n)));
}

Formula Formula::negate(Formula f) {
  FormulaNode n;
  n.kind = NodeKind::Not;
  n.children = {std::move(f)};
  return Formula(std::make_shared<const FormulaNode>(std::move(n)));
}

Formula Formula::implies(Formula lhs, Formula rhs) {
  FormulaNode n;
  n.kind = NodeKind::Implies;
  n.children = {std::move(lhs), std::move(rhs)};
  return Formula(std::make_shared<const FormulaNode>(std::move(n)));
}

Formula Formula::compare(IntVec coeffs, CmpRel rel, Int constant) {
  FormulaNode n;
  n.kind = NodeKind::Compare;
  n.coeffs = std::move(coeffs);
  n.rel = rel;
  n.constant = std::move(constant);
  return Formula(std::make_shared<const FormulaNode>(std::move(n)));
}

Formula Formula::divides(Int modulus, IntVec coeffs, Int constant) {
  if (modulus < 1) throw std::invalid_argument("divisibility modulus must be at least 1");
  FormulaNode n;
  n.kind = NodeKind::Div;
  n.modulus = std::move(modulus);
  n.coeffs = std::move(coeffs);
  n.constant = std::move(constant);
  return Formula(std::make_shared<const FormulaNode>(std::move(n)));
}

Formula Formula::at_least(std::size_t nvars, std::size_t i, Int z) {
  IntVec c = zeros(nvars);
  c.at(i) = 1;
  return compare(std::move(c), CmpRel::Ge, std::move(z));
}

NodeKind Formula::kind() const { return node_->kind; }
const std::vector<Formula>& Formula::children() const { return node_->children; }
const IntVec& Formula::coeffs() const { return node_->coeffs; }
const Int& Formula::constant() const { return node_->constant; }
CmpRel Formula::rel() const { return node_->rel; }
const Int& Formula::modulus() const { return node_->modulus; }

bool Formula::eval(const IntVec& vars) const {
  switch (kind()) {
    case NodeKind::True:
      return true;
    case NodeKind::False:
      return false;
    case NodeKind::And:
      for (const auto& c : children())
        if (!c.eval(vars)) return false;
      return true;
    case NodeKind::Or:
      for (const auto& c : children())
        if (c.eval(vars)) return true;
      return false;
    case NodeKind::Not:
      return !children()[0].eval(vars);
    case NodeKind::Implies:
      return !children()[0].eval(vars) || children()[1].eval(vars);
    case NodeKind::Compare: {
      if (coeffs().size() != vars.size()) throw std::invalid_argument("formula arity mismatch");
      Int lhs = dot(coeffs(), vars);
      return rel() == CmpRel::Ge ? lhs >= constant() : lhs == constant();
    }
    case NodeKind::Div: {
      if (coeffs().size() != vars.size()) throw std::invalid_argument("formula arity mismatch");
      Int r = dot(coeffs(), vars) - constant();
      return mpz_divisible_p(r.get_mpz_t(), modulus().get_mpz_t()) != 0;
    }
  }
  return false;
}

std::size_t Formula::atom_count() const {
  if (kind() == NodeKind::Compare || kind() == NodeKind::Div) return 1;
  std::size_t n = 0;
  for (const auto& c : children()) n += c.atom_count();
  return n;
}

Int Formula::max_constant() const {
  if (kind() == NodeKind::Compare) return abs(constant());
  Int k = 0;
  for (const auto& c : children()) k = std::max<Int>(k, c.max_constant());
  return k;
}

bool Formula::is_threshold() const {
  if (kind() == NodeKind::Div) return false;
  if (kind() == NodeKind::Compare) {
    std::size_t nz = 0;
    for (const auto& a : coeffs()) {
      if (a == 0) continue;
      if (a != 1) return false;
      ++nz;
    }
    return nz == 1;
  }
  for (const auto& c : children())
    if (!c.is_threshold()) return false;
  return true;
}

bool Formula::operator==(const Formula& o) const {
  if (node_ == o.node_) return true;
  if (kind() != o.kind() || children().size() != o.children().size()) return false;
  if (coeffs() != o.coeffs() || constant() != o.constant() || rel() != o.rel() ||
      modulus() != o.modulus())
    return false;
  for (std::size_t i = 0; i < children().size(); ++i)
    if (!(children()[i] == o.children()[i])) return false;
  return true;
}

Formula substitute(const Formula& f, const std::vector<Affine>& map) {
  switch (f.kind()) {
    case NodeKind::True:
    case NodeKind::False:
      return f;
    case NodeKind::And:
    case NodeKind::Or:
    case NodeKind::Not:
    case NodeKind::Implies: {
      std::vector<Formula> kids;
      for (const auto& c : f.children()) kids.push_back(substitute(c, map));
      if (f.kind() == NodeKind::And) return Formula::conj(std::move(kids));
      if (f.kind() == NodeKind::Or) return Formula::disj(std::move(kids));
      if (f.kind() == NodeKind::Not) return Formula::negate(kids[0]);
      return Formula::implies(kids[0], kids[1]);
    }
    case NodeKind::Compare:
    case NodeKind::Div: {
      if (f.coeffs().size() != map.size()) throw std::invalid_argument("substitution arity mismatch");
      std::size_t n = map.empty() ? 0 : map[0].coeffs.size();
      IntVec c = zeros(n);
      Int k = f.constant();
      for (std::size_t j = 0; j < map.size(); ++j) {
        if (f.coeffs()[j] == 0) continue;
        c = add(c, scale(f.coeffs()[j], map[j].coeffs));
        k -= f.coeffs()[j] * map[j].constant;
      }
      if (f.kind() == NodeKind::Compare) return Formula::compare(std::move(c), f.rel(), std::move(k));
      return Formula::divides(f.modulus(), std::move(c), std::move(k));
    }
  }
  return f;
}

bool IntervalBox::empty() const {
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (lo[i] && hi[i] && *lo[i] > *hi[i]) return true;
  return false;
}

bool IntervalBox::contains(const IntVec& x) const {
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (lo[i] && x[i] < *lo[i]) return false;
    if (hi[i] && x[i] > *hi[i]) return false;
  }
  return true;
}

namespace {

using Boxes = std::vector<IntervalBox>;

IntervalBox full_box(std::size_t n) {
  IntervalBox b;
  b.lo.resize(n);
  b.hi.resize(n);
  return b;
}

bool box_within(const IntervalBox& a, const IntervalBox& b) {
  for (std::size_t i = 0; i < a.lo.size(); ++i) {
    if (b.lo[i] && (!a.lo[i] || *a.lo[i] < *b.lo[i])) return false;
    if (b.hi[i] && (!a.hi[i] || *a.hi[i] > *b.hi[i])) return false;
  }
  return true;
}

Boxes simplify(Boxes in) {
  Boxes out;
  for (auto& b : in) {
    if (b.empty()) continue;
    bool covered = false;
    for (const auto& o : out)
      if (box_within(b, o)) {
        covered = true;
        break;
      }
    if (covered) continue;
    std::erase_if(out, [&](const IntervalBox& o) { return box_within(o, b); });
    out.push_back(std::move(b));
  }
  return out;
}

Boxes product(const Boxes& a, const Boxes& b) {
  Boxes out;
  for (const auto& x : a)
    for (const auto& y : b) {
      IntervalBox z = x;
      for (std::size_t i = 0; i < z.lo.size(); ++i) {
        if (y.lo[i] && (!z.lo[i] || *y.lo[i] > *z.lo[i])) z.lo[i] = y.lo[i];
        if (y.hi[i] && (!z.hi[i] || *y.hi[i] < *z.hi[i])) z.hi[i] = y.hi[i];
      }
      if (!z.empty()) out.push_back(std::move(z));
    }
  return simplify(std::move(out));
}

Boxes join(Boxes a, const Boxes& b) {
  a.insert(a.end(), b.begin(), b.end());
  return simplify(std::move(a));
}

Boxes dnf(const Formula& f, std::size_t n, bool neg) {
  switch (f.kind()) {
    case NodeKind::True:
      return neg ? Boxes{} : Boxes{full_box(n)};
    case NodeKind::False:
      return neg ? Boxes{full_box(n)} : Boxes{};
    case NodeKind::And:
    case NodeKind::Or: {
      bool as_product = (f.kind() == NodeKind::And) != neg;
      Boxes acc = as_product ? Boxes{full_box(n)} : Boxes{};
      for (const auto& c : f.children()) {
        Boxes part = dnf(c, n, neg);
        acc = as_product ? product(acc, part) : join(std::move(acc), part);
        if (as_product && acc.empty()) break;
      }
      return acc;
    }
    case NodeKind::Not:
      return dnf(f.children()[0], n, !neg);
    case NodeKind::Implies:
      if (neg) return product(dnf(f.children()[0], n, false), dnf(f.children()[1], n, true));
      return join(dnf(f.children()[0], n, true), dnf(f.children()[1], n, false));
    case NodeKind::Compare: {
      if (!f.is_threshold() || f.coeffs().size() != n)
        throw std::invalid_argument("not a threshold atom");
      std::size_t i = 0;
      while (f.coeffs()[i] == 0) ++i;
      const Int& z = f.constant();
      IntervalBox b = full_box(n);
      if (f.rel() == CmpRel::Ge) {
        if (neg)
          b.hi[i] = z - 1;
        else
          b.lo[i] = z;
        return {b};
      }
      if (!neg) {
        b.lo[i] = b.hi[i] = z;
        return {b};
      }
      IntervalBox c = b;
      b.hi[i] = z - 1;
      c.lo[i] = z + 1;
      return {b, c};
    }
    case NodeKind::Div:
      throw std::invalid_argument("divisibility atom in a threshold formula");
  }
  return {};
}

std::string smt_int(const Int& v) { return v < 0 ? "(- " + Int(-v).get_str() + ")" : v.get_str(); }

std::string smt_lin(const IntVec& c, const std::vector<std::string>& names) {
  std::vector<std::string> terms;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    terms.push_back(c[i] == 1 ? names.at(i) : "(* " + smt_int(c[i]) + " " + names.at(i) + ")");
  }
  if (terms.empty()) return "0";
  if (terms.size() == 1) return terms[0];
  std::string s = "(+";
  for (const auto& t : terms) s += " " + t;
  return s + ")";
}

std::string text_lin(const IntVec& c, const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    Int a = abs(c[i]);
    if (s.empty())
      s += c[i] < 0 ? "-" : "";
    else
      s += c[i] < 0 ? " - " : " + ";
    if (a != 1) s += a.get_str() + "*";
    s += names.at(i);
  }
  return s.empty() ? "0" : s;
}

}  // namespace

std::vector<IntervalBox> threshold_dnf(const Formula& f, std::size_t nvars, bool negated) {
  return dnf(f, nvars, negated);
}

std::string to_text(const Formula& f, const std::vector<std::string>& names) {
  auto group = [&](const char* op) {
    std::string s = "(";
    for (std::size_t i = 0; i < f.children().size(); ++i) {
      if (i) s += op;
      s += to_text(f.children()[i], names);
    }
    return s + ")";
  };
  switch (f.kind()) {
    case NodeKind::True:
      return "true";
    case NodeKind::False:
      return "false";
    case NodeKind::And:
      return f.children().empty() ? "true" : group(" & ");
    case NodeKind::Or:
      return f.children().empty() ? "false" : group(" | ");
    case NodeKind::Not:
      return "!" + to_text(f.children()[0], names);
    case NodeKind::Implies:
      return group(" -> ");
    case NodeKind::Compare:
      return text_lin(f.coeffs(), names) + (f.rel() == CmpRel::Ge ? " >= " : " = ") +
             f.constant().get_str();
    case NodeKind::Div:
      return text_lin(f.coeffs(), names) + " = " + f.constant().get_str() + " (mod " +
             f.modulus().get_str() + ")";
  }
  return "?";
}

std::string to_smtlib_term(const Formula& f, const std::vector<std::string>& names) {
  auto group = [&](const std::string& op) {
    std::string s = "(" + op;
    for (const auto& c : f.children()) s += " " + to_smtlib_term(c, names);
    return s + ")";
  };
  switch (f.kind()) {
    case NodeKind::True:
      return "true";
    case NodeKind::False:
      return "false";
    case NodeKind::And:
      return f.children().empty() ? "true" : group("and");
    case NodeKind::Or:
      return f.children().empty() ? "false" : group("or");
    case NodeKind::Not:
      return group("not");
    case NodeKind::Implies:
      return group("=>");
    case NodeKind::Compare:
      return "(" + std::string(f.rel() == CmpRel::Ge ? ">=" : "=") + " " + smt_lin(f.coeffs(), names) +
             " " + smt_int(f.constant()) + ")";
    case NodeKind::Div: {
      std::string lhs = smt_lin(f.coeffs(), names);
      if (f.constant() != 0) lhs = "(- " + lhs + " " + smt_int(f.constant()) + ")";
      return "(= (mod " + lhs + " " + f.modulus().get_str() + ") 0)";
    }
  }
  return "?";
}

}  // namespace mutreach
