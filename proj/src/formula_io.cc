#include "mutreach/formula_io.hh"

#include <cctype>
#include <sstream>

#include "json.hpp"

namespace mutreach {

namespace {

std::string ints(const IntVec& v) {
  std::string s;
  for (const auto& x : v) s += " " + x.get_str();
  return s;
}

std::string index_list(const IndexSet& I) {
  std::string s;
  for (auto i : I) s += " " + std::to_string(i + 1);
  return s;
}

std::string gamma_text(const LatticeRepresentation& g) {
  std::string s = "(gamma";
  for (const auto& p : g.pairs()) s += " (pair " + p.n.get_str() + ints(p.a) + ")";
  return s + ")";
}

void qfp(std::ostringstream& os, const Formula& f, int indent) {
  auto pad = [&](int k) { os << '\n' << std::string(static_cast<std::size_t>(k), ' '); };
  switch (f.kind()) {
    case NodeKind::True:
      os << "true";
      return;
    case NodeKind::False:
      os << "false";
      return;
    case NodeKind::Compare:
      os << '(' << (f.rel() == CmpRel::Ge ? ">=" : "=") << " (" << ints(f.coeffs()).substr(1) << ") "
         << f.constant().get_str() << ')';
      return;
    case NodeKind::Div:
      os << "(mod " << f.modulus().get_str() << " (" << ints(f.coeffs()).substr(1) << ") "
         << f.constant().get_str() << ')';
      return;
    default:
      break;
  }
  const char* op = f.kind() == NodeKind::And ? "and" : f.kind() == NodeKind::Or ? "or" : f.kind() == NodeKind::Not ? "not" : "=>";
  os << '(' << op;
  for (const auto& c : f.children()) {
    pad(indent + 2);
    qfp(os, c, indent + 2);
  }
  os << ')';
}

// Minimal S-expression reader.
struct Sexp {
  std::string atom;
  std::vector<Sexp> list;
  bool is_list = false;
};

class Reader {
 public:
  explicit Reader(const std::string& s) : s_(s) {}

  Sexp read() {
    skip();
    if (pos_ >= s_.size()) throw formula_parse_error("unexpected end of input");
    if (s_[pos_] == ')') throw formula_parse_error("unexpected ')'");
    Sexp e;
    if (s_[pos_] == '(') {
      e.is_list = true;
      ++pos_;
      for (;;) {
        skip();
        if (pos_ >= s_.size()) throw formula_parse_error("missing ')'");
        if (s_[pos_] == ')') {
          ++pos_;
          return e;
        }
        e.list.push_back(read());
      }
    }
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != '(' &&
           s_[pos_] != ')' && s_[pos_] != ';')
      e.atom += s_[pos_++];
    return e;
  }

  bool at_end() {
    skip();
    return pos_ >= s_.size();
  }

 private:
  void skip() {
    while (pos_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[pos_]))) {
        ++pos_;
      } else if (s_[pos_] == ';') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }
  const std::string& s_;
  std::size_t pos_ = 0;
};

Int as_int(const Sexp& e) {
  if (e.is_list) throw formula_parse_error("expected an integer, found a list");
  try {
    return parse_int(e.atom);
  } catch (const std::exception&) {
    throw formula_parse_error("expected an integer, found '" + e.atom + "'");
  }
}

IntVec as_ints(const Sexp& e, std::size_t from, std::optional<std::size_t> count) {
  if (!e.is_list) throw formula_parse_error("expected a list of integers");
  IntVec v;
  for (std::size_t i = from; i < e.list.size(); ++i) v.push_back(as_int(e.list[i]));
  if (count && v.size() != *count)
    throw formula_parse_error("expected " + std::to_string(*count) + " integers, found " + std::to_string(v.size()));
  return v;
}

const std::string& head(const Sexp& e) {
  static const std::string none;
  if (!e.is_list || e.list.empty() || e.list[0].is_list) return none;
  return e.list[0].atom;
}

const Sexp& field(const Sexp& e, const std::string& name) {
  for (std::size_t i = 1; i < e.list.size(); ++i)
    if (head(e.list[i]) == name) return e.list[i];
  throw formula_parse_error("missing (" + name + " ...) in (" + head(e) + " ...)");
}

bool flag(const Sexp& e, const std::string& name) {
  IntVec v = as_ints(field(e, name), 1, 1);
  if (v[0] != 0 && v[0] != 1) throw formula_parse_error(name + " must be 0 or 1");
  return v[0] == 1;
}

IndexSet index_set(const Sexp& e, std::size_t d) {
  IndexSet I;
  for (const auto& x : as_ints(e, 1, std::nullopt)) {
    if (x < 1 || x > static_cast<unsigned long>(d)) throw formula_parse_error("index out of range");
    std::size_t i = x.get_ui() - 1;
    if (!I.empty() && i <= I.back()) throw formula_parse_error("index set must be increasing");
    I.push_back(i);
  }
  return I;
}

LatticeRepresentation gamma_of(const Sexp& e, std::size_t d) {
  std::vector<LatticePair> pairs;
  for (std::size_t i = 1; i < e.list.size(); ++i) {
    if (head(e.list[i]) != "pair") throw formula_parse_error("expected (pair ...)");
    IntVec v = as_ints(e.list[i], 1, d + 1);
    if (v[0] < 0) throw formula_parse_error("negative lattice modulus");
    pairs.push_back({v[0], IntVec(v.begin() + 1, v.end())});
  }
  return LatticeRepresentation(d, std::move(pairs));
}

std::vector<IntVec> vec_list(const Sexp& e, std::size_t d) {
  std::vector<IntVec> out;
  for (std::size_t i = 1; i < e.list.size(); ++i) out.push_back(as_ints(e.list[i], 0, d));
  return out;
}

Formula qfp_of(const Sexp& e, std::size_t n) {
  if (!e.is_list) {
    if (e.atom == "true") return Formula::top();
    if (e.atom == "false") return Formula::bottom();
    throw formula_parse_error("unknown formula atom '" + e.atom + "'");
  }
  const std::string& op = head(e);
  auto kids = [&](std::size_t from) {
    std::vector<Formula> out;
    for (std::size_t i = from; i < e.list.size(); ++i) out.push_back(qfp_of(e.list[i], n));
    return out;
  };
  if (op == "and" || op == "or") {
    auto k = kids(1);
    if (k.empty()) return op == "and" ? Formula::top() : Formula::bottom();
    return op == "and" ? Formula::conj(std::move(k)) : Formula::disj(std::move(k));
  }
  if (op == "not") {
    if (e.list.size() != 2) throw formula_parse_error("(not F) takes one argument");
    return Formula::negate(qfp_of(e.list[1], n));
  }
  if (op == "=>") {
    if (e.list.size() != 3) throw formula_parse_error("(=> F G) takes two arguments");
    return Formula::implies(qfp_of(e.list[1], n), qfp_of(e.list[2], n));
  }
  if (op == ">=" || op == "=") {
    if (e.list.size() != 3) throw formula_parse_error("comparison takes a coefficient list and a constant");
    return Formula::compare(as_ints(e.list[1], 0, n), op == ">=" ? CmpRel::Ge : CmpRel::Eq, as_int(e.list[2]));
  }
  if (op == "mod") {
    if (e.list.size() != 4) throw formula_parse_error("(mod n (coeffs) c) takes three arguments");
    Int m = as_int(e.list[1]);
    if (m < 1) throw formula_parse_error("modulus must be at least 1");
    return Formula::divides(m, as_ints(e.list[2], 0, n), as_int(e.list[3]));
  }
  throw formula_parse_error("unknown formula operator '" + op + "'");
}

std::size_t dim_of(const Sexp& e) {
  Int d = as_ints(field(e, "dim"), 1, 1)[0];
  if (d < 1 || d > 64) throw formula_parse_error("dimension out of range");
  return d.get_ui();
}

using ojson = nlohmann::ordered_json;

ojson jint(const Int& v) {
  if (v.fits_slong_p()) return ojson(static_cast<std::int64_t>(v.get_si()));
  return ojson(v.get_str());
}

ojson jvec(const IntVec& v) {
  ojson a = ojson::array();
  for (const auto& x : v) a.push_back(jint(x));
  return a;
}

ojson jindex(const IndexSet& I) {
  ojson a = ojson::array();
  for (auto i : I) a.push_back(i + 1);
  return a;
}

ojson jgamma(const LatticeRepresentation& g) {
  ojson a = ojson::array();
  for (const auto& p : g.pairs()) a.push_back({{"n", jint(p.n)}, {"a", jvec(p.a)}});
  return a;
}

}  // namespace

std::string write_qfp(const Formula& f) {
  std::ostringstream os;
  qfp(os, f, 0);
  return os.str();
}

std::string write_formula(const MutualFormula& f) {
  std::ostringstream os;
  os << "; mutual reachability: x ~ y iff some disjunct holds\n";
  os << "(mutual-formula\n  (dim " << f.dim << ")\n  (certified " << f.certified << ")\n  (complete "
     << f.complete << ")";
  for (const auto& dj : f.disjuncts)
    os << "\n  (disjunct (I" << index_list(dj.I) << ") (a" << ints(dj.a) << ") (b" << ints(dj.b) << ") (v"
       << ints(dj.v) << ") " << gamma_text(dj.gamma) << " (certified " << dj.certified << "))";
  os << ")\n";
  return os.str();
}

std::string write_formula(const BottomFormula& f) {
  std::ostringstream os;
  os << "; bottom configurations: c|_I = r, c in U_r, and phi(c + v) for all v in gamma\n";
  os << "(bottom-formula\n  (dim " << f.dim << ")\n  (certified " << f.certified << ")\n  (complete "
     << f.complete << ")";
  for (const auto& t : f.tuples) {
    os << "\n  (tuple (I" << index_list(t.I) << ") (r" << ints(t.r) << ") " << gamma_text(t.gamma);
    os << "\n    (entry";
    for (const auto& m : t.entry) os << " (" << ints(m).substr(m.empty() ? 0 : 1) << ")";
    os << ")\n    (offsets";
    for (const auto& v : t.offsets) os << " (" << ints(v).substr(v.empty() ? 0 : 1) << ")";
    os << ")\n    (certified " << t.certified << ")\n    (phi ";
    qfp(os, t.phi, 4);
    os << "))";
  }
  os << ")\n";
  return os.str();
}

AnyFormula read_formula(const std::string& text) {
  Reader rd(text);
  Sexp top = rd.read();
  if (!rd.at_end()) throw formula_parse_error("trailing input after the formula");
  const std::string& kind = head(top);
  if (kind == "mutual-formula") {
    MutualFormula f;
    f.dim = dim_of(top);
    f.certified = flag(top, "certified");
    f.complete = flag(top, "complete");
    for (std::size_t i = 1; i < top.list.size(); ++i) {
      const Sexp& e = top.list[i];
      if (head(e) != "disjunct") continue;
      MutualDisjunct dj;
      dj.I = index_set(field(e, "I"), f.dim);
      dj.a = as_ints(field(e, "a"), 1, f.dim);
      dj.b = as_ints(field(e, "b"), 1, f.dim);
      dj.v = as_ints(field(e, "v"), 1, f.dim);
      dj.gamma = gamma_of(field(e, "gamma"), f.dim);
      dj.certified = flag(e, "certified");
      f.disjuncts.push_back(std::move(dj));
    }
    return f;
  }
  if (kind == "bottom-formula") {
    BottomFormula f;
    f.dim = dim_of(top);
    f.certified = flag(top, "certified");
    f.complete = flag(top, "complete");
    for (std::size_t i = 1; i < top.list.size(); ++i) {
      const Sexp& e = top.list[i];
      if (head(e) != "tuple") continue;
      BottomTuple t;
      t.I = index_set(field(e, "I"), f.dim);
      t.r = as_ints(field(e, "r"), 1, t.I.size());
      t.gamma = gamma_of(field(e, "gamma"), f.dim);
      t.entry = vec_list(field(e, "entry"), f.dim);
      t.offsets = vec_list(field(e, "offsets"), f.dim);
      t.certified = flag(e, "certified");
      const Sexp& phi = field(e, "phi");
      if (phi.list.size() != 2) throw formula_parse_error("(phi F) takes one formula");
      t.phi = qfp_of(phi.list[1], f.dim);
      if (!t.phi.is_threshold()) throw formula_parse_error("phi must be a threshold formula");
      f.tuples.push_back(std::move(t));
    }
    return f;
  }
  throw formula_parse_error("expected (mutual-formula ...) or (bottom-formula ...)");
}

Formula read_qfp(const std::string& text, std::size_t nvars) {
  Reader rd(text);
  Sexp e = rd.read();
  if (!rd.at_end()) throw formula_parse_error("trailing input after the formula");
  return qfp_of(e, nvars);
}

std::string to_json(const MutualFormula& f) {
  ojson j;
  j["kind"] = "mutual";
  j["dim"] = f.dim;
  j["certified"] = f.certified;
  j["complete"] = f.complete;
  ojson ds = ojson::array();
  for (const auto& dj : f.disjuncts)
    ds.push_back({{"I", jindex(dj.I)},
                  {"a", jvec(dj.a)},
                  {"b", jvec(dj.b)},
                  {"v", jvec(dj.v)},
                  {"gamma", jgamma(dj.gamma)},
                  {"certified", dj.certified}});
  j["disjuncts"] = ds;
  return j.dump(1) + "\n";
}

std::string to_json(const BottomFormula& f) {
  ojson j;
  j["kind"] = "bottom";
  j["dim"] = f.dim;
  j["certified"] = f.certified;
  j["complete"] = f.complete;
  ojson ts = ojson::array();
  auto names = variable_names(Environment::Set, f.dim);
  for (const auto& t : f.tuples) {
    ojson entry = ojson::array(), offsets = ojson::array();
    for (const auto& m : t.entry) entry.push_back(jvec(m));
    for (const auto& v : t.offsets) offsets.push_back(jvec(v));
    ts.push_back({{"I", jindex(t.I)},
                  {"r", jvec(t.r)},
                  {"gamma", jgamma(t.gamma)},
                  {"entry", entry},
                  {"offsets", offsets},
                  {"certified", t.certified},
                  {"phi", to_text(t.phi, names)}});
  }
  j["tuples"] = ts;
  return j.dump(1) + "\n";
}

}  // namespace mutreach
