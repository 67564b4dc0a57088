#include <variant>

#include "doctest.h"
#include "json.hpp"
#include "mutreach/formula_io.hh"
#include "mutreach/oracle.hh"
#include "mutreach/presburger.hh"
#include "test_util.hh"

using namespace mutreach;
using namespace mutreach::testing;

namespace {

CompileParams params_with(long B) {
  CompileParams cp;
  cp.pumping.state_bound = B;
  return cp;
}

IntVec concat(const IntVec& a, const IntVec& b) {
  IntVec r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

Formula random_threshold(Rng& rng, std::size_t n, int depth) {
  if (depth == 0 || rng.uniform(0, 3) == 0) {
    long kind = rng.uniform(0, 5);
    if (kind == 0) return Formula::top();
    if (kind == 1) return Formula::bottom();
    return Formula::at_least(n, rng.uniform(0, n - 1), rng.uniform(-2, 4));
  }
  switch (rng.uniform(0, 3)) {
    case 0:
      return Formula::conj({random_threshold(rng, n, depth - 1), random_threshold(rng, n, depth - 1)});
    case 1:
      return Formula::disj({random_threshold(rng, n, depth - 1), random_threshold(rng, n, depth - 1)});
    case 2:
      return Formula::negate(random_threshold(rng, n, depth - 1));
    default:
      return Formula::implies(random_threshold(rng, n, depth - 1), random_threshold(rng, n, depth - 1));
  }
}

Formula random_formula(Rng& rng, std::size_t n, int depth) {
  if (depth == 0 || rng.uniform(0, 3) == 0) {
    if (rng.uniform(0, 1)) return Formula::compare(rng.vec(n, -2, 2), rng.uniform(0, 1) ? CmpRel::Ge : CmpRel::Eq,
                                                   rng.uniform(-3, 3));
    return Formula::divides(rng.uniform(1, 4), rng.vec(n, -2, 2), rng.uniform(-3, 3));
  }
  if (rng.uniform(0, 1)) return Formula::conj({random_formula(rng, n, depth - 1), random_formula(rng, n, depth - 1)});
  return Formula::disj({Formula::negate(random_formula(rng, n, depth - 1)), random_formula(rng, n, depth - 1)});
}

bool any_box(const std::vector<IntervalBox>& boxes, const IntVec& x) {
  for (const auto& b : boxes)
    if (b.contains(x)) return true;
  return false;
}

}  // namespace

TEST_CASE("formula evaluation basics") {
  Formula f = Formula::conj({Formula::at_least(2, 0, 3), Formula::divides(4, iv({2, 1}), 0)});
  CHECK(f.eval(iv({3, 2})));
  CHECK_FALSE(f.eval(iv({3, 1})));
  CHECK_FALSE(f.eval(iv({2, 0})));
  CHECK(f.is_threshold() == false);
  CHECK(Formula::at_least(2, 1, 5).is_threshold());
  CHECK(Formula::implies(Formula::bottom(), Formula::bottom()).eval(iv({0})));
  CHECK(f.atom_count() == 2);
  CHECK(f.max_constant() == 3);
}

TEST_CASE("SMT-LIB atoms") {
  auto names = variable_names(Environment::Set, 2);
  CHECK(to_smtlib_term(Formula::at_least(2, 0, 3), names) == "(>= c1 3)");
  CHECK(to_smtlib_term(Formula::divides(4, iv({2, 1}), 0), names) == "(= (mod (+ (* 2 c1) c2) 4) 0)");
  std::string script = to_smtlib(Formula::at_least(2, 0, -3), names);
  CHECK(script.find("(declare-const c1 Int)") != std::string::npos);
  CHECK(script.find("(>= c1 (- 3))") != std::string::npos);
  CHECK(script.find("(check-sat)") != std::string::npos);
}

TEST_CASE("threshold DNF agrees with evaluation") {
  Rng rng(53);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = rng.uniform(1, 3);
    Formula f = random_threshold(rng, n, 4);
    auto pos = threshold_dnf(f, n, false);
    auto negd = threshold_dnf(f, n, true);
    for_each_point(n, -3, 5, [&](const IntVec& x) {
      CHECK(any_box(pos, x) == f.eval(x));
      CHECK(any_box(negd, x) == !f.eval(x));
    });
    for (const auto& b : pos) CHECK_FALSE(b.empty());
  }
  CHECK_THROWS(threshold_dnf(Formula::divides(2, iv({1}), 0), 1, false));
}

TEST_CASE("substitution agrees with evaluation") {
  Rng rng(59);
  for (int t = 0; t < 100; ++t) {
    std::size_t n = rng.uniform(1, 3), k = rng.uniform(1, 3);
    Formula f = random_formula(rng, n, 3);
    std::vector<Affine> map;
    for (std::size_t i = 0; i < n; ++i) map.push_back({rng.vec(k, -2, 2), rng.uniform(-2, 2)});
    Formula g = substitute(f, map);
    for_each_point(k, -2, 2, [&](const IntVec& y) {
      IntVec x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = dot(map[i].coeffs, y) + map[i].constant;
      CHECK(g.eval(y) == f.eval(x));
    });
  }
}

TEST_CASE("quantifier-free formula text round trip") {
  Rng rng(61);
  for (int t = 0; t < 100; ++t) {
    std::size_t n = rng.uniform(1, 3);
    Formula f = random_formula(rng, n, 3);
    Formula back = read_qfp(write_qfp(f), n);
    CHECK(back == f);
    CHECK(write_qfp(back) == write_qfp(f));
  }
  CHECK_THROWS_AS(read_qfp("(and (>= (1) 2)", 1), formula_parse_error);
  CHECK_THROWS_AS(read_qfp("(>= (1 2) 2)", 1), formula_parse_error);
}

TEST_CASE("mutual formula of the empty net is equality") {
  PetriNet net = load_fixture("empty");
  MutualFormula f = compile_mutual(net, params_with(1));
  CHECK(f.certified);
  CHECK(f.complete);
  for (long x = 0; x <= 5; ++x)
    for (long y = 0; y <= 5; ++y) CHECK(eval_mutual(f, iv({x}), iv({y})) == (x == y));
}

TEST_CASE("mutual formula of the consumer is equality") {
  PetriNet net = load_fixture("consumer");
  MutualFormula f = compile_mutual(net, params_with(3));
  for (long x = 0; x <= 6; ++x)
    for (long y = 0; y <= 6; ++y) CHECK(eval_mutual(f, iv({x}), iv({y})) == (x == y));
}

TEST_CASE("token swap mutual formula matches the oracle on the box") {
  PetriNet net = load_fixture("token_swap");
  MutualFormula f = compile_mutual(net, params_with(5));
  CHECK(eval_mutual(f, iv({2, 0}), iv({0, 2})));
  CHECK_FALSE(eval_mutual(f, iv({2, 0}), iv({1, 0})));
  // Every pair in [0,4]^2 has at most 8 tokens, so the box of side 8 decides it.
  BoxSpace space(net, uniform_box(2, 8));
  BoxSpace small(net, uniform_box(2, 4));
  Formula flat = to_formula(f);
  for (std::size_t i = 0; i < small.size(); ++i)
    for (std::size_t j = 0; j < small.size(); ++j) {
      Config x = small.config(i), y = small.config(j);
      Verdict v = oracle_mutual(space, x, y);
      REQUIRE(v != Verdict::Unreliable);
      bool e = eval_mutual(f, x, y);
      CHECK(e == (v == Verdict::True));
      CHECK(flat.eval(concat(x, y)) == e);
    }
}

TEST_CASE("compilation is deterministic across worker counts") {
  for (const char* name : {"token_swap", "mixed3"}) {
    PetriNet net = load_fixture(name);
    CompileParams one = params_with(3), four = params_with(3);
    four.workers = 4;
    CHECK(write_formula(compile_mutual(net, one)) == write_formula(compile_mutual(net, four)));
    CHECK(write_formula(compile_bottom(net, one)) == write_formula(compile_bottom(net, four)));
  }
}

TEST_CASE("formula files round trip") {
  PetriNet net = load_fixture("ring");
  MutualFormula mf = compile_mutual(net, params_with(3));
  AnyFormula back = read_formula(write_formula(mf));
  REQUIRE(std::holds_alternative<MutualFormula>(back));
  const auto& m2 = std::get<MutualFormula>(back);
  CHECK(m2.disjuncts == mf.disjuncts);
  CHECK(write_formula(m2) == write_formula(mf));
  BottomFormula bf = compile_bottom(net, params_with(3));
  AnyFormula bback = read_formula(write_formula(bf));
  REQUIRE(std::holds_alternative<BottomFormula>(bback));
  CHECK(write_formula(std::get<BottomFormula>(bback)) == write_formula(bf));
  CHECK_THROWS_AS(read_formula("(mutual-formula (dim 2)"), formula_parse_error);
  CHECK_THROWS_AS(read_formula("(unknown)"), formula_parse_error);
  auto j = nlohmann::json::parse(to_json(mf));
  CHECK(j.is_object());
  auto jb = nlohmann::json::parse(to_json(bf));
  CHECK(jb.is_object());
}

TEST_CASE("bottom formula examples") {
  PetriNet swap = load_fixture("token_swap");
  BottomFormula bs = compile_bottom(swap, params_with(4));
  // Level sets below the state bound are covered.
  for_each_point(2, 0, 3, [&](const IntVec& c) {
    if (norm_1(c) < 4) CHECK(eval_bottom(bs, c) == Tri::True);
  });
  PetriNet consumer = load_fixture("consumer");
  BottomFormula bc = compile_bottom(consumer, params_with(4));
  for (long c = 0; c <= 5; ++c) CHECK(eval_bottom(bc, iv({c})) == (c == 0 ? Tri::True : Tri::False));
  PetriNet empty = load_fixture("empty");
  BottomFormula be = compile_bottom(empty, params_with(2));
  for (long c = 0; c <= 5; ++c) CHECK(eval_bottom(be, iv({c})) == Tri::True);
  CHECK_THROWS(eval_bottom(be, iv({1, 2})));
  CHECK_THROWS(eval_bottom(be, iv({-1})));
}

TEST_CASE("bottom tuples with trivial parts") {
  BottomTuple t;
  t.I = {};
  t.r = IntVec{};
  t.gamma = representation_from_generators({}, 2);
  t.entry = {iv({0, 0})};
  t.phi = Formula::at_least(2, 0, 2);
  CHECK(eval_bottom_tuple(t, iv({2, 0})) == Tri::True);
  CHECK(eval_bottom_tuple(t, iv({1, 5})) == Tri::False);
  EvalOptions en;
  en.method = EvalMethod::Enumerate;
  CHECK(eval_bottom_tuple(t, iv({2, 0}), en) == Tri::True);
  t.gamma = representation_from_generators({iv({1, 1})}, 2);
  t.phi = Formula::top();
  CHECK(eval_bottom_tuple(t, iv({0, 0})) == Tri::True);
  // A lattice direction that lowers x1 forever falsifies x1 >= 2.
  t.phi = Formula::at_least(2, 0, 2);
  CHECK(eval_bottom_tuple(t, iv({9, 9})) == Tri::False);
  CHECK(eval_bottom_tuple(t, iv({3, 3}), en) == Tri::False);
  // The violation at (9,9) - (8,8) lies outside the enumeration radius.
  CHECK(eval_bottom_tuple(t, iv({9, 9}), en) == Tri::Inconclusive);
  // Along (-1, 1) the sum is fixed: x1 + x2 >= 2 encoded as a threshold on either side.
  t.gamma = representation_from_generators({iv({-1, 1})}, 2);
  t.phi = Formula::disj({Formula::at_least(2, 0, 1), Formula::at_least(2, 1, 1)});
  CHECK(eval_bottom_tuple(t, iv({1, 1})) == Tri::True);
  CHECK(eval_bottom_tuple(t, iv({0, 0})) == Tri::False);
}

TEST_CASE("lattice meets box agrees with enumeration") {
  Rng rng(67);
  for (int t = 0; t < 200; ++t) {
    std::size_t d = rng.uniform(1, 3);
    std::vector<IntVec> gens;
    for (long k = rng.uniform(0, 3); k > 0; --k) gens.push_back(rng.vec(d, -3, 3));
    LatticeRepresentation g = representation_from_generators(gens, d);
    IntVec c = rng.vec(d, -4, 4);
    IntervalBox box;
    bool bounded = rng.uniform(0, 1);
    for (std::size_t i = 0; i < d; ++i) {
      long lo = rng.uniform(-4, 4);
      box.lo.push_back(Int(lo));
      if (bounded || rng.uniform(0, 1))
        box.hi.push_back(Int(lo + rng.uniform(0, 3)));
      else
        box.hi.push_back(std::nullopt);
    }
    auto hit = lattice_meets_box(g, c, box, 100000);
    REQUIRE(hit.has_value());
    bool found = false;
    for_each_point(d, -24, 24, [&](const IntVec& p) {
      if (!found && box.contains(p) && g.contains(sub(p, c))) found = true;
    });
    if (found) CHECK(*hit);
    bool all_bounded = true;
    for (const auto& h : box.hi)
      if (!h) all_bounded = false;
    if (all_bounded) CHECK(*hit == found);
  }
}

TEST_CASE("bottom wrapper agrees with the bottom formula on the token swap") {
  PetriNet net = load_fixture("token_swap");
  CompileParams cp = params_with(4);
  BottomWrapper w = bottom_wrapper(net, compile_mutual(net, cp));
  BottomFormula bf = compile_bottom(net, cp);
  for_each_point(2, 0, 2, [&](const IntVec& c) {
    CHECK(eval_wrapper_bounded(w, c, 3) == (eval_bottom(bf, c) == Tri::True));
  });
  std::string smt = to_smtlib(w);
  CHECK(smt.find("forall") != std::string::npos);
  PetriNet empty = load_fixture("empty");
  BottomWrapper we = bottom_wrapper(empty, compile_mutual(empty, params_with(1)));
  CHECK(we.pre.empty());
  CHECK(eval_wrapper_bounded(we, iv({4}), 3));
}

TEST_CASE("SMT export of compiled formulas") {
  PetriNet net = load_fixture("token_swap");
  MutualFormula f = compile_mutual(net, params_with(3));
  std::string smt = to_smtlib(f);
  CHECK(smt.find("(set-logic QF_LIA)") != std::string::npos);
  CHECK(smt.find("(declare-const y2 Int)") != std::string::npos);
  std::size_t open = 0, close = 0;
  for (char ch : smt) {
    if (ch == '(') ++open;
    if (ch == ')') ++close;
  }
  CHECK(open == close);
  std::string bsmt = to_smtlib(compile_bottom(net, params_with(3)));
  CHECK(bsmt.find("(set-logic LIA)") != std::string::npos);
}
