// mutreach: mutual reachability and bottom configurations of Petri nets.
//
// Exit codes: 0 decided, 2 inconclusive or budget exhausted, 1 usage or parse error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "mutreach/formula_io.hh"
#include "mutreach/oracle.hh"
#include "mutreach/presburger.hh"
#include "mutreach/witness.hh"

using namespace mutreach;

namespace {

constexpr int kDecided = 0;
constexpr int kUsage = 1;
constexpr int kInconclusive = 2;

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Config parse_point(const std::string& text, std::size_t d) {
  std::string s = text;
  for (char& ch : s)
    if (ch == ',' || ch == '(' || ch == ')') ch = ' ';
  std::istringstream in(s);
  Config c;
  std::string tok;
  while (in >> tok) {
    try {
      c.push_back(parse_int(tok));
    } catch (const std::exception&) {
      throw usage_error("malformed point '" + text + "'");
    }
  }
  if (c.size() != d)
    throw usage_error("point '" + text + "' has " + std::to_string(c.size()) + " entries, expected " +
                      std::to_string(d));
  if (!non_negative(c)) throw usage_error("point '" + text + "' has a negative entry");
  return c;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw usage_error("cannot write '" + path + "'");
  out << text;
}

// Shared pumping flags.
struct ParamFlags {
  long bound = 4;
  std::size_t ell = 4;
  std::string tau;
  std::size_t basis_budget = 200000;

  void add(CLI::App* app) {
    app->add_option("-B,--bound", bound, "state norm bound B (unfolding states have norm < B)")
        ->check(CLI::PositiveNumber);
    app->add_option("-l,--ell", ell, "length bound for pumping cycles");
    app->add_option("--tau", tau,
                    "off-I threshold; the default is the per-unfolding certified value m r^3 (3drm)^d, "
                    "smaller values make verdicts heuristic");
    app->add_option("--basis-budget", basis_budget, "search nodes per upward basis")
        ->check(CLI::PositiveNumber);
  }

  PumpingParams get() const {
    PumpingParams p;
    p.state_bound = bound;
    p.cycle_length = ell;
    p.basis_budget = basis_budget;
    if (!tau.empty()) {
      try {
        p.tau = parse_int(tau);
      } catch (const std::exception&) {
        throw usage_error("malformed --tau '" + tau + "'");
      }
      if (*p.tau < 0) throw usage_error("--tau must be non-negative");
    }
    return p;
  }
};

void print_completeness_parameters(const PetriNet& net) {
  CompletenessParameters pp = completeness_parameters(net.dim(), net.norm());
  std::cout << "d = " << net.dim() << ", m = " << net.norm() << "\n";
  std::cout << "b   = " << pp.b;
  if (pp.b_exact)
    std::cout << " = " << pp.b_exact->get_str();
  else
    std::cout << " (" << pp.b_decimal_digits << " decimal digits)";
  std::cout << "\nl   = " << pp.ell << "\ns   = " << pp.s << "\ntau = " << pp.tau << "\n";
}

int cmd_check_mutual(const std::string& net_path, const std::string& xs, const std::string& ys,
                     const ParamFlags& flags, long box, const std::string& witness_out, bool synthesize) {
  PetriNet net = load_net(net_path);
  Config x = parse_point(xs, net.dim()), y = parse_point(ys, net.dim());
  if (x == y) {
    std::cout << "mutual (trivial)\n";
    return kDecided;
  }
  PumpingParams params = flags.get();
  SearchResult res = search_witness(net, x, y, params);
  std::optional<Verdict> oracle;
  if (box > 0) {
    std::vector<unsigned long> b = uniform_box(net.dim(), static_cast<unsigned long>(box));
    BoxSpace space(net, b);
    if (!space.inside(x) || !space.inside(y)) throw usage_error("--box does not contain both points");
    oracle = oracle_mutual(space, x, y);
  }
  if (res.status == SearchStatus::Found) {
    const MutualWitness& w = *res.witness;
    std::cout << "mutual (" << (w.certified ? "certified" : "heuristic") << ")\n";
    std::cout << "witness: I = " << index_set_string(w.unfolding.index_set()) << ", "
              << w.unfolding.num_states() << " states, " << w.unfolding.transitions().size()
              << " transitions, tau = " << w.tau << "\n";
    if (!witness_out.empty()) {
      write_file(witness_out, serialize_witness(w));
      std::cout << "witness written to " << witness_out << "\n";
    }
    if (synthesize) {
      for (auto [from, to] : {std::pair<std::size_t, std::size_t>{0, 1}, {1, 0}}) {
        SynthesisResult s = synthesize_path(net, w, from, to);
        std::cout << (from == 0 ? "x -> y: " : "y -> x: ");
        if (s.ok)
          std::cout << format_word(s.word) << "\n";
        else
          std::cout << "synthesis failed: " << s.diagnostics << "\n";
      }
    }
    if (oracle) {
      std::cout << "oracle: " << to_string(*oracle);
      if (*oracle == Verdict::False) std::cout << " (DISAGREES)";
      std::cout << "\n";
    }
    return kDecided;
  }
  if (oracle && *oracle != Verdict::Unreliable) {
    std::cout << (*oracle == Verdict::True ? "mutual (oracle)" : "not mutual (oracle)") << "\n";
    return kDecided;
  }
  std::cout << "inconclusive: no witness within B = " << flags.bound << ", l = " << flags.ell;
  std::cout << (res.status == SearchStatus::Exhausted ? " (no candidate unfolding)" : " (pumping condition failed)")
            << "\n";
  for (const auto& line : res.log) std::cout << "  " << line << "\n";
  return kInconclusive;
}

int cmd_compile(const std::string& net_path, const std::string& mode, const ParamFlags& flags,
                std::size_t workers, std::size_t budget, const std::string& out) {
  PetriNet net = load_net(net_path);
  CompileParams cp;
  cp.pumping = flags.get();
  cp.workers = workers;
  cp.max_disjuncts = budget;
  bool complete = true;
  if (mode == "mutual") {
    MutualFormula f = compile_mutual(net, cp);
    write_file(out + ".mrf", write_formula(f));
    write_file(out + ".smt2", to_smtlib(f));
    write_file(out + ".json", to_json(f));
    std::cout << "mutual formula: " << f.disjuncts.size() << " disjuncts, "
              << (f.certified ? "certified" : "heuristic") << (f.complete ? "" : ", incomplete") << "\n";
    complete = f.complete;
  } else {
    BottomFormula f = compile_bottom(net, cp);
    MutualFormula m = compile_mutual(net, cp);
    write_file(out + ".mrf", write_formula(f));
    write_file(out + ".smt2", to_smtlib(f));
    write_file(out + ".json", to_json(f));
    write_file(out + ".wrapper.smt2", to_smtlib(bottom_wrapper(net, m)));
    std::cout << "bottom formula: " << f.tuples.size() << " tuples, " << (f.certified ? "certified" : "heuristic")
              << (f.complete && m.complete ? "" : ", incomplete") << "\n";
    complete = f.complete && m.complete;
  }
  std::cout << "wrote " << out << ".mrf, " << out << ".smt2, " << out << ".json"
            << (mode == "bottom" ? ", " + out + ".wrapper.smt2" : "") << "\n";
  std::cout << "parameters for certified completeness:\n";
  print_completeness_parameters(net);
  return complete ? kDecided : kInconclusive;
}

int cmd_eval(const std::string& path, const std::vector<std::string>& pair, const std::string& point, long box,
             const std::string& net_path, const std::string& method, const std::string& radius) {
  AnyFormula any;
  try {
    any = read_formula(read_file(path));
  } catch (const formula_parse_error& e) {
    throw usage_error(path + ": " + e.what());
  }
  std::optional<PetriNet> net;
  if (!net_path.empty()) net = load_net(net_path);
  if (auto* mf = std::get_if<MutualFormula>(&any)) {
    const std::size_t d = mf->dim;
    if (!pair.empty()) {
      if (pair.size() != 2) throw usage_error("--pair takes two points");
      bool v = eval_mutual(*mf, parse_point(pair[0], d), parse_point(pair[1], d));
      std::cout << (v ? "true" : "false") << "\n";
      return kDecided;
    }
    if (box < 0) throw usage_error("mutual formulas need --pair or --box");
    std::vector<unsigned long> b = uniform_box(d, static_cast<unsigned long>(box));
    std::optional<BoxSpace> space;
    if (net) space.emplace(*net, b);
    BoxSpace grid(PetriNet(d, {}), b);
    std::cout << "x,y,formula" << (space ? ",oracle" : "") << "\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
      for (std::size_t j = 0; j < grid.size(); ++j) {
        Config x = grid.config(i), y = grid.config(j);
        std::cout << '"' << join(x) << "\",\"" << join(y) << "\"," << (eval_mutual(*mf, x, y) ? "true" : "false");
        if (space) std::cout << ',' << to_string(oracle_mutual(*space, x, y));
        std::cout << "\n";
      }
    return kDecided;
  }
  const BottomFormula& bf = std::get<BottomFormula>(any);
  EvalOptions opts;
  if (method == "enumerate")
    opts.method = EvalMethod::Enumerate;
  else if (method != "exact")
    throw usage_error("--method must be exact or enumerate");
  try {
    opts.radius = parse_int(radius);
  } catch (const std::exception&) {
    throw usage_error("malformed --radius");
  }
  if (!point.empty()) {
    Tri t = eval_bottom(bf, parse_point(point, bf.dim), opts);
    std::cout << to_string(t) << "\n";
    return t == Tri::Inconclusive ? kInconclusive : kDecided;
  }
  if (box < 0) throw usage_error("bottom formulas need --point or --box");
  std::vector<unsigned long> b = uniform_box(bf.dim, static_cast<unsigned long>(box));
  std::optional<BoxSpace> space;
  if (net) space.emplace(*net, b);
  BoxSpace grid(PetriNet(bf.dim, {}), b);
  bool unsure = false;
  std::cout << "c,formula" << (space ? ",oracle" : "") << "\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Config c = grid.config(i);
    Tri t = eval_bottom(bf, c, opts);
    unsure = unsure || t == Tri::Inconclusive;
    std::cout << '"' << join(c) << "\"," << to_string(t);
    if (space) std::cout << ',' << to_string(oracle_bottom(*space, c));
    std::cout << "\n";
  }
  return unsure ? kInconclusive : kDecided;
}

int cmd_explore(const std::string& net_path, long box, const std::string& dot, const std::string& json) {
  PetriNet net = load_net(net_path);
  BoxSpace space(net, uniform_box(net.dim(), static_cast<unsigned long>(box)));
  SccInBox s = sccc_in_box(net, space.box());
  std::size_t reliable = 0, bottoms = 0;
  for (std::size_t k = 0; k < s.components.size(); ++k) {
    const auto& comp = s.components[k];
    Verdict bot = oracle_bottom(space, comp.front());
    reliable += s.reliable[k];
    bottoms += bot == Verdict::True;
    std::cout << "component " << k + 1 << ": " << comp.size() << " configurations, "
              << (s.reliable[k] ? "exact" : "unreliable") << ", bottom " << to_string(bot) << ", least "
              << to_string(comp.front()) << "\n";
  }
  std::cout << space.size() << " configurations, " << s.components.size() << " components, " << reliable
            << " exact, " << bottoms << " bottom\n";
  if (!dot.empty()) write_file(dot, box_to_dot(space));
  if (!json.empty()) write_file(json, box_to_json(space));
  return kDecided;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mutual reachability and bottom configurations of Petri nets"};
  app.require_subcommand(1);

  ParamFlags check_flags, compile_flags;

  auto* check = app.add_subcommand("check-mutual", "search for a mutual reachability witness between x and y");
  std::string check_net, check_x, check_y, witness_out;
  long check_box = 0;
  bool synthesize = false;
  check->add_option("net", check_net, "net file")->required();
  check->add_option("x", check_x, "configuration, e.g. \"2 0\"")->required();
  check->add_option("y", check_y, "configuration")->required();
  check_flags.add(check);
  check->add_option("--box", check_box, "cross-check with the bounded oracle on [0,box]^d (0 disables)");
  check->add_option("--witness", witness_out, "write the witness certificate to this file");
  check->add_flag("--synthesize", synthesize, "print firing words in both directions");

  auto* compile = app.add_subcommand("compile", "compile a Presburger formula (native, SMT-LIB and JSON files)");
  std::string compile_net, mode = "mutual", out = "formula";
  std::size_t workers = 1, budget = 2000000;
  compile->add_option("net", compile_net, "net file")->required();
  compile->add_option("--mode", mode, "mutual or bottom")->check(CLI::IsMember({"mutual", "bottom"}));
  compile->add_option("-o,--out", out, "output prefix");
  compile->add_option("-j,--workers", workers, "worker threads for unfolding shards")->check(CLI::PositiveNumber);
  compile->add_option("--budget", budget, "maximum number of disjuncts");
  compile_flags.add(compile);

  auto* eval = app.add_subcommand("eval", "evaluate a compiled formula at points or over a box (CSV)");
  std::string formula_path, point, eval_net, method = "exact", radius = "6";
  std::vector<std::string> pair;
  long eval_box = -1;
  eval->add_option("formula", formula_path, "formula file (.mrf)")->required();
  eval->add_option("--pair", pair, "two configurations for a mutual formula")->expected(2);
  eval->add_option("--point", point, "configuration for a bottom formula");
  eval->add_option("--box", eval_box, "sweep [0,box]^d and print CSV");
  eval->add_option("--net", eval_net, "add an oracle column computed on this net");
  eval->add_option("--method", method, "bottom evaluation: exact or enumerate");
  eval->add_option("--radius", radius, "enumeration radius for --method enumerate");

  auto* explore = app.add_subcommand("explore", "bounded state space: components, bottoms, DOT and JSON");
  std::string explore_net, dot, json;
  long explore_box = 3;
  explore->add_option("net", explore_net, "net file")->required();
  explore->add_option("--box", explore_box, "box bound per coordinate")->check(CLI::NonNegativeNumber);
  explore->add_option("--dot", dot, "write the graph in DOT format");
  explore->add_option("--json", json, "write the graph in JSON format");

  auto* params = app.add_subcommand("params", "print the exact completeness parameters for a net");
  std::string params_net;
  params->add_option("net", params_net, "net file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*check)
      return cmd_check_mutual(check_net, check_x, check_y, check_flags, check_box, witness_out, synthesize);
    if (*compile) return cmd_compile(compile_net, mode, compile_flags, workers, budget, out);
    if (*eval) return cmd_eval(formula_path, pair, point, eval_box, eval_net, method, radius);
    if (*explore) return cmd_explore(explore_net, explore_box, dot, json);
    if (*params) {
      print_completeness_parameters(load_net(params_net));
      return kDecided;
    }
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const PetriNet::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
