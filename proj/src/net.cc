#include "mutreach/net.hh"

#include <cassert>
#include <fstream>
#include <sstream>

namespace mutreach {

PetriNet::PetriNet(std::size_t dim, std::vector<Action> actions)
    : dim_(dim), actions_(std::move(actions)), norm_(0) {
  if (dim_ == 0) throw std::invalid_argument("net dimension must be at least 1");
  for (const auto& a : actions_) {
    if (a.pre.size() != dim_ || a.post.size() != dim_)
      throw std::invalid_argument("action dimension mismatch");
    if (!non_negative(a.pre) || !non_negative(a.post))
      throw std::invalid_argument("action entries must be non-negative");
    deltas_.push_back(a.delta());
    Int m = norm_inf(a.pre);
    Int mp = norm_inf(a.post);
    if (mp > m) m = mp;
    if (m > norm_) norm_ = m;
  }
}

bool PetriNet::enabled(const Config& x, std::size_t a) const {
  return leq(actions_.at(a).pre, x);
}

Config PetriNet::successor(const Config& x, std::size_t a) const {
  return add(x, deltas_.at(a));
}

IntVec displacement(const PetriNet& net, const Word& w) {
  IntVec s = zeros(net.dim());
  for (auto a : w) s = add(s, net.delta(a));
  return s;
}

Config hurdle(const PetriNet& net, const Word& w) {
  Config h = zeros(net.dim());
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    h = vmax(net.action(*it).pre, sub(h, net.delta(*it)));
    assert(non_negative(h));
  }
  return h;
}

FireResult fire(const PetriNet& net, const Config& x, const Word& w) {
  FireResult r;
  Config cur = x;
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (!net.enabled(cur, w[j])) {
      r.blocked_step = j + 1;
      return r;
    }
    cur = net.successor(cur, w[j]);
  }
  r.ok = true;
  r.result = std::move(cur);
  return r;
}

namespace {

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

Config read_entries(std::istringstream& ss, std::size_t d, int line_no) {
  Config c;
  for (std::size_t i = 0; i < d; ++i) {
    std::string tok;
    if (!(ss >> tok))
      throw PetriNet::parse_error("line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(d) + " entries");
    try {
      c.push_back(parse_int(tok));
    } catch (const std::invalid_argument&) {
      throw PetriNet::parse_error("line " + std::to_string(line_no) + ": bad integer '" + tok + "'");
    }
    if (c.back() < 0)
      throw PetriNet::parse_error("line " + std::to_string(line_no) + ": negative entry");
  }
  return c;
}

}  // namespace

PetriNet parse_net(std::istream& in) {
  std::string line;
  int line_no = 0;
  std::size_t d = 0;
  std::vector<Action> actions;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(strip_comment(line));
    std::string kw;
    if (!(ss >> kw)) continue;
    if (kw == "dim") {
      if (d != 0) throw PetriNet::parse_error("line " + std::to_string(line_no) + ": duplicate dim");
      long long v = 0;
      if (!(ss >> v) || v < 1)
        throw PetriNet::parse_error("line " + std::to_string(line_no) + ": bad dimension");
      d = static_cast<std::size_t>(v);
    } else if (kw == "pre:") {
      if (d == 0) throw PetriNet::parse_error("line " + std::to_string(line_no) + ": action before dim");
      Action a;
      a.pre = read_entries(ss, d, line_no);
      std::string post_kw;
      if (!(ss >> post_kw) || post_kw != "post:")
        throw PetriNet::parse_error("line " + std::to_string(line_no) + ": expected 'post:'");
      a.post = read_entries(ss, d, line_no);
      std::string extra;
      if (ss >> extra)
        throw PetriNet::parse_error("line " + std::to_string(line_no) + ": trailing tokens");
      actions.push_back(std::move(a));
    } else {
      throw PetriNet::parse_error("line " + std::to_string(line_no) + ": unknown keyword '" + kw + "'");
    }
  }
  if (d == 0) throw PetriNet::parse_error("missing 'dim' header");
  return PetriNet(d, std::move(actions));
}

PetriNet parse_net_string(const std::string& text) {
  std::istringstream in(text);
  return parse_net(in);
}

PetriNet load_net(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PetriNet::parse_error("cannot open net file '" + path + "'");
  return parse_net(in);
}

std::string format_net(const PetriNet& net) {
  std::string s = "dim " + std::to_string(net.dim()) + "\n";
  for (const auto& a : net.actions())
    s += "pre: " + join(a.pre) + "  post: " + join(a.post) + "\n";
  return s;
}

std::string format_word(const Word& w) {
  if (w.empty()) return "eps";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += " ";
    s += "a" + std::to_string(w[i] + 1);
  }
  return s;
}

}  // namespace mutreach
