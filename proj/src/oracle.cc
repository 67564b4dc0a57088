#include "mutreach/oracle.hh"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "json.hpp"

#include "mutreach/graph.hh"

namespace mutreach {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::True:
      return "true";
    case Verdict::False:
      return "false";
    case Verdict::Unreliable:
      return "unreliable";
  }
  return "?";
}

std::vector<unsigned long> uniform_box(std::size_t d, unsigned long b) {
  return std::vector<unsigned long>(d, b);
}

BoxSpace::BoxSpace(const PetriNet& net, std::vector<unsigned long> box)
    : net_(&net), box_(std::move(box)) {
  if (box_.size() != net.dim()) throw std::invalid_argument("box dimension differs from the net's");
  for (auto b : box_) {
    radix_.push_back(size_);
    if (size_ > (std::size_t{1} << 26) / (b + 1)) throw std::invalid_argument("box too large");
    size_ *= b + 1;
  }
  adj_.assign(size_, {});
  escapes_.assign(size_, false);
  for (std::size_t id = 0; id < size_; ++id) {
    Config c = config(id);
    for (std::size_t a = 0; a < net.size(); ++a) {
      if (!net.enabled(c, a)) continue;
      Config n = net.successor(c, a);
      if (!inside(n)) {
        escapes_[id] = true;
        continue;
      }
      adj_[id].push_back(this->id(n));
    }
    std::sort(adj_[id].begin(), adj_[id].end());
    adj_[id].erase(std::unique(adj_[id].begin(), adj_[id].end()), adj_[id].end());
  }
  std::size_t ncomp = 0;
  comp_ = tarjan_scc(adj_, &ncomp);
  members_.assign(ncomp, {});
  for (std::size_t id = 0; id < size_; ++id) members_[comp_[id]].push_back(id);
  closure_escape_.assign(ncomp, false);
  closed_.assign(ncomp, true);
  // Component ids are in reverse topological order: successors come first.
  for (std::size_t k = 0; k < ncomp; ++k)
    for (auto id : members_[k]) {
      if (escapes_[id]) {
        closure_escape_[k] = true;
        closed_[k] = false;
      }
      for (auto s : adj_[id]) {
        if (comp_[s] == k) continue;
        closed_[k] = false;
        if (closure_escape_[comp_[s]]) closure_escape_[k] = true;
      }
    }
}

bool BoxSpace::inside(const Config& c) const {
  if (c.size() != box_.size()) return false;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] < 0 || c[i] > box_[i]) return false;
  return true;
}

std::size_t BoxSpace::id(const Config& c) const {
  if (!inside(c)) throw std::out_of_range("configuration " + to_string(c) + " is outside the box");
  std::size_t id = 0;
  for (std::size_t i = 0; i < c.size(); ++i) id += c[i].get_ui() * radix_[i];
  return id;
}

Config BoxSpace::config(std::size_t id) const {
  Config c(box_.size());
  for (std::size_t i = 0; i < box_.size(); ++i) {
    c[i] = static_cast<unsigned long>(id % (box_[i] + 1));
    id /= box_[i] + 1;
  }
  return c;
}

BoundedReach bounded_reach(const PetriNet& net, const Config& x, const std::vector<unsigned long>& box) {
  BoundedReach r;
  std::set<Config> seen{x};
  std::deque<Config> queue{x};
  auto in_box = [&](const Config& c) {
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] > box[i]) return false;
    return true;
  };
  if (!in_box(x)) throw std::invalid_argument("start configuration is outside the box");
  while (!queue.empty()) {
    Config c = queue.front();
    queue.pop_front();
    for (std::size_t a = 0; a < net.size(); ++a) {
      if (!net.enabled(c, a)) continue;
      Config n = net.successor(c, a);
      if (!in_box(n)) {
        r.frontier = true;
        continue;
      }
      if (seen.insert(n).second) queue.push_back(n);
    }
  }
  r.configs.assign(seen.begin(), seen.end());
  return r;
}

SccInBox sccc_in_box(const PetriNet& net, const std::vector<unsigned long>& box) {
  BoxSpace space(net, box);
  std::vector<std::pair<std::vector<Config>, bool>> comps;
  for (std::size_t k = 0; k < space.num_components(); ++k) {
    std::vector<Config> cs;
    for (auto id : space.members(k)) cs.push_back(space.config(id));
    std::sort(cs.begin(), cs.end());
    comps.push_back({std::move(cs), space.exact(k)});
  }
  std::sort(comps.begin(), comps.end());
  SccInBox r;
  for (auto& [cs, ok] : comps) {
    r.components.push_back(std::move(cs));
    r.reliable.push_back(ok);
  }
  return r;
}

Verdict oracle_mutual(const BoxSpace& space, const Config& x, const Config& y) {
  std::size_t cx = space.component(space.id(x)), cy = space.component(space.id(y));
  if (cx == cy) return Verdict::True;
  if (space.exact(cx) || space.exact(cy)) return Verdict::False;
  return Verdict::Unreliable;
}

Verdict oracle_mutual(const PetriNet& net, const Config& x, const Config& y,
                      const std::vector<unsigned long>& box) {
  return oracle_mutual(BoxSpace(net, box), x, y);
}

Verdict oracle_bottom(const BoxSpace& space, const Config& c) {
  std::size_t k = space.component(space.id(c));
  if (!space.exact(k)) return Verdict::Unreliable;
  return space.closed(k) ? Verdict::True : Verdict::False;
}

Verdict oracle_bottom(const PetriNet& net, const Config& c, const std::vector<unsigned long>& box) {
  return oracle_bottom(BoxSpace(net, box), c);
}

std::string box_to_dot(const BoxSpace& space) {
  static const char* palette[] = {"lightblue", "lightpink", "palegreen", "khaki", "plum",
                                  "lightsalmon", "lightcyan", "wheat"};
  std::string s = "digraph box {\n";
  for (std::size_t id = 0; id < space.size(); ++id) {
    std::size_t k = space.component(id);
    s += "  n" + std::to_string(id) + " [label=\"" + to_string(space.config(id)) +
         "\", style=filled, fillcolor=" + palette[k % 8];
    if (!space.exact(k)) s += ", shape=box";
    if (space.exact(k) && space.closed(k)) s += ", peripheries=2";
    s += "];\n";
  }
  for (std::size_t id = 0; id < space.size(); ++id)
    for (auto t : space.successors(id)) s += "  n" + std::to_string(id) + " -> n" + std::to_string(t) + ";\n";
  return s + "}\n";
}

std::string box_to_json(const BoxSpace& space) {
  using nlohmann::json;
  auto vec = [](const Config& c) {
    json a = json::array();
    for (const auto& v : c) a.push_back(v.get_si());
    return a;
  };
  json j;
  j["box"] = space.box();
  json comps = json::array();
  // Deterministic component order: by least member id.
  std::vector<std::size_t> order(space.num_components());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return space.members(a)[0] < space.members(b)[0]; });
  for (auto k : order) {
    json c;
    json ms = json::array();
    for (auto id : space.members(k)) ms.push_back(vec(space.config(id)));
    c["members"] = ms;
    c["exact"] = space.exact(k);
    c["bottom"] = space.exact(k) ? json(space.closed(k)) : json(nullptr);
    comps.push_back(c);
  }
  j["components"] = comps;
  json edges = json::array();
  for (std::size_t id = 0; id < space.size(); ++id)
    for (auto t : space.successors(id)) edges.push_back({vec(space.config(id)), vec(space.config(t))});
  j["edges"] = edges;
  return j.dump(2) + "\n";
}

}  // namespace mutreach
