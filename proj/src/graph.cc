#include "mutreach/graph.hh"

#include <algorithm>
#include <limits>

namespace mutreach {

std::vector<std::size_t> tarjan_scc(const std::vector<std::vector<std::size_t>>& adj,
                                    std::size_t* num_components) {
  const std::size_t n = adj.size();
  const std::size_t unset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, unset), low(n, 0), comp(n, unset);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0, ncomp = 0;
  // Explicit DFS frames: (vertex, next edge position).
  std::vector<std::pair<std::size_t, std::size_t>> frames;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unset) continue;
    frames.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      if (pos < adj[v].size()) {
        std::size_t w = adj[v][pos++];
        if (index[w] == unset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      std::size_t done = v;
      frames.pop_back();
      if (!frames.empty()) {
        std::size_t parent = frames.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = ncomp;
        } while (w != done);
        ++ncomp;
      }
    }
  }
  if (num_components) *num_components = ncomp;
  return comp;
}

bool strongly_connected(const std::vector<std::vector<std::size_t>>& adj) {
  if (adj.empty()) return false;
  std::size_t k = 0;
  tarjan_scc(adj, &k);
  return k == 1;
}

}  // namespace mutreach
