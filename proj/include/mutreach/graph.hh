#pragma once

#include <cstddef>
#include <vector>

namespace mutreach {

// Strongly connected components of a directed graph given by adjacency
// lists. Returns the component id of each vertex; ids are assigned in
// reverse topological order (sink components first), as Tarjan does.
std::vector<std::size_t> tarjan_scc(const std::vector<std::vector<std::size_t>>& adj,
                                    std::size_t* num_components = nullptr);

bool strongly_connected(const std::vector<std::vector<std::size_t>>& adj);

}  // namespace mutreach
