#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "archegraph/graph.hpp"
#include "archegraph/permutation.hpp"

namespace archegraph::fixtures {

inline Graph path3() { return Graph(3, {{0, 1}, {1, 2}}); }
inline Graph k3() { return Graph(3, {{0, 1}, {0, 2}, {1, 2}}); }

// Connected graph on 6 vertices whose only automorphism is the identity.
inline Graph asymmetric6() { return Graph(6, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 4}, {3, 5}}); }

// Triangle with a pendant vertex; two automorphisms.
inline Graph paw() { return Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}}); }

// Edge-set enumeration over S_n, independent of any spectral computation: every sigma with
// relabel(g, sigma) == h.
inline std::vector<Permutation> isomorphisms(const Graph& g, const Graph& h) {
  std::vector<Permutation> out;
  if (g.num_vertices() != h.num_vertices() || g.num_edges() != h.num_edges()) return out;
  std::vector<int> m(g.num_vertices());
  std::iota(m.begin(), m.end(), 0);
  do {
    bool ok = true;
    for (auto [u, v] : g.edges()) {
      if (!h.has_edge(m[u], m[v])) {
        ok = false;
        break;
      }
    }
    if (ok) out.emplace_back(m);
  } while (std::next_permutation(m.begin(), m.end()));
  return out;
}

}  // namespace archegraph::fixtures
