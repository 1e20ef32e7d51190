#pragma once

// Seeded random instances shared by unit, property and acceptance tests.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rotset/graph.hpp"

namespace rotset::testing {

using Rng = std::mt19937_64;

inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

/// Strongly connected multigraph: a Hamiltonian cycle plus extra random
/// edges, displacements in [-disp, disp], times in [1, max_time].
inline HorseshoeGraph random_scc(Rng& rng, int genus, int max_vertices = 5, int max_edges = 6, int disp = 2,
                                 int max_time = 3) {
  const int n = static_cast<int>(uniform_int(rng, 1, max_vertices));
  const int total = static_cast<int>(uniform_int(rng, n, std::max(n, max_edges)));
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
  auto random_disp = [&] {
    std::vector<std::int64_t> d(2 * static_cast<std::size_t>(genus));
    for (auto& x : d) x = uniform_int(rng, -disp, disp);
    return d;
  };
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back(Edge{i, (i + 1) % n, random_disp(), uniform_int(rng, 1, max_time)});
  while (static_cast<int>(edges.size()) < total)
    edges.push_back(Edge{static_cast<int>(uniform_int(rng, 0, n - 1)), static_cast<int>(uniform_int(rng, 0, n - 1)),
                         random_disp(), uniform_int(rng, 1, max_time)});
  return HorseshoeGraph(genus, names, edges);
}

struct DagInstanceOptions {
  int genus = 3;
  int max_classes = 6;
  int max_class_vertices = 2;
  bool genus_zero_ends = true;   // force at least one genus-zero source or sink
  bool bridge_disp = false;      // bridges get displacements in [-1, 1]
  bool connect = true;           // add random oriented edges between classes
};

/// Classes live on disjoint coordinate planes (so class spans are in direct
/// sum and pairwise orthogonal) or are genus-zero; classes are connected by
/// random forward edges, so the condensation is a DAG.
inline HorseshoeGraph random_dag_instance(Rng& rng, const DagInstanceOptions& o) {
  const std::size_t dim = 2 * static_cast<std::size_t>(o.genus);
  const int classes = static_cast<int>(uniform_int(rng, 2, o.max_classes));
  std::vector<int> planes(static_cast<std::size_t>(o.genus));
  for (int i = 0; i < o.genus; ++i) planes[static_cast<std::size_t>(i)] = i;
  std::shuffle(planes.begin(), planes.end(), rng);
  std::size_t next_plane = 0;

  std::vector<std::string> names;
  std::vector<Edge> edges;
  std::vector<std::vector<int>> members;
  auto zero = [&] { return std::vector<std::int64_t>(dim, 0); };
  for (int c = 0; c < classes; ++c) {
    bool genus_zero = next_plane >= planes.size() || (o.genus_zero_ends && (c == 0 || c == classes - 1)) ||
                      uniform_int(rng, 0, 3) == 0;
    const int nv = static_cast<int>(uniform_int(rng, 1, o.max_class_vertices));
    std::vector<int> vs;
    for (int k = 0; k < nv; ++k) {
      vs.push_back(static_cast<int>(names.size()));
      names.push_back("c" + std::to_string(c) + "v" + std::to_string(k));
    }
    // a cycle through the class so it is one SCC
    if (nv > 1)
      for (int k = 0; k < nv; ++k) edges.push_back(Edge{vs[static_cast<std::size_t>(k)], vs[static_cast<std::size_t>((k + 1) % nv)], zero(), 1});
    if (genus_zero) {
      if (uniform_int(rng, 0, 1)) edges.push_back(Edge{vs[0], vs[0], zero(), uniform_int(rng, 1, 2)});
    } else {
      const auto plane = static_cast<std::size_t>(planes[next_plane++]);
      const int loops = static_cast<int>(uniform_int(rng, 2, 4));
      for (int l = 0; l < loops; ++l) {
        auto d = zero();
        d[2 * plane] = uniform_int(rng, -2, 2);
        d[2 * plane + 1] = uniform_int(rng, -2, 2);
        if (l == 0) d[2 * plane] = 1, d[2 * plane + 1] = 0;
        if (l == 1) d[2 * plane] = 0, d[2 * plane + 1] = 1;
        int v = vs[static_cast<std::size_t>(uniform_int(rng, 0, nv - 1))];
        edges.push_back(Edge{v, v, d, uniform_int(rng, 1, 3)});
      }
    }
    members.push_back(vs);
  }
  if (o.connect) {
    for (int a = 0; a < classes; ++a)
      for (int b = a + 1; b < classes; ++b) {
        if (uniform_int(rng, 0, 2) != 0) continue;
        auto d = zero();
        if (o.bridge_disp)
          for (auto& x : d) x = uniform_int(rng, -1, 1);
        const auto& ma = members[static_cast<std::size_t>(a)];
        const auto& mb = members[static_cast<std::size_t>(b)];
        edges.push_back(Edge{ma[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(ma.size()) - 1))],
                             mb[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(mb.size()) - 1))],
                             d, 1});
      }
  }
  return HorseshoeGraph(o.genus, names, edges);
}

}  // namespace rotset::testing
