#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rotset/homology.hpp"
#include "rotset/polytope.hpp"

namespace rotset {

struct Edge {
  int from = 0;
  int to = 0;
  std::vector<std::int64_t> disp;  // length 2g
  std::int64_t time = 1;           // >= 1
};

/// Directed multigraph of rotational horseshoes. Self-loops and parallel
/// edges are allowed; every edge carries an integer homology displacement
/// and a positive transition time.
class HorseshoeGraph {
 public:
  /// Validates every invariant; throws ValidationError naming the offending edge.
  HorseshoeGraph(int genus, std::vector<std::string> vertices, std::vector<Edge> edges,
                 nlohmann::ordered_json metadata = nullptr);

  /// Parses the JSON graph schema. Errors carry the JSON pointer and line.
  static HorseshoeGraph parse(std::string_view text);
  static HorseshoeGraph load(const std::filesystem::path& path);

  /// Canonical JSON; parse(to_json()) reproduces it byte for byte.
  std::string to_json() const;

  int genus() const noexcept { return genus_; }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  const std::vector<std::string>& vertex_names() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<int>& out_edges(int v) const { return out_[static_cast<std::size_t>(v)]; }
  const nlohmann::ordered_json& metadata() const noexcept { return metadata_; }

  int vertex_index(std::string_view name) const;
  HomologyVector displacement(int edge) const;
  std::int64_t max_abs_displacement() const;

 private:
  int genus_;
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_;
  nlohmann::ordered_json metadata_;
};

/// A vertex-simple cycle; with parallel edges, each edge choice is its own cycle.
struct SimpleCycle {
  std::vector<int> edges;  // starts and ends at `base`
  int base = 0;
  HomologyVector displacement;
  std::int64_t period = 0;
  HomologyVector mean;  // displacement / period
};

/// All simple cycles inside the vertex set `members` (Johnson's circuit
/// search on the collapsed digraph, then every parallel-edge choice).
/// Throws LimitError when more than `cap` cycles exist.
std::vector<SimpleCycle> simple_cycles(const HorseshoeGraph& g, std::span<const int> members,
                                       std::size_t cap = 1'000'000);

/// hull({0} u {cycle means}) over the simple cycles inside `members`.
Polytope class_polytope(const HorseshoeGraph& g, std::span<const int> members,
                        std::size_t cap = 1'000'000);

/// Means of every closed walk of 1..max_length edges inside `members`, sorted
/// and deduplicated. Walks are enumerated through distinct (vertex,
/// displacement, time) prefixes; throws LimitError past `cap` prefixes.
std::vector<HomologyVector> brute_force_walk_means(const HorseshoeGraph& g, std::span<const int> members,
                                                   std::size_t max_length, std::size_t cap = 10'000'000);

struct ClassInfo {
  int id = 0;
  std::vector<int> members;
  std::vector<SimpleCycle> cycles;
  Polytope rho;
  Subspace span;
  bool symplectic = true;
  int genus = 0;  // dim(span)/2 when symplectic, rounded up otherwise

  /// rho = {0}
  bool trivial() const { return rho.vertices().size() == 1; }
};

/// The condensation: strongly connected components in topological order
/// (ties broken by smallest member), with the oriented edges between them.
struct CondensationDAG {
  int genus = 0;
  std::vector<ClassInfo> classes;
  std::vector<std::pair<int, int>> edges;  // sorted, unique, i != j
  std::vector<int> vertex_class;           // graph vertex -> class id

  std::vector<int> successors(int c) const;
  std::vector<int> predecessors(int c) const;
  bool has_edge(int a, int b) const;
  bool is_acyclic() const;
  /// reach[a][b]: a directed path (possibly empty) leads from a to b.
  std::vector<std::vector<bool>> reachability() const;
  /// The underlying undirected simple graph has a cycle.
  bool has_undirected_cycle() const;
};

struct CondenseOptions {
  std::size_t cycle_cap = 1'000'000;
  unsigned jobs = 1;
};

CondensationDAG scc_condense(const HorseshoeGraph& g, const CondenseOptions& options = {});

/// Repeatedly disconnects classes with rho = {0} that have no incoming or
/// no outgoing oriented edge. Classes themselves are kept.
CondensationDAG prune_genus_zero_ends(const CondensationDAG& dag);

}  // namespace rotset
