#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rotset/graph.hpp"
#include "rotset/homology.hpp"
#include "rotset/polytope.hpp"

namespace rotset {

/// Maximal oriented paths of a (pruned) condensation, with its starting and
/// ending classes. Classes with rho = {0} and no oriented edge are left out
/// of every list as long as some class has a nonzero rho: they contribute
/// only the origin, which every other piece already contains.
struct PathFamily {
  std::vector<std::vector<int>> maximal_paths;
  std::vector<int> starting;  // no incoming edge
  std::vector<int> ending;    // no outgoing edge
};

struct PathOptions {
  std::size_t path_cap = 1'000'000;
};

/// Throws ValidationError on a cyclic input and LimitError past the cap.
PathFamily maximal_paths(const CondensationDAG& dag, const PathOptions& options = {});

/// conv of the union of rho_i along every maximal path of the pruned
/// condensation, containment-reduced. Pieces are tagged "C0-C3-C5".
PolytopeUnion rotation_set(const CondensationDAG& dag, const PathOptions& options = {});

/// The same path formula without pruning genus-zero ends first.
PolytopeUnion rotation_set_unpruned(const CondensationDAG& dag, const PathOptions& options = {});

struct PathCount {
  std::size_t enumerated = 0;
  std::size_t starts_and_ends = 0;  // Card(S n E)
  std::size_t starts_only = 0;      // Card(S \ E)
  std::size_t ends_only = 0;        // Card(E \ S)
  std::size_t formula = 0;          // Card(S n E) + Card(S \ E) Card(E \ S)
  bool within_formula = true;       // enumerated <= formula
};

/// Expects a pruned, acyclic condensation.
PathCount maximal_path_count(const CondensationDAG& pruned, const PathOptions& options = {});

struct GenusTriple {
  int n = 0, p = 0, q = 0;
  long long value = 0;  // n + p q
};

struct GenusBound {
  int genus = 0;
  long long value = 0;        // brute-force maximum
  GenusTriple best;           // first maximizer in (n, p) order
  long long closed_form = 0;  // max(g, floor(g^2/4)), 0 for g = 0
  std::vector<GenusTriple> table;
};

GenusBound genus_bound(int g);

struct CoverCertificate {
  bool success = false;
  std::size_t lower_bound = 0;
  std::vector<HomologyVector> representatives;  // one per piece
  std::optional<std::pair<std::size_t, std::size_t>> failing_pair;
  std::optional<HomologyVector> failing_midpoint;
};

/// Vertex barycenters as piece representatives; succeeds when every
/// pairwise midpoint lies outside the union, which forces any convex cover
/// to use at least one set per representative.
CoverCertificate cover_lower_bound_certificate(const PolytopeUnion& u);

/// A union of two linear subspaces covering the rotation set, each the span
/// of every class except one omitted class.
struct SubspaceCover {
  std::vector<int> omitted;  // one class per subspace
  std::vector<Subspace> spans;
  std::vector<std::size_t> codimensions;
};

struct StructureReport {
  int genus = 0;
  PolytopeUnion rotation_set;
  PathFamily paths;
  PathCount count;
  std::size_t piece_count = 0;
  long long bound = 0;               // max(g, floor(g^2/4))
  int class_genus_sum = 0;
  bool genus_accounting_ok = true;   // sum of class genera <= g
  std::string classification;        // "convex" or "union"
  std::string reason;                // "single-maximal-path", "disconnected", "multiple-starts", "multiple-ends"
  std::vector<int> convex_path;      // the path when classification is "convex"
  std::vector<std::vector<int>> components;  // weak components of the pruned DAG (nontrivial classes)
  std::vector<Subspace> component_spans;
  std::optional<SubspaceCover> subspace_cover;
  DecompositionReport decomposition;  // of the nonzero class spans
  CoverCertificate certificate;
};

StructureReport classify(const CondensationDAG& dag, const PathOptions& options = {});

}  // namespace rotset
