#include "rotset/structure.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "rotset/errors.hpp"

namespace rotset {

namespace {

bool has_any_edge(const CondensationDAG& dag, int c) {
  for (auto [a, b] : dag.edges)
    if (a == c || b == c) return true;
  return false;
}

/// Classes that take part in paths; see PathFamily.
std::vector<bool> active_classes(const CondensationDAG& dag) {
  const std::size_t n = dag.classes.size();
  std::vector<bool> active(n, true);
  bool any_nontrivial = false;
  for (const auto& c : dag.classes) any_nontrivial = any_nontrivial || !c.trivial();
  if (!any_nontrivial) return active;
  for (std::size_t i = 0; i < n; ++i)
    if (dag.classes[i].trivial() && !has_any_edge(dag, static_cast<int>(i))) active[i] = false;
  return active;
}

std::string path_tag(const std::vector<int>& path) {
  std::string tag;
  for (std::size_t i = 0; i < path.size(); ++i) tag += (i ? "-C" : "C") + std::to_string(path[i]);
  return tag;
}

PolytopeUnion union_from_paths(const CondensationDAG& dag, const PathFamily& family) {
  if (family.maximal_paths.empty())
    return reduce_union({Piece{Polytope::point(HomologyVector(dag.genus)), {}, "origin"}});
  std::vector<Piece> pieces;
  std::map<std::vector<HomologyVector>, Polytope> cache;
  for (const auto& path : family.maximal_paths) {
    std::set<HomologyVector> pts;
    for (int c : path) {
      const auto& vs = dag.classes[static_cast<std::size_t>(c)].rho.vertices();
      pts.insert(vs.begin(), vs.end());
    }
    std::vector<HomologyVector> key(pts.begin(), pts.end());
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, Polytope::hull(key)).first;
    pieces.push_back(Piece{it->second, path, path_tag(path)});
  }
  return reduce_union(std::move(pieces));
}

Subspace span_of_classes(const CondensationDAG& dag, const std::vector<int>& classes) {
  std::vector<HomologyVector> vs;
  for (int c : classes) {
    const auto& rho = dag.classes[static_cast<std::size_t>(c)].rho.vertices();
    vs.insert(vs.end(), rho.begin(), rho.end());
  }
  return span_of(vs, dag.genus);
}

}  // namespace

PathFamily maximal_paths(const CondensationDAG& dag, const PathOptions& options) {
  if (!dag.is_acyclic()) throw ValidationError("condensation has an oriented cycle");
  const std::size_t n = dag.classes.size();
  const auto active = active_classes(dag);
  std::vector<std::vector<int>> succ(n);
  std::vector<int> indeg(n, 0);
  for (auto [a, b] : dag.edges) {
    succ[static_cast<std::size_t>(a)].push_back(b);
    ++indeg[static_cast<std::size_t>(b)];
  }
  PathFamily family;
  for (std::size_t c = 0; c < n; ++c) {
    if (!active[c]) continue;
    if (indeg[c] == 0) family.starting.push_back(static_cast<int>(c));
    if (succ[c].empty()) family.ending.push_back(static_cast<int>(c));
  }
  std::vector<int> path;
  auto extend = [&](auto&& self, int c) -> void {
    path.push_back(c);
    const auto& next = succ[static_cast<std::size_t>(c)];
    if (next.empty()) {
      family.maximal_paths.push_back(path);
      if (family.maximal_paths.size() > options.path_cap)
        throw LimitError("maximal path count exceeds cap " + std::to_string(options.path_cap),
                         {{"cap", options.path_cap}});
    }
    for (int s : next) self(self, s);
    path.pop_back();
  };
  for (int s : family.starting) extend(extend, s);
  return family;
}

PolytopeUnion rotation_set(const CondensationDAG& dag, const PathOptions& options) {
  auto pruned = prune_genus_zero_ends(dag);
  return union_from_paths(pruned, maximal_paths(pruned, options));
}

PolytopeUnion rotation_set_unpruned(const CondensationDAG& dag, const PathOptions& options) {
  return union_from_paths(dag, maximal_paths(dag, options));
}

PathCount maximal_path_count(const CondensationDAG& pruned, const PathOptions& options) {
  auto family = maximal_paths(pruned, options);
  PathCount count;
  count.enumerated = family.maximal_paths.size();
  std::set<int> s(family.starting.begin(), family.starting.end());
  std::set<int> e(family.ending.begin(), family.ending.end());
  for (int c : s) (e.count(c) ? count.starts_and_ends : count.starts_only)++;
  for (int c : e)
    if (!s.count(c)) ++count.ends_only;
  count.formula = count.starts_and_ends + count.starts_only * count.ends_only;
  count.within_formula = count.enumerated <= count.formula;
  return count;
}

GenusBound genus_bound(int g) {
  if (g < 0) throw ValidationError("genus must be >= 0", {{"genus", g}});
  GenusBound out;
  out.genus = g;
  bool first = true;
  for (int n = 0; n <= g; ++n)
    for (int p = 0; p + n <= g; ++p) {
      GenusTriple t{n, p, g - n - p, n + static_cast<long long>(p) * (g - n - p)};
      out.table.push_back(t);
      if (first || t.value > out.best.value) out.best = t;
      first = false;
    }
  out.value = out.best.value;
  out.closed_form = g == 0 ? 0 : std::max<long long>(g, static_cast<long long>(g) * g / 4);
  return out;
}

CoverCertificate cover_lower_bound_certificate(const PolytopeUnion& u) {
  CoverCertificate cert;
  for (const auto& p : u.pieces()) cert.representatives.push_back(interior_point(p.polytope, true));
  const std::size_t n = cert.representatives.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      HomologyVector mid = (cert.representatives[i] + cert.representatives[j]) / Rational(2);
      if (contains(u, mid)) {
        cert.failing_pair = std::make_pair(i, j);
        cert.failing_midpoint = mid;
        return cert;
      }
    }
  cert.success = true;
  cert.lower_bound = n;
  return cert;
}

StructureReport classify(const CondensationDAG& dag, const PathOptions& options) {
  StructureReport r;
  r.genus = dag.genus;
  auto pruned = prune_genus_zero_ends(dag);
  r.paths = maximal_paths(pruned, options);
  r.rotation_set = union_from_paths(pruned, r.paths);
  r.count = maximal_path_count(pruned, options);
  r.piece_count = r.rotation_set.size();
  r.bound = genus_bound(dag.genus).closed_form;
  for (const auto& c : dag.classes) r.class_genus_sum += c.genus;
  r.genus_accounting_ok = r.class_genus_sum <= dag.genus;

  // Weak components over the classes that take part in paths.
  const auto active = active_classes(pruned);
  std::vector<int> comp(dag.classes.size(), -1);
  for (std::size_t c = 0; c < dag.classes.size(); ++c) {
    if (!active[c] || comp[c] >= 0) continue;
    std::vector<int> members, stack{static_cast<int>(c)};
    comp[c] = static_cast<int>(r.components.size());
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      members.push_back(x);
      for (auto [a, b] : pruned.edges) {
        int y = a == x ? b : (b == x ? a : -1);
        if (y >= 0 && comp[static_cast<std::size_t>(y)] < 0) {
          comp[static_cast<std::size_t>(y)] = comp[c];
          stack.push_back(y);
        }
      }
    }
    std::sort(members.begin(), members.end());
    r.component_spans.push_back(span_of_classes(dag, members));
    r.components.push_back(std::move(members));
  }

  r.classification = r.piece_count == 1 ? "convex" : "union";
  if (r.components.size() > 1)
    r.reason = "disconnected";
  else if (r.paths.starting.size() > 1)
    r.reason = "multiple-starts";
  else if (r.paths.ending.size() > 1)
    r.reason = "multiple-ends";
  else
    r.reason = "single-maximal-path";
  if (r.piece_count == 1) r.convex_path = r.rotation_set.pieces().front().path;

  // Every path meets at most one starting (resp. ending) class, so leaving
  // out either of two of them covers the set by two subspaces.
  const std::vector<int>* ends = nullptr;
  if (r.paths.starting.size() > 1)
    ends = &r.paths.starting;
  else if (r.paths.ending.size() > 1)
    ends = &r.paths.ending;
  if (ends) {
    SubspaceCover cover;
    for (int k = 0; k < 2; ++k) {
      int omit = (*ends)[static_cast<std::size_t>(k)];
      std::vector<int> rest;
      for (std::size_t c = 0; c < dag.classes.size(); ++c)
        if (active[c] && static_cast<int>(c) != omit) rest.push_back(static_cast<int>(c));
      cover.omitted.push_back(omit);
      cover.spans.push_back(span_of_classes(dag, rest));
      cover.codimensions.push_back(2 * static_cast<std::size_t>(dag.genus) - cover.spans.back().dim());
    }
    r.subspace_cover = std::move(cover);
  }

  std::vector<Subspace> spans;
  for (const auto& c : dag.classes)
    if (!c.trivial()) spans.push_back(c.span);
  r.decomposition = validate_decomposition(spans, dag.genus);
  r.certificate = cover_lower_bound_certificate(r.rotation_set);
  return r;
}

}  // namespace rotset
