#include "rotset/serialize.hpp"

#include <cstdio>

#include "rotset/errors.hpp"

namespace rotset {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

ojson to_json(const HomologyVector& v) {
  ojson out = ojson::array();
  for (const auto& c : v.coords()) out.push_back(to_string(c));
  return out;
}

HomologyVector vector_from_json(const ojson& j, int genus) {
  if (!j.is_array()) throw ValidationError("vector must be an array");
  if (j.size() != 2 * static_cast<std::size_t>(genus))
    throw ValidationError("vector length " + std::to_string(j.size()) + " ≠ " + std::to_string(2 * genus),
                          {{"length", j.size()}, {"expected", 2 * genus}});
  HomologyVector v(genus);
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i].is_string())
      v[i] = parse_rational(j[i].get<std::string>());
    else if (j[i].is_number_integer())
      v[i] = Rational(j[i].get<std::int64_t>());
    else
      throw ValidationError("coordinate must be a rational string or an integer", {{"index", i}});
  }
  return v;
}

ojson to_json(const Polytope& p) {
  ojson out;
  out["dimension"] = p.dimension();
  ojson vs = ojson::array();
  for (const auto& v : p.vertices()) vs.push_back(to_json(v));
  out["vertices"] = std::move(vs);
  return out;
}

ojson to_json(const PolytopeUnion& u) {
  ojson out = ojson::array();
  for (const auto& piece : u.pieces()) {
    ojson j;
    j["tag"] = piece.tag;
    j["path"] = piece.path;
    auto p = to_json(piece.polytope);
    j["dimension"] = p["dimension"];
    j["vertices"] = p["vertices"];
    out.push_back(std::move(j));
  }
  return out;
}

ojson to_json(const Subspace& s) {
  ojson out;
  out["dim"] = s.dim();
  ojson basis = ojson::array();
  for (const auto& b : s.basis()) basis.push_back(to_json(b));
  out["basis"] = std::move(basis);
  return out;
}

namespace {

ojson check_json(const DecompositionCheck& c) {
  ojson out;
  out["ok"] = c.ok;
  if (!c.ok) {
    out["witness"] = c.witness;
    if (c.vector) out["vector"] = to_json(*c.vector);
  }
  return out;
}

}  // namespace

ojson to_json(const DecompositionReport& r) {
  ojson out;
  out["orthogonal"] = check_json(r.orthogonal);
  out["direct_sum"] = check_json(r.direct_sum);
  out["symplectic"] = check_json(r.symplectic);
  out["spans_all"] = check_json(r.spans_all);
  return out;
}

ojson to_json(const CoverCertificate& c) {
  ojson out;
  out["success"] = c.success;
  out["lower_bound"] = c.lower_bound;
  ojson reps = ojson::array();
  for (const auto& r : c.representatives) reps.push_back(to_json(r));
  out["representatives"] = std::move(reps);
  if (c.failing_pair) {
    out["failing_pair"] = {c.failing_pair->first, c.failing_pair->second};
    out["failing_midpoint"] = to_json(*c.failing_midpoint);
  }
  return out;
}

ojson to_json(const GenusBound& b) {
  ojson out;
  out["genus"] = b.genus;
  out["bound"] = b.value;
  out["triple"] = {b.best.n, b.best.p, b.best.q};
  out["closed_form"] = b.closed_form;
  out["matches_closed_form"] = b.value == b.closed_form;
  ojson table = ojson::array();
  for (const auto& t : b.table) table.push_back({t.n, t.p, t.q, t.value});
  out["table"] = std::move(table);
  return out;
}

ojson to_json(const PathCount& c) {
  ojson out;
  out["enumerated"] = c.enumerated;
  out["formula"] = c.formula;
  out["starts_and_ends"] = c.starts_and_ends;
  out["starts_only"] = c.starts_only;
  out["ends_only"] = c.ends_only;
  out["within_formula"] = c.within_formula;
  return out;
}

ojson analyze_report(const HorseshoeGraph& g, const CondensationDAG& dag, const StructureReport& r) {
  ojson out;
  out["schema"] = kReportSchema;
  out["genus"] = g.genus();
  out["vertex_count"] = g.vertex_count();
  out["edge_count"] = g.edges().size();
  ojson classes = ojson::array();
  for (const auto& c : dag.classes) {
    ojson j;
    j["id"] = c.id;
    ojson members = ojson::array();
    for (int v : c.members) members.push_back(g.vertex_names()[static_cast<std::size_t>(v)]);
    j["members"] = std::move(members);
    j["cycle_count"] = c.cycles.size();
    j["rho"] = to_json(c.rho);
    j["span"] = to_json(c.span);
    j["symplectic"] = c.symplectic;
    j["genus"] = c.genus;
    classes.push_back(std::move(j));
  }
  out["classes"] = std::move(classes);
  ojson edges = ojson::array();
  for (auto [a, b] : dag.edges) edges.push_back({a, b});
  out["edges"] = std::move(edges);
  out["acyclic"] = dag.is_acyclic();
  out["undirected_cycle"] = dag.has_undirected_cycle();
  out["starting"] = r.paths.starting;
  out["ending"] = r.paths.ending;
  out["maximal_paths"] = r.paths.maximal_paths;
  out["path_count"] = to_json(r.count);
  out["rotation_set"] = to_json(r.rotation_set);
  out["piece_count"] = r.piece_count;
  out["bound"] = r.bound;
  out["within_bound"] = static_cast<long long>(r.piece_count) <= r.bound;
  out["genus_accounting"] = {{"class_genus_sum", r.class_genus_sum}, {"ok", r.genus_accounting_ok}};
  out["classification"] = r.classification;
  out["reason"] = r.reason;
  if (!r.convex_path.empty()) out["convex_path"] = r.convex_path;
  out["components"] = r.components;
  ojson spans = ojson::array();
  for (const auto& s : r.component_spans) spans.push_back(to_json(s));
  out["component_spans"] = std::move(spans);
  if (r.subspace_cover) {
    ojson cover = ojson::array();
    for (std::size_t i = 0; i < r.subspace_cover->spans.size(); ++i)
      cover.push_back({{"omitted_class", r.subspace_cover->omitted[i]},
                       {"codimension", r.subspace_cover->codimensions[i]},
                       {"span", to_json(r.subspace_cover->spans[i])}});
    out["subspace_cover"] = std::move(cover);
  }
  out["decomposition"] = to_json(r.decomposition);
  out["certificate"] = to_json(r.certificate);
  return out;
}

ojson rotset_report(const PolytopeUnion& u) {
  ojson out;
  out["schema"] = kReportSchema;
  out["piece_count"] = u.size();
  out["pieces"] = to_json(u);
  return out;
}

void write_trace_csv(std::ostream& os, const WalkTrace& w, const DeviationTrace& d) {
  os << "n,t_n";
  for (std::size_t i = 1; i <= w.dim(); ++i) os << ",a_" << i;
  os << ",d_union,d_conv\n";
  for (std::size_t n = 1; n <= w.steps(); ++n) {
    os << n << ',' << w.times[n];
    for (auto x : w.displacement_row(n)) os << ',' << x;
    os << ',' << format_double(d.d_union[n]) << ',' << format_double(d.d_conv[n]) << '\n';
  }
}

}  // namespace rotset
