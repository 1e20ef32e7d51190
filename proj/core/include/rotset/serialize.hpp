#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "rotset/dynamics.hpp"
#include "rotset/graph.hpp"
#include "rotset/homology.hpp"
#include "rotset/polytope.hpp"
#include "rotset/structure.hpp"

namespace rotset {

using ojson = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "rotset-report/1";

/// Exact coordinates as "p/q" strings.
ojson to_json(const HomologyVector& v);
/// Accepts strings ("p/q", integers, decimals) or JSON integers.
HomologyVector vector_from_json(const ojson& j, int genus);

ojson to_json(const Polytope& p);
ojson to_json(const PolytopeUnion& u);
ojson to_json(const Subspace& s);
ojson to_json(const DecompositionReport& r);
ojson to_json(const CoverCertificate& c);
ojson to_json(const GenusBound& b);
ojson to_json(const PathCount& c);

/// Full StructureReport with class data, versioned by kReportSchema.
ojson analyze_report(const HorseshoeGraph& g, const CondensationDAG& dag, const StructureReport& r);

ojson rotset_report(const PolytopeUnion& u);

/// Columns n, t_n, a_1..a_2g, d_union, d_conv; one row per n = 1..N.
/// Distances print with %.17g so identical runs give identical bytes.
void write_trace_csv(std::ostream& os, const WalkTrace& w, const DeviationTrace& d);

std::string format_double(double x);

}  // namespace rotset
