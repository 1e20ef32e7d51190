#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rotset/graph.hpp"
#include "rotset/polytope.hpp"

namespace rotset {

/// An edge walk with its cumulative time t_n and displacement a_n, stored
/// for n = 0..N (t_0 = 0, a_0 = 0).
struct WalkTrace {
  int genus = 0;
  int start = 0;
  std::vector<int> edges;
  std::vector<std::int64_t> times;  // N + 1 entries
  std::vector<std::int64_t> disp;   // (N + 1) x 2g, row-major
  bool truncated = false;           // stopped early at a dead end
  int dead_end = -1;

  std::size_t steps() const noexcept { return edges.size(); }
  std::size_t dim() const noexcept { return 2 * static_cast<std::size_t>(genus); }
  std::int64_t time(std::size_t n) const { return times[n]; }
  std::span<const std::int64_t> displacement_row(std::size_t n) const {
    return std::span<const std::int64_t>(disp).subspan(n * dim(), dim());
  }
  HomologyVector displacement(std::size_t n) const;
  /// a_n / t_n; requires n >= 1.
  HomologyVector average(std::size_t n) const;
  std::vector<double> average_approx(std::size_t n) const;
};

enum class PolicyKind { uniform, scripted };

struct Policy {
  PolicyKind kind = PolicyKind::uniform;
  std::vector<int> script;  // edge indices, replayed cyclically

  static Policy uniform() { return {}; }
  static Policy scripted(std::vector<int> edges) { return {PolicyKind::scripted, std::move(edges)}; }
};

/// Deterministic in (graph, start, policy, steps, seed). The uniform policy
/// picks out_edges(v)[rng() % outdeg] with std::mt19937_64(seed). Dead ends
/// truncate the trace and set the flag.
WalkTrace simulate(const HorseshoeGraph& g, int start, const Policy& policy, std::size_t steps,
                   std::uint64_t seed = 0);

/// Trace of an explicit edge list; throws ValidationError if edges do not compose.
WalkTrace trace_from_edges(const HorseshoeGraph& g, int start, std::span<const int> edges);

/// Block sup-norm over the nonzero class spans (completed by standard basis
/// vectors) when they are in direct sum, plain l-infinity otherwise.
NormSpec default_norm(const CondensationDAG& dag);

/// d_n to t_n rot and to t_n conv(rot), in floating point, for n = 0..N.
/// Values known to be exactly zero are flagged.
struct DeviationTrace {
  std::string norm_tag;
  std::vector<double> d_union;
  std::vector<double> d_conv;
  std::vector<double> running_max;  // of d_union
  std::vector<bool> exact_zero;     // d_union (and so d_conv) is exactly 0
  std::vector<bool> conv_exact_zero;
  std::vector<Rational> upper;       // exact upper bound on d_union
  std::vector<Rational> conv_upper;  // exact upper bound on d_conv
  std::size_t lp_solves = 0;
};

struct ExactMax {
  Rational value = 0;
  std::size_t argmax = 0;
  std::size_t rechecked = 0;  // exact LPs spent
};

struct PlateauCheck {
  ExactMax first_half;
  ExactMax full;
  bool plateau = false;        // full.value == first_half.value
  bool conv_le_union = false;  // pointwise, exact on recheck
};

/// Distances of cumulative displacements to time-scaled copies of a union.
/// Per-edge increments d(disp, time P) are exact upper-bound steps for
/// d(a_n, t_n P) because 0 is in P and tP + sP = (t+s)P; whenever a bound
/// hits zero the distance is exactly zero and no LP is solved.
class DeviationEngine {
 public:
  DeviationEngine(PolytopeUnion rot, NormSpec norm, double recheck_window = 1e-6);

  const PolytopeUnion& rotation_set() const noexcept { return rot_; }
  const Polytope& hull() const noexcept { return conv_; }
  const NormSpec& norm() const noexcept { return norm_; }

  DeviationTrace trace(const WalkTrace& w) const;

  Rational exact_union(const WalkTrace& w, std::size_t n) const;
  Rational exact_conv(const WalkTrace& w, std::size_t n) const;
  Rational exact_piece(const WalkTrace& w, std::size_t n, std::size_t piece) const;

  /// Exact max over n in [lo, hi]: every n whose float value is within the
  /// recheck window of the float maximum is re-decided exactly.
  ExactMax exact_max(const DeviationTrace& d, const WalkTrace& w, std::size_t lo, std::size_t hi,
                     bool conv = false) const;

  /// max over [1, N] equals max over [1, split]; conv deviation never exceeds union deviation.
  PlateauCheck plateau(const DeviationTrace& d, const WalkTrace& w, std::size_t split) const;

 private:
  PolytopeUnion rot_;
  Polytope conv_;
  NormSpec norm_;
  double window_;
  std::vector<std::vector<std::vector<double>>> piece_points_;  // transformed, per piece
  std::vector<std::vector<double>> conv_points_;
};

DeviationTrace deviation_trace(const WalkTrace& w, const PolytopeUnion& rot, const NormSpec& norm);

struct ConnectionReport {
  std::vector<int> ordered;          // I_L ordered by first entry time
  std::vector<Rational> masses;      // per class: l-infinity of block coefficients of a_N
  Rational complement_mass = 0;      // mass outside every class span
  std::vector<int> itinerary;        // classes in visiting order (consecutive duplicates merged)
  std::vector<std::int64_t> first_entry;  // per class, step index or -1
  bool chain_ok = true;              // I_L is a chain for DAG reachability
  bool itinerary_ok = true;          // each class change follows an oriented edge
};

/// Throws InconsistencyError when a never-visited class carries block mass >= L.
ConnectionReport connection_from_deviation(const HorseshoeGraph& g, const WalkTrace& w, const CondensationDAG& dag,
                                           const Rational& L);

/// (inter-class edges + vertices) * max |disp| + max over classes of
/// (longest simple-cycle period * max |disp|).
Rational safe_threshold(const HorseshoeGraph& g, const CondensationDAG& dag);

struct RealizeTarget {
  int class_id = 0;
  std::vector<HomologyVector> points;  // polyline vertices
  Rational margin = 0;                 // required interior margin, 0 = membership only
  std::size_t horizon = 100000;        // N, number of edges
  Rational epsilon{1, 16};             // re-steering block length factor
};

struct RealizeReport {
  WalkTrace trace;
  std::vector<std::vector<Rational>> weights;  // per target point, over class cycles
  double hausdorff = 0;                        // Euclidean, averages over [N/2, N] vs polyline
  double hausdorff_trace_to_target = 0;
  double hausdorff_target_to_trace = 0;
  std::size_t resteers = 0;
  std::size_t leg_switches = 0;
};

/// Plays the class's simple cycles so that the running average sweeps the
/// polyline back and forth. Throws ValidationError with a separating
/// direction when a target point is outside the hull of the cycle means.
RealizeReport realize(const HorseshoeGraph& g, const CondensationDAG& dag, const RealizeTarget& target);

/// Euclidean Hausdorff distance between {a_n/t_n : lo <= n <= hi} and the
/// polyline. The trace-to-polyline side is exact in floating point over
/// every point; the other side samples the polyline at spacing h and adds
/// h/2, against at most `cap` trace points, so it is an upper bound.
struct Hausdorff {
  double value = 0;
  double trace_to_target = 0;
  double target_to_trace = 0;
};
Hausdorff hausdorff_to_polyline(const WalkTrace& w, std::size_t lo, std::size_t hi,
                                std::span<const HomologyVector> polyline, double h = 1e-3,
                                std::size_t cap = 20000);

struct ExposedWitness {
  HomologyVector point;
  int class_id = -1;   // -1 when no cycle realizes the point
  int cycle = -1;      // index into dag.classes[class_id].cycles
  bool flagged = false;
  Rational slack = 0;          // sum of |disp| along the cycle + period * |point|
  Rational max_deviation = 0;  // exact, over `periods` repetitions
  bool bounded = false;        // max_deviation <= slack
};

std::vector<ExposedWitness> realize_exposed(const HorseshoeGraph& g, const CondensationDAG& dag,
                                            const PolytopeUnion& rot, const NormSpec& norm, std::size_t periods = 3);

}  // namespace rotset
