#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "rotset/dynamics.hpp"
#include "rotset/errors.hpp"
#include "rotset/lp.hpp"

namespace rotset {

namespace {

double dist2(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

double point_segment(std::span<const double> x, const std::vector<double>& a, const std::vector<double>& b) {
  double len2 = 0, dot = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    len2 += (b[i] - a[i]) * (b[i] - a[i]);
    dot += (x[i] - a[i]) * (b[i] - a[i]);
  }
  double s = len2 > 0 ? std::clamp(dot / len2, 0.0, 1.0) : 0.0;
  double out = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double p = a[i] + s * (b[i] - a[i]) - x[i];
    out += p * p;
  }
  return std::sqrt(out);
}

/// Vertex sequence of a cycle rotated to begin at `v`, or empty if v is not on it.
std::vector<int> rotate_to(const HorseshoeGraph& g, const SimpleCycle& c, int v) {
  for (std::size_t k = 0; k < c.edges.size(); ++k)
    if (g.edges()[static_cast<std::size_t>(c.edges[k])].from == v) {
      std::vector<int> out(c.edges.begin() + static_cast<std::ptrdiff_t>(k), c.edges.end());
      out.insert(out.end(), c.edges.begin(), c.edges.begin() + static_cast<std::ptrdiff_t>(k));
      return out;
    }
  return {};
}

/// Shortest edge path inside the class from `from` to any vertex of the cycle.
std::vector<int> transition(const HorseshoeGraph& g, const std::vector<bool>& inside, int from, const SimpleCycle& c) {
  std::vector<bool> goal(g.vertex_count(), false);
  for (int e : c.edges) goal[static_cast<std::size_t>(g.edges()[static_cast<std::size_t>(e)].from)] = true;
  std::vector<int> via(g.vertex_count(), -2);
  std::deque<int> queue{from};
  via[static_cast<std::size_t>(from)] = -1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (goal[static_cast<std::size_t>(v)]) {
      std::vector<int> path;
      while (via[static_cast<std::size_t>(v)] >= 0) {
        int e = via[static_cast<std::size_t>(v)];
        path.push_back(e);
        v = g.edges()[static_cast<std::size_t>(e)].from;
      }
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (int e : g.out_edges(v)) {
      int to = g.edges()[static_cast<std::size_t>(e)].to;
      if (!inside[static_cast<std::size_t>(to)] || via[static_cast<std::size_t>(to)] != -2) continue;
      via[static_cast<std::size_t>(to)] = e;
      queue.push_back(to);
    }
  }
  throw InconsistencyError("cycle unreachable inside its class");
}

struct Push {
  std::vector<Rational> weights;
  Rational reach;  // the push point is A + reach (W - A)
};

/// Time-share weights of the point where the ray from A through W leaves
/// conv(means); nullopt when that LP has no solution.
std::optional<Push> push_weights(const std::vector<HomologyVector>& means, const HomologyVector& A,
                                                  const HomologyVector& W) {
  const std::size_t K = means.size();
  const std::size_t d = A.dim();
  lp::Problem<Rational> prob;
  prob.num_vars = K + 1;
  prob.objective.assign(K + 1, Rational(0));
  prob.objective[K] = -1;
  HomologyVector dir = W - A;
  for (std::size_t i = 0; i < d; ++i) {
    lp::Constraint<Rational> c;
    c.coeffs.resize(K + 1);
    bool any = A[i] != 0 || dir[i] != 0;
    for (std::size_t k = 0; k < K; ++k) {
      c.coeffs[k] = means[k][i];
      any = any || means[k][i] != 0;
    }
    if (!any) continue;
    c.coeffs[K] = -dir[i];
    c.sense = lp::Sense::eq;
    c.rhs = A[i];
    prob.constraints.push_back(std::move(c));
  }
  lp::Constraint<Rational> sum;
  sum.coeffs.assign(K + 1, Rational(1));
  sum.coeffs[K] = 0;
  sum.sense = lp::Sense::eq;
  sum.rhs = 1;
  prob.constraints.push_back(std::move(sum));
  auto sol = lp::solve(prob);
  if (sol.status != lp::Status::optimal) return std::nullopt;
  Rational reach = sol.x[K];
  sol.x.resize(K);
  return Push{std::move(sol.x), std::move(reach)};
}

}  // namespace

Hausdorff hausdorff_to_polyline(const WalkTrace& w, std::size_t lo, std::size_t hi,
                                std::span<const HomologyVector> polyline, double h, std::size_t cap) {
  if (polyline.empty()) throw ValidationError("empty target polyline");
  hi = std::min(hi, w.steps());
  lo = std::max<std::size_t>(lo, 1);
  if (lo > hi) throw ValidationError("empty averaging window");
  std::vector<std::vector<double>> pts;
  for (const auto& p : polyline) pts.push_back(p.to_doubles());
  std::vector<std::pair<std::size_t, std::size_t>> segs;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) segs.emplace_back(i, i + 1);
  if (segs.empty()) segs.emplace_back(0, 0);

  Hausdorff out;
  std::vector<std::vector<double>> averages;
  averages.reserve(hi - lo + 1);
  for (std::size_t n = lo; n <= hi; ++n) {
    auto a = w.average_approx(n);
    double best = std::numeric_limits<double>::infinity();
    for (auto [i, j] : segs) best = std::min(best, point_segment(a, pts[i], pts[j]));
    out.trace_to_target = std::max(out.trace_to_target, best);
    averages.push_back(std::move(a));
  }
  const std::size_t stride = std::max<std::size_t>(1, (averages.size() + cap - 1) / cap);
  std::vector<std::vector<double>> samples;
  for (auto [i, j] : segs) {
    double len = std::sqrt(dist2(pts[i], pts[j]));
    auto steps = static_cast<std::size_t>(std::ceil(len / h));
    for (std::size_t k = 0; k <= steps; ++k) {
      double s = steps ? static_cast<double>(k) / static_cast<double>(steps) : 0.0;
      std::vector<double> x(pts[i].size());
      for (std::size_t c = 0; c < x.size(); ++c) x[c] = pts[i][c] + s * (pts[j][c] - pts[i][c]);
      samples.push_back(std::move(x));
    }
  }
  for (const auto& x : samples) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < averages.size(); k += stride) best = std::min(best, dist2(x, averages[k]));
    out.target_to_trace = std::max(out.target_to_trace, std::sqrt(best));
  }
  bool flat = true;
  for (auto [i, j] : segs) flat = flat && dist2(pts[i], pts[j]) == 0;
  if (!flat) out.target_to_trace += h / 2;
  out.value = std::max(out.trace_to_target, out.target_to_trace);
  return out;
}

RealizeReport realize(const HorseshoeGraph& g, const CondensationDAG& dag, const RealizeTarget& target) {
  if (target.class_id < 0 || static_cast<std::size_t>(target.class_id) >= dag.classes.size())
    throw ValidationError("unknown class", {{"class", target.class_id}});
  if (target.points.empty()) throw ValidationError("target polyline has no points");
  if (target.horizon < 2) throw ValidationError("horizon must be >= 2");
  if (target.epsilon <= 0) throw ValidationError("epsilon must be positive");
  const auto& cls = dag.classes[static_cast<std::size_t>(target.class_id)];
  if (cls.cycles.empty()) throw ValidationError("class has no cycle to play", {{"class", target.class_id}});

  std::vector<HomologyVector> means;
  for (const auto& c : cls.cycles) means.push_back(c.mean);
  const Polytope playable = Polytope::hull(means);

  RealizeReport report;
  for (std::size_t i = 0; i < target.points.size(); ++i) {
    const auto& p = target.points[i];
    require_same_dimension(p, means.front());
    auto weights = convex_combination(means, p);
    if (!weights) {
      auto dir = separating_direction(playable, p);
      throw ValidationError("target point " + p.to_string() + " is outside the class's cycle-mean hull",
                            {{"point", i}, {"separating_direction", dir ? dir->to_string() : std::string()}});
    }
    if (target.margin > 0) {
      for (const auto& b : playable.direction_space().basis()) {
        HomologyVector step = b * (target.margin / linf_norm(b));
        if (!contains(playable, p + step) || !contains(playable, p - step))
          throw ValidationError("target point " + p.to_string() + " is within the margin of the boundary",
                                {{"point", i}, {"margin", to_string(target.margin)}});
      }
    }
    report.weights.push_back(std::move(*weights));
  }

  std::vector<bool> inside(g.vertex_count(), false);
  for (int v : cls.members) inside[static_cast<std::size_t>(v)] = true;

  // Waypoint order sweeps the polyline back and forth.
  const std::size_t k = target.points.size();
  auto waypoint = [&](std::size_t leg) -> std::size_t {
    if (k == 1) return 0;
    std::size_t period = 2 * (k - 1);
    std::size_t r = leg % period;
    return r < k ? r : period - r;
  };

  const std::size_t N = target.horizon;
  const std::size_t d = 2 * static_cast<std::size_t>(g.genus());
  std::vector<int> edges;
  edges.reserve(N);
  std::vector<std::int64_t> a(d, 0);
  std::int64_t t = 0;
  int at = cls.cycles.front().base;
  auto play = [&](int e) {
    const auto& edge = g.edges()[static_cast<std::size_t>(e)];
    for (std::size_t i = 0; i < d; ++i) a[i] += edge.disp[i];
    t += edge.time;
    at = edge.to;
    edges.push_back(e);
  };
  auto avg = [&]() {
    std::vector<double> out(d);
    for (std::size_t i = 0; i < d; ++i) out[i] = static_cast<double>(a[i]) / static_cast<double>(t);
    return out;
  };

  const std::int64_t dyadic = std::int64_t{1} << 20;
  std::size_t leg = 0;
  const int start_vertex = at;
  // A waypoint on the boundary of the hull cannot be overshot; such a leg
  // ends once the average is within 1/16 of the leg's starting distance.
  double leg_start_dist = -1;
  while (edges.size() < N) {
    // Steer toward the current waypoint.
    const HomologyVector& W = target.points[waypoint(leg)];
    const auto Wd = W.to_doubles();
    std::vector<Rational> lambda;
    std::vector<double> A0;
    bool directed = false;
    bool boundary = false;
    if (t > 0) {
      HomologyVector A(g.genus());
      for (std::size_t i = 0; i < d; ++i) A[i] = round_to_denominator(Rational(a[i]) / Rational(t), dyadic);
      if (A != W) {
        if (auto push = push_weights(means, A, W)) {
          boundary = push->reach <= 1;
          lambda = std::move(push->weights);
          A0 = A.to_doubles();
          directed = true;
          if (leg_start_dist < 0) leg_start_dist = std::sqrt(dist2(A0, Wd));
        }
      }
    }
    if (!directed) lambda = report.weights[waypoint(leg)];
    ++report.resteers;

    Rational block_len = target.epsilon * Rational(t);
    auto block = static_cast<std::size_t>(std::max<double>(1.0, std::round(to_double(block_len))));
    const std::size_t block_end = std::min(N, edges.size() + block);
    std::vector<double> share(lambda.size());
    for (std::size_t c = 0; c < lambda.size(); ++c) share[c] = to_double(lambda[c]);
    std::vector<double> played(lambda.size(), 0.0);
    double total = 0;
    bool passed = false;
    while (edges.size() < block_end && !passed) {
      std::size_t pick = 0;
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < share.size(); ++c) {
        if (share[c] <= 0) continue;
        double deficit = share[c] * (total + static_cast<double>(cls.cycles[c].period)) - played[c];
        if (deficit > best) {
          best = deficit;
          pick = c;
        }
      }
      const auto& cyc = cls.cycles[pick];
      auto seq = rotate_to(g, cyc, at);
      std::size_t repeats = 1;
      if (seq.empty()) {
        for (int e : transition(g, inside, at, cyc)) {
          if (edges.size() >= N) break;
          play(e);
        }
        seq = rotate_to(g, cyc, at);
        // A stint long enough to pay for the detour.
        double deficit = share[pick] * total - played[pick];
        repeats = std::max<std::size_t>(1, static_cast<std::size_t>(deficit / static_cast<double>(cyc.period)));
      }
      for (std::size_t r = 0; r < repeats && edges.size() < N; ++r) {
        for (int e : seq) {
          if (edges.size() >= N) break;
          play(e);
        }
        played[pick] += static_cast<double>(cyc.period);
        total += static_cast<double>(cyc.period);
        if (directed) {
          auto A = avg();
          double proj = 0, len2 = 0;
          for (std::size_t i = 0; i < d; ++i) {
            proj += (A[i] - A0[i]) * (Wd[i] - A0[i]);
            len2 += (Wd[i] - A0[i]) * (Wd[i] - A0[i]);
          }
          if (proj >= len2 || (boundary && std::sqrt(dist2(A, Wd)) * 16 <= leg_start_dist)) {
            passed = true;
            break;
          }
        }
      }
    }
    if (passed) {
      leg_start_dist = -1;
      ++leg;
      ++report.leg_switches;
    }
  }

  report.trace = trace_from_edges(g, start_vertex, edges);
  auto hd = hausdorff_to_polyline(report.trace, N / 2, N, target.points);
  report.hausdorff = hd.value;
  report.hausdorff_trace_to_target = hd.trace_to_target;
  report.hausdorff_target_to_trace = hd.target_to_trace;
  return report;
}

}  // namespace rotset
