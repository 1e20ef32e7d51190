#include "rotset/dynamics.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "rotset/errors.hpp"

namespace rotset {

// ---------------------------------------------------------------- traces

HomologyVector WalkTrace::displacement(std::size_t n) const {
  return HomologyVector::from_integers(genus, displacement_row(n));
}

HomologyVector WalkTrace::average(std::size_t n) const {
  if (n == 0 || times[n] == 0) throw ValidationError("average needs n >= 1");
  return displacement(n) / Rational(times[n]);
}

std::vector<double> WalkTrace::average_approx(std::size_t n) const {
  auto row = displacement_row(n);
  std::vector<double> out(row.size());
  const double t = static_cast<double>(times[n]);
  for (std::size_t i = 0; i < row.size(); ++i) out[i] = static_cast<double>(row[i]) / t;
  return out;
}

namespace {

class TraceBuilder {
 public:
  TraceBuilder(const HorseshoeGraph& g, int start, std::size_t reserve) : g_(g) {
    if (start < 0 || static_cast<std::size_t>(start) >= g.vertex_count())
      throw ValidationError("start vertex out of range", {{"start", start}});
    w_.genus = g.genus();
    w_.start = start;
    w_.times.reserve(reserve + 1);
    w_.disp.reserve((reserve + 1) * w_.dim());
    w_.times.push_back(0);
    w_.disp.assign(w_.dim(), 0);
    at_ = start;
  }

  int at() const noexcept { return at_; }

  void push(int e) {
    const auto& edge = g_.edges()[static_cast<std::size_t>(e)];
    const std::size_t d = w_.dim();
    const std::size_t base = w_.disp.size() - d;
    for (std::size_t i = 0; i < d; ++i) w_.disp.push_back(w_.disp[base + i] + edge.disp[i]);
    w_.times.push_back(w_.times.back() + edge.time);
    w_.edges.push_back(e);
    at_ = edge.to;
  }

  WalkTrace finish() { return std::move(w_); }
  WalkTrace& trace() { return w_; }

 private:
  const HorseshoeGraph& g_;
  WalkTrace w_;
  int at_;
};

}  // namespace

WalkTrace simulate(const HorseshoeGraph& g, int start, const Policy& policy, std::size_t steps, std::uint64_t seed) {
  if (steps < 1) throw ValidationError("steps must be >= 1");
  TraceBuilder b(g, start, steps);
  if (policy.kind == PolicyKind::scripted) {
    if (policy.script.empty()) throw ValidationError("scripted policy needs at least one edge");
    for (std::size_t n = 0; n < steps; ++n) {
      int e = policy.script[n % policy.script.size()];
      if (e < 0 || static_cast<std::size_t>(e) >= g.edges().size())
        throw ValidationError("scripted edge out of range", {{"step", n}, {"edge", e}});
      if (g.edges()[static_cast<std::size_t>(e)].from != b.at())
        throw ValidationError("scripted edge " + std::to_string(e) + " does not start at the current vertex",
                              {{"step", n}, {"edge", e}});
      b.push(e);
    }
    return b.finish();
  }
  std::mt19937_64 rng(seed);
  for (std::size_t n = 0; n < steps; ++n) {
    const auto& outs = g.out_edges(b.at());
    if (outs.empty()) {
      b.trace().truncated = true;
      b.trace().dead_end = b.at();
      break;
    }
    b.push(outs[rng() % outs.size()]);
  }
  return b.finish();
}

WalkTrace trace_from_edges(const HorseshoeGraph& g, int start, std::span<const int> edges) {
  TraceBuilder b(g, start, edges.size());
  for (std::size_t n = 0; n < edges.size(); ++n) {
    int e = edges[n];
    if (e < 0 || static_cast<std::size_t>(e) >= g.edges().size())
      throw ValidationError("edge index out of range", {{"step", n}, {"edge", e}});
    if (g.edges()[static_cast<std::size_t>(e)].from != b.at())
      throw ValidationError("edges do not compose at step " + std::to_string(n), {{"step", n}, {"edge", e}});
    b.push(e);
  }
  return b.finish();
}

// ---------------------------------------------------------------- norms

namespace {

std::vector<Subspace> nonzero_spans(const CondensationDAG& dag, std::vector<int>* ids = nullptr) {
  std::vector<Subspace> spans;
  for (const auto& c : dag.classes)
    if (!c.trivial()) {
      spans.push_back(c.span);
      if (ids) ids->push_back(c.id);
    }
  return spans;
}

}  // namespace

NormSpec default_norm(const CondensationDAG& dag) {
  auto spans = nonzero_spans(dag);
  if (spans.empty()) return NormSpec::linf(dag.genus);
  if (!validate_decomposition(spans, dag.genus).direct_sum.ok) return NormSpec::linf(dag.genus);
  return NormSpec::block_sup(BlockDecomposition(dag.genus, std::move(spans)));
}

// ---------------------------------------------------------------- deviation

DeviationEngine::DeviationEngine(PolytopeUnion rot, NormSpec norm, double recheck_window)
    : rot_(std::move(rot)), conv_(convex_hull(rot_)), norm_(std::move(norm)), window_(recheck_window) {
  auto transform = [&](const Polytope& p) {
    std::vector<std::vector<double>> pts;
    for (const auto& v : p.vertices()) pts.push_back(norm_.apply(v.to_doubles()));
    return pts;
  };
  for (const auto& piece : rot_.pieces()) piece_points_.push_back(transform(piece.polytope));
  conv_points_ = transform(conv_);
}

namespace {

/// d(a, tP) = t d(a/t, P) for any norm.
Rational scaled_distance(const HomologyVector& a, std::int64_t t, const Polytope& p, const NormSpec& norm) {
  if (t == 0) return norm.norm(a);
  return distance(a / Rational(t), p, norm) * Rational(t);
}

}  // namespace

DeviationTrace DeviationEngine::trace(const WalkTrace& w) const {
  const std::size_t N = w.steps();
  const std::size_t K = rot_.size();
  DeviationTrace d;
  d.norm_tag = norm_.tag();
  d.d_union.assign(N + 1, 0.0);
  d.d_conv.assign(N + 1, 0.0);
  d.running_max.assign(N + 1, 0.0);
  d.exact_zero.assign(N + 1, false);
  d.conv_exact_zero.assign(N + 1, false);
  d.upper.assign(N + 1, Rational(0));
  d.conv_upper.assign(N + 1, Rational(0));
  d.exact_zero[0] = d.conv_exact_zero[0] = true;

  // increments per distinct (disp, time) edge label: K pieces then the hull
  std::map<std::vector<std::int64_t>, std::vector<Rational>> increments;
  std::vector<Rational> u(K + 1, Rational(0));
  std::vector<std::int64_t> key(w.dim() + 1);
  for (std::size_t n = 1; n <= N; ++n) {
    auto cur = w.displacement_row(n);
    auto prev = w.displacement_row(n - 1);
    for (std::size_t i = 0; i < w.dim(); ++i) key[i] = cur[i] - prev[i];
    key[w.dim()] = w.times[n] - w.times[n - 1];
    auto it = increments.find(key);
    if (it == increments.end()) {
      HomologyVector delta = HomologyVector::from_integers(w.genus, std::span(key).first(w.dim()));
      std::vector<Rational> e;
      for (const auto& piece : rot_.pieces()) e.push_back(scaled_distance(delta, key[w.dim()], piece.polytope, norm_));
      e.push_back(scaled_distance(delta, key[w.dim()], conv_, norm_));
      it = increments.emplace(key, std::move(e)).first;
    }
    for (std::size_t k = 0; k <= K; ++k)
      if (it->second[k] != 0) u[k] += it->second[k];
    const Rational& best_u = *std::min_element(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(K));
    d.upper[n] = best_u;
    d.conv_upper[n] = std::min(best_u, u[K]);
    if (best_u == 0) {
      d.exact_zero[n] = d.conv_exact_zero[n] = true;
    } else {
      auto x = norm_.apply(w.average_approx(n));
      const double t = static_cast<double>(w.times[n]);
      double best = to_double(best_u);
      for (std::size_t k = 0; k < K; ++k) {
        best = std::min(best, hull_distance_approx(piece_points_[k], x) * t);
        ++d.lp_solves;
      }
      d.d_union[n] = best;
      if (d.conv_upper[n] == 0) {
        d.conv_exact_zero[n] = true;
      } else {
        d.d_conv[n] = std::min(to_double(d.conv_upper[n]), hull_distance_approx(conv_points_, x) * t);
        ++d.lp_solves;
      }
    }
    d.running_max[n] = std::max(d.running_max[n - 1], d.d_union[n]);
  }
  return d;
}

Rational DeviationEngine::exact_union(const WalkTrace& w, std::size_t n) const {
  if (n == 0) return 0;
  HomologyVector a = w.displacement(n);
  std::optional<Rational> best;
  for (const auto& piece : rot_.pieces()) {
    Rational v = scaled_distance(a, w.times[n], piece.polytope, norm_);
    if (!best || v < *best) best = v;
    if (*best == 0) break;
  }
  return *best;
}

Rational DeviationEngine::exact_conv(const WalkTrace& w, std::size_t n) const {
  if (n == 0) return 0;
  return scaled_distance(w.displacement(n), w.times[n], conv_, norm_);
}

Rational DeviationEngine::exact_piece(const WalkTrace& w, std::size_t n, std::size_t piece) const {
  if (n == 0) return 0;
  return scaled_distance(w.displacement(n), w.times[n], rot_.pieces().at(piece).polytope, norm_);
}

ExactMax DeviationEngine::exact_max(const DeviationTrace& d, const WalkTrace& w, std::size_t lo, std::size_t hi,
                                    bool conv) const {
  ExactMax out;
  hi = std::min(hi, w.steps());
  if (lo > hi) return out;
  const auto& vals = conv ? d.d_conv : d.d_union;
  const auto& zero = conv ? d.conv_exact_zero : d.exact_zero;
  const auto& upper = conv ? d.conv_upper : d.upper;
  double fmax = 0;
  for (std::size_t n = lo; n <= hi; ++n) fmax = std::max(fmax, vals[n]);
  const double cut = fmax - window_ * std::max(1.0, fmax);
  std::vector<std::size_t> candidates;
  for (std::size_t n = lo; n <= hi; ++n)
    if (!zero[n] && vals[n] >= cut) candidates.push_back(n);
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](std::size_t a, std::size_t b) { return vals[a] > vals[b]; });
  out.argmax = lo;
  for (std::size_t n : candidates) {
    if (out.rechecked > 0 && upper[n] <= out.value) continue;
    Rational v = conv ? exact_conv(w, n) : exact_union(w, n);
    ++out.rechecked;
    if (out.rechecked == 1 || v > out.value) {
      out.value = v;
      out.argmax = n;
    }
  }
  return out;
}

PlateauCheck DeviationEngine::plateau(const DeviationTrace& d, const WalkTrace& w, std::size_t split) const {
  PlateauCheck p;
  const std::size_t N = w.steps();
  p.first_half = exact_max(d, w, 1, split);
  p.full = p.first_half;
  if (split < N) {
    double second = 0;
    for (std::size_t n = split + 1; n <= N; ++n) second = std::max(second, d.d_union[n]);
    const double x1 = to_double(p.first_half.value);
    if (second >= x1 - window_ * std::max(1.0, x1)) {
      auto tail = exact_max(d, w, split + 1, N);
      p.full.rechecked += tail.rechecked;
      if (tail.rechecked > 0 && tail.value > p.full.value) {
        p.full.value = tail.value;
        p.full.argmax = tail.argmax;
      }
    }
  }
  p.plateau = p.full.value == p.first_half.value;
  p.conv_le_union = true;
  for (std::size_t n = 1; n <= N && p.conv_le_union; ++n) {
    if (d.exact_zero[n]) continue;
    if (d.d_conv[n] <= d.d_union[n] + window_ * std::max(1.0, d.d_union[n]) * 1e-3) continue;
    p.conv_le_union = exact_conv(w, n) <= exact_union(w, n);
  }
  return p;
}

DeviationTrace deviation_trace(const WalkTrace& w, const PolytopeUnion& rot, const NormSpec& norm) {
  return DeviationEngine(rot, norm).trace(w);
}

// ---------------------------------------------------------------- connections

ConnectionReport connection_from_deviation(const HorseshoeGraph& g, const WalkTrace& w, const CondensationDAG& dag,
                                           const Rational& L) {
  if (L <= 0) throw ValidationError("threshold must be positive", {{"L", to_string(L)}});
  const std::size_t nc = dag.classes.size();
  ConnectionReport r;
  r.masses.assign(nc, Rational(0));
  r.first_entry.assign(nc, -1);

  auto enter = [&](int c, std::int64_t step) {
    if (r.first_entry[static_cast<std::size_t>(c)] < 0) r.first_entry[static_cast<std::size_t>(c)] = step;
    if (r.itinerary.empty() || r.itinerary.back() != c) r.itinerary.push_back(c);
  };
  enter(dag.vertex_class[static_cast<std::size_t>(w.start)], 0);
  for (std::size_t n = 0; n < w.edges.size(); ++n)
    enter(dag.vertex_class[static_cast<std::size_t>(g.edges()[static_cast<std::size_t>(w.edges[n])].to)],
          static_cast<std::int64_t>(n + 1));
  for (std::size_t i = 1; i < r.itinerary.size(); ++i)
    if (!dag.has_edge(r.itinerary[i - 1], r.itinerary[i])) r.itinerary_ok = false;

  std::vector<int> ids;
  auto spans = nonzero_spans(dag, &ids);
  if (!spans.empty()) {
    BlockDecomposition blocks = BlockDecomposition(dag.genus, std::move(spans)).completed();
    auto parts = blocks.decompose(w.displacement(w.steps()));
    for (std::size_t b = 0; b < parts.coefficients.size(); ++b) {
      Rational m = 0;
      for (const auto& c : parts.coefficients[b]) m = std::max(m, abs(c));
      if (b < ids.size())
        r.masses[static_cast<std::size_t>(ids[b])] = m;
      else
        r.complement_mass = std::max(r.complement_mass, m);
    }
  } else {
    r.complement_mass = linf_norm(w.displacement(w.steps()));
  }

  for (std::size_t c = 0; c < nc; ++c) {
    if (r.masses[c] < L) continue;
    if (r.first_entry[c] < 0)
      throw InconsistencyError("class C" + std::to_string(c) + " carries block mass " + to_string(r.masses[c]) +
                                   " >= " + to_string(L) + " but the walk never visits it",
                               {{"class", c}, {"mass", to_string(r.masses[c])}, {"L", to_string(L)}});
    r.ordered.push_back(static_cast<int>(c));
  }
  std::stable_sort(r.ordered.begin(), r.ordered.end(), [&](int a, int b) {
    return r.first_entry[static_cast<std::size_t>(a)] < r.first_entry[static_cast<std::size_t>(b)];
  });
  auto reach = dag.reachability();
  for (std::size_t i = 1; i < r.ordered.size(); ++i)
    if (!reach[static_cast<std::size_t>(r.ordered[i - 1])][static_cast<std::size_t>(r.ordered[i])]) r.chain_ok = false;
  return r;
}

Rational safe_threshold(const HorseshoeGraph& g, const CondensationDAG& dag) {
  std::int64_t bridges = 0;
  for (const auto& e : g.edges())
    if (dag.vertex_class[static_cast<std::size_t>(e.from)] != dag.vertex_class[static_cast<std::size_t>(e.to)])
      ++bridges;
  std::int64_t period = 0;
  for (const auto& c : dag.classes)
    for (const auto& cyc : c.cycles) period = std::max(period, cyc.period);
  const Rational maxdisp(g.max_abs_displacement());
  return Rational(bridges + static_cast<std::int64_t>(g.vertex_count())) * maxdisp + Rational(period) * maxdisp;
}

// ---------------------------------------------------------------- exposed points

std::vector<ExposedWitness> realize_exposed(const HorseshoeGraph& g, const CondensationDAG& dag,
                                            const PolytopeUnion& rot, const NormSpec& norm, std::size_t periods) {
  DeviationEngine engine(rot, norm);
  std::vector<ExposedWitness> out;
  for (const auto& v : exposed_points(engine.hull())) {
    ExposedWitness wit;
    wit.point = v;
    std::int64_t best_period = 0;
    for (const auto& c : dag.classes)
      for (std::size_t k = 0; k < c.cycles.size(); ++k)
        if (c.cycles[k].mean == v && (wit.class_id < 0 || c.cycles[k].period < best_period)) {
          wit.class_id = c.id;
          wit.cycle = static_cast<int>(k);
          best_period = c.cycles[k].period;
        }
    if (wit.class_id < 0) {
      wit.flagged = true;
      out.push_back(std::move(wit));
      continue;
    }
    const auto& cyc = dag.classes[static_cast<std::size_t>(wit.class_id)].cycles[static_cast<std::size_t>(wit.cycle)];
    for (int e : cyc.edges) wit.slack += norm.norm(g.displacement(e));
    wit.slack += Rational(cyc.period) * norm.norm(v);
    std::vector<int> edges;
    for (std::size_t p = 0; p < std::max<std::size_t>(1, periods); ++p) edges.insert(edges.end(), cyc.edges.begin(), cyc.edges.end());
    auto w = trace_from_edges(g, cyc.base, edges);
    for (std::size_t n = 1; n <= w.steps(); ++n) wit.max_deviation = std::max(wit.max_deviation, engine.exact_union(w, n));
    wit.bounded = wit.max_deviation <= wit.slack;
    out.push_back(std::move(wit));
  }
  return out;
}

}  // namespace rotset
