// One PASS/FAIL line per acceptance criterion. Tolerances are pinned below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rotset/rotset.hpp"
#include "support/random_graphs.hpp"

#ifdef ROTSET_HAVE_CLI
#include "cli.hpp"
#endif

using namespace rotset;

namespace {

// pinned tolerances and sizes
constexpr double kBoundSeconds = 1.0;
constexpr double kSharpSeconds = 30.0;
constexpr double kPlateauSeconds = 60.0;
constexpr std::size_t kOracleGraphs = 200;
constexpr std::size_t kOracleLength = 8;
constexpr std::size_t kConvexGraphs = 100;
constexpr std::size_t kMidpoints = 500;
constexpr std::size_t kPruneInstances = 200;
constexpr std::size_t kPlateauWalks = 100;
constexpr std::size_t kPlateauSteps = 10000;
constexpr std::size_t kPlateauSeededWalks = 20;
constexpr std::size_t kFuzzWalks = 100000;
constexpr std::size_t kNeighbourhoodSamples = 10000;
constexpr double kRealizeTolerance = 0.05;
const Rational kThresholdEpsilon(1, 1000000);

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& body) {
  auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s criterion %2d  %-28s %8.2fs  %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), secs,
              o.detail.c_str());
  std::fflush(stdout);
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

long long closed_form(int g) { return std::max<long long>(g, static_cast<long long>(g) * g / 4); }

std::vector<int> all_vertices(const HorseshoeGraph& g) {
  std::vector<int> v(g.vertex_count());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<int>(i);
  return v;
}

Rational dyadic(testing::Rng& rng, int bits) {
  return Rational(static_cast<long>(rng() % (std::uint64_t{1} << bits)), 1L << bits);
}

/// Random point of conv(points) with dyadic weights.
HomologyVector random_combination(testing::Rng& rng, const std::vector<HomologyVector>& points, std::size_t used) {
  HomologyVector out(points.front().genus());
  std::vector<Rational> w;
  Rational total = 0;
  for (std::size_t k = 0; k < used; ++k) {
    w.push_back(dyadic(rng, 8) + Rational(1, 256));
    total += w.back();
  }
  for (std::size_t k = 0; k < used; ++k) out += (w[k] / total) * points[rng() % points.size()];
  return out;
}

// ------------------------------------------------------------------ 1

Outcome bound_formula() {
  auto t0 = Clock::now();
  for (int g = 1; g <= 20; ++g) {
    long long best = -1;
    for (int n = 0; n <= g; ++n)
      for (int p = 0; n + p <= g; ++p) best = std::max<long long>(best, n + static_cast<long long>(p) * (g - n - p));
    if (best != closed_form(g)) return {false, "g=" + std::to_string(g) + " brute force " + std::to_string(best)};
    if (genus_bound(g).value != best) return {false, "genus_bound disagrees at g=" + std::to_string(g)};
  }
  double s = seconds_since(t0);
  return {s < kBoundSeconds, "g=1..20 match, " + std::to_string(s) + "s"};
}

// ------------------------------------------------------------------ 2

Outcome sharpness() {
  auto t0 = Clock::now();
  std::ostringstream msg;
  for (int g = 4; g <= 8; ++g) {
    auto u = rotation_set(scc_condense(gen_sharp(g)));
    auto c = cover_lower_bound_certificate(u);
    long long want = static_cast<long long>(g) * g / 4;
    if (static_cast<long long>(u.size()) != want || !c.success || static_cast<long long>(c.lower_bound) != want)
      return {false, "sharp g=" + std::to_string(g) + ": " + std::to_string(u.size()) + " pieces"};
  }
  for (int g = 2; g <= 8; ++g) {
    auto u = rotation_set(scc_condense(gen_recurrent(g)));
    auto c = cover_lower_bound_certificate(u);
    if (u.size() != static_cast<std::size_t>(g) || !c.success || c.lower_bound != static_cast<std::size_t>(g))
      return {false, "recurrent g=" + std::to_string(g) + ": " + std::to_string(u.size()) + " pieces"};
  }
  double s = seconds_since(t0);
  msg << "sharp 4..8 and recurrent 2..8 certified, " << s << "s";
  return {s < kSharpSeconds, msg.str()};
}

// ------------------------------------------------------------------ 3

Outcome figtree_golden() {
  auto dag = scc_condense(gen_figtree());
  auto u = rotation_set(dag);
  bool ok = u.size() == 4 && dag.is_acyclic() && dag.has_undirected_cycle();
  for (const auto& p : u.pieces()) ok = ok && p.polytope.dimension() == 4;
  return {ok, std::to_string(u.size()) + " pieces, dims 4, acyclic, undirected cycle"};
}

// ------------------------------------------------------------------ 4

Outcome oracle_equivalence() {
  testing::Rng rng(4004);
  std::size_t checked = 0;
  for (std::size_t i = 0; i < kOracleGraphs; ++i) {
    auto g = testing::random_scc(rng, 1 + static_cast<int>(i % 2), 5, 6, 2, 3);
    auto members = all_vertices(g);
    auto means = brute_force_walk_means(g, members, kOracleLength);
    // class polytopes adjoin the origin, so the oracle hull does too
    means.push_back(HomologyVector(g.genus()));
    if (Polytope::hull(means) != class_polytope(g, members))
      return {false, "graph " + std::to_string(i) + " differs:\n" + g.to_json()};
    ++checked;
  }
  return {true, std::to_string(checked) + " random SCCs, walks of length <= 8"};
}

// ------------------------------------------------------------------ 5

Outcome convexity() {
  testing::Rng rng(5005);
  for (std::size_t i = 0; i < kConvexGraphs; ++i) {
    auto g = testing::random_scc(rng, 1 + static_cast<int>(i % 3), 4, 7);
    auto r = classify(scc_condense(g));
    if (r.classification != "convex") return {false, "single SCC not convex: graph " + std::to_string(i)};
    const auto& vs = r.rotation_set.pieces().front().polytope.vertices();
    for (std::size_t s = 0; s < kMidpoints; ++s) {
      auto a = random_combination(rng, vs, 1 + rng() % 3);
      auto b = random_combination(rng, vs, 1 + rng() % 3);
      if (!contains(r.rotation_set, a) || !contains(r.rotation_set, b))
        return {false, "sampled member outside the rotation set"};
      if (!contains(r.rotation_set, (a + b) / Rational(2))) return {false, "midpoint outside"};
    }
  }
  for (std::size_t i = 0; i < kConvexGraphs; ++i) {
    testing::DagInstanceOptions o;
    o.genus = 2 + static_cast<int>(i % 4);
    o.connect = false;
    o.genus_zero_ends = false;
    auto dag = scc_condense(testing::random_dag_instance(rng, o));
    auto u = rotation_set(dag);
    std::size_t nonzero = 0;
    for (const auto& c : dag.classes) nonzero += c.trivial() ? 0 : 1;
    if (u.size() > std::max<std::size_t>(nonzero, 1)) return {false, "too many pieces without edges"};
    for (const auto& a : dag.classes)
      for (const auto& b : dag.classes)
        if (a.id < b.id)
          for (const auto& x : a.span.basis())
            for (const auto& y : b.span.basis())
              if (wedge(x, y) != 0) return {false, "class spans not orthogonal"};
  }
  return {true, "100 single-SCC graphs convex (500 midpoints each); 100 edge-free condensations split"};
}

// ------------------------------------------------------------------ 6

bool has_genus_zero_terminal(const CondensationDAG& dag) {
  for (const auto& c : dag.classes)
    if (c.trivial() && (dag.predecessors(c.id).empty() || dag.successors(c.id).empty()) &&
        !(dag.predecessors(c.id).empty() && dag.successors(c.id).empty()))
      return true;
  return false;
}

Outcome pruning_invariance() {
  testing::Rng rng(6006);
  std::size_t done = 0, attempts = 0;
  while (done < kPruneInstances) {
    if (++attempts > 50 * kPruneInstances) return {false, "could not generate instances"};
    testing::DagInstanceOptions o;
    o.genus = 2 + static_cast<int>(done % 3);
    o.max_classes = 6;
    o.bridge_disp = done % 2 == 1;
    auto dag = scc_condense(testing::random_dag_instance(rng, o));
    if (!has_genus_zero_terminal(dag)) continue;
    if (canonical_pieces(rotation_set(dag)) != canonical_pieces(rotation_set_unpruned(dag)))
      return {false, "pruning changed the rotation set on instance " + std::to_string(done)};
    ++done;
  }
  return {true, std::to_string(done) + " instances with genus-zero terminal classes"};
}

// ------------------------------------------------------------------ 7

Outcome deviation_plateau() {
  std::size_t walks = 0, lps = 0;
  std::ostringstream msg;
  // zero bridges keep every average inside the rotation set; seeded bridge
  // displacements are run too, on fewer walks and outside the time budget
  ExampleOptions seeded;
  seeded.bridge_seed = 77;
  struct Case {
    std::string label;
    HorseshoeGraph graph;
    std::size_t walks;
  };
  std::vector<Case> cases{{"sharp4", gen_sharp(4), kPlateauWalks},
                          {"figtree", gen_figtree(), kPlateauWalks},
                          {"sharp4+bridges", gen_sharp(4, seeded), kPlateauSeededWalks},
                          {"figtree+bridges", gen_figtree(seeded), kPlateauSeededWalks}};
  double budgeted = 0;
  for (const auto& c : cases) {
    auto t0 = Clock::now();
    auto dag = scc_condense(c.graph);
    DeviationEngine engine(rotation_set(dag), default_norm(dag));
    Rational top = 0;
    for (std::size_t s = 0; s < c.walks; ++s) {
      auto start = static_cast<int>(s % c.graph.vertex_count());
      auto w = simulate(c.graph, start, Policy::uniform(), kPlateauSteps, 7000 + s);
      auto d = engine.trace(w);
      auto p = engine.plateau(d, w, kPlateauSteps / 2);
      lps += d.lp_solves + p.full.rechecked + p.first_half.rechecked;
      if (!p.plateau || !p.conv_le_union)
        return {false, c.label + " walk " + std::to_string(s) + ": max " + to_string(p.full.value) +
                           " vs first half " + to_string(p.first_half.value)};
      top = std::max(top, p.full.value);
      ++walks;
    }
    if (c.walks == kPlateauWalks) budgeted += seconds_since(t0);
    msg << c.label << " max " << to_string(top) << "; ";
  }
  msg << walks << " walks, " << lps << " LPs, budgeted part " << budgeted << "s";
  return {budgeted < kPlateauSeconds, msg.str()};
}

// ------------------------------------------------------------------ 8

Outcome connection_soundness() {
  testing::Rng rng(8008);
  std::vector<HorseshoeGraph> pool;
  for (int g = 2; g <= 6; ++g) {
    ExampleOptions o;
    o.bridge_seed = static_cast<std::uint64_t>(g);
    pool.push_back(gen_sharp(g, o));
  }
  {
    ExampleOptions o;
    o.bridge_seed = 11;
    pool.push_back(gen_figtree(o));
    pool.push_back(gen_figexample11(o));
  }
  for (int i = 0; i < 25; ++i) {
    testing::DagInstanceOptions o;
    o.genus = 2 + i % 4;
    o.bridge_disp = true;
    o.max_class_vertices = 3;
    pool.push_back(testing::random_dag_instance(rng, o));
  }
  struct Prepared {
    const HorseshoeGraph* g;
    CondensationDAG dag;
    Rational L;
  };
  std::vector<Prepared> prepared;
  for (const auto& g : pool) {
    auto dag = scc_condense(g);
    auto L = safe_threshold(g, dag) + kThresholdEpsilon;
    prepared.push_back({&g, std::move(dag), L});
  }
  std::size_t violations = 0, nonempty = 0;
  for (std::size_t i = 0; i < kFuzzWalks; ++i) {
    const auto& p = prepared[rng() % prepared.size()];
    auto start = static_cast<int>(rng() % p.g->vertex_count());
    std::size_t steps = 20 + rng() % 400;
    auto w = simulate(*p.g, start, Policy::uniform(), steps, rng());
    try {
      auto c = connection_from_deviation(*p.g, w, p.dag, p.L);
      if (!c.chain_ok || !c.itinerary_ok) ++violations;
      if (!c.ordered.empty()) ++nonempty;
    } catch (const InconsistencyError&) {
      ++violations;
    }
  }
  return {violations == 0, std::to_string(kFuzzWalks) + " walks, " + std::to_string(violations) + " violations, " +
                               std::to_string(nonempty) + " with classes over threshold"};
}

// ------------------------------------------------------------------ 9

struct NeighbourhoodInstance {
  std::string name;
  HorseshoeGraph graph;
};

Outcome neighbourhood_lemma() {
  std::vector<NeighbourhoodInstance> instances;
  for (int g = 2; g <= 8; ++g) instances.push_back({"sharp" + std::to_string(g), gen_sharp(g)});
  for (int g = 2; g <= 8; ++g) instances.push_back({"recurrent" + std::to_string(g), gen_recurrent(g)});
  instances.push_back({"figtree", gen_figtree()});
  instances.push_back({"figexample11", gen_figexample11()});
  instances.push_back({"semicontinuity-limit", gen_semicontinuity_pair(3).second});
  testing::Rng rng(9009);
  while (instances.size() < 20) {
    testing::DagInstanceOptions o;
    o.genus = 4;
    o.max_classes = 6;
    auto g = testing::random_dag_instance(rng, o);
    if (rotation_set(scc_condense(g)).size() >= 2) instances.push_back({"random" + std::to_string(instances.size()), g});
  }

  const std::vector<Rational> radii{Rational(1, 4), Rational(1), Rational(4)};
  std::size_t total = 0, exact_rechecks = 0;
  for (const auto& inst : instances) {
    auto dag = scc_condense(inst.graph);
    auto rot = rotation_set(dag);
    // blocks V_i of the nonzero classes, then the complement
    std::vector<Subspace> spans;
    std::vector<int> block_class;
    for (const auto& c : dag.classes)
      if (c.span.dim() > 0) spans.push_back(c.span), block_class.push_back(c.id);
    BlockDecomposition blocks = BlockDecomposition(inst.graph.genus(), spans).completed();
    NormSpec norm = NormSpec::block_sup(BlockDecomposition(inst.graph.genus(), spans));
    const std::size_t nb = blocks.blocks().size();

    // per piece: which blocks lie in V'_j
    std::vector<std::vector<bool>> in_piece;
    for (const auto& p : rot.pieces()) {
      std::vector<bool> mask(nb, false);
      for (int cls : p.path)
        for (std::size_t b = 0; b < block_class.size(); ++b)
          if (block_class[b] == cls) mask[b] = true;
      in_piece.push_back(mask);
    }
    std::vector<std::vector<std::vector<double>>> piece_points;
    for (const auto& p : rot.pieces()) {
      std::vector<std::vector<double>> pts;
      for (const auto& v : p.polytope.vertices()) pts.push_back(norm.apply(v).to_doubles());
      piece_points.push_back(std::move(pts));
    }
    const auto hull_vertices = convex_hull(rot).vertices();

    for (const auto& R : radii) {
      const double Rd = to_double(R);
      std::size_t accepted = 0, attempts = 0;
      while (accepted < kNeighbourhoodSamples) {
        if (++attempts > 200 * kNeighbourhoodSamples)
          return {false, inst.name + ": sampler starved at R=" + to_string(R)};
        // z in conv(rot), mixing vertices of different pieces
        auto z = random_combination(rng, hull_vertices, 1 + rng() % 4);
        auto zc = blocks.decompose(z).coefficients;
        const std::size_t j = rng() % rot.size();
        // x within R of z, and within R of V'_j: outside the piece's
        // blocks each coefficient must also be below R in absolute value
        std::vector<std::vector<Rational>> xc = zc;
        bool feasible = true;
        for (std::size_t b = 0; b < nb && feasible; ++b)
          for (auto& c : xc[b]) {
            Rational lo = c - R, hi = c + R;
            if (!in_piece[j][b]) lo = std::max(lo, Rational(-R)), hi = std::min(hi, R);
            if (lo >= hi) {
              feasible = false;
              break;
            }
            Rational u = dyadic(rng, 12);
            if (u == 0) u = Rational(1, 4096);
            c = lo + (hi - lo) * u;
          }
        if (!feasible) continue;
        HomologyVector x(inst.graph.genus());
        for (std::size_t b = 0; b < nb; ++b)
          for (std::size_t k = 0; k < xc[b].size(); ++k) x += xc[b][k] * blocks.blocks()[b].basis()[k];

        // independent exact checks of both hypotheses
        auto parts = blocks.decompose(x).coefficients;
        Rational dV = 0;
        for (std::size_t b = 0; b < nb; ++b)
          if (!in_piece[j][b])
            for (const auto& c : parts[b]) dV = std::max(dV, abs(c));
        if (!(dV < R) || !(norm.norm(x - z) < R)) return {false, inst.name + ": sampler left the hypothesis set"};
        ++accepted;
        ++total;

        // conclusion: d(x, rot) < 3R, float filter then exact
        auto xd = norm.apply(x).to_doubles();
        std::vector<std::pair<double, std::size_t>> order;
        for (std::size_t p = 0; p < rot.size(); ++p) {
          double d = 0;
          for (std::size_t b = 0; b < nb; ++b)
            if (!in_piece[p][b])
              for (const auto& c : parts[b]) d = std::max(d, std::abs(to_double(c)));
          order.emplace_back(d, p);
        }
        std::sort(order.begin(), order.end());
        bool inside = false;
        for (auto [dv, p] : order) {
          double d = hull_distance_approx(piece_points[p], xd);
          if (d < 3 * Rd - 1e-6) {
            inside = true;
            break;
          }
          if (d < 3 * Rd + 1e-6) {
            ++exact_rechecks;
            if (distance(x, rot.pieces()[p].polytope, norm) < 3 * R) {
              inside = true;
              break;
            }
          }
        }
        if (!inside) {
          ++exact_rechecks;
          if (!(distance_to_union(x, rot, norm) < 3 * R))
            return {false, inst.name + ": " + x.to_string() + " is not within 3R=" + to_string(3 * R)};
        }
      }
    }
  }
  return {true, std::to_string(instances.size()) + " instances x 3 radii, " + std::to_string(total) + " points, " +
                    std::to_string(exact_rechecks) + " exact rechecks"};
}

// ------------------------------------------------------------------ 10

Outcome realization() {
  HorseshoeGraph g(1, {"R"}, {Edge{0, 0, {0, 0}, 1}, Edge{0, 0, {1, 0}, 1}, Edge{0, 0, {0, 1}, 1}});
  auto dag = scc_condense(g);
  auto pt = [](Rational a, Rational b) { return HomologyVector(1, {a, b}); };
  std::vector<HomologyVector> polyline{pt(Rational(1, 4), Rational(1, 4)), pt(Rational(3, 10), Rational(1, 4)),
                                       pt(Rational(3, 10), Rational(3, 10))};
  std::ostringstream msg;
  double prev = std::numeric_limits<double>::infinity();
  bool decreasing = true;
  double last = 0;
  for (std::size_t n : {1000u, 10000u, 100000u}) {
    RealizeTarget t{0, polyline, Rational(1, 20), n};
    auto r = realize(g, dag, t);
    msg << "N=" << n << " " << r.hausdorff << "; ";
    decreasing = decreasing && r.hausdorff < prev;
    prev = r.hausdorff;
    last = r.hausdorff;
  }
  return {decreasing && last <= kRealizeTolerance, msg.str()};
}

// ------------------------------------------------------------------ 11

Outcome exposed_witnesses() {
  auto g = gen_figtree();
  auto dag = scc_condense(g);
  auto rot = rotation_set(dag);
  auto ws = realize_exposed(g, dag, rot, default_norm(dag));
  std::size_t good = 0;
  for (const auto& w : ws) {
    if (w.flagged || !w.bounded) return {false, "vertex " + w.point.to_string() + " lacks a bounded witness"};
    const auto& c = dag.classes[static_cast<std::size_t>(w.class_id)].cycles[static_cast<std::size_t>(w.cycle)];
    if (c.mean != w.point) return {false, "witness mean mismatch"};
    ++good;
  }
  bool all = good == convex_hull(rot).vertices().size();
  return {all, std::to_string(good) + " vertices of conv, each with a cycle witness"};
}

// ------------------------------------------------------------------ 12

Outcome determinism() {
#ifdef ROTSET_HAVE_CLI
  auto run = [](std::vector<std::string> args, const std::string& input) {
    std::vector<const char*> argv{"rotset"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::istringstream in(input);
    std::ostringstream out, err;
    int code = cli::run(static_cast<int>(argv.size()), argv.data(), in, out, err);
    return std::to_string(code) + "\n" + out.str() + err.str();
  };
  std::vector<std::string> inputs{gen_sharp(5).to_json(), gen_figtree().to_json(), gen_figexample11().to_json(),
                                  gen_semicontinuity_pair(3).first.to_json()};
  std::size_t compared = 0;
  for (const auto& input : inputs) {
    for (const auto& base : std::vector<std::vector<std::string>>{
             {"analyze"}, {"simulate", "--steps", "5000", "--seed", "42", "--format", "csv"},
             {"simulate", "--steps", "5000", "--seed", "42"}}) {
      std::string reference;
      for (const char* jobs : {"1", "4"})
        for (int rep = 0; rep < 2; ++rep) {
          auto args = base;
          args.push_back("--jobs");
          args.push_back(jobs);
          auto out = run(args, input);
          if (out.rfind("0\n", 0) != 0) return {false, "command failed: " + out.substr(0, 200)};
          if (reference.empty())
            reference = out;
          else if (out != reference)
            return {false, base.front() + " output differs with --jobs " + jobs};
          ++compared;
        }
    }
  }
  return {true, std::to_string(compared) + " runs byte-identical across repeats and --jobs 1/4"};
#else
  return {false, "built without the CLI"};
#endif
}

}  // namespace

int main() {
  report(1, "bound formula", bound_formula);
  report(2, "sharpness", sharpness);
  report(3, "figtree golden", figtree_golden);
  report(4, "oracle equivalence", oracle_equivalence);
  report(5, "convexity classifier", convexity);
  report(6, "pruning invariance", pruning_invariance);
  report(7, "deviation plateau", deviation_plateau);
  report(8, "connection soundness", connection_soundness);
  report(9, "neighbourhood lemma", neighbourhood_lemma);
  report(10, "realization", realization);
  report(11, "exposed-point witnesses", exposed_witnesses);
  report(12, "determinism", determinism);
  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
