#include "rotset/examples.hpp"

#include <random>

#include "rotset/errors.hpp"

namespace rotset {

namespace {

using ojson = nlohmann::ordered_json;

class Builder {
 public:
  Builder(int genus, const ExampleOptions& options) : genus_(genus) {
    if (options.bridge_seed) rng_.emplace(*options.bridge_seed);
  }

  int vertex(const std::string& name) {
    names_.push_back(name);
    return static_cast<int>(names_.size()) - 1;
  }

  void edge(int from, int to, std::vector<std::int64_t> disp, std::int64_t time = 1) {
    edges_.push_back(Edge{from, to, std::move(disp), time});
  }

  std::vector<std::int64_t> zero() const { return std::vector<std::int64_t>(2 * static_cast<std::size_t>(genus_), 0); }

  std::vector<std::int64_t> unit(std::size_t i) const {
    auto v = zero();
    v[i] = 1;
    return v;
  }

  /// Loops Id, T1, T2 on coordinate plane `plane` (0-based).
  void torus(int v, int plane) {
    const auto k = 2 * static_cast<std::size_t>(plane);
    edge(v, v, zero());
    edge(v, v, unit(k));
    edge(v, v, unit(k + 1));
  }

  void bridge(int from, int to) {
    auto d = zero();
    if (rng_)
      for (auto& x : d) x = static_cast<std::int64_t>((*rng_)() % 3) - 1;
    edge(from, to, std::move(d));
  }

  HorseshoeGraph build(ojson metadata) { return HorseshoeGraph(genus_, names_, edges_, std::move(metadata)); }

 private:
  int genus_;
  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  std::optional<std::mt19937_64> rng_;
};

ojson meta(const std::string& family, int genus) {
  ojson m = ojson::object();
  m["family"] = family;
  m["genus"] = genus;
  return m;
}

void require_genus(int g) {
  if (g < 2) throw ValidationError("family needs genus >= 2", {{"genus", g}});
}

}  // namespace

HorseshoeGraph gen_sharp(int g, const ExampleOptions& options) {
  require_genus(g);
  Builder b(g, options);
  const int sources = (g + 1) / 2;
  const int sinks = g / 2;
  std::vector<int> src, snk;
  for (int i = 1; i <= sources; ++i) src.push_back(b.vertex("R" + std::to_string(i)));
  const int hub = b.vertex("R0");
  for (int j = 1; j <= sinks; ++j) snk.push_back(b.vertex("R'" + std::to_string(j)));
  int plane = 0;
  for (int v : src) b.torus(v, plane++);
  b.edge(hub, hub, b.zero());
  for (int v : snk) b.torus(v, plane++);
  for (int v : src) b.bridge(v, hub);
  for (int v : snk) b.bridge(hub, v);
  return b.build(meta("sharp", g));
}

HorseshoeGraph gen_recurrent(int g) {
  require_genus(g);
  Builder b(g, {});
  for (int i = 0; i < g; ++i) b.torus(b.vertex("S" + std::to_string(i + 1)), i);
  return b.build(meta("recurrent", g));
}

HorseshoeGraph gen_figtree(const ExampleOptions& options) {
  Builder b(4, options);
  int s[5];
  s[0] = b.vertex("S0");
  for (int i = 1; i <= 4; ++i) s[i] = b.vertex("S" + std::to_string(i));
  b.edge(s[0], s[0], b.zero());
  for (int i = 1; i <= 4; ++i) b.torus(s[i], i - 1);
  b.bridge(s[1], s[0]);
  b.bridge(s[0], s[3]);
  b.bridge(s[1], s[4]);
  b.bridge(s[2], s[3]);
  b.bridge(s[2], s[4]);
  return b.build(meta("figtree", 4));
}

HorseshoeGraph gen_figexample11(const ExampleOptions& options) {
  Builder b(5, options);
  std::vector<int> src, snk;
  for (int i = 1; i <= 3; ++i) src.push_back(b.vertex("S" + std::to_string(i)));
  const int hub = b.vertex("S0");
  const int hub2 = b.vertex("S0b");
  for (int j = 1; j <= 2; ++j) snk.push_back(b.vertex("S'" + std::to_string(j)));
  int plane = 0;
  for (int v : src) b.torus(v, plane++);
  for (int v : snk) b.torus(v, plane++);
  b.edge(hub, hub2, b.zero());
  b.edge(hub2, hub, b.zero());
  for (int v : src) b.bridge(v, hub);
  for (int v : snk) b.bridge(hub2, v);
  return b.build(meta("figexample11", 5));
}

std::pair<HorseshoeGraph, HorseshoeGraph> gen_semicontinuity_pair(int n) {
  if (n < 0) throw ValidationError("chain length must be >= 0", {{"n", n}});
  auto horseshoes = [](Builder& b, int& left, int& right) {
    left = b.vertex("RL");
    right = b.vertex("RR");
    auto t1t2 = b.unit(0);
    t1t2[1] = 1;
    auto t3t4 = b.unit(2);
    t3t4[3] = 1;
    b.edge(left, left, b.zero());
    b.edge(left, left, b.unit(0));
    b.edge(left, left, t1t2);
    b.edge(right, right, b.zero());
    b.edge(right, right, b.unit(2));
    b.edge(right, right, t3t4);
  };
  Builder chained(2, {});
  int left = 0, right = 0;
  horseshoes(chained, left, right);
  int prev = left;
  for (int i = 1; i <= n; ++i) {
    int v = chained.vertex("R" + std::to_string(i));
    chained.edge(prev, v, chained.zero());
    prev = v;
  }
  chained.edge(prev, right, chained.zero());
  prev = right;
  for (int i = 1; i <= n; ++i) {
    int v = chained.vertex("R'" + std::to_string(i));
    chained.edge(prev, v, chained.zero());
    prev = v;
  }
  chained.edge(prev, left, chained.zero());
  auto m = meta("semicontinuity", 2);
  m["chain"] = n;

  Builder limit(2, {});
  horseshoes(limit, left, right);
  auto ml = meta("semicontinuity-limit", 2);
  return {chained.build(std::move(m)), limit.build(std::move(ml))};
}

const std::vector<std::string>& example_families() {
  static const std::vector<std::string> names{"sharp", "recurrent", "figtree", "figexample11", "semicontinuity"};
  return names;
}

HorseshoeGraph generate(const std::string& family, int size, bool limit, const ExampleOptions& options) {
  if (family == "sharp") return gen_sharp(size, options);
  if (family == "recurrent") return gen_recurrent(size);
  if (family == "figtree") return gen_figtree(options);
  if (family == "figexample11") return gen_figexample11(options);
  if (family == "semicontinuity" || family == "counterexample_semicontinuity") {
    auto pair = gen_semicontinuity_pair(size);
    return limit ? std::move(pair.second) : std::move(pair.first);
  }
  throw ValidationError("unknown example family \"" + family + "\"", {{"family", family}});
}

}  // namespace rotset
