#include "rotset/graph.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>

#include "rotset/errors.hpp"
#include "rotset/parallel.hpp"

namespace rotset {

using ojson = nlohmann::ordered_json;

// ---------------------------------------------------------------- construction

HorseshoeGraph::HorseshoeGraph(int genus, std::vector<std::string> vertices, std::vector<Edge> edges,
                               ojson metadata)
    : genus_(genus), vertices_(std::move(vertices)), edges_(std::move(edges)), metadata_(std::move(metadata)) {
  if (genus_ < 1) throw ValidationError("genus must be a positive integer", {{"genus", genus_}});
  std::set<std::string> seen;
  for (const auto& v : vertices_)
    if (!seen.insert(v).second) throw ValidationError("duplicate vertex id \"" + v + "\"", {{"vertex", v}});
  out_.assign(vertices_.size(), {});
  const auto n = static_cast<int>(vertices_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    const nlohmann::json where = {{"edge", i}};
    if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n)
      throw ValidationError("edge " + std::to_string(i) + ": endpoint out of range", where);
    if (e.disp.size() != 2 * static_cast<std::size_t>(genus_))
      throw ValidationError("edge " + std::to_string(i) + ": displacement length " + std::to_string(e.disp.size()) +
                                " ≠ " + std::to_string(2 * genus_),
                            {{"edge", i}, {"length", e.disp.size()}, {"expected", 2 * genus_}});
    if (e.time < 1)
      throw ValidationError("edge " + std::to_string(i) + " (" + vertices_[e.from] + "->" + vertices_[e.to] +
                                "): time must be >= 1, got " + std::to_string(e.time),
                            {{"edge", i}, {"time", e.time}});
    out_[static_cast<std::size_t>(e.from)].push_back(static_cast<int>(i));
  }
}

int HorseshoeGraph::vertex_index(std::string_view name) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i] == name) return static_cast<int>(i);
  throw ValidationError("unknown vertex \"" + std::string(name) + "\"", {{"vertex", std::string(name)}});
}

HomologyVector HorseshoeGraph::displacement(int edge) const {
  return HomologyVector::from_integers(genus_, edges_.at(static_cast<std::size_t>(edge)).disp);
}

std::int64_t HorseshoeGraph::max_abs_displacement() const {
  std::int64_t best = 0;
  for (const auto& e : edges_)
    for (auto x : e.disp) best = std::max(best, x < 0 ? -x : x);
  return best;
}

// ---------------------------------------------------------------- JSON I/O

namespace {

/// Line (1-based) of the first character of every JSON value, keyed by JSON pointer.
std::map<std::string, int> value_lines(std::string_view text) {
  std::map<std::string, int> lines;
  std::size_t pos = 0;
  int line = 1;
  auto skip_ws = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' || text[pos] == '\r')) {
      if (text[pos] == '\n') ++line;
      ++pos;
    }
  };
  auto read_string = [&]() -> std::string {
    std::string out;
    ++pos;  // opening quote
    while (pos < text.size() && text[pos] != '"') {
      if (text[pos] == '\\' && pos + 1 < text.size()) {
        out.push_back(text[pos + 1]);
        pos += 2;
        continue;
      }
      out.push_back(text[pos++]);
    }
    ++pos;
    return out;
  };
  auto escape = [](const std::string& key) {
    std::string out;
    for (char c : key) {
      if (c == '~') out += "~0";
      else if (c == '/') out += "~1";
      else out.push_back(c);
    }
    return out;
  };
  std::function<void(const std::string&)> value = [&](const std::string& ptr) {
    skip_ws();
    if (pos >= text.size()) return;
    lines.emplace(ptr, line);
    char c = text[pos];
    if (c == '{') {
      ++pos;
      skip_ws();
      if (pos < text.size() && text[pos] == '}') {
        ++pos;
        return;
      }
      while (pos < text.size()) {
        skip_ws();
        if (pos >= text.size() || text[pos] != '"') return;
        std::string key = read_string();
        skip_ws();
        if (pos >= text.size() || text[pos] != ':') return;
        ++pos;
        value(ptr + "/" + escape(key));
        skip_ws();
        if (pos < text.size() && text[pos] == ',') {
          ++pos;
          continue;
        }
        if (pos < text.size() && text[pos] == '}') ++pos;
        return;
      }
    } else if (c == '[') {
      ++pos;
      skip_ws();
      if (pos < text.size() && text[pos] == ']') {
        ++pos;
        return;
      }
      for (std::size_t i = 0; pos < text.size(); ++i) {
        value(ptr + "/" + std::to_string(i));
        skip_ws();
        if (pos < text.size() && text[pos] == ',') {
          ++pos;
          continue;
        }
        if (pos < text.size() && text[pos] == ']') ++pos;
        return;
      }
    } else if (c == '"') {
      read_string();
    } else {
      while (pos < text.size() && text[pos] != ',' && text[pos] != '}' && text[pos] != ']' && text[pos] != ' ' &&
             text[pos] != '\n' && text[pos] != '\r' && text[pos] != '\t')
        ++pos;
    }
  };
  value("");
  return lines;
}

class SchemaReader {
 public:
  explicit SchemaReader(std::string_view text) : lines_(value_lines(text)) {}

  [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
    int line = 0;
    // nearest located ancestor
    std::string p = pointer;
    while (true) {
      if (auto it = lines_.find(p); it != lines_.end()) {
        line = it->second;
        break;
      }
      auto slash = p.rfind('/');
      if (slash == std::string::npos) break;
      p = p.substr(0, slash);
    }
    std::string where = pointer.empty() ? "/" : pointer;
    throw ValidationError(where + (line ? " (line " + std::to_string(line) + ")" : std::string()) + ": " + message,
                          {{"path", where}, {"line", line}});
  }

  std::int64_t integer(const ojson& j, const std::string& ptr) const {
    if (!j.is_number_integer()) fail(ptr, "expected an integer");
    return j.get<std::int64_t>();
  }

 private:
  std::map<std::string, int> lines_;
};

}  // namespace

HorseshoeGraph HorseshoeGraph::parse(std::string_view text) {
  ojson doc;
  try {
    doc = ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t byte = e.byte == 0 ? 0 : e.byte - 1;
    int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(
                                                                              std::min(byte, text.size())),
                                               '\n'));
    throw ValidationError("JSON syntax error (line " + std::to_string(line) + "): " + e.what(),
                          {{"path", "/"}, {"line", line}});
  }
  SchemaReader r(text);
  if (!doc.is_object()) r.fail("", "graph file must be a JSON object");
  for (const auto& [key, _] : doc.items())
    if (key != "genus" && key != "vertices" && key != "edges" && key != "metadata") r.fail("/" + key, "unknown key");
  for (const char* key : {"genus", "vertices", "edges"})
    if (!doc.contains(key)) r.fail("", std::string("missing key \"") + key + "\"");

  const auto genus = r.integer(doc["genus"], "/genus");
  if (genus < 1) r.fail("/genus", "genus must be a positive integer");

  const auto& jv = doc["vertices"];
  if (!jv.is_array()) r.fail("/vertices", "expected an array of vertex ids");
  std::vector<std::string> vertices;
  std::unordered_map<std::string, int> index;
  for (std::size_t i = 0; i < jv.size(); ++i) {
    const std::string ptr = "/vertices/" + std::to_string(i);
    if (!jv[i].is_string()) r.fail(ptr, "vertex id must be a string");
    auto name = jv[i].get<std::string>();
    if (!index.emplace(name, static_cast<int>(i)).second) r.fail(ptr, "duplicate vertex id \"" + name + "\"");
    vertices.push_back(std::move(name));
  }

  const auto& je = doc["edges"];
  if (!je.is_array()) r.fail("/edges", "expected an array of edges");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < je.size(); ++i) {
    const std::string ptr = "/edges/" + std::to_string(i);
    const auto& e = je[i];
    if (!e.is_object()) r.fail(ptr, "edge must be an object");
    for (const auto& [key, _] : e.items())
      if (key != "from" && key != "to" && key != "disp" && key != "time") r.fail(ptr + "/" + key, "unknown key");
    for (const char* key : {"from", "to", "disp", "time"})
      if (!e.contains(key)) r.fail(ptr, std::string("missing key \"") + key + "\"");
    Edge edge;
    for (const char* key : {"from", "to"}) {
      if (!e[key].is_string()) r.fail(ptr + "/" + key, "vertex reference must be a string");
      auto it = index.find(e[key].get<std::string>());
      if (it == index.end()) r.fail(ptr + "/" + key, "unknown vertex \"" + e[key].get<std::string>() + "\"");
      (std::string(key) == "from" ? edge.from : edge.to) = it->second;
    }
    const auto& d = e["disp"];
    if (!d.is_array()) r.fail(ptr + "/disp", "displacement must be an array of integers");
    for (std::size_t k = 0; k < d.size(); ++k) edge.disp.push_back(r.integer(d[k], ptr + "/disp/" + std::to_string(k)));
    if (edge.disp.size() != 2 * static_cast<std::size_t>(genus))
      r.fail(ptr + "/disp", "displacement length " + std::to_string(edge.disp.size()) + " ≠ " +
                                std::to_string(2 * genus));
    edge.time = r.integer(e["time"], ptr + "/time");
    if (edge.time < 1)
      r.fail(ptr + "/time", "edge " + std::to_string(i) + " (" + vertices[edge.from] + "->" + vertices[edge.to] +
                                "): time must be >= 1, got " + std::to_string(edge.time));
    edges.push_back(std::move(edge));
  }
  ojson metadata = nullptr;
  if (doc.contains("metadata")) {
    if (!doc["metadata"].is_object()) r.fail("/metadata", "metadata must be an object");
    metadata = doc["metadata"];
  }
  return HorseshoeGraph(static_cast<int>(genus), std::move(vertices), std::move(edges), std::move(metadata));
}

HorseshoeGraph HorseshoeGraph::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open graph file " + path.string(), {{"path", path.string()}});
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string HorseshoeGraph::to_json() const {
  // One edge per line keeps diffs and error line numbers readable.
  std::ostringstream os;
  os << "{\n  \"genus\": " << genus_ << ",\n  \"vertices\": [";
  for (std::size_t i = 0; i < vertices_.size(); ++i) os << (i ? ", " : "") << ojson(vertices_[i]).dump();
  os << "],\n  \"edges\": [";
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    os << (i ? ",\n" : "\n") << "    {\"from\": " << ojson(vertices_[e.from]).dump()
       << ", \"to\": " << ojson(vertices_[e.to]).dump() << ", \"disp\": [";
    for (std::size_t k = 0; k < e.disp.size(); ++k) os << (k ? ", " : "") << e.disp[k];
    os << "], \"time\": " << e.time << "}";
  }
  os << (edges_.empty() ? "]" : "\n  ]");
  if (!metadata_.is_null()) os << ",\n  \"metadata\": " << metadata_.dump();
  os << "\n}\n";
  return os.str();
}

// ---------------------------------------------------------------- cycles

namespace {

/// Johnson's elementary circuit search over the collapsed digraph on `members`.
class CircuitSearch {
 public:
  CircuitSearch(const HorseshoeGraph& g, std::span<const int> members, std::size_t cap)
      : g_(g), cap_(cap) {
    local_.assign(g.vertex_count(), -1);
    for (std::size_t i = 0; i < members.size(); ++i) local_[static_cast<std::size_t>(members[i])] = static_cast<int>(i);
    members_.assign(members.begin(), members.end());
    const std::size_t n = members_.size();
    adj_.assign(n, {});
    parallel_.assign(n, {});
    for (std::size_t i = 0; i < n; ++i) {
      std::map<int, std::vector<int>> by_target;
      for (int e : g.out_edges(members_[i])) {
        int t = local_[static_cast<std::size_t>(g.edges()[static_cast<std::size_t>(e)].to)];
        if (t < 0) continue;
        by_target[t].push_back(e);
      }
      for (auto& [t, es] : by_target) {
        adj_[i].push_back(t);
        parallel_[i].push_back(std::move(es));
      }
    }
  }

  std::vector<std::vector<int>> run() {
    const int n = static_cast<int>(members_.size());
    blocked_.assign(static_cast<std::size_t>(n), false);
    block_map_.assign(static_cast<std::size_t>(n), {});
    for (start_ = 0; start_ < n; ++start_) {
      for (int v = start_; v < n; ++v) {
        blocked_[static_cast<std::size_t>(v)] = false;
        block_map_[static_cast<std::size_t>(v)].clear();
      }
      circuit(start_);
    }
    return std::move(cycles_);
  }

 private:
  bool circuit(int v) {
    bool found = false;
    stack_.push_back(v);
    blocked_[static_cast<std::size_t>(v)] = true;
    const auto& nbrs = adj_[static_cast<std::size_t>(v)];
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      int w = nbrs[k];
      if (w < start_) continue;
      if (w == start_) {
        emit();
        found = true;
      } else if (!blocked_[static_cast<std::size_t>(w)] && circuit(w)) {
        found = true;
      }
    }
    if (found) {
      unblock(v);
    } else {
      for (int w : nbrs)
        if (w >= start_) block_map_[static_cast<std::size_t>(w)].insert(v);
    }
    stack_.pop_back();
    return found;
  }

  void unblock(int u) {
    blocked_[static_cast<std::size_t>(u)] = false;
    auto pending = std::move(block_map_[static_cast<std::size_t>(u)]);
    block_map_[static_cast<std::size_t>(u)].clear();
    for (int w : pending)
      if (blocked_[static_cast<std::size_t>(w)]) unblock(w);
  }

  /// Expands the vertex cycle on the stack into every parallel-edge choice.
  void emit() {
    std::vector<const std::vector<int>*> choices;
    for (std::size_t i = 0; i < stack_.size(); ++i) {
      int from = stack_[i];
      int to = i + 1 < stack_.size() ? stack_[i + 1] : start_;
      const auto& nbrs = adj_[static_cast<std::size_t>(from)];
      auto k = static_cast<std::size_t>(std::find(nbrs.begin(), nbrs.end(), to) - nbrs.begin());
      choices.push_back(&parallel_[static_cast<std::size_t>(from)][k]);
    }
    std::vector<std::size_t> idx(choices.size(), 0);
    while (true) {
      std::vector<int> cycle;
      for (std::size_t i = 0; i < choices.size(); ++i) cycle.push_back((*choices[i])[idx[i]]);
      cycles_.push_back(std::move(cycle));
      if (cycles_.size() > cap_)
        throw LimitError("simple cycle count exceeds cap " + std::to_string(cap_), {{"cap", cap_}});
      std::size_t i = 0;
      while (i < idx.size() && ++idx[i] == choices[i]->size()) idx[i++] = 0;
      if (i == idx.size()) break;
    }
  }

  const HorseshoeGraph& g_;
  std::size_t cap_;
  std::vector<int> local_;
  std::vector<int> members_;
  std::vector<std::vector<int>> adj_;
  std::vector<std::vector<std::vector<int>>> parallel_;
  std::vector<bool> blocked_;
  std::vector<std::set<int>> block_map_;
  std::vector<int> stack_;
  int start_ = 0;
  std::vector<std::vector<int>> cycles_;
};

}  // namespace

std::vector<SimpleCycle> simple_cycles(const HorseshoeGraph& g, std::span<const int> members, std::size_t cap) {
  std::vector<int> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end());
  CircuitSearch search(g, sorted, cap);
  std::vector<SimpleCycle> out;
  for (auto& edges : search.run()) {
    SimpleCycle c;
    c.base = g.edges()[static_cast<std::size_t>(edges.front())].from;
    c.displacement = HomologyVector(g.genus());
    for (int e : edges) {
      c.displacement += g.displacement(e);
      c.period += g.edges()[static_cast<std::size_t>(e)].time;
    }
    c.mean = c.displacement / Rational(c.period);
    c.edges = std::move(edges);
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

Polytope polytope_from_cycles(int genus, const std::vector<SimpleCycle>& cycles) {
  std::vector<HomologyVector> pts{HomologyVector(genus)};
  for (const auto& c : cycles) pts.push_back(c.mean);
  return Polytope::hull(pts);
}

}  // namespace

Polytope class_polytope(const HorseshoeGraph& g, std::span<const int> members, std::size_t cap) {
  return polytope_from_cycles(g.genus(), simple_cycles(g, members, cap));
}

std::vector<HomologyVector> brute_force_walk_means(const HorseshoeGraph& g, std::span<const int> members,
                                                   std::size_t max_length, std::size_t cap) {
  if (max_length < 1) throw ValidationError("walk length bound must be >= 1");
  std::vector<bool> inside(g.vertex_count(), false);
  for (int v : members) inside[static_cast<std::size_t>(v)] = true;
  using State = std::pair<int, std::vector<std::int64_t>>;  // vertex, (disp..., time)
  std::set<HomologyVector> means;
  std::size_t expanded = 0;
  const std::size_t dim = 2 * static_cast<std::size_t>(g.genus());
  for (int start : members) {
    std::set<State> frontier{{start, std::vector<std::int64_t>(dim + 1, 0)}};
    for (std::size_t len = 1; len <= max_length && !frontier.empty(); ++len) {
      std::set<State> next;
      for (const auto& [v, acc] : frontier) {
        for (int e : g.out_edges(v)) {
          const auto& edge = g.edges()[static_cast<std::size_t>(e)];
          if (!inside[static_cast<std::size_t>(edge.to)]) continue;
          if (++expanded > cap)
            throw LimitError("closed-walk enumeration exceeds cap " + std::to_string(cap), {{"cap", cap}});
          auto a = acc;
          for (std::size_t k = 0; k < dim; ++k) a[k] += edge.disp[k];
          a[dim] += edge.time;
          if (edge.to == start) {
            HomologyVector m = HomologyVector::from_integers(g.genus(), std::span(a).first(dim));
            means.insert(m / Rational(a[dim]));
          }
          next.emplace(edge.to, std::move(a));
        }
      }
      frontier = std::move(next);
    }
  }
  return {means.begin(), means.end()};
}

// ---------------------------------------------------------------- condensation

std::vector<int> CondensationDAG::successors(int c) const {
  std::vector<int> out;
  for (const auto& [a, b] : edges)
    if (a == c) out.push_back(b);
  return out;
}

std::vector<int> CondensationDAG::predecessors(int c) const {
  std::vector<int> out;
  for (const auto& [a, b] : edges)
    if (b == c) out.push_back(a);
  return out;
}

bool CondensationDAG::has_edge(int a, int b) const {
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(a, b));
}

bool CondensationDAG::is_acyclic() const {
  const std::size_t n = classes.size();
  std::vector<int> indeg(n, 0);
  for (const auto& e : edges) ++indeg[static_cast<std::size_t>(e.second)];
  std::vector<int> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (indeg[i] == 0) ready.push_back(static_cast<int>(i));
  std::size_t seen = 0;
  while (!ready.empty()) {
    int c = ready.back();
    ready.pop_back();
    ++seen;
    for (int s : successors(c))
      if (--indeg[static_cast<std::size_t>(s)] == 0) ready.push_back(s);
  }
  return seen == n;
}

std::vector<std::vector<bool>> CondensationDAG::reachability() const {
  const std::size_t n = classes.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<int> stack{static_cast<int>(s)};
    reach[s][s] = true;
    while (!stack.empty()) {
      int c = stack.back();
      stack.pop_back();
      for (int t : successors(c))
        if (!reach[s][static_cast<std::size_t>(t)]) {
          reach[s][static_cast<std::size_t>(t)] = true;
          stack.push_back(t);
        }
    }
  }
  return reach;
}

bool CondensationDAG::has_undirected_cycle() const {
  // A forest has exactly (vertices - components) edges.
  std::set<std::pair<int, int>> undirected;
  for (auto [a, b] : edges) undirected.emplace(std::min(a, b), std::max(a, b));
  std::vector<int> parent(classes.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int x) {
    return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = find(parent[static_cast<std::size_t>(x)]);
  };
  for (auto [a, b] : undirected) {
    int ra = find(a), rb = find(b);
    if (ra == rb) return true;
    parent[static_cast<std::size_t>(ra)] = rb;
  }
  return false;
}

namespace {

/// Tarjan's algorithm, iterative. Returns component index per vertex.
std::vector<int> tarjan(const HorseshoeGraph& g, int& count) {
  const std::size_t n = g.vertex_count();
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  int next_index = 0;
  count = 0;
  struct Frame {
    int v;
    std::size_t edge_pos;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    std::vector<Frame> call{{static_cast<int>(root), 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(static_cast<int>(root));
    on_stack[root] = true;
    while (!call.empty()) {
      auto& f = call.back();
      const auto v = static_cast<std::size_t>(f.v);
      const auto& outs = g.out_edges(f.v);
      if (f.edge_pos < outs.size()) {
        const auto w = static_cast<std::size_t>(g.edges()[static_cast<std::size_t>(outs[f.edge_pos++])].to);
        if (index[w] < 0) {
          index[w] = low[w] = next_index++;
          stack.push_back(static_cast<int>(w));
          on_stack[w] = true;
          call.push_back({static_cast<int>(w), 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        while (true) {
          auto w = static_cast<std::size_t>(stack.back());
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = count;
          if (w == v) break;
        }
        ++count;
      }
      call.pop_back();
      if (!call.empty()) {
        auto u = static_cast<std::size_t>(call.back().v);
        low[u] = std::min(low[u], low[v]);
      }
    }
  }
  return comp;
}

}  // namespace

CondensationDAG scc_condense(const HorseshoeGraph& g, const CondenseOptions& options) {
  int count = 0;
  auto comp = tarjan(g, count);
  const auto nc = static_cast<std::size_t>(count);
  std::vector<std::vector<int>> members(nc);
  for (std::size_t v = 0; v < comp.size(); ++v) members[static_cast<std::size_t>(comp[v])].push_back(static_cast<int>(v));
  std::set<std::pair<int, int>> raw_edges;
  for (const auto& e : g.edges()) {
    int a = comp[static_cast<std::size_t>(e.from)], b = comp[static_cast<std::size_t>(e.to)];
    if (a != b) raw_edges.emplace(a, b);
  }
  // Kahn's algorithm with smallest-member tie-breaking gives stable class ids.
  std::vector<int> indeg(nc, 0);
  for (auto [a, b] : raw_edges) ++indeg[static_cast<std::size_t>(b)];
  auto key = [&](int c) { return members[static_cast<std::size_t>(c)].front(); };
  auto cmp = [&](int a, int b) { return key(a) > key(b); };
  std::priority_queue<int, std::vector<int>, decltype(cmp)> ready(cmp);
  for (std::size_t c = 0; c < nc; ++c)
    if (indeg[c] == 0) ready.push(static_cast<int>(c));
  std::vector<int> renumber(nc, -1);
  int next = 0;
  while (!ready.empty()) {
    int c = ready.top();
    ready.pop();
    renumber[static_cast<std::size_t>(c)] = next++;
    for (auto [a, b] : raw_edges)
      if (a == c && --indeg[static_cast<std::size_t>(b)] == 0) ready.push(b);
  }

  CondensationDAG dag;
  dag.genus = g.genus();
  dag.vertex_class.resize(g.vertex_count());
  for (std::size_t v = 0; v < comp.size(); ++v) dag.vertex_class[v] = renumber[static_cast<std::size_t>(comp[v])];
  for (auto [a, b] : raw_edges) dag.edges.emplace_back(renumber[static_cast<std::size_t>(a)], renumber[static_cast<std::size_t>(b)]);
  std::sort(dag.edges.begin(), dag.edges.end());

  std::vector<std::vector<int>> ordered(nc);
  for (std::size_t c = 0; c < nc; ++c) ordered[static_cast<std::size_t>(renumber[c])] = members[c];

  std::vector<std::optional<ClassInfo>> infos(nc);
  parallel_for(nc, options.jobs, [&](std::size_t c) {
    auto cycles = simple_cycles(g, ordered[c], options.cycle_cap);
    Polytope rho = polytope_from_cycles(g.genus(), cycles);
    Subspace span = rho.linear_span();
    const bool symplectic = span.is_symplectic();
    const int genus = static_cast<int>((span.dim() + 1) / 2);
    infos[c].emplace(ClassInfo{static_cast<int>(c), ordered[c], std::move(cycles), std::move(rho), std::move(span),
                               symplectic, genus});
  });
  for (auto& info : infos) dag.classes.push_back(std::move(*info));
  return dag;
}

CondensationDAG prune_genus_zero_ends(const CondensationDAG& dag) {
  CondensationDAG out = dag;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& c : out.classes) {
      if (!c.trivial()) continue;
      bool has_in = false, has_out = false;
      for (auto [a, b] : out.edges) {
        has_in = has_in || b == c.id;
        has_out = has_out || a == c.id;
      }
      if (!has_in && !has_out) continue;
      if (has_in && has_out) continue;
      std::erase_if(out.edges, [&](const auto& e) { return e.first == c.id || e.second == c.id; });
      changed = true;
    }
  }
  return out;
}

}  // namespace rotset
