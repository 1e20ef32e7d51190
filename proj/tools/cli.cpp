#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "rotset/rotset.hpp"
#include "svg.hpp"

namespace rotset::cli {

namespace {

struct Common {
  std::string input = "-";
  std::string output = "-";
  std::uint64_t seed = 0;
  std::string format = "json";
  unsigned jobs = 0;
  std::string svg;
  std::string svg_output = "rotset.svg";
};

void add_io(CLI::App* cmd, Common& c, bool with_input = true) {
  if (with_input) cmd->add_option("--input", c.input, "graph JSON file, - for stdin");
  cmd->add_option("--output", c.output, "output file, - for stdout");
  cmd->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--jobs", c.jobs, "worker threads (default: logical cores)");
}

void add_svg(CLI::App* cmd, Common& c) {
  cmd->add_option("--svg", c.svg, "render the projection on coordinates X,Y (1-based)");
  cmd->add_option("--svg-output", c.svg_output, "SVG file path");
}

HorseshoeGraph read_graph(const std::string& path, std::istream& in) {
  if (path == "-") {
    std::stringstream ss;
    ss << in.rdbuf();
    return HorseshoeGraph::parse(ss.str());
  }
  return HorseshoeGraph::load(path);
}

ojson read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot open " + path, {{"path", path}});
  try {
    return ojson::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(path + ": " + e.what(), {{"path", path}});
  }
}

void emit(const Common& c, std::ostream& out, const std::string& text) {
  if (c.output == "-") {
    out << text;
    return;
  }
  std::ofstream f(c.output, std::ios::binary);
  if (!f) throw ValidationError("cannot write " + c.output, {{"path", c.output}});
  f << text;
}

unsigned jobs_of(const Common& c) { return c.jobs ? c.jobs : default_jobs(); }

std::pair<std::size_t, std::size_t> svg_axes(const std::string& spec, int genus) {
  auto comma = spec.find(',');
  if (comma == std::string::npos) throw ValidationError("--svg expects X,Y");
  int x = 0, y = 0;
  try {
    x = std::stoi(spec.substr(0, comma));
    y = std::stoi(spec.substr(comma + 1));
  } catch (const std::exception&) {
    throw ValidationError("--svg expects two integers X,Y");
  }
  if (x < 1 || y < 1 || x > 2 * genus || y > 2 * genus)
    throw ValidationError("--svg axes must lie in 1.." + std::to_string(2 * genus));
  return {static_cast<std::size_t>(x - 1), static_cast<std::size_t>(y - 1)};
}

void write_svg(const Common& c, const PolytopeUnion& u, int genus, const std::vector<std::vector<double>>& avg = {}) {
  if (c.svg.empty()) return;
  auto [x, y] = svg_axes(c.svg, genus);
  std::ofstream f(c.svg_output, std::ios::binary);
  if (!f) throw ValidationError("cannot write " + c.svg_output, {{"path", c.svg_output}});
  f << render_svg(u, x, y, avg);
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

int exit_code(ErrorKind k) { return k == ErrorKind::inconsistency ? 3 : 2; }

std::string kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::validation: return "validation";
    case ErrorKind::inconsistency: return "inconsistency";
    case ErrorKind::limit: return "limit";
  }
  return "unknown";
}

int start_vertex(const HorseshoeGraph& g, const std::string& name) {
  if (g.vertex_count() == 0) throw ValidationError("graph has no vertices");
  return name.empty() ? 0 : g.vertex_index(name);
}

std::vector<std::vector<double>> averages_of(const WalkTrace& w, std::size_t lo) {
  std::vector<std::vector<double>> out;
  const std::size_t n = w.steps();
  const std::size_t stride = std::max<std::size_t>(1, (n - std::min(n, lo)) / 2000);
  for (std::size_t k = std::max<std::size_t>(lo, 1); k <= n; k += stride) out.push_back(w.average_approx(k));
  return out;
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rotation sets of graphs of rotational horseshoes"};
  app.require_subcommand(1);
  Common c;

  auto* validate = app.add_subcommand("validate", "check a graph file");
  add_io(validate, c);

  auto* analyze = app.add_subcommand("analyze", "structure report: classes, pieces, bound, classification");
  add_io(analyze, c);
  add_svg(analyze, c);

  auto* rotset_cmd = app.add_subcommand("rotset", "rotation set pieces and their vertices");
  add_io(rotset_cmd, c);
  add_svg(rotset_cmd, c);

  int genus = 0;
  auto* bound = app.add_subcommand("bound", "max{n + pq : n + p + q = g} with the brute-force table");
  add_io(bound, c, false);
  bound->add_option("--genus", genus, "genus g >= 0")->required();

  std::string family;
  int chain = 4;
  bool limit = false;
  std::optional<std::uint64_t> bridge_seed;
  auto* gen = app.add_subcommand("gen", "write an example graph");
  add_io(gen, c, false);
  gen->add_option("--family", family, "sharp, recurrent, figtree, figexample11, semicontinuity")->required();
  gen->add_option("--genus", genus, "genus for sharp and recurrent");
  gen->add_option("--chain", chain, "chain length for semicontinuity");
  gen->add_flag("--limit", limit, "semicontinuity: emit the limit graph");
  gen->add_option("--bridge-seed", bridge_seed, "random {-1,0,1} bridge displacements");

  std::size_t steps = 10000;
  std::string start;
  auto* simulate_cmd = app.add_subcommand("simulate", "uniform random walk with its deviation trace");
  add_io(simulate_cmd, c);
  add_svg(simulate_cmd, c);
  simulate_cmd->add_option("--steps", steps, "number of edges N");
  simulate_cmd->add_option("--seed", c.seed, "64-bit seed");
  simulate_cmd->add_option("--start", start, "start vertex id (default: first vertex)");

  std::string target_path;
  auto* realize_cmd = app.add_subcommand("realize", "steer averages along a target polyline");
  add_io(realize_cmd, c);
  add_svg(realize_cmd, c);
  realize_cmd->add_option("--target", target_path, "target JSON")->required();

  auto* certify = app.add_subcommand("certify", "midpoint lower-bound certificate for the convex cover number");
  add_io(certify, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    ojson j;
    j["error"] = "usage";
    j["message"] = e.what();
    err << j.dump() << "\n";
    return 2;
  }

  try {
    if (validate->parsed()) {
      auto g = read_graph(c.input, in);
      ojson j;
      j["valid"] = true;
      j["genus"] = g.genus();
      j["vertices"] = g.vertex_count();
      j["edges"] = g.edges().size();
      emit(c, out, dump(j));
    } else if (analyze->parsed() || rotset_cmd->parsed() || certify->parsed()) {
      auto g = read_graph(c.input, in);
      CondenseOptions opts;
      opts.jobs = jobs_of(c);
      auto dag = scc_condense(g, opts);
      if (analyze->parsed()) {
        auto report = classify(dag);
        if (c.format == "csv") {
          std::ostringstream os;
          os << "class,members,genus,dimension,vertex_count\n";
          for (const auto& cl : dag.classes) {
            os << cl.id << ',';
            for (std::size_t k = 0; k < cl.members.size(); ++k)
              os << (k ? ";" : "") << g.vertex_names()[static_cast<std::size_t>(cl.members[k])];
            os << ',' << cl.genus << ',' << cl.rho.dimension() << ',' << cl.rho.vertices().size() << '\n';
          }
          emit(c, out, os.str());
        } else {
          emit(c, out, dump(analyze_report(g, dag, report)));
        }
        write_svg(c, report.rotation_set, g.genus());
      } else if (rotset_cmd->parsed()) {
        auto u = rotation_set(dag);
        if (c.format == "csv") {
          std::ostringstream os;
          os << "piece,tag";
          for (int i = 1; i <= 2 * g.genus(); ++i) os << ",x_" << i;
          os << '\n';
          for (std::size_t p = 0; p < u.size(); ++p)
            for (const auto& v : u.pieces()[p].polytope.vertices()) {
              os << p << ',' << u.pieces()[p].tag;
              for (const auto& x : v.coords()) os << ',' << to_string(x);
              os << '\n';
            }
          emit(c, out, os.str());
        } else {
          emit(c, out, dump(rotset_report(u)));
        }
        write_svg(c, u, g.genus());
      } else {
        auto u = rotation_set(dag);
        ojson j;
        j["schema"] = kReportSchema;
        j["piece_count"] = u.size();
        j["certificate"] = to_json(cover_lower_bound_certificate(u));
        emit(c, out, dump(j));
      }
    } else if (bound->parsed()) {
      auto b = genus_bound(genus);
      if (c.format == "csv") {
        std::ostringstream os;
        os << "n,p,q,value\n";
        for (const auto& t : b.table) os << t.n << ',' << t.p << ',' << t.q << ',' << t.value << '\n';
        emit(c, out, os.str());
      } else {
        emit(c, out, dump(to_json(b)));
      }
    } else if (gen->parsed()) {
      ExampleOptions opts;
      opts.bridge_seed = bridge_seed;
      const bool semi = family == "semicontinuity" || family == "counterexample_semicontinuity";
      emit(c, out, generate(family, semi ? chain : genus, limit, opts).to_json());
    } else if (simulate_cmd->parsed()) {
      auto g = read_graph(c.input, in);
      CondenseOptions opts;
      opts.jobs = jobs_of(c);
      auto dag = scc_condense(g, opts);
      auto u = rotation_set(dag);
      auto norm = default_norm(dag);
      auto w = simulate(g, start_vertex(g, start), Policy::uniform(), steps, c.seed);
      DeviationEngine engine(u, norm);
      auto d = engine.trace(w);
      if (c.format == "csv") {
        std::ostringstream os;
        write_trace_csv(os, w, d);
        emit(c, out, os.str());
      } else {
        auto p = engine.plateau(d, w, w.steps() / 2);
        auto cm = engine.exact_max(d, w, 1, w.steps(), true);
        ojson j;
        j["schema"] = kReportSchema;
        j["steps"] = w.steps();
        j["truncated"] = w.truncated;
        if (w.truncated) j["dead_end"] = g.vertex_names()[static_cast<std::size_t>(w.dead_end)];
        j["seed"] = c.seed;
        j["norm"] = norm.tag();
        j["max_union"] = to_string(p.full.value);
        j["argmax_union"] = p.full.argmax;
        j["max_union_first_half"] = to_string(p.first_half.value);
        j["plateau"] = p.plateau;
        j["max_conv"] = to_string(cm.value);
        j["conv_le_union"] = p.conv_le_union;
        if (w.steps() > 0) j["final_average"] = to_json(w.average(w.steps()));
        emit(c, out, dump(j));
      }
      write_svg(c, u, g.genus(), averages_of(w, 1));
    } else if (realize_cmd->parsed()) {
      auto g = read_graph(c.input, in);
      CondenseOptions opts;
      opts.jobs = jobs_of(c);
      auto dag = scc_condense(g, opts);
      auto spec = read_json(target_path);
      RealizeTarget target;
      if (spec.contains("class"))
        target.class_id = spec["class"].get<int>();
      else if (spec.contains("vertex"))
        target.class_id = dag.vertex_class[static_cast<std::size_t>(g.vertex_index(spec["vertex"].get<std::string>()))];
      else
        throw ValidationError("target needs \"class\" or \"vertex\"");
      if (!spec.contains("points") || !spec["points"].is_array()) throw ValidationError("target needs \"points\"");
      for (const auto& p : spec["points"]) target.points.push_back(vector_from_json(p, g.genus()));
      if (spec.contains("margin")) target.margin = parse_rational(spec["margin"].get<std::string>());
      if (spec.contains("horizon")) target.horizon = spec["horizon"].get<std::size_t>();
      if (spec.contains("epsilon")) target.epsilon = parse_rational(spec["epsilon"].get<std::string>());
      auto report = realize(g, dag, target);
      if (c.format == "csv") {
        std::ostringstream os;
        DeviationTrace none;
        none.d_union.assign(report.trace.steps() + 1, 0.0);
        none.d_conv = none.d_union;
        write_trace_csv(os, report.trace, none);
        emit(c, out, os.str());
      } else {
        ojson j;
        j["schema"] = kReportSchema;
        j["class"] = target.class_id;
        j["horizon"] = target.horizon;
        j["hausdorff"] = report.hausdorff;
        j["hausdorff_trace_to_target"] = report.hausdorff_trace_to_target;
        j["hausdorff_target_to_trace"] = report.hausdorff_target_to_trace;
        j["resteers"] = report.resteers;
        j["leg_switches"] = report.leg_switches;
        ojson weights = ojson::array();
        for (const auto& wts : report.weights) {
          ojson row = ojson::array();
          for (const auto& x : wts) row.push_back(to_string(x));
          weights.push_back(std::move(row));
        }
        j["weights"] = std::move(weights);
        j["final_average"] = to_json(report.trace.average(report.trace.steps()));
        emit(c, out, dump(j));
      }
      PolytopeUnion target_piece = reduce_union({Piece{dag.classes[static_cast<std::size_t>(target.class_id)].rho,
                                                       {target.class_id}, "C" + std::to_string(target.class_id)}});
      write_svg(c, target_piece, g.genus(), averages_of(report.trace, report.trace.steps() / 2));
    }
  } catch (const Error& e) {
    ojson j;
    j["error"] = kind_name(e.kind());
    j["message"] = e.what();
    j["details"] = e.details();
    err << j.dump() << "\n";
    return exit_code(e.kind());
  } catch (const nlohmann::json::exception& e) {
    ojson j;
    j["error"] = "validation";
    j["message"] = e.what();
    err << j.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    ojson j;
    j["error"] = "inconsistency";
    j["message"] = e.what();
    err << j.dump() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace rotset::cli
