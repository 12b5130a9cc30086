// gterrain: build scalar trees, terrain meshes and correlation fields from
// edge lists, or serve them to the viewer.

#include <CLI11.hpp>

#include <chrono>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "gterrain/correlation.hpp"
#include "gterrain/error.hpp"
#include "gterrain/service.hpp"
#include "gterrain/session.hpp"

using namespace gterrain;

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitUser = 2;

std::optional<TreeKind> parse_kind(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "vertex") return TreeKind::vertex;
  if (s == "edge") return TreeKind::edge;
  throw Error(ErrorKind::invalid_argument, "kind must be 'vertex' or 'edge'");
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot write '" + path + "'");
  return out;
}

std::string env_or(const char* name, std::string fallback) {
  const char* v = std::getenv(name);
  return v && *v ? std::string(v) : fallback;
}

struct BuildArgs {
  std::string graph, scalar = "kcore", kind, out = "tree.json", id_map;
  std::size_t bins = 0;
};

int cmd_build(const BuildArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  Graph graph = load_edge_list(a.graph);
  const auto kind = parse_kind(a.kind).value_or(
      builtin_domain(a.scalar) == FieldDomain::edge ? TreeKind::edge : TreeKind::vertex);
  NamedField field = resolve_field(graph, a.scalar, kind == TreeKind::vertex ? FieldDomain::vertex : FieldDomain::edge);
  const auto t1 = std::chrono::steady_clock::now();

  ScalarTree tree = build_super_tree(graph, kind, field.values,
                                     a.bins ? std::optional<std::size_t>(a.bins) : std::nullopt);
  const auto t2 = std::chrono::steady_clock::now();

  write_tree_file(a.out, tree, ElementLabels::of(kind, graph));
  if (!a.id_map.empty()) {
    auto out = open_out(a.id_map);
    write_id_map(out, graph);
  }
  const auto t3 = std::chrono::steady_clock::now();

  using secs = std::chrono::duration<double>;
  std::cout << "vertices: " << graph.vertex_count() << "\n"
            << "edges: " << graph.edge_count() << "\n"
            << "kind: " << to_string(kind) << "\n"
            << "scalar: " << field.name << "\n"
            << "nodes: " << tree.size() << "\n"
            << "build_seconds: " << secs(t2 - t1).count() << "\n"
            << "io_seconds: " << secs((t1 - t0) + (t3 - t2)).count() << "\n";
  return 0;
}

struct MeshArgs {
  std::string tree, color_by = "self", graph, out = "mesh.json", obj;
  bool treemap = false;
};

int cmd_mesh(const MeshArgs& a) {
  TreeDocument doc = read_tree_file(a.tree);
  std::vector<double> color_values;
  if (a.color_by.rfind("file:", 0) == 0) {
    color_values = read_values_for_labels(a.color_by.substr(5), doc.labels);
  } else if (a.color_by != "self") {
    if (a.graph.empty())
      throw Error(ErrorKind::invalid_argument, "--color-by " + a.color_by + " needs --graph to compute the field");
    Graph graph = load_edge_list(a.graph);
    const ElementLabels expect = ElementLabels::of(doc.labels.kind, graph);
    if (expect.first != doc.labels.first || expect.second != doc.labels.second)
      throw Error(ErrorKind::size_mismatch, "graph elements do not match the tree's elements");
    const auto domain = doc.labels.kind == TreeKind::vertex ? FieldDomain::vertex : FieldDomain::edge;
    color_values = resolve_field(graph, a.color_by, domain).values;
  }

  const Layout2D layout = layout_2d(doc.tree);
  MeshOptions options;
  options.treemap = a.treemap;
  const TerrainMesh mesh = build_mesh(doc.tree, layout, color_values, options);
  write_mesh_file(a.out, mesh);
  if (!a.obj.empty()) write_obj_file(a.obj, mesh);

  std::cout << "boundaries: " << mesh.boundaries.size() << "\n"
            << "vertices: " << mesh.vertices.size() << "\n"
            << "triangles: " << mesh.triangles.size() << "\n";
  return 0;
}

struct CorrArgs {
  std::string graph, field_a = "degree", field_b = "betweenness", out = "lci.txt", outlier_out;
  int hops = 1;
};

int cmd_corr(const CorrArgs& a) {
  Graph graph = load_edge_list(a.graph);
  const NamedField fa = resolve_field(graph, a.field_a, FieldDomain::vertex);
  const NamedField fb = resolve_field(graph, a.field_b, FieldDomain::vertex);
  const CorrelationField c = correlate(graph, fa.name, fa.values, fb.name, fb.values, a.hops);
  {
    auto out = open_out(a.out);
    write_vertex_scalars(out, graph, c.lci);
  }
  if (!a.outlier_out.empty()) {
    auto out = open_out(a.outlier_out);
    write_vertex_scalars(out, graph, c.outlier);
  }
  std::cout << "gci: " << c.gci << "\n" << "zero_variance: " << c.zero_variance << "\n";
  if (c.zero_variance > 0)
    std::cerr << "warning: " << c.zero_variance << " vertices have a constant field on their neighborhood; lci set to 0\n";
  return 0;
}

struct MeasureArgs {
  std::string graph, field = "kcore", out;
};

int cmd_measure(const MeasureArgs& a) {
  Graph graph = load_edge_list(a.graph);
  const auto domain = builtin_domain(a.field);
  if (!domain) throw Error(ErrorKind::invalid_argument, "unknown measure '" + a.field + "'");
  const NamedField f = resolve_field(graph, a.field, *domain);
  auto out = open_out(a.out.empty() ? a.field + ".txt" : a.out);
  if (*domain == FieldDomain::vertex)
    write_vertex_scalars(out, graph, f.values);
  else
    write_edge_scalars(out, graph, f.values);
  return 0;
}

struct ServeArgs {
  SessionConfig session;
  std::string kind, host = "127.0.0.1";
  std::size_t bins = 0;
  int port = 0;
};

Service* g_service = nullptr;

int cmd_serve(ServeArgs a) {
  a.session.kind = parse_kind(a.kind);
  if (a.bins) a.session.bins = a.bins;
  if (a.session.data_dir.empty()) a.session.data_dir = env_or("DATA_DIR", "");
  if (a.port == 0) a.port = std::stoi(env_or("PORT", "8080"));

  const Session session = Session::build(a.session);
  Service service(session);
  g_service = &service;
  std::signal(SIGINT, [](int) {
    if (g_service) g_service->stop();
  });
  std::signal(SIGTERM, [](int) {
    if (g_service) g_service->stop();
  });
  std::cout << "nodes: " << session.tree().size() << "\n"
            << "build_seconds: " << session.timing().tree_seconds << "\n"
            << "listening: http://" << a.host << ":" << a.port << "\n"
            << std::flush;
  if (!service.listen(a.host, a.port)) throw Error(ErrorKind::io, "cannot listen on port " + std::to_string(a.port));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scalar trees and terrain metaphors for graphs"};
  app.require_subcommand(1);

  BuildArgs build;
  auto* b = app.add_subcommand("build", "Build a super tree from an edge list and a scalar field");
  b->add_option("--graph", build.graph, "Edge list")->required();
  b->add_option("--scalar", build.scalar, "kcore|ktruss|degree|betweenness|betweenness-normalized|file:PATH")
      ->capture_default_str();
  b->add_option("--kind", build.kind, "vertex|edge (default: implied by the scalar)");
  b->add_option("--bins", build.bins, "Simplify into this many uniform bins");
  b->add_option("--out", build.out, "Tree document")->capture_default_str();
  b->add_option("--id-map", build.id_map, "Also write the dense-to-original id map");

  MeshArgs mesh;
  auto* m = app.add_subcommand("mesh", "Lay out a tree and write its terrain mesh");
  m->add_option("--tree", mesh.tree, "Tree document")->required();
  m->add_option("--color-by", mesh.color_by, "self|file:PATH|<measure> (measures need --graph)")
      ->capture_default_str();
  m->add_option("--graph", mesh.graph, "Edge list used for --color-by measures");
  m->add_flag("--treemap", mesh.treemap, "Flat 2D treemap instead of a terrain");
  m->add_option("--out", mesh.out, "Mesh document")->capture_default_str();
  m->add_option("--obj", mesh.obj, "Also write a Wavefront OBJ");

  CorrArgs corr;
  auto* c = app.add_subcommand("corr", "Local and global correlation of two vertex fields");
  c->add_option("--graph", corr.graph, "Edge list")->required();
  c->add_option("--field-a", corr.field_a)->capture_default_str();
  c->add_option("--field-b", corr.field_b)->capture_default_str();
  c->add_option("--hops", corr.hops, "Neighborhood radius")->capture_default_str()->check(CLI::PositiveNumber);
  c->add_option("--out", corr.out, "Per-vertex local correlation")->capture_default_str();
  c->add_option("--outlier-out", corr.outlier_out, "Per-vertex outlier score");

  MeasureArgs measure;
  auto* ms = app.add_subcommand("measure", "Write a graph measure as a scalar file");
  ms->add_option("--graph", measure.graph, "Edge list")->required();
  ms->add_option("--field", measure.field, "degree|kcore|ktruss|betweenness|betweenness-normalized")
      ->capture_default_str();
  ms->add_option("--out", measure.out, "Output file (default: <field>.txt)");

  ServeArgs serve;
  auto* s = app.add_subcommand("serve", "Serve a session over HTTP for the viewer");
  s->add_option("--graph", serve.session.graph_path, "Edge list")->required();
  s->add_option("--scalar", serve.session.scalar)->capture_default_str();
  s->add_option("--kind", serve.kind, "vertex|edge");
  s->add_option("--bins", serve.bins);
  s->add_option("--color-by", serve.session.color_by)->capture_default_str();
  s->add_option("--field", serve.session.extra_fields, "Extra coloring field (repeatable)");
  s->add_option("--data-dir", serve.session.data_dir, "Base directory for relative paths (env DATA_DIR)");
  s->add_option("--host", serve.host)->capture_default_str();
  s->add_option("--port", serve.port, "Port (env PORT, default 8080)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUser;
  }

  try {
    if (*b) return cmd_build(build);
    if (*m) return cmd_mesh(mesh);
    if (*c) return cmd_corr(corr);
    if (*ms) return cmd_measure(measure);
    if (*s) return cmd_serve(serve);
  } catch (const Error& e) {
    std::cerr << "error [" << error_token(e.kind()) << "]: " << e.what() << "\n";
    return kExitUser;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
