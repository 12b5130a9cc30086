#include "gterrain/terrain.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>

#include "gterrain/error.hpp"
#include "text_util.hpp"

namespace gterrain {

using nlohmann::json;

// ---------------------------------------------------------------------------
// 2D layout
// ---------------------------------------------------------------------------

namespace {

Rect scaled_about_center(const Rect& r, double factor) {
  const Point2 c = r.center();
  const double hw = r.width() / 2 * factor, hh = r.height() / 2 * factor;
  return {c.x - hw, c.y - hh, c.x + hw, c.y + hh};
}

// Guillotine partition of `area` into cells with the given weights (which
// sum to the area). Cuts go across the longer side at the weight-balanced
// split point; neighbouring cells share the exact cut coordinate.
void split_cells(const Rect& area, std::span<const NodeId> items, std::span<const double> weights,
                 std::vector<Rect>& cell_of) {
  if (items.size() == 1) {
    cell_of[items[0]] = area;
    return;
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  double prefix = 0.0;
  std::size_t split = 1;
  double best = std::numeric_limits<double>::infinity();
  double running = 0.0;
  for (std::size_t i = 1; i < items.size(); ++i) {
    running += weights[i - 1];
    const double gap = std::fabs(running - total / 2);
    if (gap < best) {
      best = gap;
      split = i;
      prefix = running;
    }
  }
  const double frac = prefix / total;
  Rect first = area, second = area;
  if (area.width() >= area.height()) {
    const double cut = area.x0 + area.width() * frac;
    first.x1 = cut;
    second.x0 = cut;
  } else {
    const double cut = area.y0 + area.height() * frac;
    first.y1 = cut;
    second.y0 = cut;
  }
  split_cells(first, items.first(split), weights.first(split), cell_of);
  split_cells(second, items.subspan(split), weights.subspan(split), cell_of);
}

}  // namespace

Layout2D layout_2d(const ScalarTree& tree, const LayoutOptions& options) {
  Layout2D layout;
  const std::size_t n = tree.size();
  layout.tree_nodes = n;
  if (n == 0) return layout;
  if (!(options.root_side > 0) || !(options.leaf_area_fraction > 0))
    throw Error(ErrorKind::invalid_argument, "layout sizes must be positive");

  layout.synthetic_root = tree.roots().size() > 1;
  const std::size_t total = n + (layout.synthetic_root ? 1 : 0);
  layout.root = layout.synthetic_root ? static_cast<NodeId>(n) : tree.roots()[0];

  layout.parent.assign(total, kNoNode);
  layout.descendants.assign(total, 0);
  layout.children.assign(total, {});
  for (NodeId v = 0; v < n; ++v) {
    layout.descendants[v] = tree.descendant_count(v);
    layout.parent[v] = tree.parent(v);
    if (tree.is_root(v) && layout.synthetic_root) layout.parent[v] = layout.root;
    if (layout.parent[v] != kNoNode) layout.children[layout.parent[v]].push_back(v);
  }
  if (layout.synthetic_root) layout.descendants[layout.root] = n;
  for (auto& ch : layout.children)
    std::sort(ch.begin(), ch.end(), [&](NodeId a, NodeId b) {
      return layout.descendants[a] != layout.descendants[b] ? layout.descendants[a] > layout.descendants[b] : a < b;
    });

  const double root_area = options.root_side * options.root_side;
  const auto root_desc = static_cast<double>(layout.descendants[layout.root]);
  layout.unit_area = root_desc > 0 ? root_area / root_desc : root_area;
  layout.leaf_area = root_desc > 0 ? std::min(options.leaf_area_fraction * root_area, 0.5 * layout.unit_area)
                                   : root_area;
  auto target = [&](NodeId v) {
    return layout.descendants[v] > 0 ? layout.unit_area * static_cast<double>(layout.descendants[v]) : layout.leaf_area;
  };

  layout.rect.assign(total, Rect{});
  layout.inner.assign(total, Rect{});
  layout.cell.assign(total, Rect{});
  const double half = options.root_side / 2;
  layout.rect[layout.root] = {-half, -half, half, half};
  layout.cell[layout.root] = layout.rect[layout.root];

  std::vector<NodeId> stack{layout.root};
  std::vector<double> weights;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    const auto& ch = layout.children[v];
    if (ch.empty()) {
      layout.inner[v] = layout.rect[v];
      continue;
    }
    // The parent's area exceeds the children's by at least half a unit per
    // child. Half of that slack pads the frame, the rest pads the cells.
    const double own = layout.rect[v].area();
    double needed = 0.0;
    for (NodeId c : ch) needed += target(c);
    const double slack = own - needed;
    layout.inner[v] = scaled_about_center(layout.rect[v], std::sqrt((own - slack / 2) / own));
    weights.clear();
    for (NodeId c : ch) weights.push_back(target(c) + slack / (2.0 * static_cast<double>(ch.size())));
    split_cells(layout.inner[v], ch, weights, layout.cell);
    for (std::size_t i = 0; i < ch.size(); ++i) {
      const NodeId c = ch[i];
      layout.rect[c] = scaled_about_center(layout.cell[c], std::sqrt(target(c) / weights[i]));
      stack.push_back(c);
    }
  }
  return layout;
}

// ---------------------------------------------------------------------------
// Colors
// ---------------------------------------------------------------------------

const char* to_string(ColorClass c) noexcept {
  switch (c) {
    case ColorClass::red: return "red";
    case ColorClass::yellow: return "yellow";
    case ColorClass::green: return "green";
    case ColorClass::blue: return "blue";
  }
  return "blue";
}

std::vector<double> node_color_values(const ScalarTree& tree, std::span<const double> element_values) {
  std::vector<double> out(tree.size());
  if (element_values.empty()) {
    std::copy(tree.scalars().begin(), tree.scalars().end(), out.begin());
    return out;
  }
  if (element_values.size() != tree.element_count())
    throw Error(ErrorKind::size_mismatch, "color field has " + std::to_string(element_values.size()) +
                                              " values, tree has " + std::to_string(tree.element_count()) +
                                              " elements");
  for (NodeId v = 0; v < tree.size(); ++v) {
    double sum = 0.0;
    for (auto e : tree.members(v)) sum += element_values[e];
    out[v] = sum / static_cast<double>(tree.members(v).size());
  }
  return out;
}

namespace {

double quantile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) return 0.0;
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

ColorAssignment assign_colors(const Layout2D& layout, std::span<const double> node_values) {
  if (node_values.size() != layout.tree_nodes)
    throw Error(ErrorKind::size_mismatch, "need one color value per tree node");
  std::vector<double> sorted(node_values.begin(), node_values.end());
  std::sort(sorted.begin(), sorted.end());
  ColorAssignment out;
  out.thresholds = {quantile(sorted, 0.25), quantile(sorted, 0.5), quantile(sorted, 0.75)};
  out.classes.assign(layout.size(), ColorClass::blue);
  for (NodeId v = 0; v < layout.tree_nodes; ++v) {
    const double x = node_values[v];
    out.classes[v] = x > out.thresholds[2]   ? ColorClass::red
                     : x > out.thresholds[1] ? ColorClass::yellow
                     : x > out.thresholds[0] ? ColorClass::green
                                             : ColorClass::blue;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Mesh
// ---------------------------------------------------------------------------

namespace {

bool on_boundary(const Rect& r, const Point2& p) {
  const bool vertical = (p.x == r.x0 || p.x == r.x1) && p.y >= r.y0 && p.y <= r.y1;
  const bool horizontal = (p.y == r.y0 || p.y == r.y1) && p.x >= r.x0 && p.x <= r.x1;
  return vertical || horizontal;
}

bool point_less(const Point2& a, const Point2& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; }
bool point_equal(const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }

void dedupe(std::vector<Point2>& pts) {
  std::sort(pts.begin(), pts.end(), point_less);
  pts.erase(std::unique(pts.begin(), pts.end(), point_equal), pts.end());
}

// Points on the boundary of r, counter-clockwise starting at (x0, y0).
std::vector<Point2> ring_ccw(const Rect& r, const std::vector<Point2>& candidates) {
  std::vector<std::pair<int, Point2>> tagged;
  for (const Point2& p : candidates) {
    if (!on_boundary(r, p)) continue;
    int side;
    if (p.y == r.y0 && p.x < r.x1)
      side = 0;
    else if (p.x == r.x1 && p.y < r.y1)
      side = 1;
    else if (p.y == r.y1 && p.x > r.x0)
      side = 2;
    else
      side = 3;
    tagged.emplace_back(side, p);
  }
  std::sort(tagged.begin(), tagged.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    switch (a.first) {
      case 0: return a.second.x < b.second.x;
      case 1: return a.second.y < b.second.y;
      case 2: return a.second.x > b.second.x;
      default: return a.second.y > b.second.y;
    }
  });
  std::vector<Point2> ring;
  ring.reserve(tagged.size());
  for (const auto& t : tagged) ring.push_back(t.second);
  return ring;
}

// Plateau of a node: its rectangle minus the children's rectangles, as
// axis-aligned pieces.
std::vector<Rect> plateau_pieces(const Layout2D& layout, NodeId v) {
  const Rect& r = layout.rect[v];
  const auto& ch = layout.children[v];
  if (ch.empty()) return {r};
  const Rect& in = layout.inner[v];
  std::vector<Rect> pieces{{r.x0, r.y0, r.x1, in.y0},
                           {r.x0, in.y1, r.x1, r.y1},
                           {r.x0, in.y0, in.x0, in.y1},
                           {in.x1, in.y0, r.x1, in.y1}};
  for (NodeId c : ch) {
    const Rect& cell = layout.cell[c];
    const Rect& cr = layout.rect[c];
    pieces.push_back({cell.x0, cell.y0, cell.x1, cr.y0});
    pieces.push_back({cell.x0, cr.y1, cell.x1, cell.y1});
    pieces.push_back({cell.x0, cr.y0, cr.x0, cr.y1});
    pieces.push_back({cr.x1, cr.y0, cell.x1, cr.y1});
  }
  return pieces;
}

class VertexRegistry {
public:
  explicit VertexRegistry(std::vector<std::array<double, 3>>& out) : out_(out) {}

  std::uint32_t at(double x, double y, double z) {
    auto [it, inserted] = index_.try_emplace({x, y, z}, static_cast<std::uint32_t>(out_.size()));
    if (inserted) out_.push_back({x, y, z});
    return it->second;
  }

private:
  std::map<std::array<double, 3>, std::uint32_t> index_;
  std::vector<std::array<double, 3>>& out_;
};

}  // namespace

TerrainMesh build_mesh(const ScalarTree& tree, const Layout2D& layout, std::span<const double> color_values,
                       const MeshOptions& options) {
  if (layout.tree_nodes != tree.size()) throw Error(ErrorKind::size_mismatch, "layout was built for another tree");
  if (!tree.is_super_tree())
    throw Error(ErrorKind::invalid_argument, "terrain needs a super tree (run postprocessing first)");

  TerrainMesh mesh;
  mesh.treemap = options.treemap;
  const std::size_t total = layout.size();
  if (total == 0) return mesh;

  const auto colors = assign_colors(layout, node_color_values(tree, color_values));
  mesh.thresholds = colors.thresholds;

  auto [lo_it, hi_it] = std::minmax_element(tree.scalars().begin(), tree.scalars().end());
  const double range = *hi_it - *lo_it;
  const double drop = range > 0 ? 0.05 * range : 1.0;

  std::vector<double> height(total, 0.0);
  if (!options.treemap) {
    for (NodeId v = 0; v < tree.size(); ++v) height[v] = tree.scalar(v);
    if (layout.synthetic_root) height[layout.root] = *lo_it - drop;
  }
  mesh.base_height = options.treemap ? 0.0 : height[layout.root] - drop;

  mesh.boundaries.resize(total);
  for (NodeId v = 0; v < total; ++v) {
    mesh.boundaries[v] = {v, layout.is_synthetic(v), height[v], layout.rect[v], colors.classes[v]};
    if (layout.parent[v] != kNoNode && !options.treemap)
      mesh.walls.push_back({v, layout.parent[v], height[layout.parent[v]], height[v], colors.classes[v]});
  }

  // Corners of every plateau piece, then the ring of mesh points along each
  // boundary: corners from the pieces on both sides of it. Walls and both
  // adjacent plateaus use exactly that ring, which keeps the surface closed.
  std::vector<std::vector<Rect>> pieces(total);
  std::vector<std::vector<Point2>> corners(total);
  for (NodeId v = 0; v < total; ++v) {
    pieces[v] = plateau_pieces(layout, v);
    for (const Rect& p : pieces[v])
      for (const Point2& c : p.loop()) corners[v].push_back(c);
    dedupe(corners[v]);
  }
  std::vector<std::vector<Point2>> ring(total);
  for (NodeId v = 0; v < total; ++v) {
    std::vector<Point2> candidates = corners[v];
    if (layout.parent[v] != kNoNode)
      candidates.insert(candidates.end(), corners[layout.parent[v]].begin(), corners[layout.parent[v]].end());
    dedupe(candidates);
    ring[v] = ring_ccw(layout.rect[v], candidates);
  }

  VertexRegistry registry(mesh.vertices);
  auto emit = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c, NodeId owner) {
    mesh.triangles.push_back({a, b, c});
    mesh.triangle_node.push_back(owner);
  };

  for (NodeId v = 0; v < total; ++v) {
    const double z = height[v];
    std::vector<Point2> level = corners[v];
    level.insert(level.end(), ring[v].begin(), ring[v].end());
    for (NodeId c : layout.children[v]) level.insert(level.end(), ring[c].begin(), ring[c].end());
    dedupe(level);

    for (const Rect& piece : pieces[v]) {
      const auto outline = ring_ccw(piece, level);
      const Point2 mid = piece.center();
      const std::uint32_t hub = static_cast<std::uint32_t>(mesh.vertices.size());
      mesh.vertices.push_back({mid.x, mid.y, z});
      for (std::size_t i = 0; i < outline.size(); ++i) {
        const Point2& a = outline[i];
        const Point2& b = outline[(i + 1) % outline.size()];
        emit(hub, registry.at(a.x, a.y, z), registry.at(b.x, b.y, z), v);
      }
    }

    if (options.treemap) continue;
    // Wall up from the parent plateau (or from the base for the root).
    const double bottom = layout.parent[v] != kNoNode ? height[layout.parent[v]] : mesh.base_height;
    const auto& loop = ring[v];
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const Point2& a = loop[i];
      const Point2& b = loop[(i + 1) % loop.size()];
      const auto ba = registry.at(a.x, a.y, bottom), bb = registry.at(b.x, b.y, bottom);
      const auto ta = registry.at(a.x, a.y, z), tb = registry.at(b.x, b.y, z);
      emit(ba, bb, tb, v);
      emit(ba, tb, ta, v);
    }
  }

  if (!options.treemap) {
    // Floor under the root closes the surface.
    const NodeId root = layout.root;
    const Point2 mid = layout.rect[root].center();
    const std::uint32_t hub = static_cast<std::uint32_t>(mesh.vertices.size());
    mesh.vertices.push_back({mid.x, mid.y, mesh.base_height});
    const auto& loop = ring[root];
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const Point2& a = loop[i];
      const Point2& b = loop[(i + 1) % loop.size()];
      emit(hub, registry.at(b.x, b.y, mesh.base_height), registry.at(a.x, a.y, mesh.base_height), root);
    }
  }

  mesh.bounds_min = mesh.bounds_max = mesh.vertices.front();
  for (const auto& p : mesh.vertices)
    for (int k = 0; k < 3; ++k) {
      mesh.bounds_min[k] = std::min(mesh.bounds_min[k], p[k]);
      mesh.bounds_max[k] = std::max(mesh.bounds_max[k], p[k]);
    }
  return mesh;
}

// ---------------------------------------------------------------------------
// Queries
// ---------------------------------------------------------------------------

std::vector<Peak> peaks_at(const ScalarTree& tree, const TerrainMesh& mesh, double alpha) {
  std::vector<Peak> peaks;
  for (auto& comp : cut_at_alpha(tree, alpha).components) {
    const auto& b = mesh.boundaries.at(comp.root);
    peaks.push_back(Peak{comp.root, b.height, b.rect.area(), std::move(comp.members)});
  }
  return peaks;
}

Peak pick(const ScalarTree& tree, const TerrainMesh& mesh, NodeId node) {
  if (node >= mesh.boundaries.size())
    throw Error(ErrorKind::unknown_id, "no boundary for node " + std::to_string(node));
  const auto& b = mesh.boundaries[node];
  Peak peak{node, b.height, b.rect.area(), {}};
  if (b.synthetic) {
    peak.members.resize(tree.element_count());
    std::iota(peak.members.begin(), peak.members.end(), 0u);
  } else {
    peak.members = subtree_members(tree, node);
  }
  return peak;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

json mesh_to_json(const TerrainMesh& mesh) {
  json boundaries = json::array();
  for (const auto& b : mesh.boundaries) {
    json loop = json::array();
    for (const Point2& p : b.rect.loop()) loop.push_back({p.x, p.y});
    const Point2 c = b.rect.center();
    boundaries.push_back(json{{"node", b.node},
                              {"synthetic", b.synthetic},
                              {"height", b.height},
                              {"loop", std::move(loop)},
                              {"center", {c.x, c.y}},
                              {"area", b.rect.area()},
                              {"color", to_string(b.color)}});
  }
  json walls = json::array();
  for (const auto& w : mesh.walls)
    walls.push_back(json{{"inner", w.inner}, {"outer", w.outer}, {"bottom", w.bottom}, {"top", w.top},
                         {"color", to_string(w.color)}});
  json palette = json::array({json{{"name", "red"}, {"rgb", {220, 38, 38}}},
                              json{{"name", "yellow"}, {"rgb", {234, 179, 8}}},
                              json{{"name", "green"}, {"rgb", {22, 163, 74}}},
                              json{{"name", "blue"}, {"rgb", {37, 99, 235}}}});
  json vertices = json::array();
  for (const auto& p : mesh.vertices) vertices.push_back({p[0], p[1], p[2]});
  json triangles = json::array();
  for (const auto& t : mesh.triangles) triangles.push_back({t[0], t[1], t[2]});
  return json{{"treemap", mesh.treemap},
              {"boundaries", std::move(boundaries)},
              {"walls", std::move(walls)},
              {"palette", std::move(palette)},
              {"thresholds", mesh.thresholds},
              {"base_height", mesh.base_height},
              {"bounds", {{"min", mesh.bounds_min}, {"max", mesh.bounds_max}}},
              {"mesh", {{"vertices", std::move(vertices)},
                        {"triangles", std::move(triangles)},
                        {"triangle_node", mesh.triangle_node}}}};
}

void write_mesh_file(const std::string& path, const TerrainMesh& mesh) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::io, "cannot write '" + path + "'");
  out << mesh_to_json(mesh).dump() << '\n';
}

void write_obj_file(const std::string& path, const TerrainMesh& mesh) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::io, "cannot write '" + path + "'");
  out << "# terrain mesh: " << mesh.vertices.size() << " vertices, " << mesh.triangles.size() << " triangles\n";
  for (const auto& p : mesh.vertices)
    out << "v " << detail::format_double(p[0]) << ' ' << detail::format_double(p[1]) << ' '
        << detail::format_double(p[2]) << '\n';
  for (const auto& t : mesh.triangles) out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
}

// ---------------------------------------------------------------------------
// Force layout
// ---------------------------------------------------------------------------

namespace {

// splitmix64; fixed across platforms, unlike std:: distributions.
class SplitMix {
public:
  explicit SplitMix(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
  std::uint64_t state_;
};

}  // namespace

std::vector<Point2> force_layout_2d(const Graph& graph, std::span<const VertexId> vertices,
                                    const ForceLayoutOptions& options) {
  const std::size_t n = vertices.size();
  if (n > options.vertex_cap)
    throw Error(ErrorKind::cap_exceeded, "layout limited to " + std::to_string(options.vertex_cap) + " vertices");
  std::vector<std::uint32_t> local(graph.vertex_count(), std::numeric_limits<std::uint32_t>::max());
  for (std::uint32_t i = 0; i < n; ++i) {
    const VertexId v = vertices[i];
    if (!graph.valid_vertex(v)) throw Error(ErrorKind::unknown_id, "vertex " + std::to_string(v) + " out of range");
    if (local[v] != std::numeric_limits<std::uint32_t>::max())
      throw Error(ErrorKind::duplicate_definition, "vertex listed twice in layout request");
    local[v] = i;
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> links;
  for (std::uint32_t i = 0; i < n; ++i)
    for (VertexId u : graph.neighbors(vertices[i]))
      if (local[u] != std::numeric_limits<std::uint32_t>::max() && local[u] > i) links.emplace_back(i, local[u]);

  SplitMix rng(options.seed);
  const double spread = std::sqrt(static_cast<double>(std::max<std::size_t>(n, 1)));
  std::vector<Point2> pos(n);
  for (auto& p : pos) p = {(rng.uniform() * 2 - 1) * spread, (rng.uniform() * 2 - 1) * spread};

  const double k = 1.0;  // natural edge length
  const double t0 = std::max(1.0, 0.5 * spread);
  std::vector<Point2> disp(n);
  for (int iter = 0; iter < options.iterations; ++iter) {
    std::fill(disp.begin(), disp.end(), Point2{});
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        double dx = pos[i].x - pos[j].x, dy = pos[i].y - pos[j].y;
        double d = std::hypot(dx, dy);
        if (d < 1e-9) {
          dx = 1e-9 * static_cast<double>(j - i);
          dy = 0;
          d = std::fabs(dx);
        }
        const double f = k * k / d;
        disp[i].x += dx / d * f;
        disp[i].y += dy / d * f;
        disp[j].x -= dx / d * f;
        disp[j].y -= dy / d * f;
      }
    for (auto [i, j] : links) {
      const double dx = pos[i].x - pos[j].x, dy = pos[i].y - pos[j].y;
      const double d = std::max(std::hypot(dx, dy), 1e-9);
      const double f = d * d / k;
      disp[i].x -= dx / d * f;
      disp[i].y -= dy / d * f;
      disp[j].x += dx / d * f;
      disp[j].y += dy / d * f;
    }
    const double temp = t0 * (1.0 - static_cast<double>(iter) / options.iterations) + 1e-3;
    for (std::size_t i = 0; i < n; ++i) {
      const double len = std::hypot(disp[i].x, disp[i].y);
      if (len < 1e-12) continue;
      const double step = std::min(len, temp);
      pos[i].x += disp[i].x / len * step;
      pos[i].y += disp[i].y / len * step;
    }
  }
  return pos;
}

}  // namespace gterrain
