#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "gterrain/graph.hpp"
#include "gterrain/scalar_tree.hpp"

namespace gterrain {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct Rect {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;

  double width() const noexcept { return x1 - x0; }
  double height() const noexcept { return y1 - y0; }
  double area() const noexcept { return width() * height(); }
  Point2 center() const noexcept { return {(x0 + x1) / 2, (y0 + y1) / 2}; }
  bool strictly_contains(const Rect& r) const noexcept { return r.x0 > x0 && r.y0 > y0 && r.x1 < x1 && r.y1 < y1; }
  bool overlaps(const Rect& r) const noexcept { return r.x0 < x1 && x0 < r.x1 && r.y0 < y1 && y0 < r.y1; }
  /// Corners counter-clockwise from (x0, y0).
  std::array<Point2, 4> loop() const noexcept { return {{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}}; }
};

struct LayoutOptions {
  double root_side = 100.0;
  /// Floor area of leaf boundaries as a fraction of the root area; clamped
  /// to half the per-descendant area so that siblings always fit.
  double leaf_area_fraction = 0.001;
};

/// Nested rectangles, one per tree node. A forest gets an extra synthetic
/// base node (index tree.size()) that holds every root.
///
/// A node with d descendants gets area d * unit_area, leaves get leaf_area.
/// Children sit in disjoint cells of an inner rectangle, each strictly
/// inside its parent.
struct Layout2D {
  std::size_t tree_nodes = 0;
  bool synthetic_root = false;
  NodeId root = kNoNode;
  double unit_area = 0.0;
  double leaf_area = 0.0;

  std::vector<Rect> rect;                   // per layout node
  std::vector<Rect> inner;                  // area reserved for children (== rect for leaves)
  std::vector<Rect> cell;                   // slot inside the parent's inner rect (root: its rect)
  std::vector<NodeId> parent;               // layout parents, kNoNode at the root
  std::vector<std::vector<NodeId>> children;  // descending subtree size, then ascending id
  std::vector<std::size_t> descendants;

  std::size_t size() const noexcept { return rect.size(); }
  bool is_synthetic(NodeId n) const noexcept { return synthetic_root && n == tree_nodes; }
};

Layout2D layout_2d(const ScalarTree& tree, const LayoutOptions& options = {});

enum class ColorClass : std::uint8_t { red = 0, yellow = 1, green = 2, blue = 3 };

const char* to_string(ColorClass c) noexcept;

/// Color classes by quartiles: above the upper quartile is red, above the
/// median yellow, above the lower quartile green, the rest blue.
struct ColorAssignment {
  std::array<double, 3> thresholds{};  // lower quartile, median, upper quartile
  std::vector<ColorClass> classes;     // per layout node
};

/// Per-node coloring values: the node height when `element_values` is empty,
/// otherwise the mean over the node's members.
std::vector<double> node_color_values(const ScalarTree& tree, std::span<const double> element_values);

ColorAssignment assign_colors(const Layout2D& layout, std::span<const double> node_values);

struct MeshOptions {
  /// Flat 2D treemap: every boundary at height 0 and no walls.
  bool treemap = false;
};

struct TerrainMesh {
  struct Boundary {
    NodeId node = kNoNode;
    bool synthetic = false;
    double height = 0.0;
    Rect rect;
    ColorClass color = ColorClass::blue;
  };
  struct Wall {
    NodeId inner = kNoNode;
    NodeId outer = kNoNode;
    double bottom = 0.0;
    double top = 0.0;
    ColorClass color = ColorClass::blue;
  };

  bool treemap = false;
  std::vector<Boundary> boundaries;  // indexed by layout node
  std::vector<Wall> walls;           // one per non-root layout node; none for treemaps
  std::array<double, 3> thresholds{};
  double base_height = 0.0;          // bottom of the skirt under the root

  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;
  std::vector<NodeId> triangle_node;  // layout node owning each triangle

  std::array<double, 3> bounds_min{};
  std::array<double, 3> bounds_max{};
};

/// Lifts every boundary to its node height (the synthetic base sits below
/// the lowest root), joins each boundary to its parent with a vertical wall
/// and triangulates plateaus into a closed surface.
TerrainMesh build_mesh(const ScalarTree& tree, const Layout2D& layout, std::span<const double> color_values = {},
                       const MeshOptions& options = {});

struct Peak {
  NodeId node = kNoNode;
  double alpha = 0.0;  // boundary height
  double area = 0.0;   // enclosed layout area
  std::vector<std::uint32_t> members;
};

/// One peak per component of the cut at alpha.
std::vector<Peak> peaks_at(const ScalarTree& tree, const TerrainMesh& mesh, double alpha);

/// Peak whose base is the boundary of `node`; the synthetic base holds everything.
Peak pick(const ScalarTree& tree, const TerrainMesh& mesh, NodeId node);

nlohmann::json mesh_to_json(const TerrainMesh& mesh);
void write_mesh_file(const std::string& path, const TerrainMesh& mesh);
/// Wavefront OBJ (vertices and triangles).
void write_obj_file(const std::string& path, const TerrainMesh& mesh);

struct ForceLayoutOptions {
  std::uint64_t seed = 42;
  int iterations = 300;
  std::size_t vertex_cap = 5000;
};

/// Seeded Fruchterman-Reingold layout of the subgraph induced by `vertices`
/// (dense ids). Natural edge length is 1. Positions follow `vertices` order.
std::vector<Point2> force_layout_2d(const Graph& graph, std::span<const VertexId> vertices,
                                    const ForceLayoutOptions& options = {});

}  // namespace gterrain
