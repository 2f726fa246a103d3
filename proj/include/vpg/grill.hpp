#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vpg/graph.hpp"
#include "vpg/rep.hpp"

namespace vpg {

// Two partial horizontal grid lines spanning the westmost cell column,
// creating a boundary-adjacent anchor cell between them.
struct GridWindow {
  Rational ya, yb;  // ya < yb; lines run from xs[0] to xs[1]
};

// Partial grid line whose endpoints lie on full lines of the perpendicular
// family; ends meeting a crossing line form T-junctions. Repairs insert these
// to split individual cells without disturbing the rest of the grid.
struct HorizontalCut {
  Rational y;       // not equal to any ys entry
  Rational x0, x1;  // both members of xs, x0 < x1
};
struct VerticalCut {
  Rational x;
  Rational y0, y1;  // both members of ys, y0 < y1
};

// Orthogonal overlay grid: full lines at the given coordinates, plus partial
// cuts and an optional anchor window. Lines may be unevenly spaced.
struct GridOverlay {
  std::vector<Rational> xs, ys;  // ascending, each >= 2 entries
  std::vector<HorizontalCut> hcuts;
  std::vector<VerticalCut> vcuts;
  std::optional<GridWindow> window;
  Rational pitch;  // nominal pitch used at construction time
  Point offset;    // base corner offset chosen by the build
};

struct OverlayVertex {
  Point p;
  bool window_vertex = false;  // endpoint or T-junction of a window line
};

struct OverlayEdge {
  std::size_t a = 0, b = 0;  // vertex ids, a < b in sweep order
  bool horizontal = false;
};

struct OverlayFace {
  Rational x0, x1, y0, y1;  // open rectangle (x0,x1) x (y0,y1)
};

// Deterministic enumeration of the overlay's vertices, edges and faces.
struct OverlayGeometry {
  std::vector<OverlayVertex> vertices;
  std::vector<OverlayEdge> edges;
  std::vector<OverlayFace> faces;
  std::map<Point, std::size_t> vertex_of;
  Segment edge_segment(std::size_t e) const {
    return Segment(vertices[edges[e].a].p, vertices[edges[e].b].p);
  }
};

OverlayGeometry overlay_geometry(const GridOverlay& H);

struct PropertyCheck {
  bool pass = true;
  std::vector<std::string> witnesses;
};

struct OverlayReport {
  PropertyCheck p1, p2, p3, p4, p5, p6;
  bool all_pass() const {
    return p1.pass && p2.pass && p3.pass && p4.pass && p5.pass && p6.pass;
  }
  std::string first_failure() const;
};

// Grid-validity checks for an overlay over a representation:
//   1. axis-parallel grid, rectangular internal faces, empty outer face
//   2. no curve through an overlay vertex, no overlay edge through a
//      special point of the representation
//   3. at most one special point per face, no two such faces adjacent
//   4. every overlay edge crossed at most once in total
//   5. at most two curves per face; if two, they cross inside it
//   6. every curve meets every face boundary in at most two points
OverlayReport validate_overlay(const Representation& rep, const GridOverlay& H);

// One repair pass addressing current failures by inserting (or nudging) grid
// lines; returns the input unchanged when the report is clean.
GridOverlay repair_overlay(const Representation& rep, const GridOverlay& H,
                           const OverlayReport& report);

// Builds a valid overlay (pitch from min_feature_distance, seeded generic
// offsets, bounded repair passes). With an anchor, the cell containing the
// anchor curve's first endpoint is kept adjacent to the outer face via a
// window in the westmost column.
GridOverlay build_overlay(const Representation& rep,
                          const std::optional<std::string>& anchor = std::nullopt);

struct SegRole {
  enum Kind { VertexSeg, EdgeSeg, Connector } kind = EdgeSeg;
  std::size_t vertex = 0;  // VertexSeg / Connector
  int index = 0;           // VertexSeg: 1 or 2
  std::size_t edge = 0;    // EdgeSeg / Connector
};

struct SegmentArrangement {
  std::vector<std::pair<std::string, Segment>> segments;  // id -> geometry
  std::map<std::string, SegRole> roles;
  Rational mu;  // base clearance unit used for all offsets
};

// Replaces the overlay by per-vertex segment pairs, per-edge segments and
// per-incidence connectors, preserving exactly the curve/edge crossings.
SegmentArrangement segmentize(const Representation& rep, const GridOverlay& H);

struct GrillOutput {
  Graph graph;
  Representation representation;
  std::map<std::string, std::string> roles;  // added vertex -> provenance
  std::set<std::string> originalVertices;
  GridOverlay overlay;
  SegmentArrangement arrangement;
};

GrillOutput grill(const Representation& rep,
                  const std::optional<std::string>& anchor = std::nullopt);

}  // namespace vpg
