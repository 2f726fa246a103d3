#pragma once

#include <set>
#include <string>
#include <vector>

#include "vpg/rep.hpp"

namespace vpg {

// Planar subdivision induced by the curves of a proper representation.
// Nodes are endpoints, bends and crossings; arcs are the straight maximal
// pieces between consecutive nodes; faces come from half-edge orbits.
struct ArrNode {
  Point p;
  std::vector<std::string> curves;  // curves through this node
  bool is_crossing = false;         // >=2 curves meet here
};

struct ArrArc {
  std::size_t a = 0, b = 0;  // node ids
  std::string curve;         // owning curve id
};

struct ArrFace {
  bool bounded = false;
  std::vector<std::size_t> arcs;   // outer boundary walk (counterclockwise), bounded faces only
  std::vector<std::size_t> nodes;  // walk nodes, aligned with arcs
};

struct ArrangementStructure {
  std::vector<ArrNode> nodes;
  std::vector<ArrArc> arcs;
  std::vector<ArrFace> faces;  // faces[0] is the unbounded face
  std::size_t unbounded_face = 0;
  std::size_t components = 0;
  std::set<std::pair<std::size_t, std::size_t>> adjacency;  // face pairs sharing an arc

  // half-edge tables: half-edges 2k (a->b) and 2k+1 (b->a) for arc k
  std::vector<std::size_t> he_next;
  std::vector<std::size_t> he_orbit;
  std::vector<std::size_t> orbit_face;  // orbit id -> face id

  std::size_t face_count() const { return faces.size(); }
};

struct TriangularFace {
  std::size_t face = 0;
  Point p, q, r;                   // corner crossings, in boundary-walk order
  std::size_t a = 0, b = 0, c = 0;  // side arc ids
  Segment sa, sb, sc;               // side geometry
};

struct PointLocation {
  enum Kind { OnNode, OnArc, InFace } kind = InFace;
  std::size_t index = 0;  // node id / arc id / face id
};

// Throws NotProper when the representation fails validate_proper.
ArrangementStructure build_arrangement(const Representation& rep);

// Bounded faces whose outer walk has exactly 3 arcs, all corners pairwise
// crossings, and nothing of the arrangement inside.
std::vector<TriangularFace> triangular_faces(const ArrangementStructure& arr);

// True iff every two listed face boundaries share at most one point.
bool boundaries_almost_disjoint(const std::vector<TriangularFace>& faces);

PointLocation point_location(const ArrangementStructure& arr, const Point& p);

}  // namespace vpg
