#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vpg/geom.hpp"
#include "vpg/graph.hpp"

namespace vpg {

// Vertex-to-curve assignment.
struct Representation {
  std::map<std::string, Curve> curves;
  bool operator==(const Representation& o) const { return curves == o.curves; }
  std::vector<Curve> curve_list() const;
  std::vector<std::string> ids() const;
};

enum class ViolationKind {
  SelfIntersection,   // a curve is not simple
  Overlap,            // two curves share a positive-length segment
  InfiniteIntersection,  // a pair with infinitely many shared points
  TriplePoint,        // >=3 curves through one point
  Touch,              // two curves meet but do not cross transversally
  EndpointOnCurve,    // a curve endpoint lies on another curve
};

struct Violation {
  ViolationKind kind;
  std::vector<std::string> vertices;
  Point point;      // TriplePoint / Touch / EndpointOnCurve / SelfIntersection
  Segment overlap;  // Overlap
  std::string describe() const;
};

struct PropernessReport {
  std::vector<Violation> violations;
  bool proper() const { return violations.empty(); }
};

struct CrossingSequence {
  std::string vertex;
  std::vector<std::pair<Point, std::string>> entries;  // ordered along the curve
};

// Edge uv iff curves share >=1 point (touching and overlap count as adjacency).
Graph intersection_graph(const Representation& rep);

PropernessReport validate_proper(const Representation& rep);

// Throws NotProper when the representation fails validate_proper.
CrossingSequence crossing_sequence(const Representation& rep, const std::string& v);

struct OrderCheckResult {
  bool ok = true;
  std::string vertex;        // witness when !ok
  Point first, second;       // image pair that occurs out of order
};

// pairing maps base crossing points to points on `other`'s curves; points not
// present in the map are taken to map to themselves. A curve's traversal
// direction is free: the forward or the reversed order may realize the match.
// Throws PairingNotInjective / ImageOffCurve / NotProper.
OrderCheckResult check_order_preserving(const Representation& base, const Representation& other,
                                        const std::map<Point, Point>& pairing = {});

// Order-and-equality-preserving compaction onto integer coordinates 1..X, 1..Y.
// Throws NotAxisParallel.
Representation normalize_grid(const Representation& rep);

// Sub-representation on a subset of vertex ids.
Representation restrict_to(const Representation& rep, const std::vector<std::string>& keep);

Rational min_feature_distance_rep(const Representation& rep);

}  // namespace vpg
