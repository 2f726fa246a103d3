#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vpg/rational.hpp"

namespace vpg {

// Every failure mode carries a stable machine-readable code string.
class VpgError : public std::runtime_error {
 public:
  VpgError(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

struct Point {
  Rational x, y;
  Point() : x(0), y(0) {}
  Point(Rational px, Rational py) : x(std::move(px)), y(std::move(py)) {}
  bool operator==(const Point& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Point& o) const { return !(*this == o); }
  bool operator<(const Point& o) const {
    if (x != o.x) return x < o.x;
    return y < o.y;
  }
};

struct Segment {
  Point a, b;
  Segment() = default;
  Segment(Point pa, Point pb) : a(std::move(pa)), b(std::move(pb)) {}
  bool degenerate() const { return a == b; }
  bool horizontal() const { return a.y == b.y && a.x != b.x; }
  bool vertical() const { return a.x == b.x && a.y != b.y; }
  bool axis_parallel() const { return a.x == b.x || a.y == b.y; }
  bool operator==(const Segment& o) const { return a == o.a && b == o.b; }
};

// A curve is a polyline given by its waypoint sequence. Consecutive waypoints
// must differ; collinear chains are allowed on input and are canonicalized away
// by curve_canonicalize.
struct Curve {
  std::vector<Point> pts;
  Curve() = default;
  explicit Curve(std::vector<Point> p) : pts(std::move(p)) {}
  bool operator==(const Curve& o) const { return pts == o.pts; }
  std::size_t segment_count() const { return pts.empty() ? 0 : pts.size() - 1; }
  Segment segment(std::size_t i) const { return Segment(pts[i], pts[i + 1]); }
};

enum class IntersectionKind { Empty, SinglePoint, OverlapSegment };

struct SegIntersection {
  IntersectionKind kind = IntersectionKind::Empty;
  Point point;       // valid when kind == SinglePoint
  Segment overlap;   // valid when kind == OverlapSegment
};

// Orientation of c relative to directed a->b: +1 left, -1 right, 0 collinear.
int orientation(const Point& a, const Point& b, const Point& c);

// True iff p lies on the closed segment s (s may be degenerate).
bool on_segment(const Segment& s, const Point& p);

SegIntersection seg_intersect(const Segment& s1, const Segment& s2);

// Merges collinear runs and rejects repeated waypoints / empty input.
Curve curve_canonicalize(const Curve& c);

// Number of direction changes of an axis-parallel curve.
// Throws NotAxisParallel if any segment is oblique.
int bend_count(const Curve& c);

bool curve_axis_parallel(const Curve& c);

// Position of a point along a curve: index of the segment plus the fractional
// parameter within it, both exact. Ordering along the curve is lexicographic.
struct CurvePos {
  std::size_t seg = 0;
  Rational t;  // in [0,1]
  bool operator<(const CurvePos& o) const {
    if (seg != o.seg) return seg < o.seg;
    return t < o.t;
  }
  bool operator==(const CurvePos& o) const { return seg == o.seg && t == o.t; }
};

struct CurveIntersection {
  IntersectionKind kind = IntersectionKind::Empty;
  Point point;      // SinglePoint
  Segment overlap;  // OverlapSegment
  CurvePos pos1;    // position on c1 (for SinglePoint: exact; for overlap: start)
  CurvePos pos2;    // position on c2
};

// All intersections of two curves, ordered along c1. Adjacent-segment touching
// points inside one curve are not self-reported; this reports c1-vs-c2 only.
// Duplicate points (shared by consecutive segments) are merged.
std::vector<CurveIntersection> curve_intersections(const Curve& c1, const Curve& c2);

// Convenience: just the intersection points (SinglePoint entries), in order along c1.
std::vector<Point> curve_intersection_points(const Curve& c1, const Curve& c2);

bool curves_share_point(const Curve& c1, const Curve& c2);

// Squared Euclidean distance helpers (exact; we avoid square roots).
Rational dist2(const Point& p, const Point& q);
Rational dist2_point_segment(const Point& p, const Segment& s);
Rational dist2_segments(const Segment& s1, const Segment& s2);

Point curve_point_at(const Curve& c, const CurvePos& pos);

// Special points of a curve family: endpoints, bends, pairwise crossings.
struct SpecialPoint {
  Point p;
  enum Kind { Endpoint, Bend, Crossing } kind;
  std::string owner;  // curve index / pair description for diagnostics
};

std::vector<SpecialPoint> special_points(const std::vector<Curve>& curves);

// Positive rational lower bound on the minimum feature distance: pairwise
// special-point distances, special-point-to-nonincident-edge distances, and
// distances between disjoint edges. Exact whenever the minimizing pair is
// axis-aligned (true for all axis-parallel inputs); otherwise a floor(sqrt)
// underestimate. Throws ZeroFeature when two features coincide.
Rational min_feature_distance(const std::vector<Curve>& curves);

}  // namespace vpg
