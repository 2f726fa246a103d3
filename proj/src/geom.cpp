#include "vpg/geom.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace vpg {

namespace {

Rational cross(const Rational& ax, const Rational& ay, const Rational& bx, const Rational& by) {
  return ax * by - ay * bx;
}

int sgn(const Rational& q) {
  if (q > 0) return 1;
  if (q < 0) return -1;
  return 0;
}

// Exact parameter of p along s; caller guarantees p lies on the line of s.
Rational param_on_segment(const Point& p, const Segment& s) {
  if (s.a.x != s.b.x) return (p.x - s.a.x) / (s.b.x - s.a.x);
  if (s.a.y != s.b.y) return (p.y - s.a.y) / (s.b.y - s.a.y);
  return Rational(0);
}

Point lerp(const Segment& s, const Rational& t) {
  return Point(s.a.x + t * (s.b.x - s.a.x), s.a.y + t * (s.b.y - s.a.y));
}

}  // namespace

int orientation(const Point& a, const Point& b, const Point& c) {
  return sgn(cross(b.x - a.x, b.y - a.y, c.x - a.x, c.y - a.y));
}

bool on_segment(const Segment& s, const Point& p) {
  if (orientation(s.a, s.b, p) != 0) return false;
  Rational lox = std::min(s.a.x, s.b.x), hix = std::max(s.a.x, s.b.x);
  Rational loy = std::min(s.a.y, s.b.y), hiy = std::max(s.a.y, s.b.y);
  return lox <= p.x && p.x <= hix && loy <= p.y && p.y <= hiy;
}

SegIntersection seg_intersect(const Segment& s1, const Segment& s2) {
  SegIntersection out;
  if (s1.degenerate() && s2.degenerate()) {
    if (s1.a == s2.a) {
      out.kind = IntersectionKind::SinglePoint;
      out.point = s1.a;
    }
    return out;
  }
  if (s1.degenerate()) {
    if (on_segment(s2, s1.a)) {
      out.kind = IntersectionKind::SinglePoint;
      out.point = s1.a;
    }
    return out;
  }
  if (s2.degenerate()) {
    if (on_segment(s1, s2.a)) {
      out.kind = IntersectionKind::SinglePoint;
      out.point = s2.a;
    }
    return out;
  }

  Rational d1x = s1.b.x - s1.a.x, d1y = s1.b.y - s1.a.y;
  Rational d2x = s2.b.x - s2.a.x, d2y = s2.b.y - s2.a.y;
  Rational denom = cross(d1x, d1y, d2x, d2y);

  if (denom != 0) {
    Rational wx = s2.a.x - s1.a.x, wy = s2.a.y - s1.a.y;
    Rational t = cross(wx, wy, d2x, d2y) / denom;
    Rational u = cross(wx, wy, d1x, d1y) / denom;
    if (t >= 0 && t <= 1 && u >= 0 && u <= 1) {
      out.kind = IntersectionKind::SinglePoint;
      out.point = lerp(s1, t);
    }
    return out;
  }

  // Parallel. Distinct lines -> empty.
  if (orientation(s1.a, s1.b, s2.a) != 0) return out;

  // Collinear: compare parameter intervals along s1.
  Rational ta = param_on_segment(s2.a, s1);
  Rational tb = param_on_segment(s2.b, s1);
  if (ta > tb) std::swap(ta, tb);
  Rational lo = std::max(Rational(0), ta);
  Rational hi = std::min(Rational(1), tb);
  if (lo > hi) return out;
  if (lo == hi) {
    out.kind = IntersectionKind::SinglePoint;
    out.point = lerp(s1, lo);
    return out;
  }
  out.kind = IntersectionKind::OverlapSegment;
  out.overlap = Segment(lerp(s1, lo), lerp(s1, hi));
  return out;
}

Curve curve_canonicalize(const Curve& c) {
  if (c.pts.empty()) throw VpgError("GeometryFailure", "curve with no waypoints");
  Curve out;
  out.pts.reserve(c.pts.size());
  for (const Point& p : c.pts) {
    if (!out.pts.empty() && out.pts.back() == p) continue;  // drop repeats
    while (out.pts.size() >= 2) {
      const Point& q = out.pts[out.pts.size() - 1];
      const Point& r = out.pts[out.pts.size() - 2];
      // merge collinear continuation r -> q -> p when q is between on one line
      if (orientation(r, q, p) == 0 && on_segment(Segment(r, p), q)) {
        out.pts.pop_back();
      } else {
        break;
      }
    }
    out.pts.push_back(p);
  }
  return out;
}

bool curve_axis_parallel(const Curve& c) {
  for (std::size_t i = 0; i + 1 < c.pts.size(); ++i) {
    Segment s(c.pts[i], c.pts[i + 1]);
    if (!s.degenerate() && !s.axis_parallel()) return false;
  }
  return true;
}

int bend_count(const Curve& c) {
  Curve k = curve_canonicalize(c);
  if (!curve_axis_parallel(k)) {
    throw VpgError("NotAxisParallel", "bend_count requires an axis-parallel curve");
  }
  if (k.pts.size() <= 2) return 0;
  // After canonicalization every interior waypoint is a direction change.
  return static_cast<int>(k.pts.size()) - 2;
}

namespace {

CurvePos canonical_pos(CurvePos p, std::size_t nsegs) {
  while (p.t == 1 && p.seg + 1 < nsegs) {
    p.seg += 1;
    p.t = 0;
  }
  return p;
}

}  // namespace

std::vector<CurveIntersection> curve_intersections(const Curve& c1, const Curve& c2) {
  std::vector<CurveIntersection> raw;
  std::size_t n1 = c1.segment_count(), n2 = c2.segment_count();
  for (std::size_t i = 0; i < n1; ++i) {
    Segment s1 = c1.segment(i);
    for (std::size_t j = 0; j < n2; ++j) {
      Segment s2 = c2.segment(j);
      SegIntersection si = seg_intersect(s1, s2);
      if (si.kind == IntersectionKind::Empty) continue;
      CurveIntersection ci;
      ci.kind = si.kind;
      if (si.kind == IntersectionKind::SinglePoint) {
        ci.point = si.point;
        ci.pos1 = canonical_pos({i, param_on_segment(si.point, s1)}, n1);
        ci.pos2 = canonical_pos({j, param_on_segment(si.point, s2)}, n2);
      } else {
        // orient the overlap along c1's segment direction
        Rational ta = param_on_segment(si.overlap.a, s1);
        Rational tb = param_on_segment(si.overlap.b, s1);
        if (ta > tb) std::swap(si.overlap.a, si.overlap.b), std::swap(ta, tb);
        ci.overlap = si.overlap;
        ci.point = si.overlap.a;
        ci.pos1 = canonical_pos({i, ta}, n1);
        ci.pos2 = canonical_pos({j, param_on_segment(si.overlap.a, s2)}, n2);
      }
      raw.push_back(std::move(ci));
    }
  }
  // Deduplicate incidences produced twice at shared waypoints.
  std::sort(raw.begin(), raw.end(), [](const CurveIntersection& a, const CurveIntersection& b) {
    if (!(a.pos1 == b.pos1)) return a.pos1 < b.pos1;
    if (!(a.pos2 == b.pos2)) return a.pos2 < b.pos2;
    return static_cast<int>(a.kind) < static_cast<int>(b.kind);
  });
  std::vector<CurveIntersection> out;
  for (auto& ci : raw) {
    if (!out.empty() && out.back().pos1 == ci.pos1 && out.back().pos2 == ci.pos2 &&
        out.back().kind == ci.kind && out.back().point == ci.point) {
      continue;
    }
    out.push_back(std::move(ci));
  }
  return out;
}

std::vector<Point> curve_intersection_points(const Curve& c1, const Curve& c2) {
  std::vector<Point> pts;
  for (const auto& ci : curve_intersections(c1, c2)) {
    if (ci.kind == IntersectionKind::SinglePoint) {
      if (pts.empty() || !(pts.back() == ci.point)) pts.push_back(ci.point);
    }
  }
  return pts;
}

bool curves_share_point(const Curve& c1, const Curve& c2) {
  return !curve_intersections(c1, c2).empty();
}

Rational dist2(const Point& p, const Point& q) {
  Rational dx = p.x - q.x, dy = p.y - q.y;
  return dx * dx + dy * dy;
}

Rational dist2_point_segment(const Point& p, const Segment& s) {
  if (s.degenerate()) return dist2(p, s.a);
  Rational dx = s.b.x - s.a.x, dy = s.b.y - s.a.y;
  Rational t = ((p.x - s.a.x) * dx + (p.y - s.a.y) * dy) / (dx * dx + dy * dy);
  if (t < 0) t = 0;
  if (t > 1) t = 1;
  return dist2(p, lerp(s, t));
}

Rational dist2_segments(const Segment& s1, const Segment& s2) {
  if (seg_intersect(s1, s2).kind != IntersectionKind::Empty) return Rational(0);
  Rational best = dist2_point_segment(s1.a, s2);
  best = std::min(best, dist2_point_segment(s1.b, s2));
  best = std::min(best, dist2_point_segment(s2.a, s1));
  best = std::min(best, dist2_point_segment(s2.b, s1));
  return best;
}

Point curve_point_at(const Curve& c, const CurvePos& pos) {
  if (pos.seg >= c.segment_count()) throw VpgError("GeometryFailure", "curve position out of range");
  return lerp(c.segment(pos.seg), pos.t);
}

std::vector<SpecialPoint> special_points(const std::vector<Curve>& curves) {
  std::vector<SpecialPoint> out;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const Curve& c = curves[i];
    if (c.pts.empty()) continue;
    std::string id = "c" + std::to_string(i);
    out.push_back({c.pts.front(), SpecialPoint::Endpoint, id});
    if (c.pts.size() > 1) out.push_back({c.pts.back(), SpecialPoint::Endpoint, id});
    for (std::size_t j = 1; j + 1 < c.pts.size(); ++j) {
      out.push_back({c.pts[j], SpecialPoint::Bend, id});
    }
  }
  for (std::size_t i = 0; i < curves.size(); ++i) {
    for (std::size_t j = i + 1; j < curves.size(); ++j) {
      for (const auto& ci : curve_intersections(curves[i], curves[j])) {
        if (ci.kind == IntersectionKind::SinglePoint) {
          out.push_back({ci.point, SpecialPoint::Crossing,
                         "c" + std::to_string(i) + "xc" + std::to_string(j)});
        }
      }
    }
  }
  return out;
}

namespace detail {

Rational min_feature_distance_impl(const std::vector<Curve>& curves, bool parallel) {
  std::vector<SpecialPoint> sp = special_points(curves);
  // Coinciding features (other than the single record per pairwise crossing)
  // mean the family has no positive clearance.
  {
    std::map<Point, std::vector<const SpecialPoint*>> byloc;
    for (const auto& s : sp) byloc[s.p].push_back(&s);
    for (const auto& [p, recs] : byloc) {
      if (recs.size() > 1) {
        throw VpgError("ZeroFeature", "coinciding features at (" + rational_str(p.x) + ", " +
                                          rational_str(p.y) + ")");
      }
    }
  }

  std::vector<Segment> edges;
  for (const auto& c : curves) {
    for (std::size_t e = 0; e < c.segment_count(); ++e) edges.push_back(c.segment(e));
  }

  // Flatten all candidate computations into one index space so one loop can be
  // split across threads; the min-reduction is order independent.
  std::size_t np = sp.size(), ne = edges.size();
  std::size_t n_pp = np * np;  // use i<j filter inside
  std::size_t n_pe = np * ne;
  std::size_t n_ee = ne * ne;
  std::size_t total = n_pp + n_pe + n_ee;

  auto candidate = [&](std::size_t idx) -> std::optional<Rational> {
    if (idx < n_pp) {
      std::size_t i = idx / np, j = idx % np;
      if (i >= j) return std::nullopt;
      Rational d2 = dist2(sp[i].p, sp[j].p);
      if (d2 == 0) return std::nullopt;
      return d2;
    }
    idx -= n_pp;
    if (idx < n_pe) {
      std::size_t i = idx / ne, e = idx % ne;
      if (on_segment(edges[e], sp[i].p)) return std::nullopt;  // incident edge
      return dist2_point_segment(sp[i].p, edges[e]);
    }
    idx -= n_pe;
    std::size_t i = idx / ne, j = idx % ne;
    if (i >= j) return std::nullopt;
    if (seg_intersect(edges[i], edges[j]).kind != IntersectionKind::Empty) return std::nullopt;
    return dist2_segments(edges[i], edges[j]);
  };

  bool have = false;
  Rational best2(0);
  auto merge = [&](bool h, const Rational& v) {
    if (!h) return;
    if (!have || v < best2) {
      best2 = v;
      have = true;
    }
  };

#ifdef _OPENMP
  if (parallel) {
    #pragma omp parallel
    {
      bool lh = false;
      Rational lb(0);
      #pragma omp for schedule(dynamic, 64) nowait
      for (long long k = 0; k < static_cast<long long>(total); ++k) {
        auto c = candidate(static_cast<std::size_t>(k));
        if (c && (!lh || *c < lb)) {
          lb = *c;
          lh = true;
        }
      }
      #pragma omp critical
      merge(lh, lb);
    }
  } else
#endif
  {
    (void)parallel;
    for (std::size_t k = 0; k < total; ++k) {
      auto c = candidate(k);
      if (c) merge(true, *c);
    }
  }

  if (!have) {
    if (edges.size() == 1) {  // single segment: its length is the feature scale
      Rational len2 = dist2(edges[0].a, edges[0].b);
      Rational r;
      if (rational_sqrt_exact(len2, &r)) return r;
      return sqrt_lower_bound(len2);
    }
    throw VpgError("ZeroFeature", "no positive feature distance found");
  }
  Rational r;
  if (rational_sqrt_exact(best2, &r)) return r;
  return sqrt_lower_bound(best2);
}

}  // namespace detail

Rational min_feature_distance(const std::vector<Curve>& curves) {
  bool par = false;
#ifdef _OPENMP
  par = true;
#endif
  return detail::min_feature_distance_impl(curves, par);
}

}  // namespace vpg
