#include "vpg/grill.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "vpg/detail.hpp"

namespace vpg {
namespace {

std::string pt_str(const Point& p) {
  return "(" + rational_str(p.x) + "," + rational_str(p.y) + ")";
}

std::string seg_str(const Segment& s) { return pt_str(s.a) + "-" + pt_str(s.b); }

bool contains_coord(const std::vector<Rational>& v, const Rational& c) {
  return std::binary_search(v.begin(), v.end(), c);
}

// Canonical curves plus cached derived data for one representation.
struct RepCache {
  std::vector<std::string> ids;
  std::vector<Curve> curves;
  std::vector<SpecialPoint> specials;
  Rational minx, maxx, miny, maxy;
  bool empty() const { return curves.empty(); }
};

RepCache make_cache(const Representation& rep) {
  RepCache rc;
  for (const auto& [id, c] : rep.curves) {
    rc.ids.push_back(id);
    rc.curves.push_back(curve_canonicalize(c));
  }
  if (!rc.curves.empty()) {
    rc.specials = special_points(rc.curves);
    bool first = true;
    for (const Curve& c : rc.curves)
      for (const Point& p : c.pts) {
        if (first || p.x < rc.minx) rc.minx = p.x;
        if (first || p.x > rc.maxx) rc.maxx = p.x;
        if (first || p.y < rc.miny) rc.miny = p.y;
        if (first || p.y > rc.maxy) rc.maxy = p.y;
        first = false;
      }
  }
  return rc;
}

bool point_on_curve(const Curve& c, const Point& p) {
  for (std::size_t i = 0; i < c.segment_count(); ++i)
    if (on_segment(c.segment(i), p)) return true;
  return false;
}

bool point_on_any_curve(const RepCache& rc, const Point& p) {
  for (const Curve& c : rc.curves)
    if (point_on_curve(c, p)) return true;
  return false;
}

std::vector<HorizontalCut> all_hcuts(const GridOverlay& H) {
  std::vector<HorizontalCut> v = H.hcuts;
  if (H.window) {
    v.push_back({H.window->ya, H.xs.front(), H.xs[1]});
    v.push_back({H.window->yb, H.xs.front(), H.xs[1]});
  }
  return v;
}

void check_overlay_shape(const GridOverlay& H) {
  auto ascending = [](const std::vector<Rational>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
      if (!(v[i - 1] < v[i])) return false;
    return true;
  };
  if (H.xs.size() < 2 || H.ys.size() < 2)
    throw VpgError("GeometryFailure", "overlay needs at least one cell");
  if (!ascending(H.xs) || !ascending(H.ys))
    throw VpgError("GeometryFailure", "overlay line coordinates must be strictly ascending");
  if (H.window) {
    if (!(H.window->ya < H.window->yb))
      throw VpgError("GeometryFailure", "window lines out of order");
  }
  std::vector<HorizontalCut> hcs = all_hcuts(H);
  for (const HorizontalCut& hc : hcs) {
    if (!(hc.x0 < hc.x1) || !contains_coord(H.xs, hc.x0) || !contains_coord(H.xs, hc.x1))
      throw VpgError("GeometryFailure", "horizontal cut endpoints must lie on vertical grid lines");
    if (contains_coord(H.ys, hc.y))
      throw VpgError("GeometryFailure", "horizontal cut coincides with a grid row");
    if (hc.y < H.ys.front() || hc.y > H.ys.back())
      throw VpgError("GeometryFailure", "horizontal cut outside the grid");
  }
  for (const VerticalCut& vc : H.vcuts) {
    if (!(vc.y0 < vc.y1) || !contains_coord(H.ys, vc.y0) || !contains_coord(H.ys, vc.y1))
      throw VpgError("GeometryFailure", "vertical cut endpoints must lie on horizontal grid lines");
    if (contains_coord(H.xs, vc.x))
      throw VpgError("GeometryFailure", "vertical cut coincides with a grid column");
    if (vc.x < H.xs.front() || vc.x > H.xs.back())
      throw VpgError("GeometryFailure", "vertical cut outside the grid");
  }
  for (std::size_t i = 0; i < hcs.size(); ++i)
    for (std::size_t j = i + 1; j < hcs.size(); ++j)
      if (hcs[i].y == hcs[j].y && hcs[i].x0 < hcs[j].x1 && hcs[j].x0 < hcs[i].x1)
        throw VpgError("GeometryFailure", "overlapping horizontal cuts");
  for (std::size_t i = 0; i < H.vcuts.size(); ++i)
    for (std::size_t j = i + 1; j < H.vcuts.size(); ++j)
      if (H.vcuts[i].x == H.vcuts[j].x && H.vcuts[i].y0 < H.vcuts[j].y1 &&
          H.vcuts[j].y0 < H.vcuts[i].y1)
        throw VpgError("GeometryFailure", "overlapping vertical cuts");
  for (const HorizontalCut& hc : hcs)
    for (const VerticalCut& vc : H.vcuts)
      if (hc.y > vc.y0 && hc.y < vc.y1 && vc.x > hc.x0 && vc.x < hc.x1)
        throw VpgError("GeometryFailure", "crossing partial cuts");
}

}  // namespace

OverlayGeometry overlay_geometry(const GridOverlay& H) {
  check_overlay_shape(H);
  const std::vector<HorizontalCut> hcs = all_hcuts(H);
  const std::vector<VerticalCut>& vcs = H.vcuts;

  OverlayGeometry g;
  std::set<Point> vset;
  for (const Rational& x : H.xs)
    for (const Rational& y : H.ys) vset.insert(Point{x, y});
  for (const HorizontalCut& hc : hcs)
    for (const Rational& x : H.xs)
      if (x >= hc.x0 && x <= hc.x1) vset.insert(Point{x, hc.y});
  for (const VerticalCut& vc : vcs)
    for (const Rational& y : H.ys)
      if (y >= vc.y0 && y <= vc.y1) vset.insert(Point{vc.x, y});

  std::set<Point> wv;
  if (H.window) {
    wv.insert(Point{H.xs.front(), H.window->ya});
    wv.insert(Point{H.xs[1], H.window->ya});
    wv.insert(Point{H.xs.front(), H.window->yb});
    wv.insert(Point{H.xs[1], H.window->yb});
  }
  for (const Point& p : vset) {
    g.vertex_of[p] = g.vertices.size();
    g.vertices.push_back({p, wv.count(p) > 0});
  }

  auto add_edge = [&g](const Point& a, const Point& b, bool horiz) {
    g.edges.push_back({g.vertex_of.at(a), g.vertex_of.at(b), horiz});
  };
  // vertical edges on full columns (split by rows and covering h-cuts)
  for (const Rational& x : H.xs) {
    std::vector<Rational> stops(H.ys.begin(), H.ys.end());
    for (const HorizontalCut& hc : hcs)
      if (x >= hc.x0 && x <= hc.x1) stops.push_back(hc.y);
    std::sort(stops.begin(), stops.end());
    for (std::size_t k = 1; k < stops.size(); ++k)
      add_edge(Point{x, stops[k - 1]}, Point{x, stops[k]}, false);
  }
  // vertical edges on vertical cuts (split by rows; cuts never cross cuts)
  for (const VerticalCut& vc : vcs) {
    std::vector<Rational> stops;
    for (const Rational& y : H.ys)
      if (y >= vc.y0 && y <= vc.y1) stops.push_back(y);
    for (std::size_t k = 1; k < stops.size(); ++k)
      add_edge(Point{vc.x, stops[k - 1]}, Point{vc.x, stops[k]}, false);
  }
  // horizontal edges on full rows (split by columns and covering v-cuts)
  for (const Rational& y : H.ys) {
    std::vector<Rational> stops(H.xs.begin(), H.xs.end());
    for (const VerticalCut& vc : vcs)
      if (y >= vc.y0 && y <= vc.y1) stops.push_back(vc.x);
    std::sort(stops.begin(), stops.end());
    for (std::size_t k = 1; k < stops.size(); ++k)
      add_edge(Point{stops[k - 1], y}, Point{stops[k], y}, true);
  }
  // horizontal edges on horizontal cuts
  for (const HorizontalCut& hc : hcs) {
    std::vector<Rational> stops;
    for (const Rational& x : H.xs)
      if (x >= hc.x0 && x <= hc.x1) stops.push_back(x);
    for (std::size_t k = 1; k < stops.size(); ++k)
      add_edge(Point{stops[k - 1], hc.y}, Point{stops[k], hc.y}, true);
  }
  std::sort(g.edges.begin(), g.edges.end(), [&g](const OverlayEdge& a, const OverlayEdge& b) {
    const Point& pa = g.vertices[a.a].p;
    const Point& pb = g.vertices[b.a].p;
    if (!(pa == pb)) return pa < pb;
    return g.vertices[a.b].p < g.vertices[b.b].p;
  });

  // faces: cell by cell; a cell holds parallel cuts of at most one orientation
  for (std::size_t i = 0; i + 1 < H.xs.size(); ++i) {
    for (std::size_t j = 0; j + 1 < H.ys.size(); ++j) {
      const Rational &x0 = H.xs[i], &x1 = H.xs[i + 1];
      const Rational &y0 = H.ys[j], &y1 = H.ys[j + 1];
      std::vector<Rational> ycuts, xcuts;
      for (const HorizontalCut& hc : hcs)
        if (hc.y > y0 && hc.y < y1 && hc.x0 <= x0 && hc.x1 >= x1) ycuts.push_back(hc.y);
      for (const VerticalCut& vc : vcs)
        if (vc.x > x0 && vc.x < x1 && vc.y0 <= y0 && vc.y1 >= y1) xcuts.push_back(vc.x);
      assert(ycuts.empty() || xcuts.empty());
      if (!ycuts.empty()) {
        ycuts.push_back(y0);
        ycuts.push_back(y1);
        std::sort(ycuts.begin(), ycuts.end());
        for (std::size_t k = 1; k < ycuts.size(); ++k)
          g.faces.push_back({x0, x1, ycuts[k - 1], ycuts[k]});
      } else if (!xcuts.empty()) {
        xcuts.push_back(x0);
        xcuts.push_back(x1);
        std::sort(xcuts.begin(), xcuts.end());
        for (std::size_t k = 1; k < xcuts.size(); ++k)
          g.faces.push_back({xcuts[k - 1], xcuts[k], y0, y1});
      } else {
        g.faces.push_back({x0, x1, y0, y1});
      }
    }
  }
  return g;
}

namespace {

// ---- clipping a curve to a rectangular face ------------------------------

struct ClipPiece {
  std::size_t seg = 0;
  Rational t0, t1;  // parameter interval with t0 < t1
  Segment geom;
};

struct Clip {
  std::vector<ClipPiece> pieces;
  bool meets_open = false;
};

bool strictly_inside(const Point& p, const OverlayFace& f) {
  return p.x > f.x0 && p.x < f.x1 && p.y > f.y0 && p.y < f.y1;
}

Point lerp(const Point& a, const Point& b, const Rational& t) {
  return Point{a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t};
}

Clip clip_curve(const Curve& c, const OverlayFace& f) {
  Clip out;
  for (std::size_t i = 0; i < c.segment_count(); ++i) {
    Segment s = c.segment(i);
    Rational t0 = 0, t1 = 1;
    bool empty = false;
    auto narrow = [&](const Rational& p0, const Rational& d, const Rational& lo,
                      const Rational& hi) {
      if (d == 0) {
        if (p0 < lo || p0 > hi) empty = true;
        return;
      }
      Rational ta = (lo - p0) / d, tb = (hi - p0) / d;
      if (ta > tb) std::swap(ta, tb);
      if (ta > t0) t0 = ta;
      if (tb < t1) t1 = tb;
    };
    Rational dx = s.b.x - s.a.x, dy = s.b.y - s.a.y;
    narrow(s.a.x, dx, f.x0, f.x1);
    narrow(s.a.y, dy, f.y0, f.y1);
    if (empty || !(t0 < t1)) continue;
    Point pa = lerp(s.a, s.b, t0), pb = lerp(s.a, s.b, t1);
    out.pieces.push_back({i, t0, t1, Segment(pa, pb)});
    Rational tm = (t0 + t1) / 2;
    if (strictly_inside(lerp(s.a, s.b, tm), f)) out.meets_open = true;
  }
  return out;
}

// connected visits of the clip (consecutive pieces chained at shared points)
std::vector<std::vector<ClipPiece>> clip_visits(const Clip& cl) {
  std::vector<std::vector<ClipPiece>> visits;
  for (const ClipPiece& p : cl.pieces) {
    if (!visits.empty() && visits.back().back().geom.b == p.geom.a)
      visits.back().push_back(p);
    else
      visits.push_back({p});
  }
  return visits;
}

bool faces_adjacent(const OverlayFace& a, const OverlayFace& b) {
  bool vshare = (a.x1 == b.x0 || b.x1 == a.x0) &&
                std::min(a.y1, b.y1) > std::max(a.y0, b.y0);
  bool hshare = (a.y1 == b.y0 || b.y1 == a.y0) &&
                std::min(a.x1, b.x1) > std::max(a.x0, b.x0);
  return vshare || hshare;
}

// ---- structured violation scan -------------------------------------------

struct Scan {
  std::vector<std::string> p1_struct;
  std::vector<std::string> p1_outside;
  struct VertexHit {
    std::size_t vertex;
    std::string curve;
  };
  std::vector<VertexHit> p2_vertex;
  struct EdgeSpecial {
    std::size_t edge;
    Point p;
  };
  std::vector<EdgeSpecial> p2_edge;
  struct FaceMulti {
    std::size_t face;
    std::vector<Point> pts;
  };
  std::vector<FaceMulti> p3_multi;
  std::vector<std::pair<std::size_t, std::size_t>> p3_adj;
  struct EdgeCross {
    std::size_t edge;
    std::vector<Point> pts;
  };
  std::vector<EdgeCross> p4_multi;
  std::vector<std::pair<std::size_t, std::string>> p4_overlap;
  struct FaceCurves {
    std::size_t face;
    std::vector<std::size_t> curves;
  };
  std::vector<FaceCurves> p5_many;
  struct FaceTwo {
    std::size_t face;
    std::size_t c1, c2;
  };
  std::vector<FaceTwo> p5_nocross;
  struct FaceVisits {
    std::size_t face;
    std::size_t curve;
    std::vector<Point> pts;
  };
  std::vector<FaceVisits> p6_multi;

  bool clean() const {
    return p1_struct.empty() && p1_outside.empty() && p2_vertex.empty() && p2_edge.empty() &&
           p3_multi.empty() && p3_adj.empty() && p4_multi.empty() && p4_overlap.empty() &&
           p5_many.empty() && p5_nocross.empty() && p6_multi.empty();
  }
};

bool bbox_disjoint(const Segment& a, const Segment& b) {
  auto mm = [](const Rational& u, const Rational& v) {
    return u < v ? std::make_pair(u, v) : std::make_pair(v, u);
  };
  auto [ax0, ax1] = mm(a.a.x, a.b.x);
  auto [bx0, bx1] = mm(b.a.x, b.b.x);
  if (ax1 < bx0 || bx1 < ax0) return true;
  auto [ay0, ay1] = mm(a.a.y, a.b.y);
  auto [by0, by1] = mm(b.a.y, b.b.y);
  return ay1 < by0 || by1 < ay0;
}

Scan scan_overlay(const RepCache& rc, const OverlayGeometry& g, const GridOverlay& H) {
  Scan sc;
  if (H.xs.size() < 4 || H.ys.size() < 4)
    sc.p1_struct.push_back("grid has fewer than 3x3 cells");
  for (std::size_t ci = 0; ci < rc.curves.size(); ++ci) {
    for (const Point& p : rc.curves[ci].pts) {
      if (p.x <= H.xs.front() || p.x >= H.xs.back() || p.y <= H.ys.front() ||
          p.y >= H.ys.back()) {
        sc.p1_outside.push_back("curve " + rc.ids[ci] + " reaches the outer face at " +
                                pt_str(p));
        break;
      }
    }
  }

  // P2
  for (std::size_t vi = 0; vi < g.vertices.size(); ++vi)
    for (std::size_t ci = 0; ci < rc.curves.size(); ++ci)
      if (point_on_curve(rc.curves[ci], g.vertices[vi].p)) {
        sc.p2_vertex.push_back({vi, rc.ids[ci]});
        break;
      }
  for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
    Segment es = g.edge_segment(ei);
    for (const SpecialPoint& s : rc.specials)
      if (on_segment(es, s.p)) sc.p2_edge.push_back({ei, s.p});
  }

  // P3
  std::map<std::size_t, std::vector<Point>> face_specials;
  for (const SpecialPoint& s : rc.specials) {
    for (std::size_t fi = 0; fi < g.faces.size(); ++fi)
      if (strictly_inside(s.p, g.faces[fi])) {
        face_specials[fi].push_back(s.p);
        break;
      }
  }
  for (auto& [fi, pts] : face_specials) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() > 1) sc.p3_multi.push_back({fi, pts});
  }
  std::vector<std::size_t> sfaces;
  for (auto& [fi, pts] : face_specials) sfaces.push_back(fi);
  for (std::size_t a = 0; a < sfaces.size(); ++a)
    for (std::size_t b = a + 1; b < sfaces.size(); ++b)
      if (faces_adjacent(g.faces[sfaces[a]], g.faces[sfaces[b]]))
        sc.p3_adj.push_back({sfaces[a], sfaces[b]});

  // P4
  for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
    Segment es = g.edge_segment(ei);
    std::set<Point> hits;
    bool overlapped = false;
    for (std::size_t ci = 0; ci < rc.curves.size() && !overlapped; ++ci) {
      const Curve& c = rc.curves[ci];
      for (std::size_t si = 0; si < c.segment_count(); ++si) {
        Segment cs = c.segment(si);
        if (bbox_disjoint(es, cs)) continue;
        SegIntersection in = seg_intersect(es, cs);
        if (in.kind == IntersectionKind::SinglePoint) hits.insert(in.point);
        if (in.kind == IntersectionKind::OverlapSegment) {
          sc.p4_overlap.push_back({ei, rc.ids[ci]});
          overlapped = true;
          break;
        }
      }
    }
    if (hits.size() > 1)
      sc.p4_multi.push_back({ei, std::vector<Point>(hits.begin(), hits.end())});
  }

  // P5 + P6
  for (std::size_t fi = 0; fi < g.faces.size(); ++fi) {
    const OverlayFace& f = g.faces[fi];
    std::vector<std::size_t> meets;
    for (std::size_t ci = 0; ci < rc.curves.size(); ++ci) {
      Clip cl = clip_curve(rc.curves[ci], f);
      if (cl.meets_open) meets.push_back(ci);
      // P6: distinct boundary points of this curve on the face boundary
      std::set<Point> bpts;
      Segment sides[4] = {Segment(Point{f.x0, f.y0}, Point{f.x1, f.y0}),
                          Segment(Point{f.x1, f.y0}, Point{f.x1, f.y1}),
                          Segment(Point{f.x0, f.y1}, Point{f.x1, f.y1}),
                          Segment(Point{f.x0, f.y0}, Point{f.x0, f.y1})};
      bool side_overlap = false;
      for (const Segment& side : sides) {
        for (std::size_t si = 0; si < rc.curves[ci].segment_count(); ++si) {
          Segment cs = rc.curves[ci].segment(si);
          if (bbox_disjoint(side, cs)) continue;
          SegIntersection in = seg_intersect(side, cs);
          if (in.kind == IntersectionKind::SinglePoint) bpts.insert(in.point);
          if (in.kind == IntersectionKind::OverlapSegment) side_overlap = true;
        }
      }
      if (bpts.size() > 2 || side_overlap)
        sc.p6_multi.push_back({fi, ci, std::vector<Point>(bpts.begin(), bpts.end())});
    }
    if (meets.size() > 2) {
      sc.p5_many.push_back({fi, meets});
    } else if (meets.size() == 2) {
      std::vector<Point> xs = curve_intersection_points(rc.curves[meets[0]], rc.curves[meets[1]]);
      bool inside = false;
      for (const Point& p : xs)
        if (strictly_inside(p, f)) inside = true;
      if (!inside) sc.p5_nocross.push_back({fi, meets[0], meets[1]});
    }
  }
  return sc;
}

std::string face_str(const OverlayFace& f) {
  return "[" + rational_str(f.x0) + "," + rational_str(f.x1) + "]x[" + rational_str(f.y0) +
         "," + rational_str(f.y1) + "]";
}

OverlayReport report_from_scan(const Scan& sc, const OverlayGeometry& g, const RepCache&) {
  OverlayReport r;
  for (const std::string& w : sc.p1_struct) {
    r.p1.pass = false;
    r.p1.witnesses.push_back(w);
  }
  for (const std::string& w : sc.p1_outside) {
    r.p1.pass = false;
    r.p1.witnesses.push_back(w);
  }
  for (const auto& v : sc.p2_vertex) {
    r.p2.pass = false;
    r.p2.witnesses.push_back("curve " + v.curve + " passes through overlay vertex " +
                             pt_str(g.vertices[v.vertex].p));
  }
  for (const auto& e : sc.p2_edge) {
    r.p2.pass = false;
    r.p2.witnesses.push_back("overlay edge " + seg_str(g.edge_segment(e.edge)) +
                             " passes through special point " + pt_str(e.p));
  }
  for (const auto& m : sc.p3_multi) {
    r.p3.pass = false;
    std::string w = "face " + face_str(g.faces[m.face]) + " holds special points";
    for (const Point& p : m.pts) w += " " + pt_str(p);
    r.p3.witnesses.push_back(w);
  }
  for (const auto& [a, b] : sc.p3_adj) {
    r.p3.pass = false;
    r.p3.witnesses.push_back("adjacent faces " + face_str(g.faces[a]) + " and " +
                             face_str(g.faces[b]) + " both hold a special point");
  }
  for (const auto& m : sc.p4_multi) {
    r.p4.pass = false;
    std::string w = "edge " + seg_str(g.edge_segment(m.edge)) + " crossed at";
    for (const Point& p : m.pts) w += " " + pt_str(p);
    r.p4.witnesses.push_back(w);
  }
  for (const auto& [ei, cid] : sc.p4_overlap) {
    r.p4.pass = false;
    r.p4.witnesses.push_back("curve " + cid + " overlaps edge " + seg_str(g.edge_segment(ei)));
  }
  for (const auto& m : sc.p5_many) {
    r.p5.pass = false;
    r.p5.witnesses.push_back("face " + face_str(g.faces[m.face]) + " met by " +
                             std::to_string(m.curves.size()) + " curves");
  }
  for (const auto& m : sc.p5_nocross) {
    r.p5.pass = false;
    r.p5.witnesses.push_back("face " + face_str(g.faces[m.face]) +
                             " met by two curves that do not cross inside it");
  }
  for (const auto& m : sc.p6_multi) {
    r.p6.pass = false;
    std::string w = "face " + face_str(g.faces[m.face]) + " boundary met at";
    for (const Point& p : m.pts) w += " " + pt_str(p);
    r.p6.witnesses.push_back(w);
  }
  return r;
}

// ---- repair planning ------------------------------------------------------

struct RepairPlan {
  std::vector<HorizontalCut> hcuts;
  std::vector<VerticalCut> vcuts;
  std::vector<Rational> xlines, ylines;
  std::vector<std::pair<Rational, Rational>> xnudge, ynudge;  // old -> new
  bool any() const {
    return !hcuts.empty() || !vcuts.empty() || !xlines.empty() || !ylines.empty() ||
           !xnudge.empty() || !ynudge.empty();
  }
};

Rational sample_between(SeededRationals& rng, const Rational& lo, const Rational& hi) {
  return lo + (hi - lo) * rng.next();
}

// candidate position hygiene: the new line/cut must not run through a special
// point and must not create an overlay vertex lying on a curve
bool clean_horizontal(const RepCache& rc, const GridOverlay& H, const Rational& y,
                      const Rational& x0, const Rational& x1) {
  if (contains_coord(H.ys, y)) return false;
  for (const HorizontalCut& hc : all_hcuts(H))
    if (hc.y == y) return false;
  for (const SpecialPoint& s : rc.specials)
    if (s.p.y == y && s.p.x >= x0 && s.p.x <= x1) return false;
  for (const Rational& x : H.xs) {
    if (x < x0 || x > x1) continue;
    if (point_on_any_curve(rc, Point{x, y})) return false;
  }
  return true;
}

bool clean_vertical(const RepCache& rc, const GridOverlay& H, const Rational& x,
                    const Rational& y0, const Rational& y1) {
  if (contains_coord(H.xs, x)) return false;
  for (const VerticalCut& vc : H.vcuts)
    if (vc.x == x) return false;
  for (const SpecialPoint& s : rc.specials)
    if (s.p.x == x && s.p.y >= y0 && s.p.y <= y1) return false;
  for (const Rational& y : H.ys) {
    if (y < y0 || y > y1) continue;
    if (point_on_any_curve(rc, Point{x, y})) return false;
  }
  return true;
}

// cut-cut crossing test against existing cuts and the plan so far
bool hcut_conflicts(const GridOverlay& H, const RepairPlan& plan, const HorizontalCut& hc) {
  auto crosses = [&hc](const VerticalCut& vc) {
    return hc.y > vc.y0 && hc.y < vc.y1 && vc.x > hc.x0 && vc.x < hc.x1;
  };
  for (const VerticalCut& vc : H.vcuts)
    if (crosses(vc)) return true;
  for (const VerticalCut& vc : plan.vcuts)
    if (crosses(vc)) return true;
  for (const HorizontalCut& other : all_hcuts(H))
    if (other.y == hc.y && other.x0 < hc.x1 && hc.x0 < other.x1) return true;
  for (const HorizontalCut& other : plan.hcuts)
    if (other.y == hc.y && other.x0 < hc.x1 && hc.x0 < other.x1) return true;
  return false;
}

bool vcut_conflicts(const GridOverlay& H, const RepairPlan& plan, const VerticalCut& vc) {
  auto crosses = [&vc](const HorizontalCut& hc) {
    return hc.y > vc.y0 && hc.y < vc.y1 && vc.x > hc.x0 && vc.x < hc.x1;
  };
  for (const HorizontalCut& hc : all_hcuts(H))
    if (crosses(hc)) return true;
  for (const HorizontalCut& hc : plan.hcuts)
    if (crosses(hc)) return true;
  for (const VerticalCut& other : H.vcuts)
    if (other.x == vc.x && other.y0 < vc.y1 && vc.y0 < other.y1) return true;
  for (const VerticalCut& other : plan.vcuts)
    if (other.x == vc.x && other.y0 < vc.y1 && vc.y0 < other.y1) return true;
  return false;
}

// neighbours of a coordinate within a sorted line family
bool line_neighbours(const std::vector<Rational>& lines, const Rational& c, Rational& lo,
                     Rational& hi) {
  auto it = std::lower_bound(lines.begin(), lines.end(), c);
  if (it == lines.end() || !(*it == c)) return false;
  if (it == lines.begin() || it + 1 == lines.end()) return false;  // boundary line
  lo = *(it - 1);
  hi = *(it + 1);
  return true;
}

// try to plan a horizontal separator cut at some y in (ylo,yhi) spanning the
// full-line column strip that contains [x0,x1]
bool plan_hcut(const RepCache& rc, const GridOverlay& H, RepairPlan& plan,
               SeededRationals& rng, const Rational& ylo, const Rational& yhi,
               const Rational& x0, const Rational& x1) {
  auto it = std::upper_bound(H.xs.begin(), H.xs.end(), x0);
  auto it2 = std::lower_bound(H.xs.begin(), H.xs.end(), x1);
  if (it != H.xs.begin() && it2 != H.xs.end()) {
    Rational sx0 = *(it - 1);
    Rational sx1 = *it2;
    if (sx0 < sx1) {
      for (int k = 0; k < 48; ++k) {
        Rational y = sample_between(rng, ylo, yhi);
        HorizontalCut hc{y, sx0, sx1};
        if (!clean_horizontal(rc, H, y, sx0, sx1)) continue;
        if (hcut_conflicts(H, plan, hc)) continue;
        plan.hcuts.push_back(hc);
        return true;
      }
    }
  }
  // fallback: a full row is always structurally legal (cuts may cross lines)
  for (int k = 0; k < 48; ++k) {
    Rational y = sample_between(rng, ylo, yhi);
    if (clean_horizontal(rc, H, y, H.xs.front(), H.xs.back()) &&
        std::find(plan.ylines.begin(), plan.ylines.end(), y) == plan.ylines.end()) {
      plan.ylines.push_back(y);
      return true;
    }
  }
  return false;
}

bool plan_vcut(const RepCache& rc, const GridOverlay& H, RepairPlan& plan,
               SeededRationals& rng, const Rational& xlo, const Rational& xhi,
               const Rational& y0, const Rational& y1) {
  auto it = std::upper_bound(H.ys.begin(), H.ys.end(), y0);
  auto it2 = std::lower_bound(H.ys.begin(), H.ys.end(), y1);
  if (it != H.ys.begin() && it2 != H.ys.end()) {
    Rational sy0 = *(it - 1);
    Rational sy1 = *it2;
    if (sy0 < sy1) {
      for (int k = 0; k < 48; ++k) {
        Rational x = sample_between(rng, xlo, xhi);
        VerticalCut vc{x, sy0, sy1};
        if (!clean_vertical(rc, H, x, sy0, sy1)) continue;
        if (vcut_conflicts(H, plan, vc)) continue;
        plan.vcuts.push_back(vc);
        return true;
      }
    }
  }
  for (int k = 0; k < 48; ++k) {
    Rational x = sample_between(rng, xlo, xhi);
    if (clean_vertical(rc, H, x, H.ys.front(), H.ys.back()) &&
        std::find(plan.xlines.begin(), plan.xlines.end(), x) == plan.xlines.end()) {
      plan.xlines.push_back(x);
      return true;
    }
  }
  return false;
}

struct PieceSet {
  std::vector<Segment> segs;
  Rational minx, maxx, miny, maxy;
};

PieceSet piece_set(const std::vector<ClipPiece>& pieces) {
  PieceSet ps;
  bool first = true;
  for (const ClipPiece& p : pieces) {
    ps.segs.push_back(p.geom);
    for (const Point& q : {p.geom.a, p.geom.b}) {
      if (first || q.x < ps.minx) ps.minx = q.x;
      if (first || q.x > ps.maxx) ps.maxx = q.x;
      if (first || q.y < ps.miny) ps.miny = q.y;
      if (first || q.y > ps.maxy) ps.maxy = q.y;
      first = false;
    }
  }
  return ps;
}

// separate two disjoint piece sets inside face f: one partial cut when they
// are axis-separable, otherwise a fine full-line subdivision of the face
bool plan_separation(const RepCache& rc, const GridOverlay& H, RepairPlan& plan,
                     SeededRationals& rng, const OverlayFace& f, const PieceSet& A,
                     const PieceSet& B) {
  if (A.maxy < B.miny) return plan_hcut(rc, H, plan, rng, A.maxy, B.miny, f.x0, f.x1);
  if (B.maxy < A.miny) return plan_hcut(rc, H, plan, rng, B.maxy, A.miny, f.x0, f.x1);
  if (A.maxx < B.minx) return plan_vcut(rc, H, plan, rng, A.maxx, B.minx, f.y0, f.y1);
  if (B.maxx < A.minx) return plan_vcut(rc, H, plan, rng, B.maxx, A.minx, f.y0, f.y1);
  // fine subdivision: spacing below half the distance between the two sets
  Rational d2;
  bool first = true;
  for (const Segment& a : A.segs)
    for (const Segment& b : B.segs) {
      Rational d = dist2_segments(a, b);
      if (first || d < d2) d2 = d;
      first = false;
    }
  if (first || d2 == 0)
    throw VpgError("GeometryFailure", "cannot separate touching subcurves");
  Rational sp = sqrt_lower_bound(d2) / 2;
  if (!(sp > 0)) throw VpgError("GeometryFailure", "separation distance underflow");
  auto lines_for = [&](const Rational& lo, const Rational& hi, bool horizontal) {
    Rational width = hi - lo;
    mpz_class n = mpz_class(mpq_class(width / sp).get_num() / mpq_class(width / sp).get_den()) + 1;
    if (n > 200) throw VpgError("NonTermination", "face subdivision requires too many lines");
    long cnt = n.get_si();
    for (long i = 1; i <= cnt; ++i) {
      Rational base = lo + width * i / (cnt + 1);
      for (int k = 0; k < 48; ++k) {
        Rational jitter = (rng.next() - Rational(1, 2)) * width / ((cnt + 1) * 8);
        Rational c = base + jitter;
        if (!(c > lo && c < hi)) continue;
        if (horizontal) {
          if (clean_horizontal(rc, H, c, H.xs.front(), H.xs.back()) &&
              std::find(plan.ylines.begin(), plan.ylines.end(), c) == plan.ylines.end()) {
            plan.ylines.push_back(c);
            break;
          }
        } else {
          if (clean_vertical(rc, H, c, H.ys.front(), H.ys.back()) &&
              std::find(plan.xlines.begin(), plan.xlines.end(), c) == plan.xlines.end()) {
            plan.xlines.push_back(c);
            break;
          }
        }
      }
    }
  };
  lines_for(f.x0, f.x1, false);
  lines_for(f.y0, f.y1, true);
  std::sort(plan.xlines.begin(), plan.xlines.end());
  std::sort(plan.ylines.begin(), plan.ylines.end());
  return true;
}

RepairPlan plan_repairs(const RepCache& rc, const OverlayGeometry& g, const GridOverlay& H,
                        const Scan& sc) {
  RepairPlan plan;
  SeededRationals rng(seed_from_env());

  // P2 first: nudge offending lines; nothing else this pass
  if (!sc.p2_vertex.empty() || !sc.p2_edge.empty()) {
    std::set<Rational> bad_x, bad_y;
    for (const auto& v : sc.p2_vertex) {
      const Point& p = g.vertices[v.vertex].p;
      if (contains_coord(H.xs, p.x))
        bad_x.insert(p.x);
      else if (contains_coord(H.ys, p.y))
        bad_y.insert(p.y);
    }
    for (const auto& e : sc.p2_edge) {
      Segment s = g.edge_segment(e.edge);
      if (s.vertical() && contains_coord(H.xs, s.a.x))
        bad_x.insert(s.a.x);
      else if (s.horizontal() && contains_coord(H.ys, s.a.y))
        bad_y.insert(s.a.y);
    }
    std::vector<Rational> mergedx = H.xs, mergedy = H.ys;
    for (const VerticalCut& vc : H.vcuts) mergedx.push_back(vc.x);
    for (const HorizontalCut& hc : all_hcuts(H)) mergedy.push_back(hc.y);
    std::sort(mergedx.begin(), mergedx.end());
    std::sort(mergedy.begin(), mergedy.end());
    auto nudge = [&](const Rational& oldc, const std::vector<Rational>& merged, bool isx) {
      auto it = std::lower_bound(merged.begin(), merged.end(), oldc);
      Rational lo = (it == merged.begin()) ? oldc - H.pitch : *(it - 1);
      Rational hi = (it + 1 == merged.end()) ? oldc + H.pitch : *(it + 1);
      for (int k = 0; k < 64; ++k) {
        Rational c = sample_between(rng, lo, hi);
        bool ok = isx ? clean_vertical(rc, H, c, H.ys.front(), H.ys.back())
                      : clean_horizontal(rc, H, c, H.xs.front(), H.xs.back());
        if (!ok) continue;
        if (isx)
          plan.xnudge.push_back({oldc, c});
        else
          plan.ynudge.push_back({oldc, c});
        return;
      }
      throw VpgError("GeometryFailure", "no clean position found while nudging a grid line");
    };
    for (const Rational& x : bad_x) nudge(x, mergedx, true);
    for (const Rational& y : bad_y) nudge(y, mergedy, false);
    return plan;
  }

  // P4: perpendicular cut between consecutive crossings of an over-crossed edge
  for (const auto& ec : sc.p4_multi) {
    const OverlayEdge& e = g.edges[ec.edge];
    Point pa = g.vertices[e.a].p;
    std::vector<Point> pts = ec.pts;
    if (e.horizontal) {
      Rational ylo, yhi;
      if (!contains_coord(H.ys, pa.y) || !line_neighbours(H.ys, pa.y, ylo, yhi)) continue;
      std::sort(pts.begin(), pts.end());
      for (std::size_t k = 1; k < pts.size(); ++k) {
        bool done = false;
        for (int attempt = 0; attempt < 48 && !done; ++attempt) {
          Rational x = sample_between(rng, pts[k - 1].x, pts[k].x);
          VerticalCut vc{x, ylo, yhi};
          if (!clean_vertical(rc, H, x, ylo, yhi)) continue;
          if (vcut_conflicts(H, plan, vc)) {
            VerticalCut south{x, ylo, pa.y}, north{x, pa.y, yhi};
            if (!vcut_conflicts(H, plan, south) && clean_vertical(rc, H, x, ylo, pa.y))
              vc = south;
            else if (!vcut_conflicts(H, plan, north) && clean_vertical(rc, H, x, pa.y, yhi))
              vc = north;
            else
              continue;
          }
          plan.vcuts.push_back(vc);
          done = true;
        }
      }
    } else {
      Rational xlo, xhi;
      if (!contains_coord(H.xs, pa.x) || !line_neighbours(H.xs, pa.x, xlo, xhi)) continue;
      std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.y < b.y; });
      for (std::size_t k = 1; k < pts.size(); ++k) {
        bool done = false;
        for (int attempt = 0; attempt < 48 && !done; ++attempt) {
          Rational y = sample_between(rng, pts[k - 1].y, pts[k].y);
          HorizontalCut hc{y, xlo, xhi};
          if (!clean_horizontal(rc, H, y, xlo, xhi)) continue;
          if (hcut_conflicts(H, plan, hc)) {
            HorizontalCut west{y, xlo, pa.x}, east{y, pa.x, xhi};
            if (!hcut_conflicts(H, plan, west) && clean_horizontal(rc, H, y, xlo, pa.x))
              hc = west;
            else if (!hcut_conflicts(H, plan, east) && clean_horizontal(rc, H, y, pa.x, xhi))
              hc = east;
            else
              continue;
          }
          plan.hcuts.push_back(hc);
          done = true;
        }
      }
    }
  }
  if (plan.any()) return plan;

  // P3: buffer cuts between special points
  for (const auto& m : sc.p3_multi) {
    const OverlayFace& f = g.faces[m.face];
    const Point &s1 = m.pts[0], &s2 = m.pts[1];
    Rational dx = s1.x < s2.x ? s2.x - s1.x : s1.x - s2.x;
    Rational dy = s1.y < s2.y ? s2.y - s1.y : s1.y - s2.y;
    if (dy >= dx && dy > 0) {
      Rational lo = std::min(s1.y, s2.y), hi = std::max(s1.y, s2.y);
      Rational third = (hi - lo) / 3;
      plan_hcut(rc, H, plan, rng, lo, lo + third, f.x0, f.x1);
      plan_hcut(rc, H, plan, rng, hi - third, hi, f.x0, f.x1);
    } else if (dx > 0) {
      Rational lo = std::min(s1.x, s2.x), hi = std::max(s1.x, s2.x);
      Rational third = (hi - lo) / 3;
      plan_vcut(rc, H, plan, rng, lo, lo + third, f.y0, f.y1);
      plan_vcut(rc, H, plan, rng, hi - third, hi, f.y0, f.y1);
    }
  }
  for (const auto& [fa, fb] : sc.p3_adj) {
    const OverlayFace& f = g.faces[fa];
    const OverlayFace& f2 = g.faces[fb];
    // special point inside f (recompute; scan stores only face ids here)
    Point s{};
    bool found = false;
    for (const SpecialPoint& spp : rc.specials)
      if (strictly_inside(spp.p, f)) {
        s = spp.p;
        found = true;
        break;
      }
    if (!found) continue;
    if (f.x1 == f2.x0)
      plan_vcut(rc, H, plan, rng, s.x, f.x1, f.y0, f.y1);
    else if (f2.x1 == f.x0)
      plan_vcut(rc, H, plan, rng, f.x0, s.x, f.y0, f.y1);
    else if (f.y1 == f2.y0)
      plan_hcut(rc, H, plan, rng, s.y, f.y1, f.x0, f.x1);
    else if (f2.y1 == f.y0)
      plan_hcut(rc, H, plan, rng, f.y0, s.y, f.x0, f.x1);
  }
  if (plan.any()) return plan;

  // P5 / P6: separate disjoint subcurves within a face
  for (const auto& m : sc.p5_nocross) {
    const OverlayFace& f = g.faces[m.face];
    PieceSet A = piece_set(clip_curve(rc.curves[m.c1], f).pieces);
    PieceSet B = piece_set(clip_curve(rc.curves[m.c2], f).pieces);
    if (!A.segs.empty() && !B.segs.empty()) plan_separation(rc, H, plan, rng, f, A, B);
  }
  for (const auto& m : sc.p5_many) {
    const OverlayFace& f = g.faces[m.face];
    // separate the first pair with no crossing inside
    for (std::size_t a = 0; a < m.curves.size() && !plan.any(); ++a)
      for (std::size_t b = a + 1; b < m.curves.size() && !plan.any(); ++b) {
        std::vector<Point> xs =
            curve_intersection_points(rc.curves[m.curves[a]], rc.curves[m.curves[b]]);
        bool inside = false;
        for (const Point& p : xs)
          if (strictly_inside(p, f)) inside = true;
        if (inside) continue;
        PieceSet A = piece_set(clip_curve(rc.curves[m.curves[a]], f).pieces);
        PieceSet B = piece_set(clip_curve(rc.curves[m.curves[b]], f).pieces);
        if (!A.segs.empty() && !B.segs.empty()) plan_separation(rc, H, plan, rng, f, A, B);
      }
  }
  for (const auto& m : sc.p6_multi) {
    const OverlayFace& f = g.faces[m.face];
    auto visits = clip_visits(clip_curve(rc.curves[m.curve], f));
    if (visits.size() < 2) continue;
    PieceSet A = piece_set(visits[0]);
    PieceSet B = piece_set(visits[1]);
    plan_separation(rc, H, plan, rng, f, A, B);
  }
  return plan;
}

GridOverlay apply_plan(const GridOverlay& H, const RepairPlan& plan) {
  GridOverlay out = H;
  for (const auto& [oldc, newc] : plan.xnudge) {
    for (Rational& c : out.xs)
      if (c == oldc) c = newc;
    for (HorizontalCut& hc : out.hcuts) {
      if (hc.x0 == oldc) hc.x0 = newc;
      if (hc.x1 == oldc) hc.x1 = newc;
    }
  }
  for (const auto& [oldc, newc] : plan.ynudge) {
    for (Rational& c : out.ys)
      if (c == oldc) c = newc;
    for (VerticalCut& vc : out.vcuts) {
      if (vc.y0 == oldc) vc.y0 = newc;
      if (vc.y1 == oldc) vc.y1 = newc;
    }
  }
  for (const Rational& x : plan.xlines)
    if (!contains_coord(out.xs, x)) out.xs.push_back(x);
  for (const Rational& y : plan.ylines)
    if (!contains_coord(out.ys, y)) out.ys.push_back(y);
  std::sort(out.xs.begin(), out.xs.end());
  std::sort(out.ys.begin(), out.ys.end());
  for (const HorizontalCut& hc : plan.hcuts) out.hcuts.push_back(hc);
  for (const VerticalCut& vc : plan.vcuts) out.vcuts.push_back(vc);
  return out;
}

}  // namespace

std::string OverlayReport::first_failure() const {
  const PropertyCheck* checks[6] = {&p1, &p2, &p3, &p4, &p5, &p6};
  for (int i = 0; i < 6; ++i)
    if (!checks[i]->pass)
      return "P" + std::to_string(i + 1) + ": " +
             (checks[i]->witnesses.empty() ? "failed" : checks[i]->witnesses.front());
  return "";
}

OverlayReport validate_overlay(const Representation& rep, const GridOverlay& H) {
  RepCache rc = make_cache(rep);
  OverlayGeometry g;
  try {
    g = overlay_geometry(H);
  } catch (const VpgError& e) {
    OverlayReport r;
    r.p1.pass = false;
    r.p1.witnesses.push_back(e.what());
    return r;
  }
  Scan sc = scan_overlay(rc, g, H);
  return report_from_scan(sc, g, rc);
}

GridOverlay repair_overlay(const Representation& rep, const GridOverlay& H,
                           const OverlayReport& report) {
  if (report.all_pass()) return H;
  RepCache rc = make_cache(rep);
  OverlayGeometry g = overlay_geometry(H);
  Scan sc = scan_overlay(rc, g, H);
  if (sc.clean()) return H;
  RepairPlan plan = plan_repairs(rc, g, H, sc);
  if (!plan.any())
    throw VpgError("GeometryFailure", "no applicable repair for remaining overlay violations");
  return apply_plan(H, plan);
}

GridOverlay build_overlay(const Representation& rep, const std::optional<std::string>& anchor) {
  PropernessReport pr = validate_proper(rep);
  if (!pr.proper())
    throw VpgError("NotProper",
                   "overlay construction requires a proper representation: " +
                       pr.violations.front().describe());
  RepCache rc = make_cache(rep);
  if (rc.empty())
    throw VpgError("GeometryFailure", "cannot build an overlay over an empty representation");

  Point a0;
  if (anchor) {
    auto it = rep.curves.find(*anchor);
    if (it == rep.curves.end())
      throw VpgError("GeometryFailure", "anchor vertex has no curve: " + *anchor);
    a0 = curve_canonicalize(it->second).pts.front();
    if (!(a0.x == rc.minx))
      throw VpgError("GeometryFailure",
                     "anchored overlay expects the anchor curve to start on the west edge");
  }

  Rational delta = min_feature_distance(rc.curves);
  Rational p = delta / 3;
  SeededRationals rng(seed_from_env());

  for (int attempt = 0; attempt < 128; ++attempt) {
    Rational fx = rng.next(), fy = rng.next();
    Rational x_first = anchor ? Rational(a0.x - p / 3 - fx * p / 3)
                              : Rational(rc.minx - p - fx * p / 2);
    Rational y_first = rc.miny - p - fy * p / 2;

    auto build_lines = [&p](const Rational& first, const Rational& upto) {
      std::vector<Rational> lines;
      Rational c = first;
      while (c < upto) {
        lines.push_back(c);
        c = c + p;
      }
      lines.push_back(c);
      return lines;
    };
    std::vector<Rational> xs = build_lines(x_first, rc.maxx + p);
    std::vector<Rational> ys = build_lines(y_first, rc.maxy + p);
    while (xs.size() < 4) xs.push_back(xs.back() + p);
    while (ys.size() < 4) ys.push_back(ys.back() + p);

    // genericity: no special coordinate on a line
    bool ok = true;
    for (const SpecialPoint& s : rc.specials) {
      if (contains_coord(xs, s.p.x) || contains_coord(ys, s.p.y)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    // no grid vertex on an oblique curve segment
    for (const Curve& c : rc.curves) {
      for (std::size_t i = 0; i < c.segment_count() && ok; ++i) {
        Segment s = c.segment(i);
        if (s.axis_parallel()) continue;
        Rational dx = s.b.x - s.a.x, dy = s.b.y - s.a.y;
        for (const Rational& X : xs) {
          Rational lo = std::min(s.a.x, s.b.x), hi = std::max(s.a.x, s.b.x);
          if (X < lo || X > hi) continue;
          Rational yAt = s.a.y + (X - s.a.x) * dy / dx;
          if (contains_coord(ys, yAt)) {
            ok = false;
            break;
          }
        }
      }
      if (!ok) break;
    }
    if (!ok) continue;

    std::optional<GridWindow> window;
    if (anchor) {
      // anchor clearance from lines
      auto clear = [&p](const std::vector<Rational>& lines, const Rational& c) {
        for (const Rational& l : lines) {
          Rational d = c < l ? l - c : c - l;
          if (d * 3 < p) return false;
        }
        return true;
      };
      if (!clear(xs, a0.x) || !clear(ys, a0.y)) continue;
      std::size_t j = 0;
      while (j + 1 < ys.size() && !(ys[j] < a0.y && a0.y < ys[j + 1])) ++j;
      if (j + 1 >= ys.size()) continue;
      Rational ya = (ys[j] + a0.y) / 2, yb = (ys[j + 1] + a0.y) / 2;
      if (contains_coord(ys, ya) || contains_coord(ys, yb)) continue;
      bool wok = true;
      for (const SpecialPoint& s : rc.specials)
        if (s.p.y == ya || s.p.y == yb) wok = false;
      for (const Rational& wx : {xs[0], xs[1]})
        for (const Rational& wy : {ya, yb})
          if (point_on_any_curve(rc, Point{wx, wy})) wok = false;
      if (!wok) continue;
      // the westmost strip must contain only the anchor's initial piece
      const Curve& ac = rc.curves[std::find(rc.ids.begin(), rc.ids.end(), *anchor) -
                                  rc.ids.begin()];
      for (std::size_t ci = 0; ci < rc.curves.size() && wok; ++ci) {
        const Curve& c = rc.curves[ci];
        for (std::size_t si = 0; si < c.segment_count(); ++si) {
          if (&c == &ac && si == 0) continue;
          Segment s = c.segment(si);
          Rational lo = std::min(s.a.x, s.b.x), hi = std::max(s.a.x, s.b.x);
          if (lo < xs[1] && hi > xs[0]) {
            wok = false;
            break;
          }
        }
      }
      if (!wok) continue;
      window = GridWindow{ya, yb};
    }

    GridOverlay H;
    H.xs = xs;
    H.ys = ys;
    H.window = window;
    H.pitch = p;
    H.offset = Point{fx * p, fy * p};

    bool valid = false;
    for (int pass = 0; pass < 10; ++pass) {
      OverlayGeometry g = overlay_geometry(H);
      Scan sc = scan_overlay(rc, g, H);
      if (sc.clean()) {
        valid = true;
        break;
      }
      RepairPlan plan = plan_repairs(rc, g, H, sc);
      if (!plan.any())
        throw VpgError("NonTermination",
                       "overlay repair stalled: " + report_from_scan(sc, g, rc).first_failure());
      H = apply_plan(H, plan);
    }
    if (!valid) {
      OverlayGeometry g = overlay_geometry(H);
      Scan sc = scan_overlay(rc, g, H);
      if (!sc.clean())
        throw VpgError("NonTermination", "overlay repair did not converge in 10 passes: " +
                                             report_from_scan(sc, g, rc).first_failure());
    }
    return H;
  }
  throw VpgError("GeometryFailure", "no generic grid offset found");
}

SegmentArrangement segmentize(const Representation& rep, const GridOverlay& H) {
  RepCache rc = make_cache(rep);
  OverlayGeometry g = overlay_geometry(H);

  // minimum gap between parallel overlay lines (conservative: all coordinates)
  std::vector<Rational> mx = H.xs, my = H.ys;
  for (const VerticalCut& vc : H.vcuts) mx.push_back(vc.x);
  for (const HorizontalCut& hc : all_hcuts(H)) my.push_back(hc.y);
  std::sort(mx.begin(), mx.end());
  std::sort(my.begin(), my.end());
  Rational s_min;
  bool have_s = false;
  auto scan_gaps = [&s_min, &have_s](const std::vector<Rational>& v) {
    for (std::size_t i = 1; i < v.size(); ++i) {
      Rational gap = v[i] - v[i - 1];
      if (!have_s || gap < s_min) {
        s_min = gap;
        have_s = true;
      }
    }
  };
  scan_gaps(mx);
  scan_gaps(my);
  if (!have_s) throw VpgError("GeometryFailure", "degenerate overlay");

  Rational mu = s_min / 3;
  if (H.pitch > 0 && H.pitch / 8 < mu) mu = H.pitch / 8;
  if (!rc.empty()) {
    Rational cap2;
    bool first = true;
    for (const OverlayVertex& v : g.vertices)
      for (const Curve& c : rc.curves)
        for (std::size_t i = 0; i < c.segment_count(); ++i) {
          Rational d = dist2_point_segment(v.p, c.segment(i));
          if (first || d < cap2) cap2 = d;
          first = false;
        }
    if (!first) {
      if (cap2 == 0)
        throw VpgError("GeometryFailure", "overlay vertex lies on a curve; offsets impossible");
      Rational cap = sqrt_lower_bound(cap2);
      if (cap == 0)
        throw VpgError("GeometryFailure", "vertex clearance underflow");
      if (cap / 2 < mu) mu = cap / 2;
    }
  }
  if (!(mu > 0)) throw VpgError("GeometryFailure", "no room for segment offsets");

  SegmentArrangement out;
  out.mu = mu;
  auto u_of = [&mu, &g](std::size_t vi) {
    return g.vertices[vi].window_vertex ? 2 * mu : mu;
  };

  for (std::size_t vi = 0; vi < g.vertices.size(); ++vi) {
    const Point& p = g.vertices[vi].p;
    Rational u = u_of(vi);
    Segment s1(Point{p.x - 6 * u / 16, p.y + u / 16}, Point{p.x + 6 * u / 16, p.y + u / 16});
    Segment s2(Point{p.x + u / 16, p.y - 6 * u / 16}, Point{p.x + u / 16, p.y + 6 * u / 16});
    std::string id1 = "gv1_" + std::to_string(vi), id2 = "gv2_" + std::to_string(vi);
    out.segments.push_back({id1, s1});
    out.roles[id1] = SegRole{SegRole::VertexSeg, vi, 1, 0};
    out.segments.push_back({id2, s2});
    out.roles[id2] = SegRole{SegRole::VertexSeg, vi, 2, 0};
  }
  for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
    const OverlayEdge& e = g.edges[ei];
    Point a = g.vertices[e.a].p, b = g.vertices[e.b].p;
    Rational ua = u_of(e.a), ub = u_of(e.b);
    Segment s = e.horizontal
                    ? Segment(Point{a.x + 2 * ua / 16, a.y}, Point{b.x - 2 * ub / 16, a.y})
                    : Segment(Point{a.x, a.y + 2 * ua / 16}, Point{a.x, b.y - 2 * ub / 16});
    std::string id = "ge_" + std::to_string(ei);
    out.segments.push_back({id, s});
    out.roles[id] = SegRole{SegRole::EdgeSeg, 0, 0, ei};
  }
  for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
    const OverlayEdge& e = g.edges[ei];
    for (std::size_t end = 0; end < 2; ++end) {
      std::size_t vi = end == 0 ? e.a : e.b;
      std::size_t wi = end == 0 ? e.b : e.a;
      const Point& v = g.vertices[vi].p;
      const Point& w = g.vertices[wi].p;
      Rational u = u_of(vi);
      Segment s;
      if (!e.horizontal) {
        Rational ylvl = w.y > v.y ? Rational(v.y + 4 * u / 16) : Rational(v.y - 4 * u / 16);
        s = Segment(Point{v.x - 2 * u / 16, ylvl}, Point{v.x + 2 * u / 16, ylvl});
      } else {
        Rational xlvl = w.x > v.x ? Rational(v.x + 4 * u / 16) : Rational(v.x - 4 * u / 16);
        s = Segment(Point{xlvl, v.y - 2 * u / 16}, Point{xlvl, v.y + 2 * u / 16});
      }
      std::string id = "gc_" + std::to_string(vi) + "_" + std::to_string(ei);
      out.segments.push_back({id, s});
      out.roles[id] = SegRole{SegRole::Connector, vi, 0, ei};
    }
  }
  return out;
}

GrillOutput grill(const Representation& rep, const std::optional<std::string>& anchor) {
  GrillOutput out;
  out.overlay = build_overlay(rep, anchor);
  out.arrangement = segmentize(rep, out.overlay);

  OverlayGeometry g = overlay_geometry(out.overlay);
  out.representation = rep;
  for (const auto& [id, seg] : out.arrangement.segments) {
    if (out.representation.curves.count(id))
      throw VpgError("GeometryFailure", "curve id collides with grill segment id: " + id);
    Curve c;
    c.pts = {seg.a, seg.b};
    out.representation.curves[id] = c;
    const SegRole& role = out.arrangement.roles.at(id);
    std::string desc;
    switch (role.kind) {
      case SegRole::VertexSeg:
        desc = "S" + std::to_string(role.index) + "(" + pt_str(g.vertices[role.vertex].p) + ")";
        break;
      case SegRole::EdgeSeg:
        desc = "S(" + seg_str(g.edge_segment(role.edge)) + ")";
        break;
      case SegRole::Connector:
        desc = "C(" + pt_str(g.vertices[role.vertex].p) + "," +
               seg_str(g.edge_segment(role.edge)) + ")";
        break;
    }
    out.roles[id] = desc;
  }
  for (const auto& kv : rep.curves) out.originalVertices.insert(kv.first);

  PropernessReport pr = validate_proper(out.representation);
  if (!pr.proper())
    throw VpgError("GeometryFailure", "segmentization produced an improper representation: " +
                                          pr.violations.front().describe());
  out.graph = intersection_graph(out.representation);
  return out;
}

}  // namespace vpg
