#include "vpg/rep.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "vpg/detail.hpp"

namespace vpg {

std::vector<Curve> Representation::curve_list() const {
  std::vector<Curve> out;
  out.reserve(curves.size());
  for (const auto& [id, c] : curves) out.push_back(c);
  return out;
}

std::vector<std::string> Representation::ids() const {
  std::vector<std::string> out;
  out.reserve(curves.size());
  for (const auto& [id, c] : curves) out.push_back(id);
  return out;
}

std::string Violation::describe() const {
  std::ostringstream os;
  auto pt = [](const Point& p) {
    return "(" + rational_str(p.x) + ", " + rational_str(p.y) + ")";
  };
  switch (kind) {
    case ViolationKind::SelfIntersection:
      os << "SelfIntersection " << vertices[0] << " at " << pt(point);
      break;
    case ViolationKind::Overlap:
      os << "Overlap " << vertices[0] << "," << vertices[1] << " along " << pt(overlap.a) << "-"
         << pt(overlap.b);
      break;
    case ViolationKind::InfiniteIntersection:
      os << "InfiniteIntersection " << vertices[0] << "," << vertices[1];
      break;
    case ViolationKind::TriplePoint: {
      os << "TriplePoint at " << pt(point) << " on";
      for (const auto& v : vertices) os << " " << v;
      break;
    }
    case ViolationKind::Touch:
      os << "Touch " << vertices[0] << "," << vertices[1] << " at " << pt(point);
      break;
    case ViolationKind::EndpointOnCurve:
      os << "EndpointOnCurve " << vertices[0] << "," << vertices[1] << " at " << pt(point);
      break;
  }
  return os.str();
}

namespace {

struct Dir {
  Rational x, y;
};

// Cyclic order around a point, counterclockwise from the positive x-axis.
int half_of(const Dir& d) {
  if (d.y > 0) return 0;
  if (d.y == 0 && d.x > 0) return 0;
  return 1;
}

bool dir_before(const Dir& a, const Dir& b) {
  int ha = half_of(a), hb = half_of(b);
  if (ha != hb) return ha < hb;
  Rational cr = a.x * b.y - a.y * b.x;
  return cr > 0;
}

bool dir_equal(const Dir& a, const Dir& b) {
  if (half_of(a) != half_of(b)) return false;
  return a.x * b.y - a.y * b.x == 0;
}

// Outgoing branch directions of curve c at a canonical position.
std::vector<Dir> branches_at(const Curve& c, const CurvePos& pos) {
  std::vector<Dir> out;
  std::size_t n = c.segment_count();
  const auto& pts = c.pts;
  bool at_start = (pos.seg == 0 && pos.t == 0);
  bool at_end = (pos.seg + 1 == n && pos.t == 1);
  if (!at_start) {
    if (pos.t > 0) {
      out.push_back({pts[pos.seg].x - pts[pos.seg + 1].x, pts[pos.seg].y - pts[pos.seg + 1].y});
    } else {
      out.push_back({pts[pos.seg - 1].x - pts[pos.seg].x, pts[pos.seg - 1].y - pts[pos.seg].y});
    }
  }
  if (!at_end) {
    if (pos.t < 1) {
      out.push_back({pts[pos.seg + 1].x - pts[pos.seg].x, pts[pos.seg + 1].y - pts[pos.seg].y});
    } else {
      out.push_back({pts[pos.seg + 2].x - pts[pos.seg + 1].x, pts[pos.seg + 2].y - pts[pos.seg + 1].y});
    }
  }
  return out;
}

// True iff the two branch pairs interleave around the meeting point, i.e. the
// curves genuinely cross rather than touch.
bool crosses_transversally(const std::vector<Dir>& bu, const std::vector<Dir>& bv) {
  if (bu.size() != 2 || bv.size() != 2) return false;
  struct Ray {
    Dir d;
    int owner;
  };
  std::vector<Ray> rays = {{bu[0], 0}, {bu[1], 0}, {bv[0], 1}, {bv[1], 1}};
  for (std::size_t i = 0; i < rays.size(); ++i) {
    for (std::size_t j = i + 1; j < rays.size(); ++j) {
      if (dir_equal(rays[i].d, rays[j].d)) return false;  // tangential contact
    }
  }
  std::sort(rays.begin(), rays.end(), [](const Ray& a, const Ray& b) {
    return dir_before(a.d, b.d);
  });
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (rays[i].owner == rays[(i + 1) % rays.size()].owner) return false;
  }
  return true;
}

struct PairScan {
  std::vector<Violation> violations;
  std::vector<std::pair<Point, std::pair<std::string, std::string>>> incidences;
};

PairScan scan_pair(const std::string& u, const Curve& cu, const std::string& v, const Curve& cv) {
  PairScan out;
  bool overlapped = false;
  std::size_t nu = cu.segment_count(), nv = cv.segment_count();
  for (const auto& ci : curve_intersections(cu, cv)) {
    if (ci.kind == IntersectionKind::OverlapSegment) {
      Violation viol;
      viol.kind = ViolationKind::Overlap;
      viol.vertices = {u, v};
      viol.overlap = ci.overlap;
      viol.point = ci.overlap.a;
      out.violations.push_back(std::move(viol));
      overlapped = true;
      continue;
    }
    out.incidences.push_back({ci.point, {u, v}});
    bool u_end = (ci.pos1.seg == 0 && ci.pos1.t == 0) || (ci.pos1.seg + 1 == nu && ci.pos1.t == 1);
    bool v_end = (ci.pos2.seg == 0 && ci.pos2.t == 0) || (ci.pos2.seg + 1 == nv && ci.pos2.t == 1);
    if (u_end || v_end) {
      Violation viol;
      viol.kind = ViolationKind::EndpointOnCurve;
      viol.vertices = u_end ? std::vector<std::string>{u, v} : std::vector<std::string>{v, u};
      viol.point = ci.point;
      out.violations.push_back(std::move(viol));
      continue;
    }
    auto bu = branches_at(cu, ci.pos1);
    auto bv = branches_at(cv, ci.pos2);
    if (!crosses_transversally(bu, bv)) {
      Violation viol;
      viol.kind = ViolationKind::Touch;
      viol.vertices = {u, v};
      viol.point = ci.point;
      out.violations.push_back(std::move(viol));
    }
  }
  if (overlapped) {
    Violation viol;
    viol.kind = ViolationKind::InfiniteIntersection;
    viol.vertices = {u, v};
    out.violations.push_back(std::move(viol));
  }
  return out;
}

// closed bounding boxes let us skip curve pairs that cannot meet
struct BBox {
  Rational x0, x1, y0, y1;
};

BBox bbox_of(const Curve& c) {
  BBox b;
  bool first = true;
  for (const Point& p : c.pts) {
    if (first || p.x < b.x0) b.x0 = p.x;
    if (first || p.x > b.x1) b.x1 = p.x;
    if (first || p.y < b.y0) b.y0 = p.y;
    if (first || p.y > b.y1) b.y1 = p.y;
    first = false;
  }
  return b;
}

// all index pairs with overlapping boxes, by a sweep over x-sorted boxes;
// output is sorted lexicographically like the naive double loop would emit
std::vector<std::pair<std::size_t, std::size_t>> overlap_pairs(const std::vector<BBox>& boxes) {
  std::size_t n = boxes.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&boxes](std::size_t a, std::size_t b) { return boxes[a].x0 < boxes[b].x0; });
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t i = order[a];
    for (std::size_t b = a + 1; b < n; ++b) {
      std::size_t j = order[b];
      if (boxes[i].x1 < boxes[j].x0) break;  // later boxes start even further right
      if (!(boxes[i].y1 < boxes[j].y0 || boxes[j].y1 < boxes[i].y0))
        pairs.push_back({std::min(i, j), std::max(i, j)});
    }
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

std::vector<Violation> scan_simplicity(const std::string& id, const Curve& c) {
  std::vector<Violation> out;
  std::size_t n = c.segment_count();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      auto r = seg_intersect(c.segment(i), c.segment(j));
      if (r.kind == IntersectionKind::Empty) continue;
      if (j == i + 1 && r.kind == IntersectionKind::SinglePoint && r.point == c.pts[j]) {
        continue;  // consecutive edges meet at their shared waypoint
      }
      Violation viol;
      viol.kind = ViolationKind::SelfIntersection;
      viol.vertices = {id};
      viol.point = r.kind == IntersectionKind::SinglePoint ? r.point : r.overlap.a;
      out.push_back(std::move(viol));
    }
  }
  return out;
}

}  // namespace

namespace detail {

Graph intersection_graph_impl(const Representation& rep, bool parallel) {
  std::vector<std::string> ids = rep.ids();
  std::vector<const Curve*> cs;
  cs.reserve(ids.size());
  for (const auto& id : ids) cs.push_back(&rep.curves.at(id));
  std::size_t n = ids.size();
  std::vector<BBox> boxes;
  boxes.reserve(n);
  for (const Curve* c : cs) boxes.push_back(bbox_of(*c));
  std::vector<std::pair<std::size_t, std::size_t>> pairs = overlap_pairs(boxes);
  std::vector<char> hit(pairs.size(), 0);
#ifdef _OPENMP
  if (parallel) {
    #pragma omp parallel for schedule(dynamic, 8)
    for (long long k = 0; k < static_cast<long long>(pairs.size()); ++k) {
      hit[k] = curves_share_point(*cs[pairs[k].first], *cs[pairs[k].second]) ? 1 : 0;
    }
  } else
#endif
  {
    (void)parallel;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      hit[k] = curves_share_point(*cs[pairs[k].first], *cs[pairs[k].second]) ? 1 : 0;
    }
  }
  Graph g;
  for (const auto& id : ids) g.add_vertex(id);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (hit[k]) g.add_edge(ids[pairs[k].first], ids[pairs[k].second]);
  }
  return g;
}

PropernessReport validate_proper_impl(const Representation& rep, bool parallel) {
  PropernessReport rpt;
  std::vector<std::string> ids = rep.ids();
  std::vector<Curve> canon;
  canon.reserve(ids.size());
  for (const auto& id : ids) canon.push_back(curve_canonicalize(rep.curves.at(id)));

  for (std::size_t i = 0; i < ids.size(); ++i) {
    auto v = scan_simplicity(ids[i], canon[i]);
    rpt.violations.insert(rpt.violations.end(), v.begin(), v.end());
  }

  std::size_t n = ids.size();
  std::vector<BBox> boxes;
  boxes.reserve(n);
  for (const Curve& c : canon) boxes.push_back(bbox_of(c));
  std::vector<std::pair<std::size_t, std::size_t>> pairs = overlap_pairs(boxes);
  std::vector<PairScan> scans(pairs.size());
#ifdef _OPENMP
  if (parallel) {
    #pragma omp parallel for schedule(dynamic, 8)
    for (long long k = 0; k < static_cast<long long>(pairs.size()); ++k) {
      scans[k] = scan_pair(ids[pairs[k].first], canon[pairs[k].first], ids[pairs[k].second],
                           canon[pairs[k].second]);
    }
  } else
#endif
  {
    (void)parallel;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      scans[k] = scan_pair(ids[pairs[k].first], canon[pairs[k].first], ids[pairs[k].second],
                           canon[pairs[k].second]);
    }
  }

  std::map<Point, std::set<std::string>> at_point;
  for (const auto& s : scans) {
    rpt.violations.insert(rpt.violations.end(), s.violations.begin(), s.violations.end());
    for (const auto& [p, uv] : s.incidences) {
      at_point[p].insert(uv.first);
      at_point[p].insert(uv.second);
    }
  }
  for (const auto& [p, verts] : at_point) {
    if (verts.size() >= 3) {
      Violation viol;
      viol.kind = ViolationKind::TriplePoint;
      viol.vertices.assign(verts.begin(), verts.end());
      viol.point = p;
      rpt.violations.push_back(std::move(viol));
    }
  }
  return rpt;
}

}  // namespace detail

namespace {

bool default_parallel() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

}  // namespace

Graph intersection_graph(const Representation& rep) {
  return detail::intersection_graph_impl(rep, default_parallel());
}

PropernessReport validate_proper(const Representation& rep) {
  return detail::validate_proper_impl(rep, default_parallel());
}

CrossingSequence crossing_sequence(const Representation& rep, const std::string& v) {
  auto rpt = validate_proper(rep);
  if (!rpt.proper()) {
    throw VpgError("NotProper", "crossing_sequence requires a proper representation; first: " +
                                    rpt.violations.front().describe());
  }
  auto it = rep.curves.find(v);
  if (it == rep.curves.end()) throw VpgError("GeometryFailure", "unknown vertex: " + v);
  Curve cv = curve_canonicalize(it->second);
  struct Entry {
    CurvePos pos;
    Point p;
    std::string other;
  };
  std::vector<Entry> entries;
  for (const auto& [u, cu] : rep.curves) {
    if (u == v) continue;
    for (const auto& ci : curve_intersections(cv, curve_canonicalize(cu))) {
      if (ci.kind == IntersectionKind::SinglePoint) entries.push_back({ci.pos1, ci.point, u});
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (!(a.pos == b.pos)) return a.pos < b.pos;
    return a.other < b.other;
  });
  CrossingSequence seq;
  seq.vertex = v;
  for (auto& e : entries) seq.entries.push_back({e.p, e.other});
  return seq;
}

namespace {

// All visits of point q along curve c, as canonical ascending positions.
std::vector<CurvePos> visits_of(const Curve& c, const Point& q) {
  std::vector<CurvePos> out;
  std::size_t n = c.segment_count();
  for (std::size_t i = 0; i < n; ++i) {
    Segment s = c.segment(i);
    if (!on_segment(s, q)) continue;
    Rational t = s.a.x != s.b.x ? (q.x - s.a.x) / (s.b.x - s.a.x) : (q.y - s.a.y) / (s.b.y - s.a.y);
    CurvePos pos{i, t};
    while (pos.t == 1 && pos.seg + 1 < n) {
      pos.seg += 1;
      pos.t = 0;
    }
    if (out.empty() || !(out.back() == pos)) out.push_back(pos);
  }
  return out;
}

// Greedy earliest-consistent subsequence match; returns the index where the
// match gets stuck, or images.size() on success.
std::size_t greedy_match(const std::vector<std::vector<CurvePos>>& visit_lists) {
  std::optional<CurvePos> last;
  for (std::size_t i = 0; i < visit_lists.size(); ++i) {
    const auto& vs = visit_lists[i];
    bool found = false;
    for (const auto& pos : vs) {
      if (!last || *last < pos) {
        last = pos;
        found = true;
        break;
      }
    }
    if (!found) return i;
  }
  return visit_lists.size();
}

}  // namespace

OrderCheckResult check_order_preserving(const Representation& base, const Representation& other,
                                        const std::map<Point, Point>& pairing) {
  auto rpt = validate_proper(base);
  if (!rpt.proper()) {
    throw VpgError("NotProper", "check_order_preserving requires a proper base; first: " +
                                    rpt.violations.front().describe());
  }

  auto image_of = [&pairing](const Point& p) {
    auto it = pairing.find(p);
    return it == pairing.end() ? p : it->second;
  };

  // Injectivity over all crossing points of the base.
  {
    std::set<Point> domain;
    for (const auto& [v, c] : base.curves) {
      for (const auto& e : crossing_sequence(base, v).entries) domain.insert(e.first);
    }
    std::set<Point> image;
    for (const auto& p : domain) {
      if (!image.insert(image_of(p)).second) {
        throw VpgError("PairingNotInjective", "two crossing points share an image");
      }
    }
  }

  for (const auto& [v, c] : base.curves) {
    auto it = other.curves.find(v);
    if (it == other.curves.end()) {
      throw VpgError("GeometryFailure", "other representation lacks vertex " + v);
    }
    Curve oc = curve_canonicalize(it->second);
    auto seq = crossing_sequence(base, v);
    std::vector<Point> pts;
    std::vector<std::vector<CurvePos>> vlists;
    for (const auto& e : seq.entries) {
      Point q = image_of(e.first);
      auto vs = visits_of(oc, q);
      if (vs.empty()) {
        throw VpgError("ImageOffCurve", "image of (" + rational_str(e.first.x) + ", " +
                                            rational_str(e.first.y) + ") misses curve of " + v);
      }
      pts.push_back(e.first);
      vlists.push_back(std::move(vs));
    }
    std::size_t fwd = greedy_match(vlists);
    if (fwd == vlists.size()) continue;
    std::vector<std::vector<CurvePos>> rev(vlists.rbegin(), vlists.rend());
    if (greedy_match(rev) == rev.size()) continue;
    OrderCheckResult res;
    res.ok = false;
    res.vertex = v;
    res.first = fwd > 0 ? pts[fwd - 1] : pts[0];
    res.second = pts[fwd];
    return res;
  }
  return {};
}

Representation normalize_grid(const Representation& rep) {
  for (const auto& [id, c] : rep.curves) {
    if (!curve_axis_parallel(c)) {
      throw VpgError("NotAxisParallel", "normalize_grid requires axis-parallel curves (" + id + ")");
    }
  }
  std::set<Rational> xs, ys;
  for (const auto& [id, c] : rep.curves) {
    for (const auto& p : c.pts) {
      xs.insert(p.x);
      ys.insert(p.y);
    }
  }
  std::map<Rational, Rational> xm, ym;
  {
    int i = 1;
    for (const auto& x : xs) xm[x] = Rational(i++);
    int j = 1;
    for (const auto& y : ys) ym[y] = Rational(j++);
  }
  Representation out;
  for (const auto& [id, c] : rep.curves) {
    Curve nc;
    for (const auto& p : c.pts) nc.pts.push_back(Point(xm.at(p.x), ym.at(p.y)));
    out.curves[id] = curve_canonicalize(nc);
  }
  return out;
}

Representation restrict_to(const Representation& rep, const std::vector<std::string>& keep) {
  Representation out;
  for (const auto& id : keep) {
    auto it = rep.curves.find(id);
    if (it == rep.curves.end()) throw VpgError("GeometryFailure", "unknown vertex: " + id);
    out.curves[id] = it->second;
  }
  return out;
}

Rational min_feature_distance_rep(const Representation& rep) {
  return min_feature_distance(rep.curve_list());
}

}  // namespace vpg
