#include "vpg/arrangement.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>

namespace vpg {

namespace {

struct DirVec {
  Rational x, y;
};

int half_of(const DirVec& d) {
  if (d.y > 0) return 0;
  if (d.y == 0 && d.x > 0) return 0;
  return 1;
}

bool dir_before(const DirVec& a, const DirVec& b) {
  int ha = half_of(a), hb = half_of(b);
  if (ha != hb) return ha < hb;
  return a.x * b.y - a.y * b.x > 0;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

Rational cross2(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace

ArrangementStructure build_arrangement(const Representation& rep) {
  auto rpt = validate_proper(rep);
  if (!rpt.proper()) {
    throw VpgError("NotProper", "build_arrangement requires a proper representation; first: " +
                                    rpt.violations.front().describe());
  }

  std::vector<std::string> ids = rep.ids();
  std::vector<Curve> canon;
  for (const auto& id : ids) canon.push_back(curve_canonicalize(rep.curves.at(id)));

  ArrangementStructure arr;
  std::map<Point, std::size_t> node_of;
  auto node_id = [&](const Point& p) {
    auto it = node_of.find(p);
    if (it != node_of.end()) return it->second;
    std::size_t id = arr.nodes.size();
    node_of.emplace(p, id);
    arr.nodes.push_back({p, {}, false});
    return id;
  };

  // Endpoints and bends.
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (const auto& p : canon[i].pts) node_id(p);
  }
  // Crossings.
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      for (const auto& ci : curve_intersections(canon[i], canon[j])) {
        if (ci.kind == IntersectionKind::SinglePoint) {
          arr.nodes[node_id(ci.point)].is_crossing = true;
        }
      }
    }
  }
  // Which curves pass through each node.
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (auto& [p, nid] : node_of) {
      for (std::size_t s = 0; s < canon[i].segment_count(); ++s) {
        if (on_segment(canon[i].segment(s), p)) {
          arr.nodes[nid].curves.push_back(ids[i]);
          break;
        }
      }
    }
  }

  // Arcs: per curve, split at the nodes lying on it.
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const Curve& c = canon[i];
    std::vector<std::pair<CurvePos, std::size_t>> stops;
    std::size_t nsegs = c.segment_count();
    for (const auto& [p, nid] : node_of) {
      for (std::size_t s = 0; s < nsegs; ++s) {
        Segment sg = c.segment(s);
        if (!on_segment(sg, p)) continue;
        Rational t = sg.a.x != sg.b.x ? (p.x - sg.a.x) / (sg.b.x - sg.a.x)
                                      : (p.y - sg.a.y) / (sg.b.y - sg.a.y);
        CurvePos pos{s, t};
        while (pos.t == 1 && pos.seg + 1 < nsegs) {
          pos.seg += 1;
          pos.t = 0;
        }
        if (std::none_of(stops.begin(), stops.end(),
                         [&](const auto& q) { return q.first == pos; })) {
          stops.push_back({pos, nid});
        }
      }
    }
    std::sort(stops.begin(), stops.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t s = 0; s + 1 < stops.size(); ++s) {
      arr.arcs.push_back({stops[s].second, stops[s + 1].second, ids[i]});
    }
  }

  std::size_t nn = arr.nodes.size(), na = arr.arcs.size();

  // Components.
  UnionFind uf(nn);
  for (const auto& a : arr.arcs) uf.unite(a.a, a.b);
  {
    std::set<std::size_t> roots;
    for (std::size_t v = 0; v < nn; ++v) roots.insert(uf.find(v));
    arr.components = roots.size();
  }

  // Half-edges: 2k = a->b, 2k+1 = b->a.
  std::size_t nh = 2 * na;
  std::vector<std::size_t> he_from(nh), he_to(nh);
  for (std::size_t k = 0; k < na; ++k) {
    he_from[2 * k] = arr.arcs[k].a;
    he_to[2 * k] = arr.arcs[k].b;
    he_from[2 * k + 1] = arr.arcs[k].b;
    he_to[2 * k + 1] = arr.arcs[k].a;
  }
  // Counterclockwise rings of outgoing half-edges per node.
  std::vector<std::vector<std::size_t>> ring(nn);
  for (std::size_t h = 0; h < nh; ++h) ring[he_from[h]].push_back(h);
  auto he_dir = [&](std::size_t h) {
    const Point& u = arr.nodes[he_from[h]].p;
    const Point& v = arr.nodes[he_to[h]].p;
    return DirVec{v.x - u.x, v.y - u.y};
  };
  for (auto& r : ring) {
    std::sort(r.begin(), r.end(),
              [&](std::size_t a, std::size_t b) { return dir_before(he_dir(a), he_dir(b)); });
  }
  // next(h): at head(h), step one position clockwise from twin(h).
  arr.he_next.assign(nh, 0);
  std::vector<std::size_t> pos_in_ring(nh, 0);
  for (std::size_t v = 0; v < nn; ++v) {
    for (std::size_t i = 0; i < ring[v].size(); ++i) pos_in_ring[ring[v][i]] = i;
  }
  for (std::size_t h = 0; h < nh; ++h) {
    std::size_t tw = h ^ 1u;
    const auto& r = ring[he_from[tw]];
    std::size_t i = pos_in_ring[tw];
    arr.he_next[h] = r[(i + r.size() - 1) % r.size()];
  }

  // Orbits and their doubled signed areas.
  arr.he_orbit.assign(nh, static_cast<std::size_t>(-1));
  std::vector<Rational> area2;
  std::vector<std::size_t> orbit_start;
  for (std::size_t h = 0; h < nh; ++h) {
    if (arr.he_orbit[h] != static_cast<std::size_t>(-1)) continue;
    std::size_t o = area2.size();
    Rational a2(0);
    std::size_t cur = h;
    do {
      arr.he_orbit[cur] = o;
      const Point& u = arr.nodes[he_from[cur]].p;
      const Point& v = arr.nodes[he_to[cur]].p;
      a2 += u.x * v.y - u.y * v.x;
      cur = arr.he_next[cur];
    } while (cur != h);
    area2.push_back(a2);
    orbit_start.push_back(h);
  }
  std::size_t norb = area2.size();

  // Faces: one for each positive orbit, plus the unbounded face 0.
  arr.faces.clear();
  arr.faces.push_back({});  // unbounded
  arr.unbounded_face = 0;
  arr.orbit_face.assign(norb, static_cast<std::size_t>(-1));
  for (std::size_t o = 0; o < norb; ++o) {
    if (area2[o] > 0) {
      ArrFace f;
      f.bounded = true;
      std::size_t cur = orbit_start[o];
      do {
        f.arcs.push_back(cur / 2);
        f.nodes.push_back(he_from[cur]);
        cur = arr.he_next[cur];
      } while (cur != orbit_start[o]);
      arr.orbit_face[o] = arr.faces.size();
      arr.faces.push_back(std::move(f));
    }
  }

  // Containing face of each component's outside, resolved in increasing
  // order of the component's leftmost node so lookups hit resolved entries.
  std::map<std::size_t, std::size_t> comp_extreme;  // root -> leftmost node
  for (std::size_t v = 0; v < nn; ++v) {
    std::size_t r = uf.find(v);
    auto it = comp_extreme.find(r);
    if (it == comp_extreme.end()) {
      comp_extreme[r] = v;
    } else {
      const Point& best = arr.nodes[it->second].p;
      const Point& cand = arr.nodes[v].p;
      if (cand.x < best.x || (cand.x == best.x && cand.y < best.y)) it->second = v;
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> comps(comp_extreme.begin(), comp_extreme.end());
  std::sort(comps.begin(), comps.end(), [&](const auto& a, const auto& b) {
    const Point& pa = arr.nodes[a.second].p;
    const Point& pb = arr.nodes[b.second].p;
    if (pa.x != pb.x) return pa.x < pb.x;
    return pa.y < pb.y;
  });
  std::map<std::size_t, std::size_t> comp_face;  // root -> containing face

  auto leftward_hit_face = [&](const Point& m) -> std::size_t {
    // Pick a ray direction (-1, -r) through no node.
    std::size_t cand_count = nn + 1;
    Rational slope(0);
    for (std::size_t t = 0; t <= cand_count; ++t) {
      Rational r(static_cast<long>(t), static_cast<long>(cand_count));
      bool bad = false;
      for (std::size_t v = 0; v < nn && !bad; ++v) {
        const Point& w = arr.nodes[v].p;
        if (w.x >= m.x) continue;
        // w on ray iff (w - m) parallel to (-1, -r): (w.y - m.y) = r * (w.x - m.x)
        if (w.y - m.y == r * (w.x - m.x)) bad = true;
      }
      if (!bad) {
        slope = r;
        break;
      }
    }
    DirVec d{Rational(-1), -slope};
    std::optional<Rational> best_l;
    std::size_t best_arc = 0;
    for (std::size_t k = 0; k < na; ++k) {
      const Point& u = arr.nodes[arr.arcs[k].a].p;
      const Point& v = arr.nodes[arr.arcs[k].b].p;
      Rational ex = v.x - u.x, ey = v.y - u.y;
      Rational denom = d.x * ey - d.y * ex;
      if (denom == 0) continue;  // parallel (collinear excluded by slope choice)
      Rational s = (d.x * (m.y - u.y) - d.y * (m.x - u.x)) / denom;
      if (s <= 0 || s >= 1) continue;  // endpoint hits excluded by slope choice
      Rational l = ex != 0 ? (u.x + s * ex - m.x) / d.x : (u.y + s * ey - m.y) / d.y;
      if (l <= 0) continue;
      if (!best_l || l < *best_l) {
        best_l = l;
        best_arc = k;
      }
    }
    if (!best_l) return arr.unbounded_face;
    const Point& u = arr.nodes[arr.arcs[best_arc].a].p;
    const Point& v = arr.nodes[arr.arcs[best_arc].b].p;
    // Face on the side of the arc facing m: the half-edge with m on its left.
    std::size_t h = cross2(u, v, m) > 0 ? 2 * best_arc : 2 * best_arc + 1;
    std::size_t o = arr.he_orbit[h];
    if (arr.orbit_face[o] != static_cast<std::size_t>(-1)) return arr.orbit_face[o];
    // Negative orbit: we are in whatever face contains that component.
    std::size_t root = uf.find(arr.arcs[best_arc].a);
    auto it = comp_face.find(root);
    if (it == comp_face.end()) {
      throw VpgError("GeometryFailure", "arrangement containment resolution out of order");
    }
    return it->second;
  };

  for (const auto& [root, extreme] : comps) {
    std::size_t f = leftward_hit_face(arr.nodes[extreme].p);
    comp_face[root] = f;
    // All nonpositive orbits of this component bound that face from inside.
  }
  for (std::size_t o = 0; o < norb; ++o) {
    if (arr.orbit_face[o] != static_cast<std::size_t>(-1)) continue;
    std::size_t root = uf.find(he_from[orbit_start[o]]);
    arr.orbit_face[o] = comp_face.at(root);
  }

  for (std::size_t k = 0; k < na; ++k) {
    std::size_t f1 = arr.orbit_face[arr.he_orbit[2 * k]];
    std::size_t f2 = arr.orbit_face[arr.he_orbit[2 * k + 1]];
    if (f1 != f2) arr.adjacency.insert({std::min(f1, f2), std::max(f1, f2)});
  }

  return arr;
}

namespace {

bool strictly_inside_triangle(const Point& a, const Point& b, const Point& c, const Point& p) {
  int s1 = cross2(a, b, p) > 0 ? 1 : (cross2(a, b, p) < 0 ? -1 : 0);
  int s2 = cross2(b, c, p) > 0 ? 1 : (cross2(b, c, p) < 0 ? -1 : 0);
  int s3 = cross2(c, a, p) > 0 ? 1 : (cross2(c, a, p) < 0 ? -1 : 0);
  return s1 != 0 && s1 == s2 && s2 == s3;
}

}  // namespace

std::vector<TriangularFace> triangular_faces(const ArrangementStructure& arr) {
  std::vector<TriangularFace> out;
  for (std::size_t f = 0; f < arr.faces.size(); ++f) {
    const ArrFace& face = arr.faces[f];
    if (!face.bounded || face.arcs.size() != 3) continue;
    bool corners_cross = true;
    for (std::size_t nid : face.nodes) {
      if (!arr.nodes[nid].is_crossing) corners_cross = false;
    }
    if (!corners_cross) continue;
    const Point& p = arr.nodes[face.nodes[0]].p;
    const Point& q = arr.nodes[face.nodes[1]].p;
    const Point& r = arr.nodes[face.nodes[2]].p;
    // Nothing else of the arrangement may sit inside the open triangle.
    bool empty = true;
    for (std::size_t v = 0; v < arr.nodes.size() && empty; ++v) {
      if (v == face.nodes[0] || v == face.nodes[1] || v == face.nodes[2]) continue;
      if (strictly_inside_triangle(p, q, r, arr.nodes[v].p)) empty = false;
    }
    for (std::size_t k = 0; k < arr.arcs.size() && empty; ++k) {
      if (k == face.arcs[0] || k == face.arcs[1] || k == face.arcs[2]) continue;
      const Point& u = arr.nodes[arr.arcs[k].a].p;
      const Point& v = arr.nodes[arr.arcs[k].b].p;
      Point mid((u.x + v.x) / 2, (u.y + v.y) / 2);
      if (strictly_inside_triangle(p, q, r, mid)) empty = false;
    }
    if (!empty) continue;
    TriangularFace t;
    t.face = f;
    t.p = p;
    t.q = q;
    t.r = r;
    t.a = face.arcs[0];
    t.b = face.arcs[1];
    t.c = face.arcs[2];
    auto seg_of = [&](std::size_t k) {
      return Segment(arr.nodes[arr.arcs[k].a].p, arr.nodes[arr.arcs[k].b].p);
    };
    t.sa = seg_of(face.arcs[0]);
    t.sb = seg_of(face.arcs[1]);
    t.sc = seg_of(face.arcs[2]);
    out.push_back(std::move(t));
  }
  return out;
}

bool boundaries_almost_disjoint(const std::vector<TriangularFace>& faces) {
  for (std::size_t i = 0; i < faces.size(); ++i) {
    for (std::size_t j = i + 1; j < faces.size(); ++j) {
      std::set<Point> shared;
      const Segment si[3] = {faces[i].sa, faces[i].sb, faces[i].sc};
      const Segment sj[3] = {faces[j].sa, faces[j].sb, faces[j].sc};
      for (const auto& a : si) {
        for (const auto& b : sj) {
          SegIntersection r = seg_intersect(a, b);
          if (r.kind == IntersectionKind::OverlapSegment) return false;
          if (r.kind == IntersectionKind::SinglePoint) shared.insert(r.point);
        }
      }
      if (shared.size() > 1) return false;
    }
  }
  return true;
}

PointLocation point_location(const ArrangementStructure& arr, const Point& p) {
  for (std::size_t v = 0; v < arr.nodes.size(); ++v) {
    if (arr.nodes[v].p == p) return {PointLocation::OnNode, v};
  }
  for (std::size_t k = 0; k < arr.arcs.size(); ++k) {
    Segment s(arr.nodes[arr.arcs[k].a].p, arr.nodes[arr.arcs[k].b].p);
    if (on_segment(s, p)) return {PointLocation::OnArc, k};
  }
  std::size_t nn = arr.nodes.size(), na = arr.arcs.size();
  // Rightward ray through no node.
  std::size_t cand_count = nn + 1;
  Rational slope(0);
  for (std::size_t t = 0; t <= cand_count; ++t) {
    Rational r(static_cast<long>(t), static_cast<long>(cand_count));
    bool bad = false;
    for (std::size_t v = 0; v < nn && !bad; ++v) {
      const Point& w = arr.nodes[v].p;
      if (w.x <= p.x) continue;
      if (w.y - p.y == r * (w.x - p.x)) bad = true;
    }
    if (!bad) {
      slope = r;
      break;
    }
  }
  Rational dx(1), dy = slope;
  std::optional<Rational> best_l;
  std::size_t best_arc = 0;
  for (std::size_t k = 0; k < na; ++k) {
    const Point& u = arr.nodes[arr.arcs[k].a].p;
    const Point& v = arr.nodes[arr.arcs[k].b].p;
    Rational ex = v.x - u.x, ey = v.y - u.y;
    Rational denom = dx * ey - dy * ex;
    if (denom == 0) continue;
    Rational s = (dx * (p.y - u.y) - dy * (p.x - u.x)) / denom;
    if (s <= 0 || s >= 1) continue;
    Rational l = ex != 0 ? (u.x + s * ex - p.x) / dx : (u.y + s * ey - p.y) / dy;
    if (l <= 0) continue;
    if (!best_l || l < *best_l) {
      best_l = l;
      best_arc = k;
    }
  }
  if (!best_l) return {PointLocation::InFace, arr.unbounded_face};
  const Point& u = arr.nodes[arr.arcs[best_arc].a].p;
  const Point& v = arr.nodes[arr.arcs[best_arc].b].p;
  std::size_t h = cross2(u, v, p) > 0 ? 2 * best_arc : 2 * best_arc + 1;
  return {PointLocation::InFace, arr.orbit_face[arr.he_orbit[h]]};
}

}  // namespace vpg
