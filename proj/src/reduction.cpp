#include "vpg/reduction.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "vpg/gadgets.hpp"

namespace vpg {

namespace {

// template frame facts: tips leave westwards at heights 14 and -3, the whole
// gadget fits in a ball of radius 35 about (-17, 11/2), and that anchor is the
// midpoint line of the two tips (lateral offsets +-17/2)
const Point kAnchor{-17, Rational(11, 2)};
const Rational kRadius{35};
const Rational kTipOffset{Rational(17, 2)};
const Point kTip1Start{5, 14};
const Point kTip2Start{-27, -3};

Point rot_cw(const Point& p, int times) {
  Point q = p;
  for (int i = 0; i < times; ++i) q = Point{q.y, Rational(-q.x)};
  return q;
}

struct Dir {
  int dx = 0, dy = 0;
  Point apply(const Rational& len) const { return Point{len * dx, len * dy}; }
};

Dir segment_dir(const Point& a, const Point& b) {
  if (a.y == b.y && a.x != b.x) return Dir{b.x > a.x ? 1 : -1, 0};
  if (a.x == b.x && a.y != b.y) return Dir{0, b.y > a.y ? 1 : -1};
  throw VpgError("NotAxisParallel", "substitution input has an oblique or degenerate segment");
}

// left normal of a direction
Dir left_of(const Dir& d) { return Dir{-d.dy, d.dx}; }

// rotations mapping template west onto the trace direction
int turns_for(const Dir& d) {
  if (d.dx == -1) return 0;
  if (d.dy == 1) return 1;
  if (d.dx == 1) return 2;
  return 3;
}

std::string part_label(const std::string& w, const std::string& tid) {
  if (tid == "p1_u") return w + "_1";
  if (tid == "p2_u") return w + "_2";
  if (tid == "p3_u") return w + "_3";
  return w + "." + tid;
}

// a rail follows the trace at a fixed signed lateral offset: same crossings as
// the trace, one bend wherever the trace bends
Curve offset_rail(const Point& start, const std::vector<Point>& trace, const Rational& off) {
  Curve rail;
  rail.pts.push_back(start);
  std::vector<Dir> dirs;
  for (std::size_t i = 0; i + 1 < trace.size(); ++i)
    dirs.push_back(segment_dir(trace[i], trace[i + 1]));
  for (std::size_t i = 0; i + 1 < dirs.size(); ++i) {
    // corner: lateral line of segment i meets lateral line of segment i+1
    Dir la = left_of(dirs[i]), lb = left_of(dirs[i + 1]);
    Point corner = trace[i + 1];
    if (dirs[i].dy == 0) {
      corner.y = trace[i + 1].y + off * la.dy;
      corner.x = trace[i + 1].x + off * lb.dx;
    } else {
      corner.x = trace[i + 1].x + off * la.dx;
      corner.y = trace[i + 1].y + off * lb.dy;
    }
    rail.pts.push_back(corner);
  }
  Dir ll = left_of(dirs.back());
  rail.pts.push_back(Point{trace.back().x + off * ll.dx, trace.back().y + off * ll.dy});
  return rail;
}

}  // namespace

SubstitutionOutput clothespin_substitute(const SubstitutionInput& input, int k) {
  if (k < 0) throw VpgError("GeometryFailure", "substitution requires k >= 0");
  for (const auto& kv : input.rep.curves) {
    if (kv.second.pts.size() < 2)
      throw VpgError("GeometryFailure", "substitution input has a degenerate curve " + kv.first);
    for (std::size_t i = 0; i + 1 < kv.second.pts.size(); ++i)
      segment_dir(kv.second.pts[i], kv.second.pts[i + 1]);  // throws if oblique
  }
  PropernessReport pr = validate_proper(input.rep);
  if (!pr.proper())
    throw VpgError("InputNotCrossingRealized",
                   "substitution input is not crossing-realized: " +
                       pr.violations.front().describe());
  Graph realized = intersection_graph(input.rep);
  if (!(realized == input.graph))
    throw VpgError("InputNotCrossingRealized",
                   "substitution input representation does not realize the given graph");

  int m = 0;
  for (const auto& kv : input.rep.curves) m = std::max(m, bend_count(kv.second));
  if (m > 1)
    throw VpgError("GeometryFailure", "substitution input exceeds one bend per curve");

  ClothespinGadget cp = clothespin(k);  // k = 0 propagates its LayoutFailure
  Rational delta = min_feature_distance_rep(input.rep);
  Rational s = delta / (8 * kRadius);  // whole gadget inside a delta/8 ball

  SubstitutionOutput out;
  out.original = input.graph;
  out.m = m;

  for (const auto& kv : input.rep.curves) {
    const std::string& w = kv.first;
    const std::vector<Point>& trace = kv.second.pts;
    Dir d0 = segment_dir(trace[0], trace[1]);
    int r = turns_for(d0);
    Point anchor_r = rot_cw(kAnchor, r);
    Point shift{trace[0].x - s * anchor_r.x, trace[0].y - s * anchor_r.y};
    auto place = [&](const Point& p) {
      Point q = rot_cw(p, r);
      return Point{s * q.x + shift.x, s * q.y + shift.y};
    };

    for (const auto& part : cp.representation.curves) {
      std::string id = part_label(w, part.first);
      if (out.rep.curves.count(id))
        throw VpgError("GeometryFailure", "substitution id collision at " + id);
      if (part.first == "p1_u" || part.first == "p2_u") continue;
      Curve c;
      for (const Point& p : part.second.pts) c.pts.push_back(place(p));
      out.rep.curves[id] = c;
    }
    // the two tips become rails along the original curve at symmetric lateral
    // offsets; the template start points already sit on those offset lines
    out.rep.curves[w + "_1"] = offset_rail(place(kTip1Start), trace, -kTipOffset * s);
    out.rep.curves[w + "_2"] = offset_rail(place(kTip2Start), trace, kTipOffset * s);

    std::set<std::string>& parts = out.vertexMap[w];
    for (const std::string& v : cp.graph.vertices()) parts.insert(part_label(w, v));
    const Curve& u1 = out.rep.curves.at(w + "_1");
    out.tips[w] = u1.segment(u1.segment_count() - 1);
  }

  // expected graph: per-vertex clothespin copies plus the tip-crossing edges
  for (const auto& kv : input.rep.curves) {
    const std::string& w = kv.first;
    for (const std::string& v : cp.graph.vertices()) out.graph.add_vertex(part_label(w, v));
    for (const auto& e : cp.graph.edges())
      out.graph.add_edge(part_label(w, e.first), part_label(w, e.second));
  }
  for (const auto& e : input.graph.edges())
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j)
        out.graph.add_edge(e.first + "_" + std::to_string(i),
                           e.second + "_" + std::to_string(j));

  int budget = k + m;
  for (const auto& kv : out.rep.curves) {
    if (bend_count(kv.second) > budget)
      throw VpgError("BendBudgetExceeded", "substitution emitted " + kv.first + " with " +
                                               std::to_string(bend_count(kv.second)) +
                                               " bends against a budget of " +
                                               std::to_string(budget));
  }
  PropernessReport opr = validate_proper(out.rep);
  if (!opr.proper())
    throw VpgError("GeometryFailure",
                   "substitution output is not proper: " + opr.violations.front().describe());
  Graph got = intersection_graph(out.rep);
  if (!(got == out.graph))
    throw VpgError("GeometryFailure", "substitution output does not realize the expected graph");
  return out;
}

Representation tip_extract(const SubstitutionOutput& output) {
  Representation tips;
  for (const auto& kv : output.tips) {
    if (kv.second.a.x != kv.second.b.x && kv.second.a.y != kv.second.b.y)
      throw VpgError("NotDecodable", "tip of " + kv.first + " is oblique");
    Curve c;
    c.pts = {kv.second.a, kv.second.b};
    tips.curves[kv.first] = c;
  }
  if (output.m != 0) {
    // bent input: the rails carry the original bend, so their final segments
    // no longer tell the whole adjacency story
    Graph got = intersection_graph(tips);
    std::string note = got == output.original ? "yet the graph still matches"
                                              : "and the graph does not match";
    throw VpgError("NotDecodable",
                   "tips were built from one-bend input (" + note + ")");
  }
  Graph got = intersection_graph(tips);
  if (!(got == output.original))
    throw VpgError("GeometryFailure", "extracted tips do not realize the original graph");
  return tips;
}

}  // namespace vpg
