#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "pin_internal.hpp"
#include "vpg/grill.hpp"
#include "vpg/placer.hpp"
#include "vpg/rep.hpp"

namespace vpg {
namespace pindetail {

namespace {

Curve hseg(const Rational& y, const Rational& x0, const Rational& x1) {
  Curve c;
  c.pts = {Point{x0, y}, Point{x1, y}};
  return c;
}

Curve vseg(const Rational& x, const Rational& y0, const Rational& y1) {
  Curve c;
  c.pts = {Point{x, y0}, Point{x, y1}};
  return c;
}

}  // namespace

// ordered crossing profile of one curve against the rest of the representation
std::vector<std::pair<std::string, Point>> crossing_profile(const Representation& rep,
                                                            const std::string& uid) {
  const Curve& cu = rep.curves.at(uid);
  std::vector<std::tuple<CurvePos, std::string, Point>> hits;
  for (const auto& kv : rep.curves) {
    if (kv.first == uid) continue;
    for (const CurveIntersection& ci : curve_intersections(cu, kv.second))
      if (ci.kind == IntersectionKind::SinglePoint)
        hits.emplace_back(ci.pos1, kv.first, ci.point);
  }
  std::sort(hits.begin(), hits.end(),
            [](const auto& a, const auto& b) {
              if (std::get<0>(a) < std::get<0>(b)) return true;
              if (std::get<0>(b) < std::get<0>(a)) return false;
              return std::get<1>(a) < std::get<1>(b);
            });
  std::vector<std::pair<std::string, Point>> out;
  for (const auto& h : hits) out.push_back({std::get<1>(h), std::get<2>(h)});
  return out;
}

std::string graph_diff(const Graph& expect, const Graph& got) {
  for (const std::string& v : expect.vertices())
    if (!got.has_vertex(v)) return "missing vertex " + v;
  for (const std::string& v : got.vertices())
    if (!expect.has_vertex(v)) return "unexpected vertex " + v;
  for (const auto& e : expect.edges())
    if (!got.has_edge(e.first, e.second)) return "missing edge " + e.first + " ~ " + e.second;
  for (const auto& e : got.edges())
    if (!expect.has_edge(e.first, e.second)) return "unexpected edge " + e.first + " ~ " + e.second;
  return "graphs differ";
}

PinBuild chassis(int k, bool with_fan) {
  if (k < 0) throw VpgError("LayoutFailure", "pin: k must be nonnegative");
  GrillOutput go = grilled_sausage(k);
  const GridOverlay& H = go.overlay;
  if (!H.window) throw VpgError("LayoutFailure", "pin: grill produced no anchor window");

  PinBuild pb;
  pb.p = H.pitch;
  pb.mu = go.arrangement.mu;
  pb.xs0 = H.xs[0];
  pb.xs1 = H.xs[1];
  pb.xsL = H.xs.back();
  pb.ys0 = H.ys.front();
  pb.ysT = H.ys.back();
  pb.ya = H.window->ya;
  pb.yb = H.window->yb;
  pb.a0 = go.representation.curves.at("u").pts.front();

  const Rational& p = pb.p;
  const Rational& mu = pb.mu;

  // rows bracketing the window
  Rational ysj, ysj1;
  {
    auto it = std::lower_bound(H.ys.begin(), H.ys.end(), pb.ya);
    if (it == H.ys.begin()) throw VpgError("LayoutFailure", "pin: window below the grid");
    ysj = *(it - 1);
    auto it2 = std::upper_bound(H.ys.begin(), H.ys.end(), pb.yb);
    if (it2 == H.ys.end()) throw VpgError("LayoutFailure", "pin: window above the grid");
    ysj1 = *it2;
  }

  OverlayGeometry g = overlay_geometry(H);
  auto vid = [&g](const Point& pt) {
    auto it = g.vertex_of.find(pt);
    if (it == g.vertex_of.end())
      throw VpgError("LayoutFailure", "pin: expected overlay vertex is absent");
    return it->second;
  };
  std::size_t vA = vid(Point{pb.xs0, pb.ya});
  std::size_t vB = vid(Point{pb.xs1, pb.ya});
  std::size_t vC = vid(Point{pb.xs0, pb.yb});
  std::size_t vD = vid(Point{pb.xs1, pb.yb});
  std::size_t vP = vid(Point{pb.xs0, ysj});
  std::size_t vR = vid(Point{pb.xs0, ysj1});

  auto eid = [&g](std::size_t a, std::size_t b) {
    std::size_t lo = std::min(a, b), hi = std::max(a, b);
    for (std::size_t ei = 0; ei < g.edges.size(); ++ei)
      if (g.edges[ei].a == lo && g.edges[ei].b == hi) return ei;
    throw VpgError("LayoutFailure", "pin: expected overlay edge is absent");
  };
  std::size_t e_w0 = eid(vP, vA), e_w1 = eid(vA, vC), e_w2 = eid(vC, vR);
  std::size_t e_sa = eid(vA, vB), e_sb = eid(vC, vD), e_e1 = eid(vB, vD);

  // everted ring coordinates
  pb.base = pb.ys0 - p;
  pb.hbase = pb.ysT + p;
  pb.S0 = pb.base - Rational(9 * p / 4);
  pb.S1lvl = pb.base - 2 * p;
  pb.S2lvl = pb.base - Rational(3 * p / 2);
  pb.h0 = pb.ya - Rational(6 * mu / 16);
  pb.N0 = pb.hbase + Rational(3 * p / 2);
  pb.NS1 = pb.hbase + Rational(5 * p / 4);
  pb.NSB = pb.hbase + 2 * p;
  pb.h2 = pb.yb + Rational(6 * mu / 16);
  pb.W1 = pb.xs0 - p;
  pb.W2 = pb.xs0 - Rational(3 * p / 4);
  pb.WS1 = pb.xs0 - Rational(5 * p / 4);
  pb.WS2 = pb.xs0 - Rational(9 * p / 4);
  pb.W1p = pb.xs0 - 2 * p;
  pb.W3 = pb.xs0 - Rational(7 * p / 4);
  pb.E1 = pb.xsL + p;
  pb.Wtip = pb.WS2 - p;
  pb.YA = pb.S0 - p;

  auto seg_id = [](const char* pre, std::size_t i) { return std::string(pre) + std::to_string(i); };
  auto conn_id = [](std::size_t vi, std::size_t ei) {
    return "gc_" + std::to_string(vi) + "_" + std::to_string(ei);
  };
  pb.id_sa = seg_id("ge_", e_sa);
  pb.id_w1 = seg_id("ge_", e_w1);
  pb.id_sb = seg_id("ge_", e_sb);
  pb.id_e1 = seg_id("ge_", e_e1);

  Representation rep = go.representation;
  auto rewrite = [&rep](const std::string& id, const Curve& c) {
    auto it = rep.curves.find(id);
    if (it == rep.curves.end())
      throw VpgError("LayoutFailure", "pin: missing wall segment " + id);
    it->second = c;
  };
  Rational m16 = mu / 16;

  // The anchor cell's wall is a tree of straight segments anchored at four
  // pieces that keep their place (the column segments above and below the
  // window and the two east vertex bars). Redraw the rest as two arms around
  // the grid joined by an east riser, so the cell opens to the outer face and
  // the tip can leave westwards without meeting anything.
  rewrite(pb.id_w1, vseg(pb.E1, pb.S0 - m16, pb.N0 + m16));
  rewrite(conn_id(vA, e_w1), hseg(pb.S0, pb.W2 - m16, pb.E1 + m16));
  rewrite(conn_id(vC, e_w1), hseg(pb.N0, pb.W3 - m16, pb.E1 + m16));
  rewrite(seg_id("gv2_", vA), vseg(pb.W2, pb.S0 - m16, pb.h0 + m16));
  rewrite(seg_id("gv2_", vC), vseg(pb.W3, pb.h2 - m16, pb.N0 + m16));
  rewrite(conn_id(vA, e_w0), hseg(pb.h0, pb.W2 - m16, pb.xs0 + p / 2));
  rewrite(conn_id(vC, e_w2), hseg(pb.h2, pb.W3 - m16, pb.xs0 + p / 2));
  rewrite(seg_id("gv1_", vA), hseg(pb.S2lvl, pb.W1 - m16, pb.W2 + m16));
  rewrite(seg_id("gv1_", vC), hseg(pb.NS1, pb.W1p - m16, pb.W3 + m16));
  rewrite(conn_id(vA, e_sa), vseg(pb.W1, pb.S1lvl - m16, pb.S2lvl + m16));
  rewrite(conn_id(vC, e_sb), vseg(pb.W1p, pb.NS1 - m16, pb.NSB + m16));
  rewrite(pb.id_sa, hseg(pb.S1lvl, pb.WS1 - m16, pb.W1 + m16));
  rewrite(pb.id_sb, hseg(pb.NSB, pb.WS2 - p / 4 - m16, pb.E1 + Rational(11 * p / 16)));
  rewrite(conn_id(vB, e_sa), vseg(pb.WS1, pb.S1lvl - m16, pb.ya + 3 * m16));
  rewrite(conn_id(vD, e_sb), vseg(pb.WS2, pb.yb + m16, pb.NSB + m16));
  rewrite(seg_id("gv1_", vB), hseg(pb.ya + 2 * m16, pb.WS1 - m16, pb.xs1 + 4 * m16));
  rewrite(seg_id("gv1_", vD), hseg(pb.yb + 2 * m16, pb.WS2 - m16, pb.xs1 + 4 * m16));

  // reverse the anchor so its straight first leg becomes the final, free tip
  {
    Curve u = rep.curves.at("u");
    std::reverse(u.pts.begin(), u.pts.end());
    Point& last = u.pts.back();
    Point& prev = u.pts[u.pts.size() - 2];
    if (!(last.y == prev.y && last.x < prev.x))
      throw VpgError("LayoutFailure", "pin: anchor tip is not west-bound");
    last.x = pb.Wtip;
    rep.curves["u"] = u;
  }

  Graph expect = go.graph;
  if (with_fan) {
    rep.curves["x"] = hseg(pb.YA, pb.xs0 - Rational(11 * p / 4), pb.E1 + Rational(3 * p / 4));
    rep.curves["z_sa"] =
        vseg((pb.WS1 + pb.W1) / 2, pb.YA - p / 12, pb.S1lvl + mu / 32);
    Curve ze;
    ze.pts = {Point{pb.E1 + p / 2, pb.YA - p / 12}, Point{pb.E1 + p / 2, pb.S0 + p / 8},
              Point{pb.E1 - mu / 32, pb.S0 + p / 8}};
    rep.curves["z_w1"] = ze;
    rep.curves["z_sb"] = vseg(pb.E1 + Rational(5 * p / 8), pb.YA - p / 12, pb.NSB + mu / 32);
    Curve zw;
    zw.pts = {Point{pb.xs0 - Rational(15 * p / 8), pb.YA - p / 12},
              Point{pb.xs0 - Rational(15 * p / 8), pb.ya + 6 * m16},
              Point{pb.xs1 + mu / 32, pb.ya + 6 * m16}};
    rep.curves["z_e1"] = zw;

    for (const char* v : {"x", "z_sa", "z_w1", "z_sb", "z_e1"}) expect.add_vertex(v);
    expect.add_edge("x", "z_sa");
    expect.add_edge("x", "z_w1");
    expect.add_edge("x", "z_sb");
    expect.add_edge("x", "z_e1");
    expect.add_edge("z_sa", pb.id_sa);
    expect.add_edge("z_w1", pb.id_w1);
    expect.add_edge("z_sb", pb.id_sb);
    expect.add_edge("z_e1", pb.id_e1);
  }

  // audits: the redraw must be proper, must leave the graph untouched, must
  // stay within bend budgets, and the tip must stay free under elongation
  PropernessReport pr = validate_proper(rep);
  if (!pr.proper())
    throw VpgError("LayoutFailure",
                   "pin: redraw is not proper: " + pr.violations.front().describe());
  Graph got = intersection_graph(rep);
  if (!(got == expect))
    throw VpgError("LayoutFailure", "pin: redraw changed the graph: " + graph_diff(expect, got));
  for (const auto& kv : rep.curves) {
    int b = bend_count(kv.second);
    int limit = (kv.first == "u" || kv.first == "v") ? k
                : (kv.first == "z_w1" || kv.first == "z_e1") ? 1
                                                             : 0;
    if (b > limit)
      throw VpgError("LayoutFailure", "pin: bend budget exceeded at " + kv.first);
  }
  {
    std::vector<std::pair<std::string, Point>> before = crossing_profile(rep, "u");
    Representation longer = rep;
    longer.curves["u"] = elongate_last(longer.curves["u"], 1000);
    PropernessReport pr2 = validate_proper(longer);
    if (!pr2.proper())
      throw VpgError("LayoutFailure", "pin: elongated tip breaks properness: " +
                                          pr2.violations.front().describe());
    Graph got2 = intersection_graph(longer);
    if (!(got2 == expect))
      throw VpgError("LayoutFailure",
                     "pin: elongation changed the graph: " + graph_diff(expect, got2));
    if (crossing_profile(longer, "u") != before)
      throw VpgError("LayoutFailure", "pin: elongation changed the tip's crossing order");
  }

  pb.gadget.graph = go.graph;
  pb.gadget.representation = rep;
  pb.gadget.tipVertex = "u";
  const Curve& uc = rep.curves.at("u");
  pb.gadget.tipSegment = uc.segment(uc.segment_count() - 1);
  return pb;
}

}  // namespace pindetail

PinGadget pin(int k) { return pindetail::chassis(k, false).gadget; }

}  // namespace vpg
