#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "pin_internal.hpp"
#include "vpg/gadgets.hpp"
#include "vpg/placer.hpp"
#include "vpg/rep.hpp"

namespace vpg {

namespace {

using pindetail::PinBuild;

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

Curve ell(const Point& a, const Point& b, const Point& c) {
  Curve cv;
  cv.pts = {a, b, c};
  return cv;
}

// pin anchor points: two upright fanned pins and one fanless pin turned so its
// tip leaves northwards
const Point kB1{Rational(4), Rational(14)};
const Point kB2{Rational(-28), Rational(-3)};
const Point kB3{Rational(-41), Rational(-16)};

std::string pin_label(int i, const std::string& id) {
  if (id == "x") return "x_" + std::to_string(i);
  if (id.rfind("z_", 0) == 0) return "z" + std::to_string(i) + id.substr(1);
  return "p" + std::to_string(i) + "_" + id;
}

Representation place_pin(const Representation& src, int i, const Point& at, bool turn) {
  Representation out;
  for (const auto& kv : src.curves) {
    Curve c = turn ? rotate90cw_curve(kv.second) : kv.second;
    out.curves[pin_label(i, kv.first)] = translate_curve(c, at);
  }
  return out;
}

// spoke targets per fan: pin-1 reaches the walls of the outer a_1 a_2 a_3
// triangle, pin-2 the walls of the a_1 a_2 a_4 m_12 box
const char* kSpokes1[6] = {"a_1", "a_2", "a_3", "m_12", "m_13", "m_23"};
const char* kSpokes2[6] = {"a_1", "a_2", "a_4", "m_12", "m_14", "m_24"};

std::string spoke_id(int i, const std::string& target) {
  std::string t = target;
  t.erase(std::remove(t.begin(), t.end(), '_'), t.end());
  return "f" + std::to_string(i) + "_" + t;
}

Graph assemble_graph(const PinBuild& pb) {
  Graph g;
  for (int i = 1; i <= 3; ++i) {
    for (const std::string& v : pb.gadget.graph.vertices()) g.add_vertex(pin_label(i, v));
    for (const auto& e : pb.gadget.graph.edges())
      g.add_edge(pin_label(i, e.first), pin_label(i, e.second));
  }
  // subdivided K_4 frame
  const char* branch[4] = {"a_1", "a_2", "a_3", "a_4"};
  const char* middle[6] = {"m_12", "m_13", "m_14", "m_23", "m_24", "m_34"};
  for (const char* v : branch) g.add_vertex(v);
  for (const char* v : middle) g.add_vertex(v);
  for (const char* m : middle) {
    std::string s(m);
    g.add_edge("a_" + s.substr(2, 1), s);
    g.add_edge("a_" + s.substr(3, 1), s);
  }
  // fan bars, their four limbs into the pin, and their six spokes to the walls
  const char* limb[4] = {"z_sa", "z_w1", "z_sb", "z_e1"};
  const std::string tgt[4] = {pb.id_sa, pb.id_w1, pb.id_sb, pb.id_e1};
  for (int i = 1; i <= 2; ++i) {
    std::string xi = "x_" + std::to_string(i);
    g.add_vertex(xi);
    for (int j = 0; j < 4; ++j) {
      std::string z = pin_label(i, limb[j]);
      g.add_vertex(z);
      g.add_edge(xi, z);
      g.add_edge(z, pin_label(i, tgt[j]));
    }
    const char** spokes = i == 1 ? kSpokes1 : kSpokes2;
    for (int j = 0; j < 6; ++j) {
      std::string f = spoke_id(i, spokes[j]);
      g.add_vertex(f);
      g.add_edge(xi, f);
      g.add_edge(f, spokes[j]);
    }
  }
  // the two tips leave across m_12; the third pin's tip crosses both
  g.add_edge("p1_u", "m_12");
  g.add_edge("p2_u", "m_12");
  g.add_edge("p3_u", "p1_u");
  g.add_edge("p3_u", "p2_u");
  return g;
}

void add_frame(Representation& rep) {
  rep.curves["a_1"] = hseg(10, Rational(-79, 2), 4);
  rep.curves["a_2"] = hseg(-10, Rational(-399, 10), 8);
  rep.curves["a_3"] = vseg(5, Rational(-46, 5), Rational(46, 5));
  rep.curves["a_4"] = vseg(0, Rational(-19, 2), Rational(19, 2));
  rep.curves["m_12"] = vseg(-38, -11, Rational(29, 2));
  rep.curves["m_34"] = hseg(3, Rational(-1, 2), Rational(11, 2));
  rep.curves["m_13"] = ell(Point{2, 12}, Point{2, 9}, Point{Rational(11, 2), 9});
  rep.curves["m_14"] = ell(Point{Rational(-41, 5), Rational(107, 10)},
                           Point{Rational(-41, 5), Rational(17, 2)},
                           Point{Rational(1, 2), Rational(17, 2)});
  rep.curves["m_23"] = ell(Point{3, -12}, Point{3, -9}, Point{6, -9});
  rep.curves["m_24"] = ell(Point{-6, -11}, Point{-6, Rational(-87, 10)},
                           Point{Rational(1, 2), Rational(-87, 10)});
}

void add_spokes(Representation& rep, const Rational& y1, const Rational& y2,
                const Rational& p12) {
  rep.curves["f1_a1"] = vseg(Rational(3, 2), Rational(99, 10), y1 + p12);
  rep.curves["f1_a2"] = vseg(Rational(15, 2), Rational(-101, 10), y1 + p12);
  rep.curves["f1_a3"] = ell(Point{Rational(281, 50), y1 + p12},
                            Point{Rational(281, 50), Rational(43, 5)},
                            Point{Rational(49, 10), Rational(43, 5)});
  rep.curves["f1_m13"] = vseg(Rational(43, 10), Rational(89, 10), y1 + p12);
  rep.curves["f1_m23"] = vseg(Rational(23, 4), Rational(-91, 10), y1 + p12);
  rep.curves["f1_m12"] = ell(Point{Rational(-186, 5), y1 + p12},
                             Point{Rational(-186, 5), Rational(56, 5)},
                             Point{Rational(-192, 5), Rational(56, 5)});
  rep.curves["f2_a1"] = vseg(-12, y2 - p12, Rational(51, 5));
  rep.curves["f2_a2"] = vseg(-13, Rational(-51, 5), y2 + p12);
  rep.curves["f2_m12"] = ell(Point{Rational(-146, 5), y2 - p12},
                             Point{Rational(-146, 5), Rational(-7, 2)},
                             Point{Rational(-383, 10), Rational(-7, 2)});
  rep.curves["f2_a4"] = ell(Point{Rational(-6, 5), y2 + p12},
                            Point{Rational(-6, 5), Rational(-97, 20)},
                            Point{Rational(2, 5), Rational(-97, 20)});
  rep.curves["f2_m14"] = vseg(-2, Rational(-23, 5), Rational(87, 10));
  rep.curves["f2_m24"] = ell(Point{-10, y2 + p12}, Point{-10, Rational(-89, 10)},
                             Point{Rational(-57, 10), Rational(-89, 10)});
}

}  // namespace

Graph clothespin_graph() { return assemble_graph(pindetail::chassis(0, false)); }

ClothespinGadget clothespin(int k) {
  if (k < 0) throw VpgError("GeometryFailure", "clothespin requires k >= 0");
  if (k == 0)
    throw VpgError("LayoutFailure",
                   "clothespin: the frame template needs one-bend curves, so no "
                   "zero-bend drawing is available");

  PinBuild fanned = pindetail::chassis(0, true);
  PinBuild plain = pindetail::chassis(0, false);
  Graph expect = assemble_graph(plain);
  Rational p12 = fanned.p / 12;
  Rational y1 = fanned.YA + 14, y2 = fanned.YA - 3;

  Representation rep;
  auto merge = [&rep](const Representation& part) {
    for (const auto& kv : part.curves) {
      if (rep.curves.count(kv.first))
        throw VpgError("LayoutFailure", "clothespin: duplicate curve id " + kv.first);
      rep.curves[kv.first] = kv.second;
    }
  };
  merge(place_pin(fanned.gadget.representation, 1, kB1, false));
  merge(place_pin(fanned.gadget.representation, 2, kB2, false));
  merge(place_pin(plain.gadget.representation, 3, kB3, true));

  // widen the fan bars so they also collect the six wall spokes
  rep.curves["x_1"] = hseg(y1, Rational(-75, 2), Rational(39, 5));
  rep.curves["x_2"] = hseg(y2, Rational(-59, 2), -1);

  // run the tips out: both pin tips west across m_12, the third pin's tip
  // north across both of them
  auto westward = [&rep](const std::string& id, const Rational& to) {
    Curve& c = rep.curves.at(id);
    Point& last = c.pts.back();
    const Point& prev = c.pts[c.pts.size() - 2];
    if (!(last.y == prev.y && last.x < prev.x))
      throw VpgError("LayoutFailure", "clothespin: " + id + " tip is not west-bound");
    last.x = to;
  };
  westward("p1_u", -45);
  westward("p2_u", -45);
  {
    Curve& c = rep.curves.at("p3_u");
    Point& last = c.pts.back();
    const Point& prev = c.pts[c.pts.size() - 2];
    if (!(last.x == prev.x && last.y > prev.y))
      throw VpgError("LayoutFailure", "clothespin: p3_u tip is not north-bound");
    last.y = 15;
  }

  add_frame(rep);
  add_spokes(rep, y1, y2, p12);

  // audits: proper, exact graph, bend budgets, tip geometry, free tails
  PropernessReport pr = validate_proper(rep);
  if (!pr.proper())
    throw VpgError("LayoutFailure",
                   "clothespin: layout is not proper: " + pr.violations.front().describe());
  Graph got = intersection_graph(rep);
  if (!(got == expect))
    throw VpgError("LayoutFailure",
                   "clothespin: layout changed the graph: " + pindetail::graph_diff(expect, got));
  int maxbend = 0;
  for (const auto& kv : rep.curves) {
    int b = bend_count(kv.second);
    maxbend = std::max(maxbend, b);
    bool bent = kv.second.pts.size() == 3;
    if (b > (bent ? 1 : 0))
      throw VpgError("LayoutFailure", "clothespin: bend budget exceeded at " + kv.first);
  }
  if (maxbend > k)
    throw VpgError("LayoutFailure", "clothespin: template exceeds the requested bend bound");

  ClothespinGadget out;
  out.graph = expect;
  out.representation = rep;
  const Curve& u1 = rep.curves.at("p1_u");
  const Curve& u2 = rep.curves.at("p2_u");
  out.tip1 = u1.segment(u1.segment_count() - 1);
  out.tip2 = u2.segment(u2.segment_count() - 1);
  if (!(out.tip1.a.y == out.tip1.b.y && out.tip2.a.y == out.tip2.b.y &&
        out.tip1.b.x < out.tip1.a.x && out.tip2.b.x < out.tip2.a.x))
    throw VpgError("LayoutFailure", "clothespin: tips are not parallel co-directional");

  {
    std::vector<std::pair<std::string, Point>> before1 = pindetail::crossing_profile(rep, "p1_u");
    std::vector<std::pair<std::string, Point>> before2 = pindetail::crossing_profile(rep, "p2_u");
    Representation longer = rep;
    longer.curves["p1_u"] = elongate_last(longer.curves["p1_u"], 1000);
    longer.curves["p2_u"] = elongate_last(longer.curves["p2_u"], 1000);
    PropernessReport pr2 = validate_proper(longer);
    if (!pr2.proper())
      throw VpgError("LayoutFailure", "clothespin: elongated tips break properness: " +
                                          pr2.violations.front().describe());
    Graph got2 = intersection_graph(longer);
    if (!(got2 == expect))
      throw VpgError("LayoutFailure", "clothespin: elongation changed the graph: " +
                                          pindetail::graph_diff(expect, got2));
    if (pindetail::crossing_profile(longer, "p1_u") != before1 ||
        pindetail::crossing_profile(longer, "p2_u") != before2)
      throw VpgError("LayoutFailure", "clothespin: elongation changed a tip's crossing order");
  }

  out.roles["b_star"] = "m_12";
  out.roles["tip1"] = "p1_u";
  out.roles["tip2"] = "p2_u";
  out.roles["beta_1"] = "outer face of the a_1 a_2 a_3 triangle; pin-1 spokes reach "
                        "a_1, a_2, a_3, m_12, m_13, m_23";
  out.roles["beta_2"] = "box face bounded by a_1, a_2, a_4, m_12; pin-2 spokes reach "
                        "a_1, a_2, a_4, m_12, m_14, m_24";
  out.roles["third_pin"] = "p3_u crosses both tips between m_12 and the frame";
  return out;
}

}  // namespace vpg
