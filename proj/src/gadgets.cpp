#include "vpg/gadgets.hpp"

#include "vpg/arrangement.hpp"

namespace vpg {

Representation sausage(const SausageSpec& spec) {
  if (spec.k < 0) throw VpgError("GeometryFailure", "sausage requires k >= 0");
  if (!(spec.scale > 0)) throw VpgError("GeometryFailure", "sausage requires scale > 0");
  // u: k+1 unit steps east,north,east,... from (0,0)
  // v: k+1 unit steps north,east,north,... from (1/2,-1/2)
  // crossing i sits at ((i+1)/2, i/2), strictly left to right
  Curve u, v;
  Point pu{Rational(0), Rational(0)};
  Point pv{Rational(1, 2), Rational(-1, 2)};
  u.pts.push_back(pu);
  v.pts.push_back(pv);
  for (int i = 0; i <= spec.k; ++i) {
    if (i % 2 == 0)
      pu.x += 1;
    else
      pu.y += 1;
    u.pts.push_back(pu);
    if (i % 2 == 0)
      pv.y += 1;
    else
      pv.x += 1;
    v.pts.push_back(pv);
  }
  Representation rep;
  auto scaled = [&spec](Curve c) {
    for (Point& p : c.pts) {
      p.x *= spec.scale;
      p.y *= spec.scale;
    }
    return c;
  };
  rep.curves["u"] = scaled(u);
  rep.curves["v"] = scaled(v);
  return rep;
}

Representation waffle(const WaffleSpec& spec) {
  if (spec.n < 1) throw VpgError("GeometryFailure", "waffle requires n >= 1");
  const int n = spec.n;
  Rational lo = Rational(-n - 1), hi = Rational(2 * n + 2);
  Representation rep;
  for (int i = 1; i <= n; ++i) {
    Curve h;
    h.pts = {Point{lo, Rational(i)}, Point{hi, Rational(i)}};
    rep.curves["h" + std::to_string(i)] = h;
    Curve v;
    v.pts = {Point{Rational(i), lo}, Point{Rational(i), hi}};
    rep.curves["v" + std::to_string(i)] = v;
    // slope-1 segment with intercept m - 1/2: half-integer offsets dodge all
    // lattice crossings, so no triple points arise
    Rational d = Rational(2 * i - 1, 2);
    Curve dcv;
    dcv.pts = {Point{lo, lo + d}, Point{hi - d, hi}};
    rep.curves["d" + std::to_string(i)] = dcv;
  }
  return rep;
}

WaffleForK waffle_for_k(int k, int cap) {
  if (k < 0) throw VpgError("GeometryFailure", "waffle_for_k requires k >= 0");
  for (int n = 1; n <= cap; ++n) {
    Representation rep = waffle(WaffleSpec{n});
    auto arr = build_arrangement(rep);
    std::size_t t = triangular_faces(arr).size();
    if (t > static_cast<std::size_t>(3 * k * n)) return WaffleForK{n, rep};
  }
  throw VpgError("RangeExhausted",
                 "no waffle up to n=" + std::to_string(cap) + " has more than 3k*n triangles");
}

GrillOutput grilled_sausage(int k) { return grill(sausage(SausageSpec{k}), std::string("u")); }

}  // namespace vpg
