#include "vpg/placer.hpp"

#include <algorithm>

#include "vpg/geom.hpp"

namespace vpg {

Curve translate_curve(const Curve& c, const Point& d) {
  Curve out = c;
  for (Point& p : out.pts) {
    p.x += d.x;
    p.y += d.y;
  }
  return out;
}

Curve scale_curve(const Curve& c, const Rational& s) {
  Curve out = c;
  for (Point& p : out.pts) {
    p.x *= s;
    p.y *= s;
  }
  return out;
}

Curve rotate90cw_curve(const Curve& c) {
  Curve out = c;
  for (Point& p : out.pts) {
    Rational x = p.x;
    p.x = p.y;
    p.y = -x;
  }
  return out;
}

Representation translate_rep(const Representation& rep, const Point& d) {
  Representation out;
  for (const auto& [id, c] : rep.curves) out.curves[id] = translate_curve(c, d);
  return out;
}

Representation scale_rep(const Representation& rep, const Rational& s) {
  Representation out;
  for (const auto& [id, c] : rep.curves) out.curves[id] = scale_curve(c, s);
  return out;
}

Representation rotate90cw_rep(const Representation& rep) {
  Representation out;
  for (const auto& [id, c] : rep.curves) out.curves[id] = rotate90cw_curve(c);
  return out;
}

RepBBox rep_bbox(const Representation& rep) {
  RepBBox b;
  for (const auto& [id, c] : rep.curves)
    for (const Point& p : c.pts) {
      if (!b.valid) {
        b.x0 = b.x1 = p.x;
        b.y0 = b.y1 = p.y;
        b.valid = true;
      } else {
        b.x0 = std::min(b.x0, p.x);
        b.x1 = std::max(b.x1, p.x);
        b.y0 = std::min(b.y0, p.y);
        b.y1 = std::max(b.y1, p.y);
      }
    }
  return b;
}

Representation fit_into(const Representation& rep, const Point& center, const Rational& radius) {
  if (!(radius > 0)) throw VpgError("GeometryFailure", "fit_into requires a positive radius");
  RepBBox b = rep_bbox(rep);
  if (!b.valid) return rep;
  Rational extent = std::max(b.width(), b.height());
  Rational target = radius * 2 - radius / 4;  // leave margin radius/8 per side
  Rational s = extent > 0 ? target / extent : Rational(1);
  Representation scaled = scale_rep(rep, s);
  RepBBox sb = rep_bbox(scaled);
  Point mid{(sb.x0 + sb.x1) / 2, (sb.y0 + sb.y1) / 2};
  return translate_rep(scaled, Point{center.x - mid.x, center.y - mid.y});
}

Curve elongate_last(const Curve& c, const Rational& L) {
  if (c.pts.size() < 2) throw VpgError("GeometryFailure", "cannot elongate a degenerate curve");
  if (!(L > 0)) throw VpgError("GeometryFailure", "elongation must be positive");
  Curve out = c;
  Point& last = out.pts.back();
  const Point& prev = out.pts[out.pts.size() - 2];
  Segment s(prev, last);
  if (s.horizontal())
    last.x += (last.x > prev.x) ? L : -L;
  else if (s.vertical())
    last.y += (last.y > prev.y) ? L : -L;
  else
    throw VpgError("GeometryFailure", "tip segment is not axis-parallel");
  return out;
}

Curve elongate_first(const Curve& c, const Rational& L) {
  Curve rev = c;
  std::reverse(rev.pts.begin(), rev.pts.end());
  rev = elongate_last(rev, L);
  std::reverse(rev.pts.begin(), rev.pts.end());
  return rev;
}

}  // namespace vpg
