#pragma once

#include "vpg/rep.hpp"

namespace vpg {

Curve translate_curve(const Curve& c, const Point& d);
Curve scale_curve(const Curve& c, const Rational& s);  // uniform, about origin
Curve rotate90cw_curve(const Curve& c);                // (x, y) -> (y, -x)

Representation translate_rep(const Representation& rep, const Point& d);
Representation scale_rep(const Representation& rep, const Rational& s);
Representation rotate90cw_rep(const Representation& rep);

struct RepBBox {
  Rational x0, x1, y0, y1;
  bool valid = false;
  Rational width() const { return x1 - x0; }
  Rational height() const { return y1 - y0; }
};

RepBBox rep_bbox(const Representation& rep);

// Uniform scale + translate so the bbox lands inside the axis-aligned square
// centered at `center` with half-side `radius` (strictly, margin radius/8).
Representation fit_into(const Representation& rep, const Point& center, const Rational& radius);

// Extends the final (or first) segment of a curve by L in its direction.
Curve elongate_last(const Curve& c, const Rational& L);
Curve elongate_first(const Curve& c, const Rational& L);

}  // namespace vpg
