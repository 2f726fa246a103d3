#pragma once

#include <map>
#include <string>

#include "vpg/graph.hpp"
#include "vpg/grill.hpp"
#include "vpg/rep.hpp"

namespace vpg {

struct SausageSpec {
  int k = 0;
  Rational scale = Rational(1);
};

// Two interleaved k-bend staircases "u" and "v" crossing exactly k+1 times,
// left to right: the intersection graph is K_2.
Representation sausage(const SausageSpec& spec);

struct WaffleSpec {
  int n = 1;
};

// 3n straight segments (n horizontal, n vertical, n of slope 1) whose
// intersection graph is the complete tripartite K_{n,n,n}; the diagonals carve
// a quadratic number of triangular faces out of the square lattice.
Representation waffle(const WaffleSpec& spec);

struct WaffleForK {
  int n = 0;
  Representation rep;
};

// Smallest n <= cap whose waffle has more than 3*k*n triangular faces.
// Throws RangeExhausted when no tested n qualifies.
WaffleForK waffle_for_k(int k, int cap = 12);

// grill(sausage(k)) anchored at u's starting endpoint.
GrillOutput grilled_sausage(int k);

struct PinGadget {
  Graph graph;
  Representation representation;
  std::string tipVertex;  // "u"
  Segment tipSegment;     // final segment of u's curve
};

// Grilled sausage redrawn so the boundary chain of the anchor cell rings the
// body and u's first segment leaves the layout as an elongatable tip.
// Throws LayoutFailure when the redraw breaks any audited invariant.
PinGadget pin(int k);

struct ClothespinGadget {
  Graph graph;
  Representation representation;
  Segment tip1, tip2;  // tips of u_1 and u_2: parallel, co-directional
  std::map<std::string, std::string> roles;
};

// Two fanned pins, a third plain pin, and a subdivided K_4 frame, assembled
// so the two tips run parallel out of the layout. Throws LayoutFailure when
// the template cannot meet the bend budget (k = 0 in particular).
ClothespinGadget clothespin(int k);

// The clothespin's combinatorial graph per the fixed recipe (k-independent).
Graph clothespin_graph();

}  // namespace vpg
