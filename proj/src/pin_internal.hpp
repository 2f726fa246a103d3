#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vpg/gadgets.hpp"

namespace vpg {
namespace pindetail {

// A pin with its template parameters exposed, so the clothespin assembly can
// attach fan structures at exact known positions.
struct PinBuild {
  PinGadget gadget;
  Rational p, mu;
  Rational xs0, xs1, xsL, ys0, ysT;  // overlay extremes
  Rational ya, yb;                   // window rows
  Point a0;                          // tip origin (anchor start)
  Rational base, hbase;
  Rational S0, S1lvl, S2lvl, h0;     // south arm levels
  Rational N0, NS1, NSB, h2;         // north arm levels
  Rational W1, W2, WS1;              // south lanes (west of the grid)
  Rational WS2, W1p, W3;             // north lanes
  Rational E1;                       // east riser lane
  Rational Wtip;                     // west end of the bare pin's tip
  Rational YA;                       // fan-bar level (chassis only)
  std::string id_sa, id_w1, id_sb, id_e1;  // ring segments bounding the old anchor cell
};

// with_fan adds the fan bar "x" at level YA plus the four limbs
// "z_sa","z_w1","z_sb","z_e1", each crossing x and one ring segment.
PinBuild chassis(int k, bool with_fan);

// ordered single-point crossings of one curve against the rest
std::vector<std::pair<std::string, Point>> crossing_profile(const Representation& rep,
                                                            const std::string& id);
// first discrepancy between two graphs, for error messages
std::string graph_diff(const Graph& expect, const Graph& got);

}  // namespace pindetail
}  // namespace vpg
