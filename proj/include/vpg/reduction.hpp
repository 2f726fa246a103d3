#pragma once

#include <map>
#include <set>
#include <string>

#include "vpg/graph.hpp"
#include "vpg/rep.hpp"

namespace vpg {

// Axis-parallel representation of a graph (bend count <= 1 per curve) whose
// adjacency is realized purely by crossings.
struct SubstitutionInput {
  Graph graph;
  Representation rep;
};

struct SubstitutionOutput {
  Graph graph;  // the blown-up graph
  Representation rep;
  std::map<std::string, std::set<std::string>> vertexMap;  // original -> parts
  std::map<std::string, Segment> tips;  // original -> tip segment of its u_1
  int m = 0;                            // max bend count of the input curves
  Graph original;
};

// Replaces every vertex by a clothespin scaled below one third of the input's
// minimum feature distance; tips run along the original curve's trace and
// cross pairwise near every original crossing.
SubstitutionOutput clothespin_substitute(const SubstitutionInput& input, int k);

// Decode direction: each original vertex keeps only the tip segment of its
// u_1 part. Requires straight tips (m = 0); throws NotDecodable otherwise.
Representation tip_extract(const SubstitutionOutput& output);

}  // namespace vpg
