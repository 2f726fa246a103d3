#pragma once

#include <vector>

#include "vpg/rep.hpp"

// Shared implementations behind the serial/parallel kernel pairs.
namespace vpg::detail {

Graph intersection_graph_impl(const Representation& rep, bool parallel);
PropernessReport validate_proper_impl(const Representation& rep, bool parallel);
Rational min_feature_distance_impl(const std::vector<Curve>& curves, bool parallel);

}  // namespace vpg::detail
