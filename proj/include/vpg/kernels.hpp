#pragma once

#include <vector>

#include "vpg/rep.hpp"

namespace vpg {

// Pairwise scans exist in two builds: the OpenMP kernel used by default when
// compiled in, and a serial reference kept for testing and benchmarking.
// Both produce bit-identical results (deterministic merge order).

bool kernels_parallel_available();
int kernels_max_threads();

Graph intersection_graph_serial(const Representation& rep);
Graph intersection_graph_parallel(const Representation& rep);

PropernessReport validate_proper_serial(const Representation& rep);
PropernessReport validate_proper_parallel(const Representation& rep);

Rational min_feature_distance_serial(const std::vector<Curve>& curves);
Rational min_feature_distance_parallel(const std::vector<Curve>& curves);

}  // namespace vpg
