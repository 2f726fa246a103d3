#include "vpg/kernels.hpp"

#include "vpg/detail.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vpg {

bool kernels_parallel_available() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

int kernels_max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

Graph intersection_graph_serial(const Representation& rep) {
  return detail::intersection_graph_impl(rep, false);
}

Graph intersection_graph_parallel(const Representation& rep) {
  return detail::intersection_graph_impl(rep, true);
}

PropernessReport validate_proper_serial(const Representation& rep) {
  return detail::validate_proper_impl(rep, false);
}

PropernessReport validate_proper_parallel(const Representation& rep) {
  return detail::validate_proper_impl(rep, true);
}

Rational min_feature_distance_serial(const std::vector<Curve>& curves) {
  return detail::min_feature_distance_impl(curves, false);
}

Rational min_feature_distance_parallel(const std::vector<Curve>& curves) {
  return detail::min_feature_distance_impl(curves, true);
}

}  // namespace vpg
