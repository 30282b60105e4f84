#include "cm/map_field.hpp"

#include <algorithm>

namespace cm {

double MapField::max_displacement() const {
  const int nm = field_.coefs_per_node();
  const int d = field_.geometry().dims();
  double m = 0.0;
  const long n = field_.geometry().node_count();
  for (long i = 0; i < n; ++i) {
    const double* nd = field_.node_data(i);
    for (int k = 0; k < d; ++k) m = std::max(m, std::abs(nd[k * nm]));
  }
  return m;
}

bool MapField::is_identity() const {
  for (double v : field_.raw())
    if (v != 0.0) return false;
  return true;
}

MapField resample(const MapField& src, const GridGeometry& target) {
  MapField out(target);
  out.displacement() = resample(src.displacement(), target);
  return out;
}

}  // namespace cm
