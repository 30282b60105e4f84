#pragma once

#include "cm/hermite.hpp"

namespace cm {

// A d-component backward map chi stored as identity plus a Hermite
// displacement field: chi(x) = x + delta(x). The displacement of a periodic
// flow is itself periodic, so this representation wraps correctly on
// periodic grids and represents the identity exactly on any grid.
class MapField {
 public:
  MapField() = default;
  explicit MapField(const GridGeometry& geom)
      : field_(geom, geom.dims()) {}

  static MapField identity(const GridGeometry& geom) { return MapField(geom); }

  const GridGeometry& geometry() const { return field_.geometry(); }
  HermiteField& displacement() { return field_; }
  const HermiteField& displacement() const { return field_; }

  // chi(x); valid for x outside the box (clamped grids clamp the
  // displacement query, periodic grids wrap it).
  Vec eval(const Vec& x) const {
    double v[3] = {0.0, 0.0, 0.0};
    field_.eval(x, v);
    Vec out = x;
    for (int j = 0; j < field_.geometry().dims(); ++j) out[j] += v[j];
    return out;
  }

  // chi(x) and its Jacobian; jac[k*d + j] = d chi_k / d x_j.
  Vec eval_with_jacobian(const Vec& x, double* jac) const {
    const int d = field_.geometry().dims();
    double v[3];
    field_.eval_with_gradient(x, v, jac);
    Vec out = x;
    for (int j = 0; j < d; ++j) {
      out[j] += v[j];
      jac[j * d + j] += 1.0;
    }
    return out;
  }

  // Full derivative lattice of the map (displacement lattice plus the
  // identity contribution); layout as HermiteField::eval_lattice.
  void eval_lattice(const Vec& x, double* out) const {
    const int d = field_.geometry().dims();
    const int stride = field_.lattice_stride();
    field_.eval_lattice(x, out);
    const int order1[3] = {1, 4, 16};
    for (int k = 0; k < d; ++k) {
      out[k * stride + 0] += x[k];
      out[k * stride + order1[k]] += 1.0;
    }
  }

  // Max-norm of the displacement node values (diagnostic).
  double max_displacement() const;

  bool is_identity() const;

 private:
  HermiteField field_;
};

// Resamples the map onto a new grid over the same box.
MapField resample(const MapField& src, const GridGeometry& target);

}  // namespace cm
