#pragma once

#include <functional>
#include <span>
#include <vector>

#include "cm/grid.hpp"

namespace cm {

// Tensor-product cubic Hermite interpolant on a regular grid.
//
// Each node stores 2^d coefficients per component: the value, all first
// partials and all mixed partials, indexed by a derivative bitmask (bit j set
// means one d/dx_j applied). 2D order: f, f_x, f_y, f_xy. 3D order: f, f_x,
// f_y, f_xy, f_z, f_xz, f_yz, f_xyz. Derivatives are stored in domain units;
// the cell-width scaling lives in the basis. Evaluation is C^1 across cell
// faces and reproduces any polynomial of per-axis degree <= 3 exactly when
// the node data is exact.
class HermiteField {
 public:
  HermiteField() = default;
  HermiteField(const GridGeometry& geom, int components);

  const GridGeometry& geometry() const { return geom_; }
  int components() const { return ncomp_; }
  int coefs_per_node() const { return 1 << geom_.dims(); }
  int node_stride() const { return ncomp_ * coefs_per_node(); }

  double* node_data(long node) { return data_.data() + node * node_stride(); }
  const double* node_data(long node) const {
    return data_.data() + node * node_stride();
  }
  std::vector<double>& raw() { return data_; }
  const std::vector<double>& raw() const { return data_; }

  // Interpolated value(s) at x; out must hold components() doubles.
  void eval(const Vec& x, double* out) const;
  double eval1(const Vec& x) const;  // scalar convenience

  // Value plus analytic first derivatives of the interpolant.
  // val: components(); jac: components() x dims(), jac[k*dims + j] = d f_k / d x_j.
  void eval_with_gradient(const Vec& x, double* val, double* jac) const;

  // Full jet: all 2^d derivative masks per component, same mask order as the
  // stored node data. out[k * 2^d + mask].
  void eval_jet(const Vec& x, double* out) const;

  // Per-axis derivative lattice up to order 3: out[k * 64 + (o0 + 4*o1 + 16*o2)]
  // = d^{o0+o1+o2} f_k / dx^{o0} dy^{o1} dz^{o2} of the piecewise polynomial
  // (2D uses o2 = 0 and stride 16). This is what semi-Lagrangian derivative
  // transport consumes.
  static constexpr int kLatticeStride2D = 16;
  static constexpr int kLatticeStride3D = 64;
  int lattice_stride() const { return geom_.dims() == 2 ? 16 : 64; }
  void eval_lattice(const Vec& x, double* out) const;

 private:
  // orders = number of derivative orders kept per axis (1: value, 2: jet,
  // 4: full lattice). Output layout [k][o0 + orders*o1 + orders^2*o2].
  void eval_orders(const Vec& x, int orders, double* out) const;

  GridGeometry geom_;
  int ncomp_ = 1;
  std::vector<double> data_;
};

// Node-data provider giving the exact jet at a point: fills out[k * 2^d + mask]
// with the analytic derivatives of component k.
using JetFn = std::function<void(const Vec&, double*)>;
// Value-only provider: fills out[k].
using ValueFn = std::function<void(const Vec&, double*)>;

// Populates node data from an analytic jet.
HermiteField fill_from_jet(const GridGeometry& geom, int components,
                           const JetFn& jet);

// Populates node data from values alone; derivatives come from central finite
// differences with step 1e-4 * dx (first partials axis-aligned, mixed partials
// from the corner stencils).
HermiteField fill_from_values(const GridGeometry& geom, int components,
                              const ValueFn& value);

// New field on `target` whose node data are the analytic jets of `src`
// evaluated at the target nodes. Requires the same box and boundary type.
HermiteField resample(const HermiteField& src, const GridGeometry& target);

}  // namespace cm
