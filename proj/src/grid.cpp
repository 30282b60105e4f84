#include "cm/grid.hpp"

namespace cm {

std::string to_string(Boundary b) {
  return b == Boundary::Periodic ? "periodic" : "clamped";
}

Boundary boundary_from_string(const std::string& s) {
  if (s == "periodic") return Boundary::Periodic;
  if (s == "clamped") return Boundary::Clamped;
  throw std::invalid_argument("unknown boundary type: " + s);
}

GridGeometry::GridGeometry(int dims, int cells, Boundary boundary,
                           const Vec& lo, double side)
    : dims_(dims), cells_(cells), boundary_(boundary), lo_(lo), side_(side) {
  if (dims != 2 && dims != 3)
    throw std::invalid_argument("grid dims must be 2 or 3");
  if (cells < 1) throw std::invalid_argument("grid needs at least one cell");
  if (!(side > 0.0)) throw std::invalid_argument("grid side must be positive");
  dx_ = side_ / cells_;
  for (int j = dims_; j < 3; ++j) lo_[j] = 0.0;
}

CellLoc GridGeometry::locate(const Vec& x) const {
  CellLoc loc;
  const double inv_dx = 1.0 / dx_;
  for (int j = 0; j < dims_; ++j) {
    if (std::isnan(x[j]))
      throw std::domain_error("grid query contains NaN");
    double u = x[j] - lo_[j];
    if (boundary_ == Boundary::Periodic) {
      u -= side_ * std::floor(u / side_);
      if (u >= side_) u = 0.0;  // guard the u == side_ rounding case
    } else {
      if (u < 0.0) u = 0.0;
      if (u > side_) u = side_;
    }
    double r = u * inv_dx;
    int cell = static_cast<int>(std::floor(r));
    if (cell >= cells_) cell = cells_ - 1;
    if (cell < 0) cell = 0;
    double s = r - cell;
    // Snap near-node queries so evaluation at grid nodes is exact.
    const double snap = 4e-16 * cells_ > 1e-12 ? 4e-16 * cells_ : 1e-12;
    if (s < snap) {
      s = 0.0;
    } else if (s > 1.0 - snap && cell + 1 <= cells_ - 1) {
      cell += 1;
      s = 0.0;
    } else if (s > 1.0) {
      s = 1.0;
    }
    loc.cell[j] = cell;
    loc.s[j] = s;
  }
  return loc;
}

void GridGeometry::corner_nodes(const CellLoc& c, long out[8]) const {
  const int n = nodes_per_axis();
  const int ncorners = 1 << dims_;
  for (int corner = 0; corner < ncorners; ++corner) {
    int idx[3] = {0, 0, 0};
    for (int j = 0; j < dims_; ++j) {
      int i = c.cell[j] + ((corner >> j) & 1);
      if (boundary_ == Boundary::Periodic && i >= n) i -= n;
      idx[j] = i;
    }
    out[corner] = node_index(idx);
  }
}

bool GridGeometry::same_box(const GridGeometry& o) const {
  return dims_ == o.dims_ && boundary_ == o.boundary_ && side_ == o.side_ &&
         lo_[0] == o.lo_[0] && lo_[1] == o.lo_[1] && lo_[2] == o.lo_[2];
}

bool GridGeometry::operator==(const GridGeometry& o) const {
  return same_box(o) && cells_ == o.cells_;
}

bool GridGeometry::outside(const Vec& x, double tol) const {
  for (int j = 0; j < dims_; ++j) {
    if (x[j] < lo_[j] - tol || x[j] > lo_[j] + side_ + tol) return true;
  }
  return false;
}

}  // namespace cm
