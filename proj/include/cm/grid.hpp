#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cm {

// Point or vector in up to 3 dimensions; components beyond the active
// dimension count stay zero so 2D and 3D code can share one type.
using Vec = std::array<double, 3>;

inline Vec vec2(double x, double y) { return {x, y, 0.0}; }
inline Vec vec3(double x, double y, double z) { return {x, y, z}; }

inline Vec operator+(const Vec& a, const Vec& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Vec operator-(const Vec& a, const Vec& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Vec operator*(double s, const Vec& a) {
  return {s * a[0], s * a[1], s * a[2]};
}
inline double dot(const Vec& a, const Vec& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

enum class Boundary { Clamped, Periodic };

std::string to_string(Boundary b);
Boundary boundary_from_string(const std::string& s);

// Location of a query point: cell index and local coordinate per axis.
struct CellLoc {
  int cell[3] = {0, 0, 0};
  double s[3] = {0.0, 0.0, 0.0};  // in [0, 1]
};

// Regular grid on an axis-aligned cube. All axes share the cell width
// dx = side / cells. Periodic grids store `cells` nodes per axis (node N
// wraps to node 0); clamped grids store cells + 1.
class GridGeometry {
 public:
  GridGeometry() = default;
  GridGeometry(int dims, int cells, Boundary boundary,
               const Vec& lo = {0.0, 0.0, 0.0}, double side = 1.0);

  int dims() const { return dims_; }
  int cells() const { return cells_; }
  Boundary boundary() const { return boundary_; }
  const Vec& lo() const { return lo_; }
  double side() const { return side_; }
  double dx() const { return dx_; }

  int nodes_per_axis() const {
    return boundary_ == Boundary::Periodic ? cells_ : cells_ + 1;
  }
  long node_count() const {
    long n = nodes_per_axis();
    long total = 1;
    for (int j = 0; j < dims_; ++j) total *= n;
    return total;
  }

  long node_index(const int idx[3]) const {
    long n = nodes_per_axis();
    long flat = 0;
    for (int j = dims_ - 1; j >= 0; --j) flat = flat * n + idx[j];
    return flat;
  }
  void node_multi_index(long flat, int idx[3]) const {
    long n = nodes_per_axis();
    for (int j = 0; j < dims_; ++j) {
      idx[j] = static_cast<int>(flat % n);
      flat /= n;
    }
    for (int j = dims_; j < 3; ++j) idx[j] = 0;
  }
  Vec node_point(long flat) const {
    int idx[3];
    node_multi_index(flat, idx);
    Vec p = {0.0, 0.0, 0.0};
    for (int j = 0; j < dims_; ++j) p[j] = lo_[j] + idx[j] * dx_;
    return p;
  }

  // Maps a query point to its containing cell and local coordinates.
  // Clamped grids clamp out-of-domain queries to the boundary; periodic
  // grids reduce modulo the box. NaN input throws.
  CellLoc locate(const Vec& x) const;

  // Linear node indices of the 2^dims cell corners, corner bit j selects
  // the high node along axis j.
  void corner_nodes(const CellLoc& c, long out[8]) const;

  bool same_box(const GridGeometry& o) const;
  bool operator==(const GridGeometry& o) const;

  // True if any component of x lies outside the box by more than `tol`.
  bool outside(const Vec& x, double tol = 0.0) const;

 private:
  int dims_ = 2;
  int cells_ = 1;
  Boundary boundary_ = Boundary::Clamped;
  Vec lo_ = {0.0, 0.0, 0.0};
  double side_ = 1.0;
  double dx_ = 1.0;
};

}  // namespace cm
