#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cm/grid.hpp"

namespace cm {

// Analytic time-dependent velocity fields on the unit box. The built-in
// kinds are modulated by cos(pi t / A), so each flow reverses about t = A/2
// and returns any advected set to its start at t = A.
class VelocityField {
 public:
  enum class Kind { Swirl2D, Deform3D, MandelField2D, Mosaic2D, Custom };

  using CustomFn = std::function<Vec(const Vec&, double)>;

  // Single-vortex swirl: u = cos(pi t/A) sin^2(pi x) sin(2 pi y),
  //                      v = -cos(pi t/A) sin^2(pi y) sin(2 pi x).
  static VelocityField swirl2d(double period_a = 16.0);

  // 3D deformation field, reversal period A = 2.
  static VelocityField deform3d();

  // Two-region 2D field (left vortices / right expansion) with smooth
  // weight blending.
  static VelocityField mandel_field2d(double period_a = 16.0);

  // Periodic translating-shear field, reversal period 2.
  static VelocityField mosaic2d();

  static VelocityField custom(int dims, CustomFn fn,
                              const std::string& name = "custom");

  Kind kind() const { return kind_; }
  int dims() const { return dims_; }
  double period() const { return period_a_; }
  const std::string& name() const { return name_; }

  Vec operator()(const Vec& x, double t) const;

 private:
  VelocityField(Kind kind, int dims, double period_a, std::string name)
      : kind_(kind), dims_(dims), period_a_(period_a), name_(std::move(name)) {}

  Kind kind_ = Kind::Swirl2D;
  int dims_ = 2;
  double period_a_ = 16.0;
  std::string name_;
  CustomFn fn_;
};

// One classical third-order Runge-Kutta step of dx/dt = v(x, t), from t to
// t + dt.
Vec rk3_forward_step(const VelocityField& v, const Vec& x, double t,
                     double dt);

// Departure point of the characteristic arriving at x at time t + dt,
// evaluated at time t: the same Runge-Kutta scheme run with a negative step.
Vec trace_backward_rk3(const VelocityField& v, const Vec& x, double t,
                       double dt);

// Error-estimation tracers with remembered initial positions.
struct ParticleSet {
  std::vector<Vec> initial;
  std::vector<Vec> pos;

  size_t size() const { return pos.size(); }
};

// gamma particles per cell of `geom`, placed on a k^d sublattice of cell
// centers; gamma must be a d-th power (1, 4, 9, ... in 2D).
ParticleSet seed_particles(const GridGeometry& geom, int gamma);

// Advances every particle by one forward RK3 step.
void advance_particles(ParticleSet& particles, const VelocityField& v,
                       double t, double dt);

// Returns all particles to their initial positions.
void reset_particles(ParticleSet& particles);

}  // namespace cm
