#include "cm/flow.hpp"

#include <cmath>

namespace cm {

namespace {

constexpr double kPi = 3.14159265358979323846;

inline Vec swirl_eval(const Vec& p, double t, double a) {
  const double x = p[0], y = p[1];
  const double c = std::cos(kPi * t / a);
  const double sx = std::sin(kPi * x);
  const double sy = std::sin(kPi * y);
  return {c * sx * sx * std::sin(2.0 * kPi * y),
          -c * sy * sy * std::sin(2.0 * kPi * x), 0.0};
}

inline Vec deform3d_eval(const Vec& p, double t) {
  const double x = p[0], y = p[1], z = p[2];
  const double c = std::cos(kPi * t / 2.0);
  const double sx = std::sin(kPi * x), sy = std::sin(kPi * y),
               sz = std::sin(kPi * z);
  const double s2x = std::sin(2.0 * kPi * x), s2y = std::sin(2.0 * kPi * y),
               s2z = std::sin(2.0 * kPi * z);
  return {2.0 * c * sx * sx * s2y * s2z, -c * s2x * sy * sy * s2z,
          -c * s2x * s2y * sz * sz};
}

inline Vec mandel_field_eval(const Vec& p, double t, double a) {
  const double x = p[0], y = p[1];
  const double c = std::cos(kPi * t / a);
  const double spy = std::sin(kPi * y);
  const double r = std::sin(kPi * (4.0 * x * x - 5.0 * x * x * x +
                                   2.0 * x * x * x * x)) *
                   spy;
  const double s32x = std::sin(1.5 * kPi * x);
  const double s2y = std::sin(2.0 * kPi * y);
  const double omx = 1.0 - x;
  const double l = std::sin(kPi * omx * omx * omx) * spy * s32x * s2y * s2y;
  const double u =
      c * (-0.25 * l * s32x * s32x * std::sin(4.0 * kPi * y) +
           0.75 * r * (x - 0.5));
  const double v =
      c * (0.25 * l * s2y * s2y * std::sin(3.0 * kPi * x) +
           0.75 * r * (y - 0.5));
  return {u, v, 0.0};
}

inline Vec mosaic_eval(const Vec& p, double t) {
  const double x = p[0], y = p[1];
  const double c = std::cos(kPi * t / 2.0);
  const double c2 = c * c;
  return {c * std::cos(2.0 * kPi * y + 2.0 * std::sin(2.0 * c2)),
          c * std::sin(2.0 * kPi * x + 2.0 * std::sin(c2)), 0.0};
}

}  // namespace

VelocityField VelocityField::swirl2d(double period_a) {
  return VelocityField(Kind::Swirl2D, 2, period_a, "swirl2d");
}

VelocityField VelocityField::deform3d() {
  return VelocityField(Kind::Deform3D, 3, 2.0, "deform3d");
}

VelocityField VelocityField::mandel_field2d(double period_a) {
  return VelocityField(Kind::MandelField2D, 2, period_a, "mandel_field2d");
}

VelocityField VelocityField::mosaic2d() {
  return VelocityField(Kind::Mosaic2D, 2, 2.0, "mosaic2d");
}

VelocityField VelocityField::custom(int dims, CustomFn fn,
                                    const std::string& name) {
  VelocityField v(Kind::Custom, dims, 0.0, name);
  v.fn_ = std::move(fn);
  return v;
}

Vec VelocityField::operator()(const Vec& x, double t) const {
  switch (kind_) {
    case Kind::Swirl2D:
      return swirl_eval(x, t, period_a_);
    case Kind::Deform3D:
      return deform3d_eval(x, t);
    case Kind::MandelField2D:
      return mandel_field_eval(x, t, period_a_);
    case Kind::Mosaic2D:
      return mosaic_eval(x, t);
    case Kind::Custom:
      return fn_(x, t);
  }
  return {0.0, 0.0, 0.0};
}

Vec rk3_forward_step(const VelocityField& v, const Vec& x, double t,
                     double dt) {
  const Vec k1 = v(x, t);
  const Vec k2 = v(x + (0.5 * dt) * k1, t + 0.5 * dt);
  const Vec k3 = v(x + dt * (2.0 * k2 - k1), t + dt);
  return x + (dt / 6.0) * (k1 + 4.0 * k2 + k3);
}

Vec trace_backward_rk3(const VelocityField& v, const Vec& x, double t,
                       double dt) {
  // Backward characteristic from t + dt down to t; identical Butcher scheme
  // with a negated step.
  const Vec k1 = v(x, t + dt);
  const Vec k2 = v(x - (0.5 * dt) * k1, t + 0.5 * dt);
  const Vec k3 = v(x - dt * (2.0 * k2 - k1), t);
  return x - (dt / 6.0) * (k1 + 4.0 * k2 + k3);
}

ParticleSet seed_particles(const GridGeometry& geom, int gamma) {
  if (gamma < 1) throw std::invalid_argument("gamma must be positive");
  const int d = geom.dims();
  int k = 1;
  while (true) {
    int p = 1;
    for (int j = 0; j < d; ++j) p *= k;
    if (p == gamma) break;
    if (p > gamma)
      throw std::invalid_argument(
          "gamma must be a d-th power so particles tile each cell");
    ++k;
  }
  ParticleSet set;
  const int n = geom.cells();
  const double h = geom.dx();
  const double sub = h / k;
  int idx[3] = {0, 0, 0};
  const long ncells = [&] {
    long c = 1;
    for (int j = 0; j < d; ++j) c *= n;
    return c;
  }();
  set.initial.reserve(ncells * gamma);
  for (long cell = 0; cell < ncells; ++cell) {
    long rem = cell;
    for (int j = 0; j < d; ++j) {
      idx[j] = static_cast<int>(rem % n);
      rem /= n;
    }
    int sidx[3] = {0, 0, 0};
    const long nsub = gamma;
    for (long s = 0; s < nsub; ++s) {
      long srem = s;
      for (int j = 0; j < d; ++j) {
        sidx[j] = static_cast<int>(srem % k);
        srem /= k;
      }
      Vec p = {0.0, 0.0, 0.0};
      for (int j = 0; j < d; ++j)
        p[j] = geom.lo()[j] + idx[j] * h + (sidx[j] + 0.5) * sub;
      set.initial.push_back(p);
    }
  }
  set.pos = set.initial;
  return set;
}

void advance_particles(ParticleSet& particles, const VelocityField& v,
                       double t, double dt) {
  if (dt <= 0.0) throw std::invalid_argument("particle step needs dt > 0");
  for (Vec& p : particles.pos) p = rk3_forward_step(v, p, t, dt);
}

void reset_particles(ParticleSet& particles) {
  particles.pos = particles.initial;
}

}  // namespace cm
