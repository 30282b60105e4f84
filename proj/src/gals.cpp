#include "cm/gals.hpp"

#include <chrono>
#include <cmath>
#include <string>

namespace cm {

namespace {

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Lattice offsets of the pure first/second/third derivatives (stride-4 order
// index per axis: o0 + 4*o1 + 16*o2).
inline int lattice_offset(int o0, int o1, int o2) {
  return o0 + 4 * o1 + 16 * o2;
}

inline int pair_id(int a, int b) {  // (0,1)->0 (0,2)->1 (1,2)->2
  return a + b - 1;
}

// Derivatives of the one-step backward flow map, recovered from the 2^d
// footpoints of an eps-offset cluster.
struct FlowJet {
  Vec center = {0, 0, 0};   // cluster centroid, X(x_i) + O(eps^2)
  double jac[3][3] = {};    // jac[k][a] = dX_k/dx_a
  double mixed2[3][3] = {}; // mixed2[k][pair_id(a,b)] = d2 X_k/dx_a dx_b
  double mixed3[3] = {};    // d3 X_k/dx dy dz (3D)
};

void reduce_cluster(int d, double eps, const Vec* foot, FlowJet& out) {
  const int nc = 1 << d;
  const double inv_n = 1.0 / nc;
  const double inv_e1 = inv_n / eps;
  const double inv_e2 = inv_n / (eps * eps);
  const double inv_e3 = inv_n / (eps * eps * eps);
  for (int k = 0; k < d; ++k) {
    double sum = 0.0;
    for (int c = 0; c < nc; ++c) sum += foot[c][k];
    out.center[k] = sum * inv_n;
    for (int a = 0; a < d; ++a) {
      double acc = 0.0;
      for (int c = 0; c < nc; ++c)
        acc += ((c >> a) & 1) ? foot[c][k] : -foot[c][k];
      out.jac[k][a] = acc * inv_e1;
    }
    for (int a = 0; a < d; ++a) {
      for (int b = a + 1; b < d; ++b) {
        double acc = 0.0;
        for (int c = 0; c < nc; ++c) {
          const double sgn =
              (((c >> a) & 1) == ((c >> b) & 1)) ? 1.0 : -1.0;
          acc += sgn * foot[c][k];
        }
        out.mixed2[k][pair_id(a, b)] = acc * inv_e2;
      }
    }
    if (d == 3) {
      double acc = 0.0;
      for (int c = 0; c < nc; ++c) {
        const int bits = ((c >> 0) & 1) + ((c >> 1) & 1) + ((c >> 2) & 1);
        acc += (bits & 1) ? foot[c][k] : -foot[c][k];
      }
      out.mixed3[k] = acc * inv_e3;
    }
  }
}

// Chain rule g = phi o X: builds the 2^d-entry node jet of component i from
// the derivative lattice of phi at the cluster centroid and the flow jet.
void assemble_node_jet(int d, const double* lat, const FlowJet& fj,
                       double* jet) {
  const int nm = 1 << d;
  double d1[3];
  double d2[3][3];
  double d3[3][3][3];
  for (int k = 0; k < d; ++k) {
    int o[3] = {0, 0, 0};
    o[k] = 1;
    d1[k] = lat[lattice_offset(o[0], o[1], o[2])];
  }
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) {
      int o[3] = {0, 0, 0};
      o[k] += 1;
      o[l] += 1;
      d2[k][l] = lat[lattice_offset(o[0], o[1], o[2])];
    }
  if (d == 3) {
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l)
        for (int m = 0; m < d; ++m) {
          int o[3] = {0, 0, 0};
          o[k] += 1;
          o[l] += 1;
          o[m] += 1;
          d3[k][l][m] = lat[lattice_offset(o[0], o[1], o[2])];
        }
  }

  jet[0] = lat[0];
  for (int a = 0; a < d; ++a) {
    double acc = 0.0;
    for (int k = 0; k < d; ++k) acc += d1[k] * fj.jac[k][a];
    jet[1 << a] = acc;
  }
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      double acc = 0.0;
      for (int k = 0; k < d; ++k) {
        double inner = 0.0;
        for (int l = 0; l < d; ++l) inner += d2[k][l] * fj.jac[l][b];
        acc += inner * fj.jac[k][a] + d1[k] * fj.mixed2[k][pair_id(a, b)];
      }
      jet[(1 << a) | (1 << b)] = acc;
    }
  }
  if (d == 3) {
    double acc = 0.0;
    for (int k = 0; k < 3; ++k) {
      for (int l = 0; l < 3; ++l) {
        double inner = 0.0;
        for (int m = 0; m < 3; ++m) inner += d3[k][l][m] * fj.jac[m][2];
        acc += fj.jac[k][0] * fj.jac[l][1] * inner;
        acc += d2[k][l] * (fj.jac[k][0] * fj.mixed2[l][pair_id(1, 2)] +
                           fj.jac[k][1] * fj.mixed2[l][pair_id(0, 2)] +
                           fj.jac[k][2] * fj.mixed2[l][pair_id(0, 1)]);
      }
      acc += d1[k] * fj.mixed3[k];
    }
    jet[7] = acc;
  }
}

// Shared driver: LatticeAt fills lat[comp * stride + ...] with the full
// derivative lattice of the transported quantity at a point.
template <class LatticeAt>
void advance_nodes(const GridGeometry& geom, int ncomp,
                   const LatticeAt& lattice_at, const VelocityField& v,
                   double t, double dt, double eps, bool map_mode,
                   HermiteField& out, GalsStats* stats, PhaseTimers* timers) {
  const int d = geom.dims();
  const int nm = 1 << d;
  const long n = geom.node_count();
  const bool clamped = geom.boundary() == Boundary::Clamped;

  constexpr long kBlock = 512;
  std::vector<Vec> feet(kBlock * 8);
  double lat[3 * 64];
  double jet[8];

  for (long start = 0; start < n; start += kBlock) {
    const long end = std::min(n, start + kBlock);

    auto t0 = Clock::now();
    for (long i = start; i < end; ++i) {
      const Vec p = geom.node_point(i);
      Vec* f = feet.data() + (i - start) * nm;
      for (int c = 0; c < nm; ++c) {
        Vec q = p;
        for (int j = 0; j < d; ++j) q[j] += ((c >> j) & 1) ? eps : -eps;
        f[c] = trace_backward_rk3(v, q, t, dt);
        if (clamped && stats && geom.outside(f[c])) ++stats->clamped_footpoints;
      }
    }
    if (timers) {
      timers->footpoints_s += seconds_since(t0);
      timers->traces += (end - start) * nm;
    }

    t0 = Clock::now();
    for (long i = start; i < end; ++i) {
      FlowJet fj;
      reduce_cluster(d, eps, feet.data() + (i - start) * nm, fj);
      lattice_at(fj.center, lat);
      double* nd = out.node_data(i);
      const int stride = (d == 2) ? 16 : 64;
      for (int k = 0; k < ncomp; ++k) {
        assemble_node_jet(d, lat + k * stride, fj, jet);
        for (int m = 0; m < nm; ++m) nd[k * nm + m] = jet[m];
      }
      if (map_mode) {
        // Store the displacement: subtract the identity jet at this node.
        const Vec p = geom.node_point(i);
        for (int k = 0; k < d; ++k) {
          nd[k * nm + 0] -= p[k];
          nd[k * nm + (1 << k)] -= 1.0;
        }
      }
      for (int k = 0; k < ncomp * nm; ++k) {
        if (!std::isfinite(nd[k]))
          throw std::runtime_error("advection produced non-finite data at node " +
                                   std::to_string(i));
      }
    }
    if (timers) {
      timers->interpolation_s += seconds_since(t0);
      timers->interp_evals += (end - start);
      timers->node_updates += (end - start);
    }
  }
}

}  // namespace

HermiteField gals_step(const HermiteField& field, const VelocityField& v,
                       double t, double dt, const GalsConfig& cfg,
                       GalsStats* stats, PhaseTimers* timers) {
  cfg.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("gals_step needs dt > 0");
  const GridGeometry& geom = field.geometry();
  HermiteField out(geom, field.components());
  const double eps = cfg.epsilon_rel * geom.dx();
  advance_nodes(
      geom, field.components(),
      [&](const Vec& p, double* lat) { field.eval_lattice(p, lat); }, v, t, dt,
      eps, /*map_mode=*/false, out, stats, timers);
  return out;
}

MapField advect_map(const MapField& map, const VelocityField& v, double t,
                    double dt, const GalsConfig& cfg, GalsStats* stats,
                    PhaseTimers* timers) {
  cfg.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("advect_map needs dt > 0");
  const GridGeometry& geom = map.geometry();
  MapField out(geom);
  const double eps = cfg.epsilon_rel * geom.dx();
  advance_nodes(
      geom, geom.dims(),
      [&](const Vec& p, double* lat) { map.eval_lattice(p, lat); }, v, t, dt,
      eps, /*map_mode=*/true, out.displacement(), stats, timers);
  return out;
}

HermiteField gals_advect_scalar_run(const HermiteField& s0,
                                    const VelocityField& v, double t0,
                                    double t1, const GalsConfig& cfg,
                                    GalsStats* stats, PhaseTimers* timers) {
  cfg.validate();
  if (t1 < t0) throw std::invalid_argument("t1 must be >= t0");
  HermiteField f = s0;
  const double dt = cfg.step_for(s0.geometry());
  double t = t0;
  while (t < t1 - 1e-12 * std::max(1.0, std::abs(t1))) {
    const double step = std::min(dt, t1 - t);
    f = gals_step(f, v, t, step, cfg, stats, timers);
    t += step;
  }
  return f;
}

}  // namespace cm
