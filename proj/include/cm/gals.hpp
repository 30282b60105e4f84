#pragma once

#include "cm/flow.hpp"
#include "cm/map_field.hpp"

namespace cm {

struct GalsConfig {
  // Offset of the footpoint cluster around each node, as a fraction of the
  // cell width. Must lie in (0, 0.5).
  double epsilon_rel = 1e-4;
  // Time step used by multi-step drivers; 0 selects cfl_default * dx.
  double dt = 0.0;
  double cfl_default = 1.0;

  void validate() const {
    if (!(epsilon_rel > 0.0 && epsilon_rel < 0.5))
      throw std::invalid_argument("epsilon_rel must be in (0, 0.5)");
    if (dt < 0.0) throw std::invalid_argument("dt must be non-negative");
  }
  double step_for(const GridGeometry& geom) const {
    return dt > 0.0 ? dt : cfl_default * geom.dx();
  }
};

// Accumulated wall time and work counts per phase of a run. Phases are timed
// over blocks of nodes so the clock overhead stays negligible.
struct PhaseTimers {
  double footpoints_s = 0.0;
  double interpolation_s = 0.0;
  double particles_s = 0.0;
  double remapping_s = 0.0;
  long traces = 0;
  long interp_evals = 0;
  long node_updates = 0;
};

struct GalsStats {
  long clamped_footpoints = 0;
};

// One semi-Lagrangian advection step of a Hermite field from t to t + dt.
//
// Every node traces the 2^d cluster points x_i + (+-eps, ...) backward
// through dt. The new node value is the old interpolant at the cluster
// centroid; first and mixed partials follow from the chain rule through the
// one-step flow map, whose Jacobian and mixed derivatives come from
// differencing the footpoint positions over the cluster. One step incurs a
// local error of O(dt^4) + O(dx^4), and with v == 0 it reproduces the input
// coefficients to roundoff.
HermiteField gals_step(const HermiteField& field, const VelocityField& v,
                       double t, double dt, const GalsConfig& cfg,
                       GalsStats* stats = nullptr,
                       PhaseTimers* timers = nullptr);

// gals_step for a backward map: all components share one footpoint cluster
// per node, and the displacement representation is maintained.
MapField advect_map(const MapField& map, const VelocityField& v, double t,
                    double dt, const GalsConfig& cfg,
                    GalsStats* stats = nullptr, PhaseTimers* timers = nullptr);

// Repeated gals_step from t0 to t1 with the configured step; the single-grid
// baseline that advects a set function directly.
HermiteField gals_advect_scalar_run(const HermiteField& s0,
                                    const VelocityField& v, double t0,
                                    double t1, const GalsConfig& cfg,
                                    GalsStats* stats = nullptr,
                                    PhaseTimers* timers = nullptr);

}  // namespace cm
