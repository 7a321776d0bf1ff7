#pragma once

#include <cstdint>

#include "ucr/classical_ensemble.hpp"

namespace ucr {

struct PhasePoint {
  double x = 0.0;
  double p = 0.0;
};

/// Exact periodic orbit of energy E, starting at the centre (bouncer: the
/// floor) moving in the +x direction at t = 0.
///   HO:      x = A sin(w t)
///   well:    triangle wave between the walls at speed sqrt(2E/m)
///   bouncer: parabolic arcs z = v0 t - g t^2 / 2, reflected at z = 0
class Trajectory {
 public:
  /// Throws DomainError unless energy is finite and > 0.
  Trajectory(PotentialModel model, double energy);

  const PotentialModel& model() const { return model_; }
  double energy() const { return energy_; }
  double period() const { return period_; }
  /// Scale for X: amplitude, half-width or apex height.
  double turning_point() const { return turning_point_; }

  PhasePoint at(double t) const;
  double position(double t) const { return at(t).x; }
  double momentum(double t) const { return at(t).p; }

 private:
  PotentialModel model_;
  double energy_;
  double period_ = 0.0;
  double turning_point_ = 0.0;
  double speed_ = 0.0;
};

Trajectory build_trajectory(const PotentialModel& model, double energy = 1.0);

enum class SamplingRule {
  uniform_time,  ///< t_i = i T / N
  midpoint,      ///< t_i = (i + 1/2) T / N
  random,        ///< t_i uniform on [0, T), seeded
};

/// Time averages of X, X^2, P, P^2 over one period (method = trajectory).
/// Throws DomainError for samples < 2.
ScaledMoments trajectory_moments(const Trajectory& traj, long samples,
                                 SamplingRule rule = SamplingRule::midpoint, std::uint64_t seed = 0);

}  // namespace ucr
