#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <variant>

#include "ucr/quadrature.hpp"

namespace ucr {

struct HarmonicOscillator {
  double mass = 1.0;
  double omega = 1.0;
};

/// Infinitely deep well occupying |x| <= width / 2.
struct InfiniteWell {
  double mass = 1.0;
  double width = 1.0;
};

/// Particle above a hard floor at z = 0 in uniform gravity, V = m g z.
struct BouncingBall {
  double mass = 1.0;
  double gravity = 1.0;
};

enum class SystemKind { harmonic_oscillator, infinite_well, bouncing_ball };

/// Short CLI identifiers: "ho", "well", "bouncer".
std::string_view to_string(SystemKind kind);
/// Throws DomainError for an unknown identifier.
SystemKind parse_system(std::string_view name);

/// One of the three bound systems together with hbar, so the same object
/// drives both the classical and the quantum calculation.
class PotentialModel {
 public:
  using Variant = std::variant<HarmonicOscillator, InfiniteWell, BouncingBall>;

  /// Throws DomainError unless every parameter (and hbar) is finite and > 0.
  explicit PotentialModel(Variant system, double hbar = 1.0);

  /// Unit-parameter model of the given kind.
  static PotentialModel unit(SystemKind kind);

  SystemKind kind() const;
  const Variant& system() const { return system_; }
  double mass() const;
  double hbar() const { return hbar_; }

  /// V(x). Infinite outside the well walls and below the floor.
  double potential(double x) const;

 private:
  Variant system_;
  double hbar_;
};

enum class Realm { classical, quantum };
enum class MomentMethod { closed_form, quadrature, trajectory };

std::string_view to_string(Realm realm);
std::string_view to_string(MomentMethod method);

/// First and second moments of the scaled position X = x / A (Z for the
/// bouncer) and momentum P = p / sqrt(2 m E).
struct ScaledMoments {
  double mean_x = 0.0;
  double mean_x2 = 0.0;
  double mean_p = 0.0;
  double mean_p2 = 0.0;
  double var_x = 0.0;
  double var_p = 0.0;
  double product = 0.0;
  Realm realm = Realm::classical;
  MomentMethod method = MomentMethod::closed_form;

  /// Fills the variances (clamped at 0) and their product.
  static ScaledMoments from_means(double mean_x, double mean_x2, double mean_p, double mean_p2,
                                  Realm realm, MomentMethod method);
};

struct DensityValue {
  double value = 0.0;
  /// True at a turning point, where value is +inf.
  bool singular = false;
};

/// Fixed-energy classical ensemble with its position density
/// P(x) = N / sqrt(E - V(x)) on the classically allowed region.
class ClassicalEnsemble {
 public:
  /// Throws DomainError unless energy is finite and > 0. Moments are
  /// energy-independent, so E = 1 (model units) is the default. N
  /// is found by tanh-sinh quadrature over the allowed region.
  ClassicalEnsemble(PotentialModel model, double energy = 1.0,
                    const quadrature::QuadratureSpec& spec = {});

  const PotentialModel& model() const { return model_; }
  double energy() const { return energy_; }
  /// Amplitude for the symmetric systems, maximum height for the bouncer.
  double turning_point() const { return turning_point_; }
  double normalization() const { return normalization_; }
  /// Allowed region [lower, upper].
  double lower() const { return lower_; }
  double upper() const { return upper_; }

  /// E - V(x) for x = lower + from_lower = upper - to_upper, formed from the
  /// endpoint distances so it keeps full precision at the turning points.
  double kinetic_energy(double from_lower, double to_upper) const;

 private:
  PotentialModel model_;
  double energy_;
  double turning_point_ = 0.0;
  double lower_ = 0.0;
  double upper_ = 0.0;
  double normalization_ = 0.0;
};

/// P_CL(x): zero outside the allowed region, flagged +inf at a turning point.
DensityValue classical_density(const ClassicalEnsemble& ens, double x);

/// Ensemble average of F(X, P) over the two momentum branches
/// P = +-sqrt((E - V) / E), weighted by P_CL.
double phase_space_average(const ClassicalEnsemble& ens,
                           const std::function<double(double, double)>& scaled_observable,
                           const quadrature::QuadratureSpec& spec = {});

ScaledMoments classical_moments_quadrature(const ClassicalEnsemble& ens,
                                           const quadrature::QuadratureSpec& spec = {});

/// Exact values: HO (0, 1/2, 0, 1/2), well (0, 1/3, 0, 1),
/// bouncer (2/3, 8/15, 0, 1/3).
ScaledMoments classical_moments_closed_form(const PotentialModel& model);

}  // namespace ucr
