#pragma once

#include <optional>
#include <vector>

#include "ucr/classical_ensemble.hpp"
#include "ucr/quadrature.hpp"

namespace ucr {

/// A stationary state's quantum number with its energy and classical turning
/// point. Bouncer levels also carry the gravitational length l_g and the
/// scaled energy E'_n = E_n / (m g l_g).
struct EigenLevel {
  PotentialModel model;
  int n = 0;
  double energy = 0.0;
  double turning_point = 0.0;
  std::optional<double> scaled_energy;
  std::optional<double> grav_length;
};

/// Throws DomainError for n outside the system's range (HO n >= 0; well and
/// bouncer n >= 1).
EigenLevel eigen_level(const PotentialModel& model, int n);

/// Bouncer eigenstate N_n Ai(z') in z' = z / l_g - E'_n, with N_n fixed by
/// quadrature of Ai^2 over [-E'_n, inf).
struct BouncerState {
  EigenLevel level;
  double normalization = 0.0;
};

BouncerState make_bouncer_state(const EigenLevel& level, const quadrature::QuadratureSpec& spec = {});

/// Normalised real stationary wavefunction in physical position units. Well
/// states alternate parity: odd n cosine, even n sine. Zero outside the
/// walls and for z <= 0 (bouncer).
class Eigenstate {
 public:
  explicit Eigenstate(EigenLevel level, const quadrature::QuadratureSpec& spec = {});

  const EigenLevel& level() const { return level_; }
  double operator()(double x) const;

 private:
  EigenLevel level_;
  double bouncer_normalization_ = 0.0;
};

/// Convenience for a single evaluation; builds an Eigenstate.
double wavefunction(const EigenLevel& level, double x);

/// Raw integrals behind the quantum moments, in each system's dimensionless
/// coordinate (y = x sqrt(m w / hbar), xi = 2x / L, z').
struct StateIntegrals {
  double norm = 0.0;              ///< integral of |psi|^2
  double momentum_boundary = 0.0;  ///< integral of psi psi'; vanishes for a bound state
  ScaledMoments moments;
};

/// Throws NumericError when a quadrature misses its tolerance or the psi psi'
/// integral exceeds 1e-12 (a real <P> would require it to vanish).
StateIntegrals quantum_state_integrals(const EigenLevel& level,
                                       const quadrature::QuadratureSpec& spec = {});

/// <X>, <X^2>, <P>, <P^2> of X = x / A_n and P = p / sqrt(2 m E_n). Second
/// derivatives are analytic: Hermite recurrences (HO), -(n pi / L)^2 psi
/// (well), psi'' = z' psi (bouncer).
ScaledMoments quantum_moments_quadrature(const EigenLevel& level,
                                         const quadrature::QuadratureSpec& spec = {});

/// HO (0, 1/2, 0, 1/2); well (0, 1/3 - 2/(n^2 pi^2), 0, 1);
/// bouncer (2/3, 8/15, 0, 1/3).
ScaledMoments quantum_moments_closed_form(const EigenLevel& level);

/// Robertson bound |<[X, P]>|^2 / 4 on var_x * var_p:
/// 1/(4 (2n+1)^2), 1/(n^2 pi^2), 1/(4 E'_n^3).
double commutator_bound(const EigenLevel& level);

struct DensityPoint {
  double x_scaled = 0.0;
  double p_qm = 0.0;
  double p_cl = 0.0;
  /// p_cl was singular here and has been replaced by a neighbouring value.
  bool clipped = false;
};

/// Quantum density A_n |psi_n(A_n X)|^2 and classical density at E_n, both
/// per unit X, on `points` uniform nodes over [-1, 1] ([0, 1] for the
/// bouncer). Throws DomainError for points < 2.
std::vector<DensityPoint> density_grid(const EigenLevel& level, int points);

}  // namespace ucr
