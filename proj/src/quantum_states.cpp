#include "ucr/quantum_states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "ucr/errors.hpp"
#include "ucr/specfun.hpp"

namespace ucr {

namespace {

using quadrature::Integrand;
using quadrature::QuadratureSpec;

constexpr double kPi = std::numbers::pi;
constexpr double kMomentTolerance = 1e-8;
constexpr double kMomentumBoundaryTolerance = 1e-12;

double accurate(const quadrature::IntegralResult& r, const char* what) {
  quadrature::require_accuracy(r, kMomentTolerance, what);
  return r.value;
}

double over_pieces(const Integrand& f, const std::vector<double>& breaks, const QuadratureSpec& spec,
                   const char* what) {
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    total += accurate(quadrature::integrate_finite(f, breaks[k], breaks[k + 1], spec), what);
  }
  return total;
}

// Integral over the real line as two half-lines; the negative half is
// integrated as f(-y) on the same breaks so odd integrands cancel exactly.
// Each half is cut into pieces about half a local wavelength long out past
// the turning point, so the cost grows with n instead of exhausting the
// subdivision budget, then finished by a semi-infinite tail.
double whole_line(const Integrand& f, int n, const QuadratureSpec& spec, const char* what) {
  const double turning = std::sqrt(2.0 * n + 1.0);
  const double edge = turning + 10.0;
  const int pieces = std::max(1, static_cast<int>(std::ceil(edge * turning / kPi)));
  std::vector<double> breaks(pieces + 1);
  for (int k = 0; k <= pieces; ++k) breaks[k] = edge * k / pieces;
  breaks[pieces] = edge;

  const auto half = [&](const Integrand& g) {
    return over_pieces(g, breaks, spec, what) +
           accurate(quadrature::integrate_semi_infinite(g, edge, spec), what);
  };
  const double right = half(f);
  const double left = half([&f](double y) { return f(-y); });
  return left + right;
}

// Nodal points of the well state on [-1, 1], mirrored so that paired lobes
// are exact reflections of each other.
std::vector<double> well_nodes(int n) {
  std::vector<double> nodes(n + 1);
  for (int k = 0; 2 * k <= n; ++k) {
    nodes[k] = -1.0 + 2.0 * k / n;
    nodes[n - k] = -nodes[k];
  }
  return nodes;
}

double well_state(int n, double xi) {
  const double phase = 0.5 * n * kPi * xi;
  return n % 2 == 1 ? std::cos(phase) : std::sin(phase);
}

double well_state_prime(int n, double xi) {
  const double k = 0.5 * n * kPi;
  return n % 2 == 1 ? -k * std::sin(k * xi) : k * std::cos(k * xi);
}

StateIntegrals oscillator_integrals(const EigenLevel& level, const QuadratureSpec& spec) {
  const int n = level.n;
  const double scale = 2.0 * n + 1.0;
  const auto phi = [n](double y) { return specfun::hermite_function(n, y); };

  StateIntegrals out;
  out.norm = whole_line([&](double y) { const double p = phi(y); return p * p; }, n, spec, "HO norm");
  const double y1 = whole_line([&](double y) { const double p = phi(y); return y * p * p; }, n, spec, "HO <X>");
  const double y2 =
      whole_line([&](double y) { const double p = phi(y); return y * y * p * p; }, n, spec, "HO <X^2>");
  out.momentum_boundary = whole_line(
      [&](double y) { return phi(y) * specfun::hermite_function_prime(n, y); }, n, spec, "HO <P>");
  const double d2 = whole_line(
      [&](double y) { return phi(y) * specfun::hermite_function_second(n, y); }, n, spec, "HO <P^2>");

  out.moments = ScaledMoments::from_means(y1 / std::sqrt(scale), y2 / scale, 0.0, -d2 / scale,
                                          Realm::quantum, MomentMethod::quadrature);
  return out;
}

StateIntegrals well_integrals(const EigenLevel& level, const QuadratureSpec& spec) {
  const int n = level.n;
  const std::vector<double> nodes = well_nodes(n);
  const double k = 0.5 * n * kPi;

  StateIntegrals out;
  out.norm = over_pieces([n](double xi) { const double c = well_state(n, xi); return c * c; }, nodes, spec,
                         "well norm");
  const double x1 = over_pieces(
      [n](double xi) { const double c = well_state(n, xi); return xi * c * c; }, nodes, spec, "well <X>");
  const double x2 = over_pieces(
      [n](double xi) { const double c = well_state(n, xi); return xi * xi * c * c; }, nodes, spec,
      "well <X^2>");
  out.momentum_boundary = over_pieces(
      [n](double xi) { return well_state(n, xi) * well_state_prime(n, xi); }, nodes, spec, "well <P>");
  // psi'' = -k^2 psi, and P = -i (1/k) d/dxi.
  const double d2 = over_pieces(
      [n, k](double xi) { const double c = well_state(n, xi); return -k * k * c * c; }, nodes, spec,
      "well <P^2>");

  out.moments = ScaledMoments::from_means(x1, x2, 0.0, -d2 / (k * k), Realm::quantum,
                                          MomentMethod::quadrature);
  return out;
}

// Sum over the lobes between consecutive zeros a_n < ... < a_1 plus the
// decaying tail beyond a_1.
double over_airy_lobes(const Integrand& f, const std::vector<double>& zeros, const QuadratureSpec& spec,
                       const char* what) {
  double total = over_pieces(f, zeros, spec, what);
  total += accurate(quadrature::integrate_semi_infinite(f, zeros.back(), spec), what);
  return total;
}

std::vector<double> airy_zeros_ascending(int n) {
  std::vector<double> zeros;
  zeros.reserve(n);
  for (int k = n; k >= 1; --k) zeros.push_back(specfun::airy_zero(k).value);
  return zeros;
}

StateIntegrals bouncer_integrals(const EigenLevel& level, const QuadratureSpec& spec) {
  const std::vector<double> zeros = airy_zeros_ascending(level.n);
  const double lower = zeros.front();
  const double scaled_energy = -lower;
  const auto ai = [](double z) { return specfun::airy_ai(z).ai; };

  const double i0 = over_airy_lobes([&](double z) { const double a = ai(z); return a * a; }, zeros, spec,
                                    "bouncer norm");
  const double norm2 = 1.0 / i0;
  // z' + E'_n is the distance above the floor in units of l_g.
  const double h1 = over_airy_lobes(
      [&](double z) { const double a = ai(z); return (z - lower) * a * a; }, zeros, spec, "bouncer <Z>");
  const double h2 = over_airy_lobes(
      [&](double z) { const double a = ai(z); const double h = z - lower; return h * h * a * a; }, zeros,
      spec, "bouncer <Z^2>");
  const double ip = over_airy_lobes(
      [](double z) { const auto v = specfun::airy_ai(z); return v.ai * v.ai_prime; }, zeros, spec,
      "bouncer <P>");
  // Ai'' = z Ai.
  const double i2 = over_airy_lobes(
      [&](double z) { const double a = ai(z); return z * a * a; }, zeros, spec, "bouncer <P^2>");

  StateIntegrals out;
  out.norm = norm2 * i0;
  out.momentum_boundary = norm2 * ip;
  out.moments = ScaledMoments::from_means(norm2 * h1 / scaled_energy,
                                          norm2 * h2 / (scaled_energy * scaled_energy), 0.0,
                                          -norm2 * i2 / scaled_energy, Realm::quantum,
                                          MomentMethod::quadrature);
  return out;
}

}  // namespace

EigenLevel eigen_level(const PotentialModel& model, int n) {
  EigenLevel level{model, n, 0.0, 0.0, std::nullopt, std::nullopt};
  const double hbar = model.hbar();
  switch (model.kind()) {
    case SystemKind::harmonic_oscillator: {
      if (n < 0) throw DomainError("eigen_level: oscillator needs n >= 0");
      const auto& s = std::get<HarmonicOscillator>(model.system());
      level.energy = (n + 0.5) * hbar * s.omega;
      level.turning_point = std::sqrt((2.0 * n + 1.0) * hbar / (s.mass * s.omega));
      break;
    }
    case SystemKind::infinite_well: {
      if (n < 1) throw DomainError("eigen_level: infinite well needs n >= 1");
      const auto& s = std::get<InfiniteWell>(model.system());
      const double nn = n;
      level.energy = nn * nn * kPi * kPi * hbar * hbar / (2.0 * s.mass * s.width * s.width);
      level.turning_point = 0.5 * s.width;
      break;
    }
    case SystemKind::bouncing_ball: {
      if (n < 1) throw DomainError("eigen_level: bouncing ball needs n >= 1");
      const auto& s = std::get<BouncingBall>(model.system());
      const double lg = std::cbrt(hbar * hbar / (2.0 * s.mass * s.mass * s.gravity));
      const double scaled = specfun::airy_zero(n).scaled_energy;
      level.grav_length = lg;
      level.scaled_energy = scaled;
      level.energy = s.mass * s.gravity * lg * scaled;
      level.turning_point = lg * scaled;
      break;
    }
  }
  return level;
}

BouncerState make_bouncer_state(const EigenLevel& level, const QuadratureSpec& spec) {
  if (level.model.kind() != SystemKind::bouncing_ball) {
    throw DomainError("make_bouncer_state: level is not a bouncing-ball level");
  }
  const std::vector<double> zeros = airy_zeros_ascending(level.n);
  const double i0 = over_airy_lobes(
      [](double z) { const double a = specfun::airy_ai(z).ai; return a * a; }, zeros, spec, "bouncer norm");
  return BouncerState{level, 1.0 / std::sqrt(i0)};
}

Eigenstate::Eigenstate(EigenLevel level, const QuadratureSpec& spec) : level_(std::move(level)) {
  if (level_.model.kind() == SystemKind::bouncing_ball) {
    bouncer_normalization_ = make_bouncer_state(level_, spec).normalization;
  }
}

double Eigenstate::operator()(double x) const {
  const PotentialModel& model = level_.model;
  const int n = level_.n;
  switch (model.kind()) {
    case SystemKind::harmonic_oscillator: {
      const auto& s = std::get<HarmonicOscillator>(model.system());
      const double inv_length = std::sqrt(s.mass * s.omega / model.hbar());
      return std::sqrt(inv_length) * specfun::hermite_function(n, x * inv_length);
    }
    case SystemKind::infinite_well: {
      const double half = level_.turning_point;
      if (std::abs(x) > half) return 0.0;
      return std::sqrt(1.0 / half) * well_state(n, x / half);
    }
    case SystemKind::bouncing_ball: {
      if (x <= 0.0) return 0.0;
      const double lg = *level_.grav_length;
      return bouncer_normalization_ / std::sqrt(lg) * specfun::airy_ai(x / lg - *level_.scaled_energy).ai;
    }
  }
  return 0.0;
}

double wavefunction(const EigenLevel& level, double x) { return Eigenstate(level)(x); }

StateIntegrals quantum_state_integrals(const EigenLevel& level, const QuadratureSpec& spec) {
  StateIntegrals out;
  switch (level.model.kind()) {
    case SystemKind::harmonic_oscillator: out = oscillator_integrals(level, spec); break;
    case SystemKind::infinite_well: out = well_integrals(level, spec); break;
    case SystemKind::bouncing_ball: out = bouncer_integrals(level, spec); break;
  }
  if (!(std::abs(out.momentum_boundary) < kMomentumBoundaryTolerance)) {
    throw NumericError("quantum moments: integral of psi psi' is " + std::to_string(out.momentum_boundary) +
                           ", so <P> would not be real",
                       out.momentum_boundary);
  }
  return out;
}

ScaledMoments quantum_moments_quadrature(const EigenLevel& level, const QuadratureSpec& spec) {
  return quantum_state_integrals(level, spec).moments;
}

ScaledMoments quantum_moments_closed_form(const EigenLevel& level) {
  switch (level.model.kind()) {
    case SystemKind::harmonic_oscillator:
      return ScaledMoments::from_means(0.0, 0.5, 0.0, 0.5, Realm::quantum, MomentMethod::closed_form);
    case SystemKind::infinite_well: {
      const double n = level.n;
      return ScaledMoments::from_means(0.0, 1.0 / 3.0 - 2.0 / (n * n * kPi * kPi), 0.0, 1.0,
                                       Realm::quantum, MomentMethod::closed_form);
    }
    case SystemKind::bouncing_ball:
      return ScaledMoments::from_means(2.0 / 3.0, 8.0 / 15.0, 0.0, 1.0 / 3.0, Realm::quantum,
                                       MomentMethod::closed_form);
  }
  throw DomainError("quantum_moments_closed_form: unknown system");
}

double commutator_bound(const EigenLevel& level) {
  const double n = level.n;
  switch (level.model.kind()) {
    case SystemKind::harmonic_oscillator: return 1.0 / (4.0 * (2.0 * n + 1.0) * (2.0 * n + 1.0));
    case SystemKind::infinite_well: return 1.0 / (n * n * kPi * kPi);
    case SystemKind::bouncing_ball: {
      const double e = *level.scaled_energy;
      return 1.0 / (4.0 * e * e * e);
    }
  }
  throw DomainError("commutator_bound: unknown system");
}

std::vector<DensityPoint> density_grid(const EigenLevel& level, int points) {
  if (points < 2) throw DomainError("density_grid: need at least 2 points");
  const Eigenstate state(level);
  const ClassicalEnsemble ensemble(level.model, level.energy);
  const double amplitude = level.turning_point;
  const bool one_sided = level.model.kind() == SystemKind::bouncing_ball;
  const double start = one_sided ? 0.0 : -1.0;
  const double step = (1.0 - start) / (points - 1);

  std::vector<DensityPoint> grid(points);
  std::vector<bool> singular(points, false);
  for (int i = 0; i < points; ++i) {
    // Pin the last node so the upper turning point is hit exactly.
    const double xs = i == points - 1 ? 1.0 : start + i * step;
    const double x = amplitude * xs;
    const double psi = state(x);
    const DensityValue cl = classical_density(ensemble, x);
    grid[i] = {xs, amplitude * psi * psi, amplitude * cl.value, false};
    singular[i] = cl.singular;
  }

  // Replace each turning-point singularity by the nearest regular value; if
  // every node is singular fall back to the density at the region centre.
  for (int i = 0; i < points; ++i) {
    if (!singular[i]) continue;
    double replacement = NAN;
    for (int d = 1; d < points && std::isnan(replacement); ++d) {
      for (int j : {i - d, i + d}) {
        if (j >= 0 && j < points && !singular[j]) {
          replacement = grid[j].p_cl;
          break;
        }
      }
    }
    if (std::isnan(replacement)) {
      const double centre = 0.5 * (ensemble.lower() + ensemble.upper());
      replacement = amplitude * classical_density(ensemble, centre).value;
    }
    grid[i].p_cl = replacement;
    grid[i].clipped = true;
  }
  return grid;
}

}  // namespace ucr
