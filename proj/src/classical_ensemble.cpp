#include "ucr/classical_ensemble.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ucr/errors.hpp"

namespace ucr {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive(double v, const char* name) {
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw DomainError(std::string("PotentialModel: ") + name + " must be finite and > 0");
  }
}

// Moments are accepted from a non-converged quadrature only if its error
// estimate is still below this.
constexpr double kMomentTolerance = 1e-8;

}  // namespace

std::string_view to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::harmonic_oscillator: return "ho";
    case SystemKind::infinite_well: return "well";
    case SystemKind::bouncing_ball: return "bouncer";
  }
  return "unknown";
}

SystemKind parse_system(std::string_view name) {
  if (name == "ho") return SystemKind::harmonic_oscillator;
  if (name == "well") return SystemKind::infinite_well;
  if (name == "bouncer") return SystemKind::bouncing_ball;
  throw DomainError("unknown system '" + std::string(name) + "' (expected ho, well or bouncer)");
}

std::string_view to_string(Realm realm) {
  return realm == Realm::classical ? "classical" : "quantum";
}

std::string_view to_string(MomentMethod method) {
  switch (method) {
    case MomentMethod::closed_form: return "closed-form";
    case MomentMethod::quadrature: return "quadrature";
    case MomentMethod::trajectory: return "trajectory";
  }
  return "unknown";
}

PotentialModel::PotentialModel(Variant system, double hbar) : system_(system), hbar_(hbar) {
  require_positive(hbar, "hbar");
  std::visit(overloaded{
                 [](const HarmonicOscillator& s) {
                   require_positive(s.mass, "mass");
                   require_positive(s.omega, "omega");
                 },
                 [](const InfiniteWell& s) {
                   require_positive(s.mass, "mass");
                   require_positive(s.width, "width");
                 },
                 [](const BouncingBall& s) {
                   require_positive(s.mass, "mass");
                   require_positive(s.gravity, "gravity");
                 },
             },
             system_);
}

PotentialModel PotentialModel::unit(SystemKind kind) {
  switch (kind) {
    case SystemKind::harmonic_oscillator: return PotentialModel(HarmonicOscillator{});
    case SystemKind::infinite_well: return PotentialModel(InfiniteWell{});
    case SystemKind::bouncing_ball: return PotentialModel(BouncingBall{});
  }
  throw DomainError("PotentialModel::unit: unknown kind");
}

SystemKind PotentialModel::kind() const {
  return std::visit(overloaded{
                        [](const HarmonicOscillator&) { return SystemKind::harmonic_oscillator; },
                        [](const InfiniteWell&) { return SystemKind::infinite_well; },
                        [](const BouncingBall&) { return SystemKind::bouncing_ball; },
                    },
                    system_);
}

double PotentialModel::mass() const {
  return std::visit([](const auto& s) { return s.mass; }, system_);
}

double PotentialModel::potential(double x) const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return std::visit(overloaded{
                        [x](const HarmonicOscillator& s) { return 0.5 * s.mass * s.omega * s.omega * x * x; },
                        [x](const InfiniteWell& s) { return std::abs(x) <= 0.5 * s.width ? 0.0 : inf; },
                        [x](const BouncingBall& s) { return x >= 0.0 ? s.mass * s.gravity * x : inf; },
                    },
                    system_);
}

ScaledMoments ScaledMoments::from_means(double mean_x, double mean_x2, double mean_p,
                                        double mean_p2, Realm realm, MomentMethod method) {
  ScaledMoments m;
  m.mean_x = mean_x;
  m.mean_x2 = mean_x2;
  m.mean_p = mean_p;
  m.mean_p2 = mean_p2;
  m.var_x = std::max(0.0, mean_x2 - mean_x * mean_x);
  m.var_p = std::max(0.0, mean_p2 - mean_p * mean_p);
  m.product = m.var_x * m.var_p;
  m.realm = realm;
  m.method = method;
  return m;
}

ClassicalEnsemble::ClassicalEnsemble(PotentialModel model, double energy,
                                     const quadrature::QuadratureSpec& spec)
    : model_(model), energy_(energy) {
  if (!std::isfinite(energy) || !(energy > 0.0)) {
    throw DomainError("ClassicalEnsemble: energy must be finite and > 0");
  }
  std::visit(overloaded{
                 [this](const HarmonicOscillator& s) {
                   turning_point_ = std::sqrt(2.0 * energy_ / s.mass) / s.omega;
                   lower_ = -turning_point_;
                   upper_ = turning_point_;
                 },
                 [this](const InfiniteWell& s) {
                   turning_point_ = 0.5 * s.width;
                   lower_ = -turning_point_;
                   upper_ = turning_point_;
                 },
                 [this](const BouncingBall& s) {
                   turning_point_ = energy_ / (s.mass * s.gravity);
                   lower_ = 0.0;
                   upper_ = turning_point_;
                 },
             },
             model_.system());

  const auto inverse_speed = [this](double, double from_lower, double to_upper) {
    return 1.0 / std::sqrt(kinetic_energy(from_lower, to_upper));
  };
  const auto total = quadrature::integrate_singular_endpoints(inverse_speed, lower_, upper_, spec);
  quadrature::require_accuracy(total, kMomentTolerance * std::abs(total.value), "classical normalization");
  normalization_ = 1.0 / total.value;
}

double ClassicalEnsemble::kinetic_energy(double from_lower, double to_upper) const {
  return std::visit(overloaded{
                        [&](const HarmonicOscillator& s) {
                          // E - m w^2 x^2 / 2 = m w^2 (A - x)(A + x) / 2
                          return 0.5 * s.mass * s.omega * s.omega * from_lower * to_upper;
                        },
                        [&](const InfiniteWell&) { return energy_; },
                        [&](const BouncingBall& s) { return s.mass * s.gravity * to_upper; },
                    },
                    model_.system());
}

DensityValue classical_density(const ClassicalEnsemble& ens, double x) {
  if (!(x >= ens.lower() && x <= ens.upper())) return {0.0, false};
  const double kinetic = ens.kinetic_energy(x - ens.lower(), ens.upper() - x);
  if (kinetic <= 0.0) return {std::numeric_limits<double>::infinity(), true};
  return {ens.normalization() / std::sqrt(kinetic), false};
}

double phase_space_average(const ClassicalEnsemble& ens,
                           const std::function<double(double, double)>& scaled_observable,
                           const quadrature::QuadratureSpec& spec) {
  const double lower = ens.lower();
  const double upper = ens.upper();
  const double amplitude = ens.turning_point();
  const double energy = ens.energy();
  const double norm = ens.normalization();

  const auto integrand = [&](double, double from_lower, double to_upper) {
    const double x = from_lower <= to_upper ? lower + from_lower : upper - to_upper;
    const double kinetic = ens.kinetic_energy(from_lower, to_upper);
    const double momentum = std::sqrt(kinetic / energy);
    const double scaled_x = x / amplitude;
    const double branches = scaled_observable(scaled_x, -momentum) + scaled_observable(scaled_x, momentum);
    return 0.5 * norm / std::sqrt(kinetic) * branches;
  };
  const auto r = quadrature::integrate_singular_endpoints(integrand, lower, upper, spec);
  quadrature::require_accuracy(r, kMomentTolerance, "phase_space_average");
  return r.value;
}

ScaledMoments classical_moments_quadrature(const ClassicalEnsemble& ens,
                                           const quadrature::QuadratureSpec& spec) {
  const double mean_x = phase_space_average(ens, [](double x, double) { return x; }, spec);
  const double mean_x2 = phase_space_average(ens, [](double x, double) { return x * x; }, spec);
  const double mean_p = phase_space_average(ens, [](double, double p) { return p; }, spec);
  const double mean_p2 = phase_space_average(ens, [](double, double p) { return p * p; }, spec);
  return ScaledMoments::from_means(mean_x, mean_x2, mean_p, mean_p2, Realm::classical,
                                   MomentMethod::quadrature);
}

ScaledMoments classical_moments_closed_form(const PotentialModel& model) {
  switch (model.kind()) {
    case SystemKind::harmonic_oscillator:
      return ScaledMoments::from_means(0.0, 0.5, 0.0, 0.5, Realm::classical, MomentMethod::closed_form);
    case SystemKind::infinite_well:
      return ScaledMoments::from_means(0.0, 1.0 / 3.0, 0.0, 1.0, Realm::classical,
                                       MomentMethod::closed_form);
    case SystemKind::bouncing_ball:
      return ScaledMoments::from_means(2.0 / 3.0, 8.0 / 15.0, 0.0, 1.0 / 3.0, Realm::classical,
                                       MomentMethod::closed_form);
  }
  throw DomainError("classical_moments_closed_form: unknown system");
}

}  // namespace ucr
