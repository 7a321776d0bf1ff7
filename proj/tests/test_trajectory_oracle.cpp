#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ucr/classical_ensemble.hpp"
#include "ucr/errors.hpp"
#include "ucr/trajectory_oracle.hpp"

using namespace ucr;

namespace {

constexpr SystemKind kAll[] = {SystemKind::harmonic_oscillator, SystemKind::infinite_well,
                               SystemKind::bouncing_ball};

PotentialModel random_model(SystemKind kind, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> exponent(-1.5, 1.5);
  const auto r = [&] { return std::pow(10.0, exponent(rng)); };
  switch (kind) {
    case SystemKind::harmonic_oscillator: return PotentialModel(HarmonicOscillator{r(), r()});
    case SystemKind::infinite_well: return PotentialModel(InfiniteWell{r(), r()});
    case SystemKind::bouncing_ball: return PotentialModel(BouncingBall{r(), r()});
  }
  throw std::logic_error("unreachable");
}

double max_deviation(const ScaledMoments& a, const ScaledMoments& b) {
  double d = 0.0;
  for (double v : {a.mean_x - b.mean_x, a.mean_x2 - b.mean_x2, a.mean_p - b.mean_p, a.mean_p2 - b.mean_p2,
                   a.var_x - b.var_x, a.var_p - b.var_p, a.product - b.product}) {
    d = std::max(d, std::abs(v));
  }
  return d;
}

}  // namespace

TEST_CASE("phase convention examples") {
  const PotentialModel ho(HarmonicOscillator{2.0, 3.0});
  const auto t_ho = build_trajectory(ho, 9.0);  // A = 1
  CHECK(t_ho.at(0.0).x == 0.0);
  CHECK(t_ho.at(0.0).p == doctest::Approx(2.0 * 3.0 * 1.0));
  CHECK(t_ho.period() == doctest::Approx(2.0 * std::numbers::pi / 3.0));

  const PotentialModel ball(BouncingBall{2.0, 5.0});
  const auto t_ball = build_trajectory(ball, 30.0);  // A = 3
  const PhasePoint apex = t_ball.at(t_ball.period() / 2.0);
  CHECK(apex.x == doctest::Approx(3.0));
  CHECK(std::abs(apex.p) < 1e-12);
  CHECK(t_ball.at(0.0).x == 0.0);

  const PotentialModel well(InfiniteWell{1.0, 2.0});
  const auto t_well = build_trajectory(well, 0.5);
  CHECK(t_well.at(t_well.period() / 4.0).x == doctest::Approx(1.0));
  CHECK(t_well.at(0.1 * t_well.period()).p > 0.0);
  CHECK(t_well.at(0.3 * t_well.period()).p < 0.0);
  CHECK(t_well.at(0.5 * t_well.period()).x == doctest::Approx(0.0).scale(1.0));
  CHECK(t_well.at(0.75 * t_well.period()).x == doctest::Approx(-1.0));

  CHECK_THROWS_AS(build_trajectory(well, 0.0), DomainError);
  CHECK_THROWS_AS(build_trajectory(well, NAN), DomainError);
}

TEST_CASE("energy conservation at 10^4 random times and periodicity") {
  std::mt19937_64 rng(11);
  for (SystemKind kind : kAll) {
    const PotentialModel model = random_model(kind, rng);
    const double energy = 2.7;
    const auto traj = build_trajectory(model, energy);
    std::uniform_real_distribution<double> times(-3.0 * traj.period(), 3.0 * traj.period());
    INFO(to_string(kind));
    for (int i = 0; i < 10000; ++i) {
      const double t = times(rng);
      const PhasePoint s = traj.at(t);
      // The walls themselves carry infinite V; only the interior matters.
      const double v = kind == SystemKind::infinite_well ? 0.0 : model.potential(s.x);
      CHECK(std::abs(s.p * s.p / (2.0 * model.mass()) + v - energy) < 1e-10 * energy);
      const PhasePoint later = traj.at(t + traj.period());
      CHECK(later.x == doctest::Approx(s.x).scale(traj.turning_point()).epsilon(1e-12));
    }
  }
}

TEST_CASE("sample-mean examples") {
  const auto ho = trajectory_moments(build_trajectory(PotentialModel::unit(SystemKind::harmonic_oscillator)), 1000000);
  CHECK(std::abs(ho.mean_x2 - 0.5) < 1e-6);
  CHECK(ho.method == MomentMethod::trajectory);
  CHECK(ho.realm == Realm::classical);

  const auto ball = trajectory_moments(build_trajectory(PotentialModel::unit(SystemKind::bouncing_ball)), 1000000);
  CHECK(std::abs(ball.mean_x - 2.0 / 3.0) < 1e-5);

  for (long samples : {2L, 3L, 10L, 100L, 12345L}) {
    const auto well = trajectory_moments(build_trajectory(PotentialModel::unit(SystemKind::infinite_well)), samples);
    CHECK(well.mean_p2 == 1.0);
  }
}

TEST_CASE("time average equals the ensemble average (10 random sets per system)") {
  std::mt19937_64 rng(12);
  for (SystemKind kind : kAll) {
    for (int i = 0; i < 10; ++i) {
      const PotentialModel model = random_model(kind, rng);
      const double energy = std::pow(10.0, std::uniform_real_distribution<double>(-1.0, 1.0)(rng));
      const auto time_avg = trajectory_moments(build_trajectory(model, energy), 1000000);
      const auto ensemble = classical_moments_quadrature(ClassicalEnsemble(model, energy));
      INFO(to_string(kind) << " draw " << i);
      CHECK(max_deviation(time_avg, ensemble) < 1e-4);
    }
  }
}

TEST_CASE("error shrinks over decades of samples") {
  for (SystemKind kind : {SystemKind::bouncing_ball, SystemKind::infinite_well}) {
    const PotentialModel model = PotentialModel::unit(kind);
    const auto exact = classical_moments_closed_form(model);
    const auto traj = build_trajectory(model);
    double previous = INFINITY;
    for (long samples = 1000; samples <= 1000000; samples *= 10) {
      const double error = max_deviation(trajectory_moments(traj, samples), exact);
      INFO(to_string(kind) << " samples " << samples);
      CHECK(error < previous);
      previous = error;
    }
  }
  // Equispaced samples of a sinusoid are exact, so the oscillator sits at
  // rounding level already at small N.
  const auto ho = trajectory_moments(build_trajectory(PotentialModel::unit(SystemKind::harmonic_oscillator)), 10);
  CHECK(max_deviation(ho, classical_moments_closed_form(PotentialModel::unit(SystemKind::harmonic_oscillator))) < 1e-14);
}

TEST_CASE("sampling rules") {
  const auto traj = build_trajectory(PotentialModel::unit(SystemKind::bouncing_ball));
  const auto a = trajectory_moments(traj, 5000, SamplingRule::random, 42);
  const auto b = trajectory_moments(traj, 5000, SamplingRule::random, 42);
  const auto c = trajectory_moments(traj, 5000, SamplingRule::random, 43);
  CHECK(a.mean_x == b.mean_x);
  CHECK(a.mean_p2 == b.mean_p2);
  CHECK(a.mean_x != c.mean_x);
  // Monte Carlo error ~ 1/sqrt(N).
  CHECK(std::abs(a.mean_x - 2.0 / 3.0) < 0.03);

  const auto uniform = trajectory_moments(traj, 1000000, SamplingRule::uniform_time);
  CHECK(std::abs(uniform.mean_x - 2.0 / 3.0) < 1e-5);

  // The chunked parallel reduction is deterministic.
  const auto big1 = trajectory_moments(traj, 300001);
  const auto big2 = trajectory_moments(traj, 300001);
  CHECK(big1.mean_x2 == big2.mean_x2);

  CHECK_THROWS_AS(trajectory_moments(traj, 1), DomainError);
  CHECK_THROWS_AS(trajectory_moments(traj, 0), DomainError);
}
