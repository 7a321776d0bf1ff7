#include "ucr/trajectory_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <numbers>
#include <random>
#include <vector>

#include "ucr/errors.hpp"

namespace ucr {

Trajectory::Trajectory(PotentialModel model, double energy) : model_(model), energy_(energy) {
  if (!std::isfinite(energy) || !(energy > 0.0)) {
    throw DomainError("Trajectory: energy must be finite and > 0");
  }
  const double m = model_.mass();
  speed_ = std::sqrt(2.0 * energy / m);
  switch (model_.kind()) {
    case SystemKind::harmonic_oscillator: {
      const double w = std::get<HarmonicOscillator>(model_.system()).omega;
      period_ = 2.0 * std::numbers::pi / w;
      turning_point_ = speed_ / w;
      break;
    }
    case SystemKind::infinite_well: {
      const double width = std::get<InfiniteWell>(model_.system()).width;
      period_ = 2.0 * width / speed_;
      turning_point_ = 0.5 * width;
      break;
    }
    case SystemKind::bouncing_ball: {
      const double g = std::get<BouncingBall>(model_.system()).gravity;
      period_ = 2.0 * speed_ / g;
      turning_point_ = energy / (m * g);
      break;
    }
  }
}

PhasePoint Trajectory::at(double t) const {
  const double m = model_.mass();
  double tau = std::fmod(t, period_);
  if (tau < 0.0) tau += period_;

  switch (model_.kind()) {
    case SystemKind::harmonic_oscillator: {
      const double w = 2.0 * std::numbers::pi / period_;
      return {turning_point_ * std::sin(w * tau), m * speed_ * std::cos(w * tau)};
    }
    case SystemKind::infinite_well: {
      // Unfolded path length along one round trip of 2L.
      const double width = 2.0 * turning_point_;
      const double s = speed_ * tau;
      if (s <= 0.5 * width) return {s, m * speed_};
      if (s <= 1.5 * width) return {width - s, -m * speed_};
      return {s - 2.0 * width, m * speed_};
    }
    case SystemKind::bouncing_ball: {
      const double g = std::get<BouncingBall>(model_.system()).gravity;
      return {speed_ * tau - 0.5 * g * tau * tau, m * (speed_ - g * tau)};
    }
  }
  return {};
}

Trajectory build_trajectory(const PotentialModel& model, double energy) {
  return Trajectory(model, energy);
}

namespace {

using Sums = std::array<double, 4>;

// Fixed chunking keeps the reduction order, and hence the result, the same
// however many workers run.
constexpr long kChunk = 1 << 16;

}  // namespace

ScaledMoments trajectory_moments(const Trajectory& traj, long samples, SamplingRule rule,
                                 std::uint64_t seed) {
  if (samples < 2) throw DomainError("trajectory_moments: need at least 2 samples");

  const double period = traj.period();
  const double x_scale = traj.turning_point();
  const double p_scale = std::sqrt(2.0 * traj.model().mass() * traj.energy());

  std::vector<double> times;
  if (rule == SamplingRule::random) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, period);
    times.resize(samples);
    for (double& t : times) t = uniform(rng);
  }
  const auto time_of = [&](long i) {
    switch (rule) {
      case SamplingRule::uniform_time: return period * static_cast<double>(i) / samples;
      case SamplingRule::midpoint: return period * (static_cast<double>(i) + 0.5) / samples;
      case SamplingRule::random: return times[i];
    }
    return 0.0;
  };

  const auto chunk_sums = [&](long begin, long end) {
    Sums s{};
    for (long i = begin; i < end; ++i) {
      const PhasePoint q = traj.at(time_of(i));
      const double x = q.x / x_scale;
      const double p = q.p / p_scale;
      s[0] += x;
      s[1] += x * x;
      s[2] += p;
      s[3] += p * p;
    }
    return s;
  };

  std::vector<std::future<Sums>> parts;
  for (long begin = 0; begin < samples; begin += kChunk) {
    const long end = std::min(samples, begin + kChunk);
    parts.push_back(std::async(samples > kChunk ? std::launch::async : std::launch::deferred, chunk_sums,
                               begin, end));
  }
  Sums total{};
  for (auto& part : parts) {
    const Sums s = part.get();
    for (int k = 0; k < 4; ++k) total[k] += s[k];
  }

  const double inv = 1.0 / static_cast<double>(samples);
  return ScaledMoments::from_means(total[0] * inv, total[1] * inv, total[2] * inv, total[3] * inv,
                                   Realm::classical, MomentMethod::trajectory);
}

}  // namespace ucr
