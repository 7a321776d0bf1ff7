#include "ucr/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "ucr/errors.hpp"

namespace ucr::quadrature {

namespace {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
// Odd indices of kKronrodNodes are the Gauss nodes.
constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

double checked(double v, double x) {
  if (!std::isfinite(v)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "quadrature: non-finite integrand sample at x = %.17g", x);
    throw NumericError(buf, x);
  }
  return v;
}

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
};

Panel gauss_kronrod(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = checked(f(center), center);
  double kronrod = kKronrodWeights[10] * fc;
  double gauss = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double f1 = checked(f(center - dx), center - dx);
    const double f2 = checked(f(center + dx), center + dx);
    const double pair = f1 + f2;
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

constexpr int kGaussKronrodPoints = 21;

// Tanh-sinh abscissae are generated for |t| <= kTanhSinhSpan; at the edge
// the distance to the endpoint is ~1e-61 of the half-width.
constexpr double kTanhSinhSpan = 4.5;
constexpr int kTanhSinhMaxLevel = 12;
constexpr int kTanhSinhMinLevel = 3;

// Node pairs a + d, b - d at tanh-sinh abscissa t, with d computed directly
// from exp(-pi sinh t) so it never rounds through x. pair() returns
// w(t) [f(a + d) + f(b - d)]; center() is the t = 0 term.
struct TanhSinhSampler {
  const EndpointIntegrand& f;
  double a;
  double b;
  double half;
  long evaluations = 0;

  double pair(double t) {
    const double u = 0.5 * std::numbers::pi * std::sinh(t);
    const double e = std::exp(-2.0 * u);
    const double dist = half * 2.0 * e / (1.0 + e);
    if (dist == 0.0) return 0.0;
    const double weight = half * 0.5 * std::numbers::pi * std::cosh(t) * 4.0 * e / ((1.0 + e) * (1.0 + e));
    const double far = 2.0 * half - dist;
    const double left_x = a + dist;
    const double right_x = b - dist;
    const double left = checked(f(left_x, dist, far), left_x);
    const double right = checked(f(right_x, far, dist), right_x);
    evaluations += 2;
    return weight * (left + right);
  }

  double center() {
    ++evaluations;
    const double c = 0.5 * (a + b);
    return half * 0.5 * std::numbers::pi * checked(f(c, half, half), c);
  }
};

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0) || !(abs_tol + rel_tol > 0.0)) {
    throw DomainError("QuadratureSpec: need abs_tol, rel_tol >= 0 with abs_tol + rel_tol > 0");
  }
  if (max_subdivisions < 1) throw DomainError("QuadratureSpec: max_subdivisions must be >= 1");
}

double QuadratureSpec::target(double value) const {
  return std::max(abs_tol, rel_tol * std::abs(value));
}

IntegralResult integrate_finite(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
  spec.validate();
  if (!(a < b)) throw DomainError("integrate_finite: need a < b");

  auto by_error = [](const Panel& l, const Panel& r) { return l.error < r.error; };
  std::vector<Panel> heap{gauss_kronrod(f, a, b)};
  long evaluations = kGaussKronrodPoints;
  double total = heap.front().value;
  double error = heap.front().error;

  while (error > spec.target(total) && static_cast<int>(heap.size()) < spec.max_subdivisions) {
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end(), by_error);
      break;
    }
    for (const Panel& half : {gauss_kronrod(f, worst.a, mid), gauss_kronrod(f, mid, worst.b)}) {
      heap.push_back(half);
      std::push_heap(heap.begin(), heap.end(), by_error);
    }
    evaluations += 2 * kGaussKronrodPoints;

    // Re-sum rather than update incrementally so cancellation does not accumulate.
    total = 0.0;
    error = 0.0;
    for (const Panel& p : heap) {
      total += p.value;
      error += p.error;
    }
  }
  return {total, error, evaluations, error <= spec.target(total)};
}

IntegralResult integrate_singular_endpoints(const EndpointIntegrand& f, double a, double b,
                                            const QuadratureSpec& spec) {
  spec.validate();
  if (!(a < b)) throw DomainError("integrate_singular_endpoints: need a < b");

  TanhSinhSampler sampler{f, a, b, 0.5 * (b - a)};
  const int max_level = std::min(spec.max_subdivisions, kTanhSinhMaxLevel);

  double h = 1.0;
  double sum = sampler.center();
  for (double t = h; t <= kTanhSinhSpan; t += h) sum += sampler.pair(t);
  double estimate = h * sum;
  double error = std::abs(estimate);

  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    for (double t = h; t <= kTanhSinhSpan; t += 2.0 * h) sum += sampler.pair(t);
    const double refined = h * sum;
    error = std::abs(refined - estimate);
    estimate = refined;
    if (level >= kTanhSinhMinLevel && error <= spec.target(estimate)) {
      return {estimate, error, sampler.evaluations, true};
    }
  }
  return {estimate, error, sampler.evaluations, false};
}

IntegralResult integrate_singular_endpoints(const Integrand& f, double a, double b,
                                            const QuadratureSpec& spec) {
  EndpointIntegrand wrapped = [&f, a, b](double, double from_a, double to_b) {
    const double x = from_a <= to_b ? a + from_a : b - to_b;
    if (x <= a || x >= b) return 0.0;
    return f(x);
  };
  return integrate_singular_endpoints(wrapped, a, b, spec);
}

IntegralResult integrate_semi_infinite(const Integrand& f, double a, const QuadratureSpec& spec) {
  spec.validate();
  constexpr double kFirstSpan = 10.0;
  constexpr double kMaxSpan = 1e4;

  long probes = 0;
  double span = kFirstSpan;
  double tail = 0.0;
  for (;;) {
    const double cut = a + span;
    const double here = std::abs(checked(f(cut), cut));
    ++probes;
    if (here < spec.tail_cutoff) {
      if (here == 0.0) {
        tail = 0.0;
        break;
      }
      const double next = std::abs(checked(f(cut + 1.0), cut + 1.0));
      ++probes;
      // Bound the remainder by an exponential through the two samples.
      if (next < here) {
        tail = here / std::log(here / std::max(next, 1e-300));
        if (tail < spec.abs_tol / 10.0) break;
      }
    }
    span *= 2.0;
    if (span > kMaxSpan) {
      throw NumericError("integrate_semi_infinite: no truncation point below a + 1e4", a + span / 2.0);
    }
  }

  IntegralResult r = integrate_finite(f, a, a + span, spec);
  r.evaluations += probes;
  r.error_estimate += tail;
  r.converged = r.converged && r.error_estimate <= spec.target(r.value);
  return r;
}

IntegralResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
  switch (spec.method) {
    case Method::adaptive_subdivision: return integrate_finite(f, a, b, spec);
    case Method::double_exponential: return integrate_singular_endpoints(f, a, b, spec);
    case Method::mapped_semi_infinite:
      if (b != INFINITY) throw DomainError("integrate: mapped_semi_infinite needs b = +inf");
      return integrate_semi_infinite(f, a, spec);
  }
  throw DomainError("integrate: unknown method");
}

void require_accuracy(const IntegralResult& result, double tolerance, std::string_view what) {
  if (!result.converged && !(result.error_estimate <= tolerance)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, ": quadrature error estimate %.3g exceeds %.3g", result.error_estimate,
                  tolerance);
    throw NumericError(std::string(what) + buf, result.value);
  }
}

}  // namespace ucr::quadrature
