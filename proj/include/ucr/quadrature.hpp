#pragma once

#include <functional>
#include <string_view>

namespace ucr::quadrature {

enum class Method {
  adaptive_subdivision,
  double_exponential,
  mapped_semi_infinite,
};

struct QuadratureSpec {
  Method method = Method::adaptive_subdivision;
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_subdivisions = 60;
  /// Integrand magnitude below which a semi-infinite tail is dropped.
  double tail_cutoff = 1e-16;

  /// Throws DomainError unless abs_tol + rel_tol > 0 and max_subdivisions >= 1.
  void validate() const;

  /// max(abs_tol, rel_tol * |value|)
  double target(double value) const;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
  bool converged = false;
};

using Integrand = std::function<double(double)>;

/// Integrand that also receives the exact distances to both interval ends,
/// f(x, x - a, b - x). Near an endpoint the distance carries full relative
/// precision even where x itself has rounded onto the endpoint.
using EndpointIntegrand = std::function<double(double, double, double)>;

/// Globally adaptive 21-point Gauss-Kronrod on [a, b]. The interval with the
/// largest error estimate is bisected until the total estimate meets the
/// tolerance or max_subdivisions intervals exist (converged = false).
/// Throws NumericError on a non-finite sample, DomainError unless a < b.
IntegralResult integrate_finite(const Integrand& f, double a, double b,
                                const QuadratureSpec& spec = {});

/// Tanh-sinh quadrature on [a, b] for integrands with integrable endpoint
/// singularities such as (x - a)^{-1/2}. Never samples f at a or b.
IntegralResult integrate_singular_endpoints(const EndpointIntegrand& f, double a, double b,
                                            const QuadratureSpec& spec = {});

/// Plain-integrand overload. Nodes that round onto an endpoint are skipped,
/// which limits accuracy when the singularity sits at a non-zero endpoint;
/// prefer the EndpointIntegrand form there.
IntegralResult integrate_singular_endpoints(const Integrand& f, double a, double b,
                                            const QuadratureSpec& spec = {});

/// Integral over [a, inf) of a rapidly decaying f. The cut point T is found
/// by doubling from a + 10 until |f(T)| < tail_cutoff and the estimated tail
/// is below abs_tol / 10; [a, T] then goes to integrate_finite.
/// Throws NumericError when T would exceed a + 1e4.
IntegralResult integrate_semi_infinite(const Integrand& f, double a,
                                       const QuadratureSpec& spec = {});

/// Dispatches on spec.method; mapped_semi_infinite requires b = +inf.
IntegralResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec);

/// Throws NumericError if `result` did not converge and its error estimate
/// exceeds `tolerance`.
void require_accuracy(const IntegralResult& result, double tolerance, std::string_view what);

}  // namespace ucr::quadrature
