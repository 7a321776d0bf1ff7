#include "ucr/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "ucr/errors.hpp"

namespace ucr::specfun {

namespace {

void require_finite(double y, const char* who) {
  if (!std::isfinite(y)) {
    throw DomainError(std::string(who) + ": argument must be finite");
  }
}

// Returns (H_{n-2}, H_{n-1}, H_n), with H_{-1} = H_{-2} = 0, so callers
// needing derivatives pay for one sweep.
std::array<double, 3> hermite_triple(int n, double y) {
  double prev2 = 0.0;
  double prev = 0.0;
  double cur = 1.0;
  for (int k = 0; k < n; ++k) {
    const double next = 2.0 * y * cur - 2.0 * k * prev;
    prev2 = prev;
    prev = cur;
    cur = next;
  }
  return {prev2, prev, cur};
}

// phi_{n-2} .. phi_{n+2} from the normalised recurrence
//   phi_{k+1} = sqrt(2/(k+1)) y phi_k - sqrt(k/(k+1)) phi_{k-1}.
// The sweep runs without the Gaussian and rescales by a tracked exponent, so
// neither H_n overflow nor exp(-y^2/2) underflow can zero out the tail.
std::array<double, 5> hermite_function_window(int n, double y) {
  std::array<double, 5> w{};  // w[j] = phi_{n-2+j} * exp(y^2/2 - log_scale)
  double log_scale = 0.0;
  double prev = 0.0;
  double cur = std::pow(std::numbers::pi, -0.25);
  const auto store = [&](int k, double v) {
    if (k >= n - 2) w[k - (n - 2)] = v;
  };
  store(0, cur);
  for (int k = 0; k < n + 2; ++k) {
    double next = std::sqrt(2.0 / (k + 1)) * y * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > 1e150) {
      constexpr double shrink = 1e-150;
      cur *= shrink;
      prev *= shrink;
      for (double& v : w) v *= shrink;
      log_scale += 150.0 * std::numbers::ln10;
    }
    store(k + 1, cur);
  }
  const double factor = std::exp(log_scale - 0.5 * y * y);
  for (double& v : w) v *= factor;
  return w;
}

// Extended precision for the Maclaurin sums: for positive z the two series
// cancel to leave Ai ~ exp(-zeta) while each grows like exp(zeta), so about
// 2 zeta / ln(10) digits are lost.
__extension__ typedef __float128 wide;

// Ai(0) and Ai'(0) as double-double pairs.
const wide kAi0 = wide(0.3550280538878172) + wide(2.05233632436212e-17);
const wide kAip0 = wide(-0.2588194037928068) + wide(2.522243111610832e-17);

AiryValue airy_series(double z) {
  const wide x = z;
  const wide x3 = x * x * x;
  const wide eps = wide(1e-33);

  wide f = 1, g = x, fp = 0, gp = 1;
  wide tf = 1, tg = x, tfp = x * x / 2, tgp = 1;
  fp = tfp;
  for (int k = 1; k < 400; ++k) {
    const wide k3 = 3 * k;
    tf *= x3 / ((k3 - 1) * k3);
    tg *= x3 / (k3 * (k3 + 1));
    tgp *= x3 / (k3 * (k3 - 2));
    if (k >= 2) {
      tfp *= x3 / ((k3 - 1) * (k3 - 3));
      fp += tfp;
    }
    f += tf;
    g += tg;
    gp += tgp;

    auto mag = [](wide v) { return v < 0 ? -v : v; };
    const wide scale = mag(f) + mag(g) + mag(fp) + mag(gp);
    if (mag(tf) + mag(tg) + mag(tfp) + mag(tgp) <= eps * scale) break;
  }

  AiryValue out;
  out.z = z;
  out.ai = static_cast<double>(kAi0 * f + kAip0 * g);
  out.ai_prime = static_cast<double>(kAi0 * fp + kAip0 * gp);
  out.branch = AiryBranch::power_series;
  return out;
}

// Coefficients u_k of the Airy asymptotic expansions; v_k = -(6k+1)/(6k-1) u_k.
constexpr int kAsymptoticTerms = 60;

struct AsymptoticCoefficients {
  std::array<long double, kAsymptoticTerms> u{};
  std::array<long double, kAsymptoticTerms> v{};
};

const AsymptoticCoefficients& asymptotic_coefficients() {
  static const AsymptoticCoefficients table = [] {
    AsymptoticCoefficients c;
    c.u[0] = 1.0L;
    c.v[0] = 1.0L;
    for (int k = 1; k < kAsymptoticTerms; ++k) {
      const long double kk = k;
      c.u[k] = c.u[k - 1] * (6 * kk - 5) * (6 * kk - 3) * (6 * kk - 1) / ((2 * kk - 1) * 216 * kk);
      c.v[k] = -(6 * kk + 1) / (6 * kk - 1) * c.u[k];
    }
    return c;
  }();
  return table;
}

struct AsymptoticSums {
  long double even_u = 0, odd_u = 0, even_v = 0, odd_v = 0;
};

// Sums of u_k / zeta^k and v_k / zeta^k split by parity of k, with the sign
// pattern (-1)^floor(k/2) when `alternate_pairs`, or (-1)^k otherwise.
// Truncated at the smallest term.
AsymptoticSums asymptotic_sums(long double zeta, bool alternate_pairs) {
  const auto& c = asymptotic_coefficients();
  AsymptoticSums s;
  long double power = 1.0L;
  long double last = INFINITY;
  for (int k = 0; k < kAsymptoticTerms; ++k) {
    const long double tu = c.u[k] * power;
    const long double tv = c.v[k] * power;
    const long double size = std::fabs(tu) + std::fabs(tv);
    if (k > 0 && size > last) break;
    const int sign_index = alternate_pairs ? k / 2 : k;
    const long double sign = (sign_index % 2 == 0) ? 1.0L : -1.0L;
    if (k % 2 == 0) {
      s.even_u += sign * tu;
      s.even_v += sign * tv;
    } else {
      s.odd_u += sign * tu;
      s.odd_v += sign * tv;
    }
    if (size < 1e-21L) break;
    last = size;
    power /= zeta;
  }
  return s;
}

AiryValue airy_positive_asymptotic(double z) {
  const long double x = z;
  const long double root4 = std::sqrt(std::sqrt(x));
  const long double zeta = 2.0L / 3.0L * x * std::sqrt(x);
  const long double decay = std::exp(-zeta);
  const long double inv_2sqrtpi = 0.5L / std::sqrt(std::numbers::pi_v<long double>);
  const AsymptoticSums s = asymptotic_sums(zeta, false);

  AiryValue out;
  out.z = z;
  out.ai = static_cast<double>(decay * inv_2sqrtpi / root4 * (s.even_u + s.odd_u));
  out.ai_prime = static_cast<double>(-root4 * decay * inv_2sqrtpi * (s.even_v + s.odd_v));
  out.branch = AiryBranch::positive_asymptotic;
  return out;
}

AiryValue airy_negative_asymptotic(double z) {
  const long double x = -static_cast<long double>(z);
  const long double root4 = std::sqrt(std::sqrt(x));
  const long double zeta = 2.0L / 3.0L * x * std::sqrt(x);
  const long double phase = zeta - std::numbers::pi_v<long double> / 4.0L;
  const long double c = std::cos(phase);
  const long double s = std::sin(phase);
  const long double inv_sqrtpi = 1.0L / std::sqrt(std::numbers::pi_v<long double>);
  const AsymptoticSums sums = asymptotic_sums(zeta, true);

  AiryValue out;
  out.z = z;
  out.ai = static_cast<double>(inv_sqrtpi / root4 * (c * sums.even_u + s * sums.odd_u));
  out.ai_prime = static_cast<double>(root4 * inv_sqrtpi * (s * sums.even_v - c * sums.odd_v));
  out.branch = AiryBranch::negative_asymptotic;
  return out;
}

}  // namespace

double hermite(int n, double y) {
  if (n < 0) throw DomainError("hermite: degree must be non-negative");
  require_finite(y, "hermite");
  return hermite_triple(n, y)[2];
}

double hermite_prime(int n, double y) {
  if (n < 0) throw DomainError("hermite_prime: degree must be non-negative");
  require_finite(y, "hermite_prime");
  if (n == 0) return 0.0;
  return 2.0 * n * hermite_triple(n, y)[1];
}

double hermite_function_log_norm(int n) {
  if (n < 0) throw DomainError("hermite_function_log_norm: degree must be non-negative");
  return -0.5 * (n * std::numbers::ln2 + std::lgamma(n + 1.0) + 0.5 * std::log(std::numbers::pi));
}

double hermite_function(int n, double y) {
  if (n < 0) throw DomainError("hermite_function: degree must be non-negative");
  require_finite(y, "hermite_function");
  return hermite_function_window(n, y)[2];
}

double hermite_function_prime(int n, double y) {
  if (n < 0) throw DomainError("hermite_function_prime: degree must be non-negative");
  require_finite(y, "hermite_function_prime");
  const auto w = hermite_function_window(n, y);
  return std::sqrt(0.5 * n) * w[1] - std::sqrt(0.5 * (n + 1)) * w[3];
}

double hermite_function_second(int n, double y) {
  if (n < 0) throw DomainError("hermite_function_second: degree must be non-negative");
  require_finite(y, "hermite_function_second");
  const auto w = hermite_function_window(n, y);
  const double nn = n;
  return 0.5 * (std::sqrt(nn * (nn - 1.0)) * w[0] - (2.0 * nn + 1.0) * w[2] +
                std::sqrt((nn + 1.0) * (nn + 2.0)) * w[4]);
}

const char* to_string(AiryBranch branch) {
  switch (branch) {
    case AiryBranch::power_series: return "power-series";
    case AiryBranch::negative_asymptotic: return "negative-asymptotic";
    case AiryBranch::positive_asymptotic: return "positive-asymptotic";
  }
  return "unknown";
}

AiryValue airy_ai(double z) {
  require_finite(z, "airy_ai");
  if (z > kAirySeriesLimit) return airy_positive_asymptotic(z);
  if (z < -kAirySeriesLimit) return airy_negative_asymptotic(z);
  return airy_series(z);
}

AiryZero airy_zero(int n, int max_iterations) {
  if (n < 1) throw DomainError("airy_zero: index must be >= 1");
  const double t = 3.0 * std::numbers::pi * (4.0 * n - 1.0) / 8.0;
  double a = -std::pow(t, 2.0 / 3.0);

  double step = INFINITY;
  for (int it = 0; it <= max_iterations; ++it) {
    const AiryValue v = airy_ai(a);
    if (std::abs(v.ai) < 1e-13 && std::abs(step) < 1e-13) {
      return AiryZero{n, a, -a, it};
    }
    if (it == max_iterations) break;
    step = v.ai / v.ai_prime;
    a -= step;
  }
  throw NumericError("airy_zero: Newton iteration did not converge for n = " + std::to_string(n), a);
}

}  // namespace ucr::specfun
