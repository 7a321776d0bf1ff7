#pragma once

// Special functions used by the stationary-state calculations: physicists'
// Hermite polynomials, the Airy function Ai with its derivative, and the
// negative zeros of Ai. All functions are pure.

namespace ucr::specfun {

/// Physicists' Hermite polynomial H_n(y), evaluated by the three-term
/// recurrence H_{k+1} = 2y H_k - 2k H_{k-1}. Throws DomainError for n < 0 or
/// non-finite y.
double hermite(int n, double y);

/// H_n'(y) = 2n H_{n-1}(y), with H_0' = 0.
double hermite_prime(int n, double y);

/// Logarithm of the normalisation (2^n n! sqrt(pi))^{-1/2} of the
/// dimensionless oscillator eigenfunction, computed through lgamma so it
/// stays finite for large n. Together with hermite() it gives the textbook
/// form of phi_n, which the recurrence below avoids.
double hermite_function_log_norm(int n);

/// Normalised oscillator eigenfunction in the dimensionless coordinate:
///   phi_n(y) = (2^n n! sqrt(pi))^{-1/2} H_n(y) exp(-y^2/2),
/// evaluated by the normalised three-term recurrence with a tracked scale,
/// so it stays finite where H_n alone would overflow.
double hermite_function(int n, double y);

/// First derivative from the ladder relation
///   phi_n' = sqrt(n/2) phi_{n-1} - sqrt((n+1)/2) phi_{n+1}.
double hermite_function_prime(int n, double y);

/// Second derivative from applying the ladder relation twice:
///   phi_n'' = (sqrt(n(n-1)) phi_{n-2} - (2n+1) phi_n + sqrt((n+1)(n+2)) phi_{n+2}) / 2.
double hermite_function_second(int n, double y);

enum class AiryBranch {
  power_series,
  negative_asymptotic,
  positive_asymptotic,
};

const char* to_string(AiryBranch branch);

struct AiryValue {
  double z = 0.0;
  double ai = 0.0;
  double ai_prime = 0.0;
  AiryBranch branch = AiryBranch::power_series;
};

/// |z| at or below which the Maclaurin series is summed (in extended
/// precision); outside, the asymptotic expansions in zeta = 2/3 |z|^{3/2}
/// are used.
inline constexpr double kAirySeriesLimit = 9.0;

/// Ai(z) and Ai'(z). Throws DomainError for non-finite z.
AiryValue airy_ai(double z);

struct AiryZero {
  int index = 0;
  double value = 0.0;          ///< a_n < 0
  double scaled_energy = 0.0;  ///< -a_n
  int iterations = 0;
};

inline constexpr int kAiryZeroMaxIterations = 50;

/// n-th zero of Ai by Newton iteration seeded at -[3 pi (4n-1) / 8]^{2/3}.
/// Throws DomainError for n < 1, NumericError (holding the last iterate) if
/// Newton has not converged within max_iterations.
AiryZero airy_zero(int n, int max_iterations = kAiryZeroMaxIterations);

}  // namespace ucr::specfun
