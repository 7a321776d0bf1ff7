#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "ucr/errors.hpp"
#include "ucr/specfun.hpp"

using namespace ucr::specfun;

namespace {

// Explicit sum H_n(y) = n! sum_m (-1)^m (2y)^{n-2m} / (m! (n-2m)!); only used
// for small n where the cancellation is harmless.
double hermite_explicit(int n, double y) {
  double sum = 0.0;
  for (int m = 0; 2 * m <= n; ++m) {
    const double term = std::pow(2.0 * y, n - 2 * m) / (std::tgamma(m + 1.0) * std::tgamma(n - 2 * m + 1.0));
    sum += (m % 2 == 0 ? 1.0 : -1.0) * term;
  }
  return std::tgamma(n + 1.0) * sum;
}

struct AiryReference {
  double z;
  double ai;
  double ai_prime;
};

// 40-digit arbitrary-precision evaluations, rounded to 20 digits.
const std::vector<AiryReference> kAiryTable = {
    {-60.0, 7.778782447711558377e-2, 1.4503455958642243777},
    {-45.5, -2.0175568795492215692e-1, 5.4205001713286715807e-1},
    {-33.3, -2.0457583310069619394e-2, 1.3500001333266192476},
    {-20.0, -1.7640612707798468959e-1, 8.928628567364712384e-1},
    {-12.25, -2.6764469882714229824e-1, 4.8087136842700445437e-1},
    {-9.5, 3.1910324771912820138e-1, -1.08095318811871239e-1},
    {-9.0, -2.2133721547341403674e-2, -9.7566398092633159471e-1},
    {-8.5, -3.3029023763020887902e-1, -3.2313348284639135873e-2},
    {-7.0, 1.8428083525050563728e-1, -7.7100816841012654773e-1},
    {-5.5, 1.7781541276574975603e-2, 8.6419721777139839077e-1},
    {-3.1, -4.0438222239097834159e-1, 1.9482044600397879235e-1},
    {-1.0, 5.355608832923521188e-1, -1.0160567116645209395e-2},
    {-0.25, 4.1872461427545292423e-1, -2.4638918992017597303e-1},
    {0.5, 2.3169360648083348977e-1, -2.2491053266468389314e-1},
    {1.0, 1.3529241631288141552e-1, -1.5914744129679321279e-1},
    {2.5, 1.5725923380470489995e-2, -2.6250881035903230365e-2},
    {5.5, 3.3685311908599814425e-5, -8.046339130556514338e-5},
    {8.5, 1.0997009755195506509e-8, -3.2377254404476022559e-8},
    {9.0, 2.4711684308724898433e-9, -7.4806413896589464128e-9},
    {9.5, 5.3302637046174916266e-10, -1.6566394593740666263e-9},
    {12.0, 1.393184688875360839e-13, -4.854736554985308463e-13},
    {20.0, 1.6916728686705403136e-27, -7.5863916257483549605e-27},
    {30.0, 3.2082175915504955711e-49, -1.7598765814327259821e-48},
};

bool close_rel_or_abs(double got, double want, double rel, double abs) {
  return std::abs(got - want) <= std::max(rel * std::abs(want), abs);
}

}  // namespace

TEST_CASE("hermite: low orders") {
  CHECK(hermite(0, 3.7) == 1.0);
  CHECK(hermite(1, 2.0) == 4.0);
  CHECK(hermite(4, 2.0) == doctest::Approx(76.0).epsilon(1e-15));
  CHECK(hermite_prime(0, 1.5) == 0.0);
  CHECK(hermite_prime(1, 0.3) == 2.0);
  CHECK(hermite_prime(4, 2.0) == doctest::Approx(320.0).epsilon(1e-15));
}

TEST_CASE("hermite: agrees with the explicit sum for n <= 10") {
  for (int n = 0; n <= 10; ++n) {
    for (double y = -3.0; y <= 3.0; y += 0.25) {
      CHECK(hermite(n, y) == doctest::Approx(hermite_explicit(n, y)).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("hermite: three-term recurrence holds on a grid") {
  for (int n = 1; n <= 30; ++n) {
    for (double y = -5.0; y <= 5.0; y += 0.125) {
      const double hp = hermite(n + 1, y);
      const double h = hermite(n, y);
      const double hm = hermite(n - 1, y);
      const double scale = std::abs(hp) + std::abs(2 * y * h) + std::abs(2.0 * n * hm);
      CHECK(std::abs(hp - 2.0 * y * h + 2.0 * n * hm) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("hermite: domain errors") {
  CHECK_THROWS_AS(hermite(-1, 0.0), ucr::DomainError);
  CHECK_THROWS_AS(hermite(3, NAN), ucr::DomainError);
  CHECK_THROWS_AS(hermite_prime(2, INFINITY), ucr::DomainError);
}

TEST_CASE("hermite functions: normalisation constant and second derivative") {
  // phi_0(0) = pi^{-1/4}
  CHECK(hermite_function(0, 0.0) == doctest::Approx(std::pow(std::numbers::pi, -0.25)).epsilon(1e-15));
  // phi'' = (y^2 - (2n+1)) phi is the oscillator equation; the implementation
  // uses the Hermite recurrences instead.
  for (int n : {0, 1, 2, 7, 20, 40}) {
    for (double y = -8.0; y <= 8.0; y += 0.37) {
      const double phi = hermite_function(n, y);
      const double expected = (y * y - (2.0 * n + 1.0)) * phi;
      CHECK(hermite_function_second(n, y) == doctest::Approx(expected).epsilon(1e-10).scale(1e-12));
    }
  }
  // Far beyond the range where H_n or exp(-y^2/2) is representable.
  CHECK(std::isfinite(hermite_function(150, 3.0)));
  CHECK(std::abs(hermite_function(150, 3.0)) < 1.0);
  CHECK(hermite_function(2000, 62.0) != 0.0);
  CHECK(std::abs(hermite_function(2000, 62.0)) < 1.0);
}

TEST_CASE("hermite functions: recurrence agrees with the textbook product form") {
  for (int n = 0; n <= 60; ++n) {
    const double log_norm = hermite_function_log_norm(n);
    for (double y = -8.0; y <= 8.0; y += 0.29) {
      const double textbook = std::exp(log_norm - 0.5 * y * y) * hermite(n, y);
      CHECK(hermite_function(n, y) == doctest::Approx(textbook).epsilon(1e-11).scale(1e-12));
      const double d_textbook = std::exp(log_norm - 0.5 * y * y) * (hermite_prime(n, y) - y * hermite(n, y));
      CHECK(hermite_function_prime(n, y) == doctest::Approx(d_textbook).epsilon(1e-11).scale(1e-11));
    }
  }
}

TEST_CASE("airy_ai: value at the origin matches the Gamma-function constants") {
  const AiryValue v = airy_ai(0.0);
  CHECK(v.ai == doctest::Approx(std::pow(3.0, -2.0 / 3.0) / std::tgamma(2.0 / 3.0)).epsilon(1e-15));
  CHECK(v.ai_prime == doctest::Approx(-std::pow(3.0, -1.0 / 3.0) / std::tgamma(1.0 / 3.0)).epsilon(1e-15));
  CHECK(v.ai == doctest::Approx(0.3550280539).epsilon(1e-10));
  CHECK(v.ai_prime == doctest::Approx(-0.2588194038).epsilon(1e-10));
  CHECK(v.branch == AiryBranch::power_series);
}

TEST_CASE("airy_ai: reference table on [-60, 30]") {
  for (const auto& ref : kAiryTable) {
    const AiryValue v = airy_ai(ref.z);
    INFO("z = " << ref.z);
    CHECK(close_rel_or_abs(v.ai, ref.ai, 1e-12, 1e-14));
    CHECK(close_rel_or_abs(v.ai_prime, ref.ai_prime, 1e-12, 1e-14));
  }
}

TEST_CASE("airy_ai: branches") {
  CHECK(airy_ai(-20.0).branch == AiryBranch::negative_asymptotic);
  CHECK(airy_ai(20.0).branch == AiryBranch::positive_asymptotic);
  CHECK(airy_ai(kAirySeriesLimit).branch == AiryBranch::power_series);
  const AiryValue far = airy_ai(400.0);
  CHECK(far.ai == 0.0);
  CHECK(far.branch == AiryBranch::positive_asymptotic);
}

TEST_CASE("airy_ai: examples") {
  CHECK(std::abs(airy_ai(-2.3381).ai) < 5e-5);
  const double z = 10.0;
  const double leading = std::exp(-2.0 / 3.0 * std::pow(z, 1.5)) / (2.0 * std::sqrt(std::numbers::pi) * std::pow(z, 0.25));
  CHECK(airy_ai(z).ai == doctest::Approx(leading).epsilon(1e-3));
  CHECK(airy_ai(z).ai == doctest::Approx(1.1048e-10).epsilon(1e-4));
  CHECK_THROWS_AS(airy_ai(NAN), ucr::DomainError);
}

TEST_CASE("airy_ai: positive axis is positive, below Ai(0), decreasing") {
  const double ai0 = airy_ai(0.0).ai;
  double previous = ai0;
  for (double z = 0.05; z <= 30.0; z += 0.05) {
    const double v = airy_ai(z).ai;
    CHECK(v > 0.0);
    CHECK(v < ai0);
    CHECK(v < previous);
    previous = v;
  }
}

TEST_CASE("airy_ai: ODE and derivative consistency on random points") {
  std::mt19937_64 rng(20261018);
  std::uniform_real_distribution<double> dist(-15.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    const double z = dist(rng);
    INFO("z = " << z);
    const AiryValue v = airy_ai(z);

    // Second difference with h = 1e-4. Truncation (h^2/12 |Ai''''|) and
    // rounding (4 eps |Ai| / h^2) bound what any double evaluation can reach.
    const double h = 1e-4;
    const double second = (airy_ai(z + h).ai - 2.0 * v.ai + airy_ai(z - h).ai) / (h * h);
    const double fourth = std::abs(z * z * v.ai + 2.0 * v.ai_prime);
    const double attainable = h * h / 12.0 * fourth + 4.0 * 2.3e-16 * std::max(std::abs(v.ai), 1e-3) / (h * h);
    CHECK(std::abs(second - z * v.ai) <= 2.0 * attainable);

    // Ai'' = z Ai through the analytic derivative: much sharper. Truncation
    // grows like h^2 |z Ai'| / 6, hence the (1 + |z|) scale.
    const double hd = 1e-5;
    const double from_prime = (airy_ai(z + hd).ai_prime - airy_ai(z - hd).ai_prime) / (2.0 * hd);
    CHECK(std::abs(from_prime - z * v.ai) < 1e-10 * (1.0 + std::abs(z)));

    const double from_value = (airy_ai(z + hd).ai - airy_ai(z - hd).ai) / (2.0 * hd);
    CHECK(std::abs(from_value - v.ai_prime) < 1e-9);
  }
}

TEST_CASE("airy_zero: tabulated bouncer energies") {
  CHECK(std::abs(airy_zero(1).scaled_energy - 2.3381) < 5e-5);
  CHECK(std::abs(airy_zero(2).scaled_energy - 4.0879) < 5e-5);
  CHECK(std::abs(airy_zero(5).scaled_energy - 7.9441) < 5e-5);
  // 40-digit reference: a_1 = -2.338107410459767038...
  CHECK(airy_zero(1).value == doctest::Approx(-2.338107410459767).epsilon(1e-15));
  CHECK(airy_zero(50).value == doctest::Approx(-38.02100867725525).epsilon(1e-15));
}

TEST_CASE("airy_zero: convergence, ordering, bracketing, no spurious zeros") {
  double previous = 0.0;
  for (int n = 1; n <= 60; ++n) {
    const AiryZero zero = airy_zero(n);
    INFO("n = " << n);
    CHECK(zero.value < previous);
    CHECK(zero.scaled_energy == -zero.value);
    CHECK(std::abs(airy_ai(zero.value).ai) < 1e-12);
    CHECK(airy_ai(zero.value - 1e-10).ai * airy_ai(zero.value + 1e-10).ai < 0.0);
    if (n > 1) {
      // Single sign strictly between consecutive zeros.
      const double sign = airy_ai(0.5 * (zero.value + previous)).ai > 0 ? 1.0 : -1.0;
      for (int k = 1; k < 40; ++k) {
        const double z = zero.value + (previous - zero.value) * k / 40.0;
        CHECK(sign * airy_ai(z).ai > 0.0);
      }
    }
    previous = zero.value;
  }
}

TEST_CASE("airy_zero: errors") {
  CHECK_THROWS_AS(airy_zero(0), ucr::DomainError);
  try {
    airy_zero(3, 0);
    FAIL("expected NumericError");
  } catch (const ucr::NumericError& e) {
    CHECK(e.last_value() < 0.0);
  }
}
