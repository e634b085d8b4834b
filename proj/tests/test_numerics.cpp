#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "cellnet/numerics.hpp"

using namespace cellnet::numerics;
using std::complex;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("gamma function known values") {
  CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-13));
  // recurrence from Gamma(1.5) = sqrt(pi)/2
  const double expected = 3.5 * 2.5 * 1.5 * 0.5 * std::sqrt(kPi);
  CHECK(gamma_fn(4.5) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(gamma_fn(4.5) == doctest::Approx(11.631728396567449).epsilon(1e-12));
  // reflection branch
  CHECK(gamma_fn(-0.5) == doctest::Approx(-2.0 * std::sqrt(kPi)).epsilon(1e-12));
}

TEST_CASE("gamma function pole inputs") {
  CHECK_THROWS_AS(gamma_fn(0.0), std::domain_error);
  CHECK_THROWS_AS(gamma_fn(-3.0), std::domain_error);
}

TEST_CASE("gamma_star spot values") {
  CHECK(gamma_star(0.5, 0.0) ==
        doctest::Approx(1.1283791670955126).epsilon(1e-12));
  CHECK(gamma_star(1.0, 2.0) ==
        doctest::Approx(0.43233235838169366).epsilon(1e-12));
  // oracle: gamma*(-1/2, 1) = (e^{-1} + sqrt(pi) erf(1)) / Gamma(1/2)
  const double oracle =
      (std::exp(-1.0) + std::sqrt(kPi) * std::erf(1.0)) / std::sqrt(kPi);
  CHECK(gamma_star(-0.5, 1.0) == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(gamma_star(-0.5, 1.0) ==
        doctest::Approx(1.0502545416600122).epsilon(1e-12));
  CHECK_THROWS_AS(gamma_star(-2.0, 1.0), std::domain_error);
}

TEST_CASE("gamma_star matches lower incomplete gamma quadrature") {
  // gamma(alpha, z) = m z^alpha int_0^1 u^{m alpha - 1} exp(-z u^m) du with
  // integer m large enough that the integrand is smooth at u = 0
  QuadratureConfig quad;
  quad.node_count = 96;
  for (double alpha : {0.5, 1.3, 2.0}) {
    for (double z : {0.5, 2.0, 10.0}) {
      const double m = std::ceil(4.0 / alpha);
      const double lower =
          m * std::pow(z, alpha) *
          integrate_unit_interval(
              [&](double u) {
                return std::pow(u, m * alpha - 1.0) *
                       std::exp(-z * std::pow(u, m));
              },
              quad);
      const double via_star =
          gamma_star(alpha, z) * gamma_fn(alpha) * std::pow(z, alpha);
      CHECK(via_star == doctest::Approx(lower).epsilon(1e-10));
    }
  }
}

TEST_CASE("complex gamma_star against reference values") {
  const double alpha = -2.0 / 3.52;
  struct Ref {
    complex<double> z;
    complex<double> value;
  };
  // reference values from 30-digit arbitrary-precision evaluation
  const Ref refs[] = {
      {{20.0, 5.0}, {5.5268874285360518, 0.77430793707009772}},
      {{10.0, 40.0}, {6.0356743453081940, 5.6601941480390163}},
      {{3.0, 30.0}, {4.6447710902264474, 5.1384709354606372}},
      {{100.0, 80.0}, {14.610642919848899, 5.8929406597868668}},
      {{2.0, 900.0}, {29.979111046701690, 37.105865270757830}},
      {{0.5, 14.0}, {2.8704937322567281, 3.4280129928449985}},
  };
  for (const Ref& r : refs) {
    const complex<double> got = gamma_star(alpha, r.z);
    CHECK(std::abs(got - r.value) / std::abs(r.value) < 1e-11);
  }
}

TEST_CASE("standard normal cdf") {
  CHECK(std_normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std_normal_cdf(40.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std_normal_cdf(1.0) ==
        doctest::Approx(0.8413447460685429).epsilon(1e-13));
  for (double x : {-7.0, -2.5, -0.3, 0.0, 0.4, 1.7, 5.0}) {
    CHECK(std_normal_cdf(x) + std_normal_cdf(-x) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("laplace inversion of known complementary CDFs") {
  // ccdf == 1: transform 1/z
  CHECK(invert_laplace_ccdf([](complex<double> z) { return 1.0 / z; }, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-6));
  // exponential ccdf e^{-y}: transform 1/(z+1)
  CHECK(invert_laplace_ccdf([](complex<double> z) { return 1.0 / (z + 1.0); },
                            2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-6));
  // indicator of (0,1): transform (1 - e^{-z})/z
  auto indicator = [](complex<double> z) { return (1.0 - std::exp(-z)) / z; };
  CHECK(invert_laplace_ccdf(indicator, 0.25) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(invert_laplace_ccdf(indicator, 1.5) == doctest::Approx(0.0).epsilon(1e-6));
  // uniform(0,1) ccdf 1 - y: transform (z - 1 + e^{-z})/z^2
  auto uniform = [](complex<double> z) {
    return (z - 1.0 + std::exp(-z)) / (z * z);
  };
  CHECK(invert_laplace_ccdf(uniform, 0.25) == doctest::Approx(0.75).epsilon(1e-6));
}

TEST_CASE("laplace inversion is monotone for a ccdf input") {
  auto expo = [](complex<double> z) { return 1.0 / (z + 1.0); };
  double prev = 2.0;
  for (double y = 0.1; y <= 5.0; y += 0.1) {
    const double v = invert_laplace_ccdf(expo, y);
    CHECK(v <= prev + 1e-9);
    prev = v;
  }
}

TEST_CASE("laplace inversion rejects non-finite transforms") {
  auto bad = [](complex<double>) {
    return complex<double>{std::numeric_limits<double>::quiet_NaN(), 0.0};
  };
  CHECK_THROWS_AS(invert_laplace_ccdf(bad, 1.0), std::runtime_error);
  CHECK_THROWS_AS(
      invert_laplace_ccdf([](complex<double> z) { return 1.0 / z; }, 0.0),
      std::invalid_argument);
}

TEST_CASE("unit interval quadrature") {
  CHECK(integrate_unit_interval([](double) { return 1.0; }) ==
        doctest::Approx(1.0).epsilon(1e-13));
  CHECK(integrate_unit_interval([](double u) { return u; }) ==
        doctest::Approx(0.5).epsilon(1e-13));
  CHECK(integrate_unit_interval([](double u) { return std::exp(u); }) ==
        doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-13));
  CHECK_THROWS_AS(integrate_unit_interval(
                      [](double u) { return u < 0.5 ? 1.0 : 1.0 / 0.0; }),
                  std::runtime_error);
}

TEST_CASE("golden section maximization") {
  const auto quad = maximize_scalar(
      [](double x) { return -(x - 2.0) * (x - 2.0); }, 0.0, 5.0, 1e-6);
  CHECK(quad.argmax == doctest::Approx(2.0).epsilon(1e-5));
  const auto bump =
      maximize_scalar([](double x) { return x * std::exp(-x); }, 0.0, 10.0, 1e-6);
  CHECK(bump.argmax == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(bump.max == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
  const auto sine =
      maximize_scalar([](double x) { return std::sin(x); }, 0.0, kPi, 1e-8);
  CHECK(sine.argmax == doctest::Approx(kPi / 2.0).epsilon(1e-7));
  CHECK_THROWS_AS(maximize_scalar([](double x) { return x; }, 1.0, 1.0, 1e-6),
                  std::invalid_argument);
}

TEST_CASE("golden section evaluation count shrinks geometrically") {
  int evals = 0;
  const double lo = 0.0, hi = 10.0, tol = 1e-6;
  maximize_scalar(
      [&](double x) {
        ++evals;
        return -(x - 3.0) * (x - 3.0);
      },
      lo, hi, tol);
  const int bound = static_cast<int>(
                        std::ceil(std::log((hi - lo) / tol) / std::log(1.0 / 0.618))) +
                    2;
  // one evaluation per iteration after the two warm-up points plus the
  // final midpoint evaluation
  CHECK(evals <= bound + 3);
}

TEST_CASE("config validation") {
  InversionConfig inv;
  inv.error_exponent = -1.0;
  CHECK_THROWS_AS(inv.validate(), std::invalid_argument);
  inv = InversionConfig{};
  inv.partial_sums = 3;
  inv.euler_terms = 5;
  CHECK_THROWS_AS(inv.validate(), std::invalid_argument);
  QuadratureConfig quad;
  quad.node_count = 1;
  CHECK_THROWS_AS(quad.validate(), std::invalid_argument);
}
