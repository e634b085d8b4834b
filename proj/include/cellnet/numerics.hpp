#ifndef CELLNET_NUMERICS_HPP
#define CELLNET_NUMERICS_HPP

#include <complex>
#include <functional>

namespace cellnet::numerics {

/// Parameters of the trapezoidal/Euler Laplace-transform inversion.
/// The discretization error of the scheme is of order e^{-error_exponent}.
struct InversionConfig {
  double error_exponent = 18.4;
  int partial_sums = 38;
  int euler_terms = 11;

  void validate() const;
};

/// Fixed-order Gauss-Legendre quadrature parameters.
struct QuadratureConfig {
  int node_count = 64;
  double rel_tol = 1e-9;

  void validate() const;
};

/// Complete gamma function, Lanczos approximation with reflection for
/// x < 1/2. Throws std::domain_error at the poles x = 0, -1, -2, ...
double gamma_fn(double x);

/// Modified incomplete gamma function
///   gamma*(alpha, z) = e^{-z} sum_k z^k / Gamma(alpha + k + 1),
/// entire in both arguments. alpha must not be a negative integer.
double gamma_star(double alpha, double z);

/// gamma* continued analytically to complex z (principal branch for the
/// large-|z| route). Requires Re(z) >= 0.
std::complex<double> gamma_star(double alpha, std::complex<double> z);

/// Standard normal CDF, accurate to about 1e-15 absolute.
double std_normal_cdf(double x);

/// Inverts the Laplace transform of a complementary CDF at y > 0 using the
/// cosine-form Bromwich integral discretized by the trapezoidal rule with
/// abscissa A/(2y), accelerated by Euler summation of the alternating
/// series (last euler_terms of partial_sums partial sums). The result is
/// clamped to [0, 1].
double invert_laplace_ccdf(
    const std::function<std::complex<double>(std::complex<double>)>& transform,
    double y, const InversionConfig& cfg = {});

/// Gauss-Legendre estimate of the integral of f over (0, 1).
double integrate_unit_interval(const std::function<double(double)>& f,
                               const QuadratureConfig& cfg = {});

struct ScalarMaximum {
  double argmax = 0.0;
  double max = 0.0;
};

/// Golden-section maximization of a unimodal f on [lo, hi]. The bracket is
/// shrunk by the golden ratio until it is narrower than tol.
ScalarMaximum maximize_scalar(const std::function<double(double)>& f,
                              double lo, double hi, double tol);

}  // namespace cellnet::numerics

#endif
