#ifndef CELLNET_ANALYTIC_HPP
#define CELLNET_ANALYTIC_HPP

#include <complex>
#include <vector>

#include "cellnet/model.hpp"
#include "cellnet/numerics.hpp"

namespace cellnet::analytic {

/// Frechet law of the path-loss factor: CDF(t) = 1 - exp(-a t^{2/beta}).
struct PathLossLaw {
  double intensity_a = 0.0;
  double beta = 0.0;
};

/// Distribution of Y = (N/P) L + f in the infinite Poisson model, evaluated
/// by Laplace-transform inversion and quadrature.
struct SinrLaw {
  double intensity_a = 0.0;
  double beta = 0.0;
  double noise_over_power = 0.0;  // N/P, dimensionless after loss units
  numerics::InversionConfig inversion;
  numerics::QuadratureConfig quadrature;
};

double pathloss_cdf(const PathLossLaw& law, double t);

/// phi_beta(z) = e^{-z} + z^{2/beta} gamma(1 - 2/beta, z), computed via the
/// series representation Gamma(1-2/beta) gamma*(-2/beta, z), which is
/// stable near z = 0. Strictly positive for beta > 2.
double phi_beta(double beta, double z);
std::complex<double> phi_beta(double beta, std::complex<double> z);

/// E[e^{-z f} | L = s] = exp(-a [phi_beta(z) - 1] s^{2/beta}).
double laplace_f_given_path_loss(const SinrLaw& law, double z, double s);

/// Unconditional Laplace transform of the interference factor,
/// E[e^{-z f}] = 1 / phi_beta(z). Independent of a.
double laplace_f(double beta, double z);

/// P{SIR >= t} = t^{-2/beta} / C'(beta) for t >= 1, where
/// C'(beta) = 2 pi / (beta sin(2 pi / beta)). Throws for t < 1.
double sir_ccdf_explicit(double beta, double t);

/// CDF of Y = (N/P) L + f at x > 0, via Bromwich inversion of the
/// conditional transform and integration over the path-loss law with the
/// substitution u = exp(-a s^{2/beta}).
double y_cdf(const SinrLaw& law, double x);

/// P{SINR >= t} = P{Y <= 1/t}, valid on the entire range t > 0.
double sinr_ccdf(const SinrLaw& law, double t);

/// Explicit SINR tail for t >= 1 (one-dimensional quadrature form).
/// Throws for t < 1.
double sinr_ccdf_explicit(const SinrLaw& law, double t);

/// E[log(1 + SINR)] in nats, by integrating the SINR tail.
double mean_spectral_efficiency(const SinrLaw& law);

/// W log2(1 + SINR(P)) / (c P + d) averaged over the typical user,
/// in bits/s/W. The template law supplies a, beta and numeric configs;
/// noise_over_power is set to N/P.
double mean_energy_efficiency(const SinrLaw& law_template,
                              const model::PropagationModel& prop,
                              double power_w);

struct PowerOptimum {
  double power_w = 0.0;
  double efficiency = 0.0;  // bits/s/W
  bool at_boundary = false;
};

/// Golden-section maximization of the mean energy efficiency over log P.
PowerOptimum optimal_power(const model::PropagationModel& prop,
                           const model::ShadowingSpec& shadow,
                           double lambda_per_km2, double p_lo_w, double p_hi_w,
                           double tol_db = 0.1);

/// Full-domain SIR CDF, P{SIR <= t}; independent of a.
double sir_cdf(double beta, double t,
               const numerics::InversionConfig& inversion = {},
               const numerics::QuadratureConfig& quadrature = {});

/// SIR CDF tabulated on a log grid with linear interpolation between
/// knots; evaluation clamps outside [t_lo, t_hi].
class GridCdf {
 public:
  GridCdf(std::vector<double> log_ts, std::vector<double> values);
  double operator()(double t) const;

 private:
  std::vector<double> log_ts_;
  std::vector<double> values_;
};

GridCdf tabulate_sir_cdf(double beta, double t_lo, double t_hi, int points,
                         const numerics::InversionConfig& inversion = {},
                         const numerics::QuadratureConfig& quadrature = {});

}  // namespace cellnet::analytic

#endif
