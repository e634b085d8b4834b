#include "cellnet/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cellnet::analytic {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLn2 = 0.69314718055994531;

void check_beta(double beta) {
  if (!(beta > 2.0)) throw std::invalid_argument("analytic: beta must be > 2");
}

}  // namespace

double pathloss_cdf(const PathLossLaw& law, double t) {
  check_beta(law.beta);
  if (t < 0.0) throw std::invalid_argument("pathloss_cdf: t must be >= 0");
  if (t == 0.0) return 0.0;
  return -std::expm1(-law.intensity_a * std::pow(t, 2.0 / law.beta));
}

double phi_beta(double beta, double z) {
  check_beta(beta);
  if (z < 0.0) throw std::invalid_argument("phi_beta: z must be >= 0");
  const double r = 2.0 / beta;
  return numerics::gamma_fn(1.0 - r) * numerics::gamma_star(-r, z);
}

std::complex<double> phi_beta(double beta, std::complex<double> z) {
  check_beta(beta);
  const double r = 2.0 / beta;
  return numerics::gamma_fn(1.0 - r) * numerics::gamma_star(-r, z);
}

double laplace_f_given_path_loss(const SinrLaw& law, double z, double s) {
  check_beta(law.beta);
  if (z < 0.0 || !(s > 0.0)) {
    throw std::invalid_argument("laplace_f_given_path_loss: need z >= 0, s > 0");
  }
  const double spow = law.intensity_a * std::pow(s, 2.0 / law.beta);
  return std::exp(-(phi_beta(law.beta, z) - 1.0) * spow);
}

double laplace_f(double beta, double z) {
  return 1.0 / phi_beta(beta, z);
}

double sir_ccdf_explicit(double beta, double t) {
  check_beta(beta);
  if (!(t >= 1.0)) {
    throw std::domain_error("sir_ccdf_explicit: valid only for t >= 1");
  }
  const double c_prime = 2.0 * kPi / (beta * std::sin(2.0 * kPi / beta));
  return std::pow(t, -2.0 / beta) / c_prime;
}

double y_cdf(const SinrLaw& law, double x) {
  check_beta(law.beta);
  if (!(x > 0.0)) throw std::invalid_argument("y_cdf: x must be > 0");
  if (law.noise_over_power < 0.0) {
    throw std::invalid_argument("y_cdf: noise_over_power must be >= 0");
  }
  const double beta = law.beta;
  // Substitution u = exp(-a s^{2/beta}) turns P_L(ds) into the uniform
  // measure on (0,1); spow below is a s^{2/beta} = -ln u.
  auto integrand = [&](double u) {
    const double spow = -std::log(u);
    double y = x;
    if (law.noise_over_power > 0.0) {
      const double s = std::pow(spow / law.intensity_a, beta / 2.0);
      y = x - law.noise_over_power * s;
    }
    if (y <= 0.0) return 0.0;  // f >= 0 almost surely
    auto transform = [&](std::complex<double> z) {
      return (1.0 - std::exp(-(phi_beta(beta, z) - 1.0) * spow)) / z;
    };
    const double ccdf = numerics::invert_laplace_ccdf(transform, y, law.inversion);
    return 1.0 - ccdf;
  };
  const double v = numerics::integrate_unit_interval(integrand, law.quadrature);
  return std::clamp(v, 0.0, 1.0);
}

double sinr_ccdf(const SinrLaw& law, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("sinr_ccdf: t must be > 0");
  return y_cdf(law, 1.0 / t);
}

double sinr_ccdf_explicit(const SinrLaw& law, double t) {
  check_beta(law.beta);
  if (!(t >= 1.0)) {
    throw std::domain_error("sinr_ccdf_explicit: valid only for t >= 1");
  }
  const double beta = law.beta;
  const double g1 = numerics::gamma_fn(1.0 - 2.0 / beta);
  double integral;
  if (law.noise_over_power == 0.0) {
    integral = 1.0 / (2.0 * g1);
  } else {
    // v = r^2 Gamma(1-2/beta), then v = -ln u maps (0,inf) to (0,1).
    const double noise_scale =
        law.noise_over_power * std::pow(law.intensity_a, -beta / 2.0);
    auto integrand = [&](double u) {
      const double v = -std::log(u);
      const double arg = noise_scale * std::pow(v / g1, beta / 2.0);
      return arg > 700.0 ? 0.0 : std::exp(-arg);
    };
    integral =
        numerics::integrate_unit_interval(integrand, law.quadrature) / (2.0 * g1);
  }
  const double value = 2.0 * std::pow(t, -2.0 / beta) /
                       numerics::gamma_fn(1.0 + 2.0 / beta) * integral;
  return std::clamp(value, 0.0, 1.0);
}

double mean_spectral_efficiency(const SinrLaw& law) {
  check_beta(law.beta);
  auto tail = [&](double u) { return sinr_ccdf(law, std::expm1(u)); };
  // E[ln(1+SINR)] = int_0^inf P{ln(1+SINR) > u} du, truncated where the
  // tail drops below 1e-8.
  double u_max = 1.0;
  while (u_max < 512.0 && tail(u_max) >= 1e-8) u_max *= 2.0;
  const double integral = numerics::integrate_unit_interval(
      [&](double v) { return tail(v * u_max); }, law.quadrature);
  return integral * u_max;
}

double mean_energy_efficiency(const SinrLaw& law_template,
                              const model::PropagationModel& prop,
                              double power_w) {
  prop.validate();
  if (!(power_w > 0.0)) {
    throw std::invalid_argument("mean_energy_efficiency: P must be > 0");
  }
  SinrLaw law = law_template;
  law.noise_over_power = prop.noise_w / power_w;
  const double nats = mean_spectral_efficiency(law);
  const double consumed =
      prop.power_cost_slope * power_w + prop.power_cost_offset_w;
  return prop.bandwidth_hz * nats / (kLn2 * consumed);
}

PowerOptimum optimal_power(const model::PropagationModel& prop,
                           const model::ShadowingSpec& shadow,
                           double lambda_per_km2, double p_lo_w, double p_hi_w,
                           double tol_db) {
  if (!(p_lo_w > 0.0) || !(p_lo_w < p_hi_w)) {
    throw std::invalid_argument("optimal_power: need 0 < p_lo < p_hi");
  }
  const model::EquivalentPoisson eq =
      model::equivalent_poisson(lambda_per_km2, prop, shadow);
  SinrLaw tmpl;
  tmpl.intensity_a = eq.intensity_a;
  tmpl.beta = eq.beta;

  const double lo = std::log(p_lo_w);
  const double hi = std::log(p_hi_w);
  const double tol = tol_db * std::log(10.0) / 10.0;
  const numerics::ScalarMaximum opt = numerics::maximize_scalar(
      [&](double log_p) {
        return mean_energy_efficiency(tmpl, prop, std::exp(log_p));
      },
      lo, hi, tol);
  PowerOptimum result;
  result.power_w = std::exp(opt.argmax);
  result.efficiency = opt.max;
  result.at_boundary =
      opt.argmax - lo < 2.0 * tol || hi - opt.argmax < 2.0 * tol;
  return result;
}

double sir_cdf(double beta, double t,
               const numerics::InversionConfig& inversion,
               const numerics::QuadratureConfig& quadrature) {
  if (!(t > 0.0)) throw std::invalid_argument("sir_cdf: t must be > 0");
  SinrLaw law;
  law.intensity_a = 1.0;  // a cancels when noise is zero
  law.beta = beta;
  law.inversion = inversion;
  law.quadrature = quadrature;
  return 1.0 - sinr_ccdf(law, t);
}

GridCdf::GridCdf(std::vector<double> log_ts, std::vector<double> values)
    : log_ts_(std::move(log_ts)), values_(std::move(values)) {
  if (log_ts_.size() != values_.size() || log_ts_.size() < 2) {
    throw std::invalid_argument("GridCdf: need matching arrays of size >= 2");
  }
}

double GridCdf::operator()(double t) const {
  const double x = std::log(t);
  if (x <= log_ts_.front()) return values_.front();
  if (x >= log_ts_.back()) return values_.back();
  const auto it = std::upper_bound(log_ts_.begin(), log_ts_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - log_ts_.begin());
  const double w = (x - log_ts_[i - 1]) / (log_ts_[i] - log_ts_[i - 1]);
  return values_[i - 1] + w * (values_[i] - values_[i - 1]);
}

GridCdf tabulate_sir_cdf(double beta, double t_lo, double t_hi, int points,
                         const numerics::InversionConfig& inversion,
                         const numerics::QuadratureConfig& quadrature) {
  if (!(t_lo > 0.0) || !(t_lo < t_hi) || points < 2) {
    throw std::invalid_argument("tabulate_sir_cdf: bad grid");
  }
  std::vector<double> log_ts(points), values(points);
  const double lo = std::log(t_lo);
  const double hi = std::log(t_hi);
  for (int i = 0; i < points; ++i) {
    log_ts[i] = lo + (hi - lo) * i / (points - 1);
    values[i] = sir_cdf(beta, std::exp(log_ts[i]), inversion, quadrature);
  }
  // The CDF is monotone; flatten any quadrature-level wiggle.
  for (int i = 1; i < points; ++i) {
    values[i] = std::max(values[i], values[i - 1]);
  }
  return GridCdf(std::move(log_ts), std::move(values));
}

}  // namespace cellnet::analytic
