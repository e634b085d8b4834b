#include "cellnet/model.hpp"

#include <cmath>
#include <stdexcept>

namespace cellnet::model {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kLn10Over10 = 0.23025850929940457;
}  // namespace

void PropagationModel::validate() const {
  if (!(beta > 2.0)) throw std::invalid_argument("PropagationModel: beta must be > 2");
  if (!(path_gain_k > 0.0)) throw std::invalid_argument("PropagationModel: K must be > 0");
  if (noise_w < 0.0) throw std::invalid_argument("PropagationModel: N must be >= 0");
  if (!(tx_power_w > 0.0)) throw std::invalid_argument("PropagationModel: P must be > 0");
  if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("PropagationModel: W must be > 0");
  if (!(power_cost_slope > 0.0)) throw std::invalid_argument("PropagationModel: c must be > 0");
  if (power_cost_offset_w < 0.0) throw std::invalid_argument("PropagationModel: d must be >= 0");
}

ShadowingSpec ShadowingSpec::log_normal(double sigma_db) {
  ShadowingSpec s;
  s.kind = ShadowingKind::LogNormal;
  s.sigma_db = sigma_db;
  return s;
}

ShadowingSpec ShadowingSpec::unit() { return ShadowingSpec{}; }

ShadowingSpec ShadowingSpec::raw_moment(double moment_2_over_beta) {
  if (!(moment_2_over_beta > 0.0)) {
    throw std::invalid_argument("ShadowingSpec: moment must be > 0");
  }
  ShadowingSpec s;
  s.kind = ShadowingKind::RawMoment;
  s.moment_2_over_beta = moment_2_over_beta;
  return s;
}

double ShadowingSpec::moment(double beta) const {
  switch (kind) {
    case ShadowingKind::LogNormal:
      return lognormal_moment(sigma_db, beta);
    case ShadowingKind::Unit:
      return 1.0;
    case ShadowingKind::RawMoment:
      return moment_2_over_beta;
  }
  throw std::logic_error("ShadowingSpec: unknown kind");
}

double lognormal_moment(double sigma_db, double beta) {
  if (!(beta > 2.0)) {
    throw std::invalid_argument("lognormal_moment: beta must be > 2");
  }
  const double sigma = sigma_db * kLn10Over10;
  return std::exp(sigma * sigma * (2.0 - beta) / (beta * beta));
}

EquivalentPoisson equivalent_poisson(double lambda_per_km2,
                                     const PropagationModel& prop,
                                     const ShadowingSpec& shadow) {
  prop.validate();
  if (!(lambda_per_km2 > 0.0)) {
    throw std::invalid_argument("equivalent_poisson: lambda must be > 0");
  }
  const double k = prop.path_gain_k;
  const double a = lambda_per_km2 * kPi * shadow.moment(prop.beta) / (k * k);
  return {a, prop.beta};
}

double effective_k(const PropagationModel& prop, const ShadowingSpec& shadow) {
  prop.validate();
  return prop.path_gain_k / std::sqrt(shadow.moment(prop.beta));
}

double k_sigma(double k, double beta, double sigma) {
  if (!(beta > 2.0)) throw std::invalid_argument("k_sigma: beta must be > 2");
  if (sigma < 0.0) throw std::invalid_argument("k_sigma: sigma must be >= 0");
  return k * std::exp(-sigma * sigma * (beta - 2.0) / (2.0 * beta * beta));
}

}  // namespace cellnet::model
