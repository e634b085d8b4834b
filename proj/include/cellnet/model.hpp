#ifndef CELLNET_MODEL_HPP
#define CELLNET_MODEL_HPP

namespace cellnet::model {

/// Physical propagation and power parameters. Distances are in km, powers
/// in watts; dB/dBm conversions happen at the CLI boundary only.
struct PropagationModel {
  double path_gain_k = 4250.0;      // km^-1, distance loss (K |x|)^beta
  double beta = 3.52;               // path-loss exponent, must be > 2
  double noise_w = 0.0;             // N, linear watts
  double tx_power_w = 1.0;          // P, linear watts
  double bandwidth_hz = 1e7;        // W
  double power_cost_slope = 21.45;  // c, consumed power = c P + d
  double power_cost_offset_w = 354.44;  // d

  void validate() const;
};

enum class ShadowingKind { LogNormal, Unit, RawMoment };

/// Log-normal shadowing of mean 1 parameterized by sigma_dB, the unit
/// (no-shadowing) case, or a distribution specified only through its
/// 2/beta-moment.
struct ShadowingSpec {
  ShadowingKind kind = ShadowingKind::Unit;
  double sigma_db = 0.0;
  double moment_2_over_beta = 1.0;

  static ShadowingSpec log_normal(double sigma_db);
  static ShadowingSpec unit();
  static ShadowingSpec raw_moment(double moment_2_over_beta);

  /// E[S^{2/beta}] for the given path-loss exponent.
  double moment(double beta) const;
};

/// Intensity constant of the 1-D propagation-loss process,
/// Lambda([0,t)) = a t^{2/beta}.
struct EquivalentPoisson {
  double intensity_a = 0.0;
  double beta = 0.0;
};

/// E[S^{2/beta}] = exp(sigma^2 (2-beta)/beta^2) for mean-1 log-normal S
/// with sigma = sigma_db ln(10)/10. Requires beta > 2.
double lognormal_moment(double sigma_db, double beta);

/// a = lambda pi E[S^{2/beta}] / K^2.
EquivalentPoisson equivalent_poisson(double lambda_per_km2,
                                     const PropagationModel& prop,
                                     const ShadowingSpec& shadow);

/// K replaced so that unit shadowing yields the same equivalent Poisson:
/// K~ = K / sqrt(E[S^{2/beta}]).
double effective_k(const PropagationModel& prop, const ShadowingSpec& shadow);

/// K(sigma) = K exp(-sigma^2 (beta-2) / (2 beta^2)); sigma is the
/// natural-log standard deviation. Satisfies
/// K(sigma)^2 = K^2 E[(S^(sigma))^{2/beta}], so the equivalent intensity
/// with gain K(sigma) and shadowing sigma equals lambda pi / K^2.
double k_sigma(double k, double beta, double sigma);

}  // namespace cellnet::model

#endif
