#include "cellnet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cellnet::stats {

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples)
    : sorted_(std::move(samples)) {
  if (sorted_.empty()) {
    throw std::invalid_argument("EmpiricalCdf: need at least one sample");
  }
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) /
         static_cast<double>(sorted_.size());
}

double ks_p_value(double d, std::size_t n) {
  if (d <= 0.0) return 1.0;
  const double x = std::sqrt(static_cast<double>(n)) * d;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 1000; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += sign * term;
    sign = -sign;
    if (term < 1e-12) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test(const EmpiricalCdf& ecdf,
                 const std::function<double(double)>& cdf) {
  const std::vector<double>& xs = ecdf.sorted_samples();
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max(d, std::abs((i + 1) / n - f));
    d = std::max(d, std::abs(i / n - f));
  }
  return {d, ks_p_value(d, xs.size()), xs.size()};
}

std::vector<SweepRow> convergence_sweep(const simulate::PointPattern& pattern,
                                        const model::PropagationModel& prop,
                                        const std::vector<double>& sigma_db_list,
                                        const SweepConfig& cfg) {
  prop.validate();
  if (sigma_db_list.empty()) {
    throw std::invalid_argument("convergence_sweep: empty sigma list");
  }
  if (cfg.realizations < 1 || cfg.samples_per_realization < 1) {
    throw std::invalid_argument("convergence_sweep: bad configuration");
  }
  // The Poisson SIR law does not depend on sigma or the intensity; one
  // tabulation serves every cell of the sweep.
  const analytic::GridCdf reference =
      analytic::tabulate_sir_cdf(prop.beta, 1e-7, 1e9, 1200);

  std::vector<SweepRow> table;
  for (std::size_t si = 0; si < sigma_db_list.size(); ++si) {
    const double sigma_db = sigma_db_list[si];
    const model::ShadowingSpec shadow =
        sigma_db > 0.0 ? model::ShadowingSpec::log_normal(sigma_db)
                       : model::ShadowingSpec::unit();
    std::vector<double> statistics(cfg.realizations, 0.0);
    std::vector<int> passed(cfg.realizations, 0);
    simulate::parallel_for_index(cfg.realizations, [&](std::size_t r) {
      simulate::Rng rng = simulate::make_stream(
          cfg.seed, (si << 32) | static_cast<std::uint64_t>(r));
      // Shadowing is a property of the station-user link, so every user
      // sample draws a fresh shadowing field; a realization is one
      // independent batch of samples.
      std::vector<double> sirs;
      sirs.reserve(cfg.samples_per_realization);
      while (sirs.size() < static_cast<std::size_t>(cfg.samples_per_realization)) {
        const simulate::TypicalUserSample sample =
            simulate::sample_typical_user(pattern, prop, shadow, rng);
        if (std::isfinite(sample.sir)) sirs.push_back(sample.sir);
      }
      const KsResult ks = ks_test(EmpiricalCdf(std::move(sirs)), reference);
      statistics[r] = ks.statistic;
      passed[r] = ks.p_value > cfg.alpha ? 1 : 0;
    });

    std::sort(statistics.begin(), statistics.end());
    const std::size_t m = statistics.size();
    const double median = m % 2 == 1
                              ? statistics[m / 2]
                              : 0.5 * (statistics[m / 2 - 1] + statistics[m / 2]);
    SweepRow row;
    row.sigma_db = sigma_db;
    row.pass_fraction =
        static_cast<double>(std::count(passed.begin(), passed.end(), 1)) /
        static_cast<double>(cfg.realizations);
    row.median_statistic = median;
    row.realizations = cfg.realizations;
    table.push_back(row);
  }
  return table;
}

}  // namespace cellnet::stats
