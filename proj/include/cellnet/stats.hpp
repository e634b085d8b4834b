#ifndef CELLNET_STATS_HPP
#define CELLNET_STATS_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "cellnet/analytic.hpp"
#include "cellnet/model.hpp"
#include "cellnet/simulate.hpp"

namespace cellnet::stats {

/// Sorted-sample empirical distribution; F(x) = #{x_i <= x} / n.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> samples);

  double operator()(double x) const;
  const std::vector<double>& sorted_samples() const { return sorted_; }
  std::size_t size() const { return sorted_.size(); }

 private:
  std::vector<double> sorted_;
};

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
};

/// Asymptotic Kolmogorov p-value, 2 sum_k (-1)^{k-1} e^{-2 k^2 n d^2},
/// clamped to [0,1].
double ks_p_value(double d, std::size_t n);

/// One-sample K-S test of the empirical distribution against a reference
/// CDF, with both one-sided discrepancies at each sample point.
KsResult ks_test(const EmpiricalCdf& ecdf,
                 const std::function<double(double)>& cdf);

struct SweepRow {
  double sigma_db = 0.0;
  double pass_fraction = 0.0;
  double median_statistic = 0.0;
  int realizations = 0;
};

struct SweepConfig {
  int realizations = 10;
  int samples_per_realization = 10000;
  double alpha = 0.10;
  std::uint64_t seed = 1;
};

/// For each sigma_dB: runs `realizations` independent simulation batches on
/// the given pattern (each typical-user sample draws a fresh shadowing
/// field, since shadowing belongs to the station-user link), K-S-tests each
/// batch's empirical SIR CDF against the infinite-Poisson SIR law, and
/// reports the pass fraction at level alpha plus the median statistic.
/// Parallel over realizations, reproducible per (seed, sigma index,
/// realization index).
std::vector<SweepRow> convergence_sweep(const simulate::PointPattern& pattern,
                                        const model::PropagationModel& prop,
                                        const std::vector<double>& sigma_db_list,
                                        const SweepConfig& cfg);

}  // namespace cellnet::stats

#endif
