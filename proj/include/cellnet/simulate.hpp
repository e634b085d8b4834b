#ifndef CELLNET_SIMULATE_HPP
#define CELLNET_SIMULATE_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "cellnet/model.hpp"

namespace cellnet::simulate {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

enum class PatternKind { Hexagonal, Poisson, PerturbedHexagonal };

/// Finite base-station pattern on a rectangular torus.
struct PointPattern {
  std::vector<Point> points;
  double width_km = 0.0;
  double height_km = 0.0;
  PatternKind kind = PatternKind::Hexagonal;

  double density() const;  // points per km^2
};

/// Radial truncation window (6)-(7): stations with inner < |X| < outer.
struct TruncationWindow {
  double inner_km = 0.0;
  double outer_km = std::numeric_limits<double>::infinity();
};

/// One realization's observables at the typical user.
struct TypicalUserSample {
  double path_loss = 0.0;            // L, linear
  double interference_factor = 0.0;  // f = L sum(1/L_i) - 1
  double sir = 0.0;                  // 1/f
  double sinr = 0.0;                 // 1/((N/P) L + f)
};

using Rng = std::mt19937_64;

/// Seedable per-work-unit stream: results are reproducible regardless of
/// worker count or scheduling when each unit uses its own stream index.
Rng make_stream(std::uint64_t seed, std::uint64_t stream);

/// Triangular-lattice sites with per-cell area pi R^2 on the exact lattice
/// bounding rectangle (n_side columns x n_side rows). n_side must be even
/// so the row offsets wrap periodically.
PointPattern hex_pattern(double cell_radius_km, int n_side);

PointPattern poisson_pattern(double lambda_per_km2, double width_km,
                             double height_km, Rng& rng);

/// hex_pattern sites plus iid Gaussian displacements, wrapped on the torus.
PointPattern perturbed_hex_pattern(double cell_radius_km, int n_side,
                                   double displacement_std_km, Rng& rng);

double torus_distance(Point p, Point q, double width_km, double height_km);

/// One linear shadowing value per station. Log-normal draws have mean 1;
/// the raw-moment kind maps to the constant with the same 2/beta-moment.
std::vector<double> draw_shadowing(const model::ShadowingSpec& shadow,
                                   double beta, std::size_t count, Rng& rng);

/// Observables for a user at a fixed position with given per-station
/// shadowing. Throws std::domain_error if a station coincides with the user.
TypicalUserSample typical_user_at(const PointPattern& pattern, Point user,
                                  const model::PropagationModel& prop,
                                  std::span<const double> shadowing);

/// Uniformly placed user, fresh shadowing draw; resamples the (probability
/// zero) coincident-station position.
TypicalUserSample sample_typical_user(const PointPattern& pattern,
                                      const model::PropagationModel& prop,
                                      const model::ShadowingSpec& shadow,
                                      Rng& rng);

/// Log propagation losses log(K(sigma)^beta |X_i|^beta / S_i^(sigma)) for
/// stations inside the truncation window, distances taken from the torus
/// origin. sigma is the natural-log shadowing standard deviation.
std::vector<double> sample_sigma_scaled_losses(const PointPattern& pattern,
                                               double k, double beta,
                                               double sigma,
                                               const TruncationWindow& window,
                                               Rng& rng);

/// Exact expected number of sigma-scaled log-losses <= s:
/// sum_i Phi((s - beta log(K |X_i|) - sigma^2/beta) / sigma).
double expected_log_count(const PointPattern& pattern, double k, double beta,
                          double sigma, double s);

/// Runs body(0..count-1) across hardware threads; each index is an
/// independent work unit.
void parallel_for_index(std::size_t count,
                        const std::function<void(std::size_t)>& body);

}  // namespace cellnet::simulate

#endif
