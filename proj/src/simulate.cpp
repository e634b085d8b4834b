#include "cellnet/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "cellnet/numerics.hpp"

namespace cellnet::simulate {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLn10Over10 = 0.23025850929940457;

double wrap(double v, double extent) {
  v = std::fmod(v, extent);
  if (v < 0.0) v += extent;
  return v;
}

double axis_delta(double a, double b, double extent) {
  double d = std::abs(a - b);
  return std::min(d, extent - d);
}

}  // namespace

double PointPattern::density() const {
  if (!(width_km > 0.0) || !(height_km > 0.0)) return 0.0;
  return static_cast<double>(points.size()) / (width_km * height_km);
}

Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{
      static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
      static_cast<std::uint32_t>(stream),
      static_cast<std::uint32_t>(stream >> 32), 0x9e3779b9u};
  return Rng(seq);
}

PointPattern hex_pattern(double cell_radius_km, int n_side) {
  if (!(cell_radius_km > 0.0)) {
    throw std::invalid_argument("hex_pattern: cell radius must be > 0");
  }
  if (n_side < 2 || n_side % 2 != 0) {
    throw std::invalid_argument("hex_pattern: n_side must be even and >= 2");
  }
  // Triangular lattice spacing giving per-site area pi R^2.
  const double spacing = cell_radius_km * std::sqrt(2.0 * kPi / std::sqrt(3.0));
  const double row_height = spacing * std::sqrt(3.0) / 2.0;
  PointPattern pattern;
  pattern.kind = PatternKind::Hexagonal;
  pattern.width_km = n_side * spacing;
  pattern.height_km = n_side * row_height;
  pattern.points.reserve(static_cast<std::size_t>(n_side) * n_side);
  for (int row = 0; row < n_side; ++row) {
    const double offset = (row % 2 == 0) ? 0.0 : spacing / 2.0;
    for (int col = 0; col < n_side; ++col) {
      pattern.points.push_back({col * spacing + offset, row * row_height});
    }
  }
  return pattern;
}

PointPattern poisson_pattern(double lambda_per_km2, double width_km,
                             double height_km, Rng& rng) {
  if (!(lambda_per_km2 > 0.0) || !(width_km > 0.0) || !(height_km > 0.0)) {
    throw std::invalid_argument("poisson_pattern: bad parameters");
  }
  std::poisson_distribution<int> count_dist(lambda_per_km2 * width_km *
                                            height_km);
  std::uniform_real_distribution<double> ux(0.0, width_km);
  std::uniform_real_distribution<double> uy(0.0, height_km);
  PointPattern pattern;
  pattern.kind = PatternKind::Poisson;
  pattern.width_km = width_km;
  pattern.height_km = height_km;
  const int count = count_dist(rng);
  pattern.points.reserve(count);
  for (int i = 0; i < count; ++i) {
    pattern.points.push_back({ux(rng), uy(rng)});
  }
  return pattern;
}

PointPattern perturbed_hex_pattern(double cell_radius_km, int n_side,
                                   double displacement_std_km, Rng& rng) {
  if (displacement_std_km < 0.0) {
    throw std::invalid_argument(
        "perturbed_hex_pattern: displacement std must be >= 0");
  }
  PointPattern pattern = hex_pattern(cell_radius_km, n_side);
  pattern.kind = PatternKind::PerturbedHexagonal;
  if (displacement_std_km == 0.0) return pattern;
  std::normal_distribution<double> normal(0.0, displacement_std_km);
  for (Point& p : pattern.points) {
    p.x = wrap(p.x + normal(rng), pattern.width_km);
    p.y = wrap(p.y + normal(rng), pattern.height_km);
  }
  return pattern;
}

double torus_distance(Point p, Point q, double width_km, double height_km) {
  const double dx = axis_delta(p.x, q.x, width_km);
  const double dy = axis_delta(p.y, q.y, height_km);
  return std::sqrt(dx * dx + dy * dy);
}

std::vector<double> draw_shadowing(const model::ShadowingSpec& shadow,
                                   double beta, std::size_t count, Rng& rng) {
  std::vector<double> values(count, 1.0);
  switch (shadow.kind) {
    case model::ShadowingKind::Unit:
      break;
    case model::ShadowingKind::LogNormal: {
      const double sigma = shadow.sigma_db * kLn10Over10;
      if (sigma > 0.0) {
        std::normal_distribution<double> normal(0.0, 1.0);
        for (double& v : values) {
          v = std::exp(-sigma * sigma / 2.0 + sigma * normal(rng));
        }
      }
      break;
    }
    case model::ShadowingKind::RawMoment:
      // Constant shadowing with the same 2/beta-moment (Poisson equivalence).
      values.assign(count, std::pow(shadow.moment_2_over_beta, beta / 2.0));
      break;
  }
  return values;
}

TypicalUserSample typical_user_at(const PointPattern& pattern, Point user,
                                  const model::PropagationModel& prop,
                                  std::span<const double> shadowing) {
  if (pattern.points.empty()) {
    throw std::invalid_argument("typical_user_at: empty pattern");
  }
  if (shadowing.size() != pattern.points.size()) {
    throw std::invalid_argument("typical_user_at: shadowing size mismatch");
  }
  const double beta = prop.beta;
  const double k = prop.path_gain_k;
  double min_loss = std::numeric_limits<double>::infinity();
  double sum_inv = 0.0;
  for (std::size_t i = 0; i < pattern.points.size(); ++i) {
    const double d = torus_distance(user, pattern.points[i], pattern.width_km,
                                    pattern.height_km);
    if (d == 0.0) {
      throw std::domain_error("typical_user_at: station coincides with user");
    }
    const double loss = std::pow(k * d, beta) / shadowing[i];
    min_loss = std::min(min_loss, loss);
    sum_inv += 1.0 / loss;
  }
  TypicalUserSample sample;
  sample.path_loss = min_loss;
  sample.interference_factor = std::max(min_loss * sum_inv - 1.0, 0.0);
  sample.sir = sample.interference_factor > 0.0
                   ? 1.0 / sample.interference_factor
                   : std::numeric_limits<double>::infinity();
  sample.sinr = 1.0 / (prop.noise_w / prop.tx_power_w * min_loss +
                       sample.interference_factor);
  return sample;
}

TypicalUserSample sample_typical_user(const PointPattern& pattern,
                                      const model::PropagationModel& prop,
                                      const model::ShadowingSpec& shadow,
                                      Rng& rng) {
  prop.validate();
  const std::vector<double> shadowing =
      draw_shadowing(shadow, prop.beta, pattern.points.size(), rng);
  std::uniform_real_distribution<double> ux(0.0, pattern.width_km);
  std::uniform_real_distribution<double> uy(0.0, pattern.height_km);
  for (;;) {
    try {
      return typical_user_at(pattern, {ux(rng), uy(rng)}, prop, shadowing);
    } catch (const std::domain_error&) {
      // probability-zero coincidence: redraw the user position
    }
  }
}

std::vector<double> sample_sigma_scaled_losses(const PointPattern& pattern,
                                               double k, double beta,
                                               double sigma,
                                               const TruncationWindow& window,
                                               Rng& rng) {
  if (sigma < 0.0) {
    throw std::invalid_argument("sample_sigma_scaled_losses: sigma >= 0");
  }
  if (!(window.inner_km >= 0.0) || !(window.inner_km < window.outer_km)) {
    throw std::invalid_argument("sample_sigma_scaled_losses: bad window");
  }
  const double k_s = model::k_sigma(k, beta, sigma);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> losses;
  losses.reserve(pattern.points.size());
  for (const Point& p : pattern.points) {
    const double d =
        torus_distance({0.0, 0.0}, p, pattern.width_km, pattern.height_km);
    if (!(d > window.inner_km) || !(d < window.outer_km)) continue;
    // log(K(sigma)^beta d^beta / S) with S = exp(-sigma^2/2 + sigma Z)
    losses.push_back(beta * std::log(k_s * d) + sigma * sigma / 2.0 -
                     sigma * normal(rng));
  }
  return losses;
}

double expected_log_count(const PointPattern& pattern, double k, double beta,
                          double sigma, double s) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("expected_log_count: sigma must be > 0");
  }
  double sum = 0.0;
  for (const Point& p : pattern.points) {
    const double d =
        torus_distance({0.0, 0.0}, p, pattern.width_km, pattern.height_km);
    if (!(d > 0.0)) continue;
    sum += numerics::std_normal_cdf(
        (s - beta * std::log(k * d) - sigma * sigma / beta) / sigma);
  }
  return sum;
}

void parallel_for_index(std::size_t count,
                        const std::function<void(std::size_t)>& body) {
  if (count == 0) return;
  const std::size_t workers =
      std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()),
                            count);
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (std::thread& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace cellnet::simulate
