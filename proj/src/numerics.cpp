#include "cellnet/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace cellnet::numerics {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_nonpositive_integer(double x) {
  return x <= 0.0 && x == std::floor(x);
}

// Lanczos, g = 7, 9 coefficients.
double lanczos_gamma(double x) {
  static const double coef[9] = {
      0.99999999999980993,    676.5203681218851,     -1259.1392167224028,
      771.32342877765313,     -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,   9.9843695780195716e-6, 1.5056327351493116e-7};
  x -= 1.0;
  double a = coef[0];
  const double t = x + 7.5;
  for (int i = 1; i < 9; ++i) a += coef[i] / (x + i);
  return std::sqrt(2.0 * kPi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

template <class Z>
Z gamma_star_series(double alpha, Z z) {
  // term_0 = 1/Gamma(alpha+1); term_{k+1} = term_k * z / (alpha + k + 1)
  Z term = 1.0 / gamma_fn(alpha + 1.0);
  Z sum = term;
  for (int k = 1; k <= 400; ++k) {
    term *= z / (alpha + static_cast<double>(k));
    sum += term;
    if (std::abs(term) < 1e-15 * std::abs(sum)) {
      return std::exp(-z) * sum;
    }
  }
  throw std::runtime_error("gamma_star: series did not converge");
}

// Upper incomplete gamma Gamma(a, z) by modified Lentz continued fraction,
// valid for Re(z) > 0 and |z| not small.
std::complex<double> upper_gamma_cf(double a, std::complex<double> z) {
  const double tiny = 1e-300;
  std::complex<double> b = z + 1.0 - a;
  std::complex<double> c = 1.0 / tiny;
  std::complex<double> d = 1.0 / b;
  std::complex<double> h = d;
  for (int i = 1; i <= 400; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const std::complex<double> delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-15) {
      return std::exp(-z + a * std::log(z)) * h;
    }
  }
  throw std::runtime_error("upper_gamma_cf: continued fraction did not converge");
}

}  // namespace

void InversionConfig::validate() const {
  if (!(error_exponent > 0.0)) {
    throw std::invalid_argument("InversionConfig: error_exponent must be > 0");
  }
  if (euler_terms < 1 || partial_sums < euler_terms) {
    throw std::invalid_argument("InversionConfig: need n >= m >= 1");
  }
}

void QuadratureConfig::validate() const {
  if (node_count < 2) {
    throw std::invalid_argument("QuadratureConfig: node_count must be >= 2");
  }
  if (!(rel_tol > 0.0) || !(rel_tol < 1.0)) {
    throw std::invalid_argument("QuadratureConfig: rel_tol must be in (0,1)");
  }
}

double gamma_fn(double x) {
  if (is_nonpositive_integer(x)) {
    throw std::domain_error("gamma_fn: pole at nonpositive integer");
  }
  if (x < 0.5) {
    // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
    return kPi / (std::sin(kPi * x) * lanczos_gamma(1.0 - x));
  }
  return lanczos_gamma(x);
}

double gamma_star(double alpha, double z) {
  if (alpha <= -1.0 && alpha == std::floor(alpha)) {
    throw std::domain_error("gamma_star: alpha must not be a negative integer");
  }
  if (z > 30.0) {
    return gamma_star(alpha, std::complex<double>{z, 0.0}).real();
  }
  return gamma_star_series(alpha, z);
}

std::complex<double> gamma_star(double alpha, std::complex<double> z) {
  if (alpha <= -1.0 && alpha == std::floor(alpha)) {
    throw std::domain_error("gamma_star: alpha must not be a negative integer");
  }
  // The series loses roughly |z| - Re(z) nats to cancellation and needs
  // O(|z|) terms, so keep it only where both are bounded; elsewhere take
  // the continued fraction (which needs Re(z) > 0).
  if (z.real() <= 0.0 ||
      (std::abs(z) <= 30.0 && std::abs(z) - z.real() <= 10.0)) {
    return gamma_star_series(alpha, z);
  }
  // gamma*(a,z) = z^{-a} (1 - Gamma(a,z)/Gamma(a)); cancellation-free route
  // for the large-modulus arguments produced by the Bromwich inversion.
  const std::complex<double> upper = upper_gamma_cf(alpha, z);
  return std::exp(-alpha * std::log(z)) * (1.0 - upper / gamma_fn(alpha));
}

double std_normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double invert_laplace_ccdf(
    const std::function<std::complex<double>(std::complex<double>)>& transform,
    double y, const InversionConfig& cfg) {
  cfg.validate();
  if (!(y > 0.0)) {
    throw std::invalid_argument("invert_laplace_ccdf: y must be > 0");
  }
  const int n = cfg.partial_sums;
  const int m = cfg.euler_terms;
  const double a = cfg.error_exponent;
  const double scale = std::exp(a / 2.0) / y;

  auto eval = [&](const std::complex<double>& z) {
    const std::complex<double> v = transform(z);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      std::ostringstream os;
      os << "invert_laplace_ccdf: non-finite transform value at z = ("
         << z.real() << ", " << z.imag() << ")";
      throw std::runtime_error(os.str());
    }
    return v.real();
  };

  double running = 0.5 * eval({a / (2.0 * y), 0.0});
  double sign = -1.0;
  std::vector<double> partial;  // s_n .. s_{n+m}
  partial.reserve(m + 1);
  for (int k = 1; k <= n + m; ++k) {
    running += sign * eval({a / (2.0 * y), k * kPi / y});
    sign = -sign;
    if (k >= n) partial.push_back(running);
  }

  // Euler (binomial) average of the last m+1 partial sums.
  double binom = 1.0;
  double accum = 0.0;
  double total_weight = 0.0;
  for (int j = 0; j <= m; ++j) {
    accum += binom * partial[j];
    total_weight += binom;
    binom = binom * (m - j) / (j + 1.0);
  }
  const double result = scale * accum / total_weight;
  return std::clamp(result, 0.0, 1.0);
}

namespace {

struct GaussLegendreRule {
  std::vector<double> nodes;    // on (0,1)
  std::vector<double> weights;  // sum to 1
};

// Legendre roots by Newton iteration; mapped from (-1,1) to (0,1).
GaussLegendreRule build_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = 0.5 * (1.0 - x);  // reversed order, irrelevant for sums
    rule.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

const GaussLegendreRule& cached_rule(int n) {
  static std::mutex mu;
  static std::map<int, GaussLegendreRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
  return it->second;
}

}  // namespace

double integrate_unit_interval(const std::function<double(double)>& f,
                               const QuadratureConfig& cfg) {
  cfg.validate();
  const GaussLegendreRule& rule = cached_rule(cfg.node_count);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double v = f(rule.nodes[i]);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "integrate_unit_interval: non-finite integrand at u = "
         << rule.nodes[i];
      throw std::runtime_error(os.str());
    }
    sum += rule.weights[i] * v;
  }
  return sum;
}

ScalarMaximum maximize_scalar(const std::function<double(double)>& f,
                              double lo, double hi, double tol) {
  if (!(lo < hi)) {
    throw std::invalid_argument("maximize_scalar: require lo < hi");
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("maximize_scalar: require tol > 0");
  }
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;  // 0.618...
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > tol) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  const double x = 0.5 * (lo + hi);
  return {x, f(x)};
}

}  // namespace cellnet::numerics
