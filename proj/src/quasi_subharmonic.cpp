#include "carleson/quasi_subharmonic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace carleson {
namespace {

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

double evaluate(const QnsCandidate& u, Complex z) {
  if (const auto* mp = std::get_if<ModulusPower>(&u)) {
    return std::pow(std::abs(evaluate(mp->base, z)), mp->power);
  }
  if (const auto* spike = std::get_if<CellSpike>(&u)) {
    const Complex d = z - spike->center;
    const bool inside = std::abs(d.real()) <= spike->half_width &&
                        std::abs(d.imag()) <= spike->half_width;
    return spike->base + (inside ? spike->height : 0.0);
  }
  return poisson_extension(std::get<HarmonicData>(u).boundary, z);
}

QnsEstimate qns_constant(const QnsCandidate& u, std::span<const BallSpec> balls,
                         int cells_per_radius) {
  if (balls.empty()) {
    throw std::invalid_argument("qns constant: empty ball family");
  }
  if (cells_per_radius < 4) {
    throw std::invalid_argument("qns constant: cells_per_radius must be >= 4");
  }
  QnsEstimate estimate;
  for (std::size_t b = 0; b < balls.size(); ++b) {
    const BallSpec& ball = balls[b];
    if (!(ball.radius > 0.0)) {
      ++estimate.rejected;
      continue;
    }
    const int n = 2 * cells_per_radius;
    const double h = ball.radius / cells_per_radius;
    double sum = 0.0;
    std::size_t count = 0;
    for (int i = 0; i < n; ++i) {
      const double x = ball.center.real() - ball.radius + (i + 0.5) * h;
      for (int j = 0; j < n; ++j) {
        const Complex mid(x, ball.center.imag() - ball.radius + (j + 0.5) * h);
        if (std::abs(mid - ball.center) >= ball.radius) continue;
        if (std::abs(mid) >= 1.0) continue;
        sum += evaluate(u, mid);
        ++count;
      }
    }
    if (count < 32) {
      ++estimate.rejected;
      continue;
    }
    const double center_value = evaluate(u, ball.center);
    if (!(sum > 0.0)) {
      if (center_value > 0.0) {
        // positive value over a vanishing integral: no finite C works
        estimate.constant = std::numeric_limits<double>::infinity();
        estimate.witness = b;
      } else {
        ++estimate.rejected;  // 0/0 carries no information
      }
      continue;
    }
    // integral over the ball: sampled mean times the exact ball area
    const double mean = sum / static_cast<double>(count);
    const double integral = mean * kPi * ball.radius * ball.radius;
    const double ratio = center_value * ball.radius * ball.radius / integral;
    if (ratio > estimate.constant) {
      estimate.constant = ratio;
      estimate.witness = b;
    }
  }
  return estimate;
}

std::vector<double> power_stability(const ModulusPower& u,
                                    std::span<const double> gammas,
                                    std::span<const BallSpec> balls,
                                    int cells_per_radius) {
  std::vector<double> constants;
  constants.reserve(gammas.size());
  for (double gamma : gammas) {
    if (!(gamma > 0.0)) {
      throw std::invalid_argument("power stability: gammas must be positive");
    }
    const QnsCandidate scaled = ModulusPower{u.base, gamma * u.power};
    constants.push_back(qns_constant(scaled, balls, cells_per_radius).constant);
  }
  return constants;
}

double integral_against(const std::function<double(Complex)>& u,
                        const PlanarMeasure& mu, const DiscQuadratureSpec& spec) {
  const auto wrapped = [&u](Complex z) { return Complex(u(z), 0.0); };
  return lq_mu_norm(wrapped, 1.0, mu, spec);
}

double weighted_area_ratio(const std::function<double(Complex)>& u,
                           const PlanarMeasure& mu, double alpha,
                           const DiscQuadratureSpec& spec) {
  const double numerator = integral_against(u, mu, spec);
  const PlanarMeasure weight = RadialPowerDensity(1.0, alpha);
  const double denominator = integral_against(u, weight, spec);
  return numerator / denominator;
}

double weighted_area_ratio(const std::function<double(Complex)>& u,
                           const PlanarMeasure& mu, double alpha,
                           const Domain& domain, const DiscQuadratureSpec& spec) {
  if (!domain.source_map()) {
    throw std::invalid_argument("weighted area ratio: domain lacks a source map");
  }
  const ConformalMap& map = *domain.source_map();
  const double numerator = integral_against(u, mu, spec);
  const double denominator =
      kPi * disc_weighted_integral(
                [&](Complex z) {
                  const Complex w = map.eval(z);
                  double value = u(w) * std::norm(map.deriv(z));
                  if (alpha != 0.0) {
                    value *= std::pow(boundary_distance(domain, w), alpha);
                  }
                  return value;
                },
                0.0, spec);
  return numerator / denominator;
}

std::vector<BallSpec> random_disc_balls(std::uint64_t seed, int count, int min_level,
                                        int max_level) {
  if (count < 1) throw std::invalid_argument("random balls: count must be >= 1");
  if (min_level < 1 || min_level > max_level || max_level > 20) {
    throw std::invalid_argument("random balls: levels must satisfy 1 <= min <= max <= 20");
  }
  std::mt19937_64 rng(seed);
  std::vector<BallSpec> balls;
  balls.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const int span = max_level - min_level + 1;
    int level = min_level + static_cast<int>(unit_uniform(rng) * span);
    level = std::min(level, max_level);
    const double gap = std::ldexp(1.0, -level);
    const double angle = unit_uniform(rng) * kTwoPi;
    const double factor = 0.25 + 0.25 * unit_uniform(rng);
    balls.push_back({std::polar(1.0 - gap, angle), factor * gap});
  }
  return balls;
}

}  // namespace carleson
