#include "carleson/carleson_checkers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>

namespace carleson {
namespace {

struct LevelBest {
  double mass = 0.0;
  std::uint64_t index = 0;
};

// Max box mass at one dyadic level for a point-supported measure.  Bucketing
// by angle index matches CarlesonBox::contains: half-open in angle, closed
// at the inner radius.
LevelBest best_box_from_points(const std::vector<WeightedAtom>& points, int level) {
  const double inner = dyadic_inner_radius(level);
  std::unordered_map<std::uint64_t, double> buckets;
  for (const auto& atom : points) {
    if (atom.weight <= 0.0) continue;
    const double r = std::abs(atom.point);
    if (r < inner || r > 1.0 + 1e-12) continue;
    buckets[dyadic_angle_index(std::arg(atom.point), level)] += atom.weight;
  }
  LevelBest best;
  for (const auto& [index, mass] : buckets) {
    if (mass > best.mass) best = {mass, index};
  }
  return best;
}

LevelBest best_box_brute(const PlanarMeasure& mu, int level) {
  LevelBest best;
  const std::uint64_t count = std::uint64_t{1} << level;
  for (std::uint64_t j = 0; j < count; ++j) {
    const double mass = measure_of_box(mu, dyadic_box(level, j));
    if (mass > best.mass) best = {mass, j};
  }
  return best;
}

// Per-level max box mass with argmax index, levels 0..depth.
std::vector<LevelBest> scan_levels(const PlanarMeasure& mu, int depth) {
  if (depth < 0 || depth > kMaxDyadicDepth) {
    throw std::invalid_argument("square scan: depth out of range");
  }
  std::vector<LevelBest> levels(static_cast<std::size_t>(depth) + 1);
  if (const auto* radial = std::get_if<RadialPowerDensity>(&mu)) {
    // All boxes at a level share the closed-form mass |I| * tail(inner).
    for (int k = 0; k <= depth; ++k) {
      const double length = kTwoPi / std::ldexp(1.0, k);
      levels[k] = {length * radial->radial_tail_integral(dyadic_inner_radius(k)), 0};
    }
    return levels;
  }
  if (std::holds_alternative<BoundaryArcMeasure>(mu)) {
    for (int k = 0; k <= depth; ++k) levels[k] = best_box_brute(mu, k);
    return levels;
  }
  const std::vector<WeightedAtom> points = as_atoms(mu);
  for (int k = 0; k <= depth; ++k) levels[k] = best_box_from_points(points, k);
  return levels;
}

void check_beta(double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("carleson scan: beta must be positive");
}

}  // namespace

double square_constant(const PlanarMeasure& mu, double beta, int depth,
                       std::vector<ProbeRecord>* probes) {
  check_beta(beta);
  double best = 0.0;
  const std::vector<LevelBest> levels = scan_levels(mu, depth);
  for (int k = 0; k <= depth; ++k) {
    const double length = kTwoPi / std::ldexp(1.0, k);
    const double ratio = levels[k].mass / std::pow(length, beta);
    if (probes) {
      probes->push_back({"square-L" + std::to_string(k) + "-j" +
                             std::to_string(levels[k].index),
                         length, levels[k].mass, ratio});
    }
    best = std::max(best, ratio);
  }
  return best;
}

std::vector<double> square_constant_by_level(const PlanarMeasure& mu, double beta,
                                             int depth) {
  check_beta(beta);
  const std::vector<LevelBest> levels = scan_levels(mu, depth);
  std::vector<double> ratios(levels.size());
  for (int k = 0; k <= depth; ++k) {
    const double length = kTwoPi / std::ldexp(1.0, k);
    ratios[k] = levels[k].mass / std::pow(length, beta);
  }
  return ratios;
}

double whitney_ball_constant(const PlanarMeasure& mu, double beta,
                             const WhitneyScanSpec& spec, const Domain* domain,
                             std::vector<ProbeRecord>* probes) {
  check_beta(beta);
  if (spec.min_level < 0 || spec.min_level > spec.max_level || spec.max_level > 20) {
    throw std::invalid_argument("whitney scan: levels must satisfy 0 <= min <= max <= 20");
  }
  if (spec.angular_multiplier < 1) {
    throw std::invalid_argument("whitney scan: angular_multiplier must be >= 1");
  }
  if (!(spec.radius_factor >= 0.25 && spec.radius_factor <= 0.5)) {
    throw std::invalid_argument("whitney scan: radius_factor must lie in [1/4, 1/2]");
  }
  const ConformalMap* map = nullptr;
  if (domain) {
    if (!domain->source_map()) {
      throw std::invalid_argument("whitney scan: domain lacks a source map");
    }
    map = &*domain->source_map();
  }
  const bool rotation_invariant =
      !domain && std::holds_alternative<RadialPowerDensity>(mu);
  double best = 0.0;
  for (int level = spec.min_level; level <= spec.max_level; ++level) {
    const double gap = std::ldexp(1.0, -level);  // 1 - |center| on the disc
    const double rho = 1.0 - gap;
    const std::uint64_t n_ang =
        rotation_invariant
            ? 1
            : static_cast<std::uint64_t>(spec.angular_multiplier) << level;
    double level_best = -1.0;
    double level_radius = 0.0;
    double level_mass = 0.0;
    for (std::uint64_t j = 0; j < n_ang; ++j) {
      const double theta = (static_cast<double>(j) + 0.5) * kTwoPi /
                           static_cast<double>(n_ang);
      const Complex z = std::polar(rho, theta);
      Complex center = z;
      double dist = gap;
      if (map) {
        center = map->eval(z);
        dist = boundary_distance(*domain, center);
        if (!(dist > 0.0)) continue;  // polyline error can pinch off centers
      }
      const double radius = spec.radius_factor * dist;
      const double mass = measure_of_ball(mu, center, radius);
      const double ratio = mass / std::pow(radius, beta);
      if (ratio > level_best) {
        level_best = ratio;
        level_radius = radius;
        level_mass = mass;
      }
    }
    if (level_best < 0.0) continue;
    if (probes) {
      probes->push_back(
          {"ball-L" + std::to_string(level), level_radius, level_mass, level_best});
    }
    best = std::max(best, level_best);
  }
  return best;
}

double boundary_ball_constant(const PlanarMeasure& mu, const Domain& domain,
                              double beta, std::span<const Complex> centers,
                              std::span<const double> radii,
                              std::vector<ProbeRecord>* probes) {
  check_beta(beta);
  if (centers.empty() || radii.empty()) {
    throw std::invalid_argument("boundary ball scan: empty probe set");
  }
  // Point-supported measures are clipped to the open domain once up front;
  // arc and radial densities fall back to plain ball mass (the curve is the
  // boundary itself, the radial density lives on the unit disc).
  std::vector<WeightedAtom> clipped;
  bool use_points = false;
  if (!std::holds_alternative<BoundaryArcMeasure>(mu) &&
      !std::holds_alternative<RadialPowerDensity>(mu)) {
    use_points = true;
    for (const auto& atom : as_atoms(mu)) {
      if (atom.weight > 0.0 && domain.contains(atom.point)) clipped.push_back(atom);
    }
  }
  double best = 0.0;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    for (std::size_t k = 0; k < radii.size(); ++k) {
      const double radius = radii[k];
      if (!(radius > 0.0)) continue;
      double mass = 0.0;
      if (use_points) {
        for (const auto& atom : clipped) {
          if (std::abs(atom.point - centers[i]) <= radius) mass += atom.weight;
        }
      } else {
        mass = measure_of_ball(mu, centers[i], radius);
      }
      const double ratio = mass / std::pow(radius, beta);
      if (probes) {
        probes->push_back({"bdry-c" + std::to_string(i) + "-r" + std::to_string(k),
                           radius, mass, ratio});
      }
      best = std::max(best, ratio);
    }
  }
  return best;
}

EquivalenceReport equivalence_report(const PlanarMeasure& mu, double beta, int depth) {
  if (!(beta > 1.0)) {
    throw std::invalid_argument("equivalence report: needs beta > 1");
  }
  EquivalenceReport report;
  report.square_c = square_constant(mu, beta, depth);
  WhitneyScanSpec spec;
  spec.min_level = 0;  // include B(0, 1/2) so central mass is never invisible
  spec.max_level = std::max(1, depth);
  report.ball_c = whitney_ball_constant(mu, beta, spec);
  if (report.square_c == 0.0 && report.ball_c == 0.0) {
    report.ratio = 1.0;
  } else {
    report.ratio = report.square_c / report.ball_c;
  }
  return report;
}

}  // namespace carleson
