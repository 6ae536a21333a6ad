#pragma once

#include <optional>
#include <string>
#include <vector>

#include "carleson/measures.hpp"
#include "carleson/planar_domain.hpp"

namespace carleson {

// One probe of a scanning checker, exportable as a CSV row.
struct ProbeRecord {
  std::string probe_id;
  double parameter = 0.0;  // box arc length, ball radius, ...
  double measure = 0.0;
  double ratio = 0.0;
};

// Max over dyadic boxes of levels 0..depth of mu(box) / |I|^beta, |I| the
// arc length.  Atom-backed measures are scanned by angle bucketing, the
// radial density by one closed form per level.
double square_constant(const PlanarMeasure& mu, double beta, int depth,
                       std::vector<ProbeRecord>* probes = nullptr);

// Same scan split per level; entry k is the max ratio over level-k boxes.
std::vector<double> square_constant_by_level(const PlanarMeasure& mu, double beta,
                                             int depth);

// Hyperbolically uniform scan: centers at radii 1 - 2^-k for k in
// [min_level, max_level], angular_multiplier * 2^k angles per level, ball
// radius radius_factor * dist(center, boundary).
struct WhitneyScanSpec {
  int min_level = 1;
  int max_level = 10;
  int angular_multiplier = 16;
  double radius_factor = 0.5;
};

// Max over scanned balls of mu(B) / r^beta.  With a domain argument the
// centers are pushed through its source map and the distance comes from the
// boundary polyline; otherwise the scan runs on the unit disc.
double whitney_ball_constant(const PlanarMeasure& mu, double beta,
                             const WhitneyScanSpec& spec,
                             const Domain* domain = nullptr,
                             std::vector<ProbeRecord>* probes = nullptr);

// Max over boundary centers x radii of mu(B(center, R) intersect domain) / R^beta.
// Atom positions are tested for domain membership; boundary-arc densities are
// clipped against the ball only (the curve is the domain boundary already),
// and radial densities against the unit disc they live on.
double boundary_ball_constant(const PlanarMeasure& mu, const Domain& domain,
                              double beta, std::span<const Complex> centers,
                              std::span<const double> radii,
                              std::vector<ProbeRecord>* probes = nullptr);

struct EquivalenceReport {
  double square_c = 0.0;
  double ball_c = 0.0;
  double ratio = 1.0;  // square_c / ball_c, 1 when both vanish
};

// Joint square and Whitney-ball scan at matched depth; beta must exceed 1.
EquivalenceReport equivalence_report(const PlanarMeasure& mu, double beta, int depth);

}  // namespace carleson
