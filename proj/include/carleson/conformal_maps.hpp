#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "carleson/disc_geometry.hpp"

namespace carleson {

namespace detail {
class MapNode;
}

// Bounded univalent map of the unit disc drawn from a closed-form catalog:
//   identity           z
//   moebius(a)         (z + a) / (1 + conj(a) z),           |a| < 1
//   quadratic(c)       z + c z^2,                           |c| <= 1/2
//   power_corner(g)    ((1 + z) / 2)^g,                     0 < g <= 2
//   compose(f, g)      f(g(z)) for g mapping the disc into itself
// Values, derivatives and a continuous branch of log(derivative) are exact
// formulas; no numerical differentiation is involved.
class ConformalMap {
 public:
  Complex eval(Complex z) const;
  Complex deriv(Complex z) const;

  // Continuous branch of log(deriv) on the disc, principal at the points
  // where each factor is evaluated; the imaginary part at 0 lies in (-pi, pi].
  Complex log_deriv(Complex z) const;

  double log_abs_deriv(Complex z) const;

  // log|deriv| on the closed circle via the same closed forms.  May be -inf
  // at isolated boundary zeros of the derivative.
  double boundary_log_abs_deriv(double theta) const;

  const std::string& descriptor() const;

  static ConformalMap identity();
  static ConformalMap moebius(Complex a);
  static ConformalMap quadratic(Complex c);
  static ConformalMap power_corner(double gamma);
  static ConformalMap compose(const ConformalMap& outer, const ConformalMap& inner);

 private:
  explicit ConformalMap(std::shared_ptr<const detail::MapNode> node);
  std::shared_ptr<const detail::MapNode> node_;
  std::string descriptor_;
  Complex branch_shift_;  // additive correction keeping log_deriv(0) principal
};

// Largest sampled oscillation of log|deriv| over a box top.
double bloch_oscillation(const ConformalMap& map, const BoxTop& top, int samples);

struct BmoEstimate {
  double value = 0.0;
  int skipped_nodes = 0;
};

// Dyadic-arc BMO estimator for log|deriv| boundary values: sup over arcs of
// levels 0..depth of the mean deviation from the value at the interior
// reference point z_I = (1 - |I|/2) * midpoint, radius clamped at 0.
// Quadrature nodes where the integrand is not finite are skipped and counted.
BmoEstimate bmo_norm_estimate(const ConformalMap& map, int depth, int quad_points);

// Poisson integral of uniform-grid boundary samples (angle j * 2*pi / n).
// Requires |z| < 1.
double poisson_extension(const std::vector<double>& boundary_values, Complex z);

// Max of |u| over cone points sampled at radii 1 - 2^-k, k = 0..radial_levels,
// with an angular sweep at each radius filtered by cone membership.
double nontangential_max(const std::function<double(Complex)>& u,
                         double vertex_angle, double aperture, int radial_levels);

struct KoebeBounds {
  double lower = 0.0;  // |deriv| (1 - |z|^2) / 4
  double upper = 0.0;  // |deriv| (1 - |z|^2)
};

// Two-sided distortion bracket for the boundary distance of the image point.
KoebeBounds koebe_delta_bounds(const ConformalMap& map, Complex z);

}  // namespace carleson
