#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "carleson/conformal_maps.hpp"
#include "carleson/disc_geometry.hpp"
#include "carleson/planar_domain.hpp"

namespace carleson {

struct WeightedAtom {
  Complex point;
  double weight = 0.0;
};

class AtomicMeasure {
 public:
  AtomicMeasure() = default;
  explicit AtomicMeasure(std::vector<WeightedAtom> atoms);

  const std::vector<WeightedAtom>& atoms() const { return atoms_; }
  double total_mass() const { return total_; }
  void add(Complex point, double weight);

 private:
  std::vector<WeightedAtom> atoms_;
  double total_ = 0.0;
};

// Nonnegative density against area measure on an axis-aligned rectangular
// grid.  Each cell carries mass value * dx * dy concentrated for box and
// ball queries at the cell center.
class GridDensityMeasure {
 public:
  GridDensityMeasure(double x0, double y0, double dx, double dy, int nx, int ny,
                     std::vector<double> values);

  double x0() const { return x0_; }
  double y0() const { return y0_; }
  double dx() const { return dx_; }
  double dy() const { return dy_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  const std::vector<double>& values() const { return values_; }

  Complex cell_center(int i, int j) const;
  double cell_mass(int i, int j) const;
  double total_mass() const;

 private:
  double x0_, y0_, dx_, dy_;
  int nx_, ny_;
  std::vector<double> values_;  // row-major, j * nx + i
};

// Density against arclength on a boundary polyline, one value per segment.
class BoundaryArcMeasure {
 public:
  BoundaryArcMeasure(BoundaryCurve curve, std::vector<double> density);

  const BoundaryCurve& curve() const { return curve_; }
  const std::vector<double>& density() const { return density_; }
  double total_mass() const;

 private:
  BoundaryCurve curve_;
  std::vector<double> density_;
};

// Exact radial density on the unit disc: d(mu) = coeff * (1 - |z|)^exponent
// times area measure.  Carleson boxes get closed-form mass; balls are
// integrated by a polar midpoint rule around the ball center.
class RadialPowerDensity {
 public:
  RadialPowerDensity(double coeff, double exponent);

  double coeff() const { return coeff_; }
  double exponent() const { return exponent_; }

  // integral over r in [r0, 1) of (1 - r)^exponent * r dr, times coeff.
  double radial_tail_integral(double r0) const;
  double total_mass() const;

 private:
  double coeff_;
  double exponent_;  // > -1
};

using PlanarMeasure =
    std::variant<AtomicMeasure, GridDensityMeasure, BoundaryArcMeasure, RadialPowerDensity>;

double total_mass(const PlanarMeasure& mu);
double measure_of_box(const PlanarMeasure& mu, const CarlesonBox& box);
double measure_of_top(const PlanarMeasure& mu, const BoxTop& top);
double measure_of_ball(const PlanarMeasure& mu, Complex center, double radius);

// Atom view used by scanners and pullbacks: atoms stay atoms, grid cells
// become center atoms, boundary segments become midpoint atoms.  The radial
// density has no faithful atom view and is rejected.
std::vector<WeightedAtom> as_atoms(const PlanarMeasure& mu);

struct EmbeddingParams {
  double p = 1.0;
  double q = 1.0;
  double alpha = 0.0;

  EmbeddingParams(double p_, double q_, double alpha_);

  double hardy_exponent() const { return q / p; }
  double bergman_exponent() const { return (2.0 + alpha) * q / p; }
};

inline constexpr double kInversionTolerance = 1e-10;
inline constexpr double kNearBoundaryRadius = 1.0 - 1e-6;

struct InversionResult {
  Complex z;
  bool converged = false;
  double residual = 0.0;
  int iterations = 0;
};

// Damped Newton inversion of the map at w, seeded from a coarse image grid.
InversionResult invert_map(const ConformalMap& map, Complex w,
                           double tol = kInversionTolerance);

struct PullbackResult {
  AtomicMeasure measure;                // atoms at preimages, weights per rule
  std::vector<WeightedAtom> rejected;   // source atoms whose inversion failed
  double rejected_mass = 0.0;
  int near_boundary_flags = 0;          // preimage radius > 1 - 1e-6
};

// Preimage measure: each source atom (or grid cell) moves to its preimage
// with unchanged weight.
PullbackResult pullback(const ConformalMap& map, const PlanarMeasure& mu,
                        double inversion_tol = kInversionTolerance);

// Preimage measure with weights divided by |deriv(preimage)|^exponent.
PullbackResult weighted_pullback(const ConformalMap& map, const PlanarMeasure& mu,
                                 double exponent,
                                 double inversion_tol = kInversionTolerance);

AtomicMeasure read_atoms_csv(const std::string& path);
void write_atoms_csv(const AtomicMeasure& mu, const std::string& path);
GridDensityMeasure read_grid_csv(const std::string& path);
void write_grid_csv(const GridDensityMeasure& mu, const std::string& path);

// Seeded generator used by the randomized suites: measures with atoms_each
// atoms at radii 1 - 2^-U{1..max_level} and uniform angles, unit weights.
std::vector<AtomicMeasure> random_atom_suite(std::uint64_t seed, int n_measures,
                                             int atoms_each, int max_level);

}  // namespace carleson
