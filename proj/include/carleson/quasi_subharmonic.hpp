#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "carleson/embedding_lab.hpp"
#include "carleson/measures.hpp"
#include "carleson/planar_domain.hpp"

namespace carleson {

// Nonnegative candidates for the mean-value comparison on discs: powers of
// analytic moduli, Poisson extensions of nonnegative boundary data, and a
// square bump used as the non-subharmonic negative control.
struct ModulusPower {
  TestFunction base;
  double power = 1.0;  // u = |base|^power
};

struct HarmonicData {
  std::vector<double> boundary;  // uniform angle grid, nonnegative
};

// base + height on the square |Re(z-center)|, |Im(z-center)| <= half_width,
// base elsewhere.
struct CellSpike {
  Complex center;
  double half_width = 0.0;
  double height = 1.0;
  double base = 0.0;
};

using QnsCandidate = std::variant<ModulusPower, HarmonicData, CellSpike>;

double evaluate(const QnsCandidate& u, Complex z);

struct BallSpec {
  Complex center;
  double radius = 0.0;
};

struct QnsEstimate {
  double constant = 0.0;     // sup over accepted balls of u(center) r^2 / integral
  std::size_t witness = 0;   // index of the extremal ball
  std::size_t rejected = 0;  // balls skipped for covering too few grid cells
};

// Least constant C with u(center) <= C r^{-2} integral_B(u) valid on the ball
// family.  Ball integrals use a square midpoint rule, cells_per_radius cells
// along the radius, cell centers clipped to the open ball and the open disc,
// the sampled mean rescaled by the exact ball area; balls with fewer than 32
// surviving cells are rejected.  A vanishing integral under a positive center
// value reports infinity.  Harmonic candidates sit at 1/pi (mean value
// equality) up to quadrature error.
QnsEstimate qns_constant(const QnsCandidate& u, std::span<const BallSpec> balls,
                         int cells_per_radius = 24);

// Constants of |base|^{gamma * power} for each gamma: the candidate class is
// stable under positive powers of the modulus.
std::vector<double> power_stability(const ModulusPower& u,
                                    std::span<const double> gammas,
                                    std::span<const BallSpec> balls,
                                    int cells_per_radius = 24);

// Integral of a nonnegative function against mu (radial densities use the
// polar rule with exact radial cell masses).
double integral_against(const std::function<double(Complex)>& u,
                        const PlanarMeasure& mu,
                        const DiscQuadratureSpec& spec = {});

// Ratio of the mu-integral of u to the weighted area integral of u with
// weight (1 - |z|)^alpha on the disc, dist(w, boundary)^alpha on a domain
// (through its source map).  A point mass at 0 against alpha = 0 gives
// u(0) / (pi u(0)) = 1/pi for harmonic u.
double weighted_area_ratio(const std::function<double(Complex)>& u,
                           const PlanarMeasure& mu, double alpha,
                           const DiscQuadratureSpec& spec = {});
double weighted_area_ratio(const std::function<double(Complex)>& u,
                           const PlanarMeasure& mu, double alpha,
                           const Domain& domain,
                           const DiscQuadratureSpec& spec = {});

// Whitney-type balls at random dyadic depths: centers at radii 1 - 2^-k with
// k uniform in [min_level, max_level], uniform angles, radius a uniform
// fraction in [1/4, 1/2] of the gap to the circle.
std::vector<BallSpec> random_disc_balls(std::uint64_t seed, int count,
                                        int min_level = 1, int max_level = 8);

}  // namespace carleson
