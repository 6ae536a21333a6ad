#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "carleson/measures.hpp"
#include "carleson/planar_domain.hpp"

namespace carleson {

// Normalized reproducing-kernel power: ((1 - |a|^2) / (1 - conj(a) z)^2)^{1/p}.
// Unit norm in the 2pi-normalized p-norm on the circle.
struct HardyKernel {
  Complex a;
  double p = 2.0;
};

// ((1 - |a|^2)^{2+alpha} / (1 - conj(a) z)^{2(2+alpha)})^{1/p}; comparable to
// unit norm against the probability weight (1+alpha)(1 - |z|^2)^alpha dA/pi.
struct BergmanKernel {
  Complex a;
  double p = 2.0;
  double alpha = 0.0;
};

// (w - pole)^{-order}, principal branch; the modulus is branch-free.
struct ExteriorPole {
  Complex pole;
  double order = 2.0;
};

struct Monomial {
  int degree = 0;
  double scale = 1.0;
};

using TestFunction = std::variant<HardyKernel, BergmanKernel, ExteriorPole, Monomial>;

Complex evaluate(const TestFunction& f, Complex z);
std::string describe(const TestFunction& f);

// Midpoint polar product rule on the disc.  Radial cell weights integrate the
// measure factor exactly per cell, the integrand is read at cell midpoints.
struct DiscQuadratureSpec {
  int radial_cells = 96;
  int angular_cells = 192;
};

// Integral of g against the probability measure (1+alpha)(1 - |z|^2)^alpha dA/pi.
double disc_weighted_integral(const std::function<double(Complex)>& g, double alpha,
                              const DiscQuadratureSpec& spec = {});

// Circle p-mean against dtheta/(2pi), midpoint angles.
double hardy_norm(const std::function<Complex(Complex)>& f, double p,
                  int boundary_samples = 4096);
double hardy_norm(const TestFunction& f, double p, int boundary_samples = 4096);

// p-mean against plain arclength on the boundary polyline (not normalized),
// read at segment midpoints.
double hardy_norm(const std::function<Complex(Complex)>& f, double p,
                  const Domain& domain);
double hardy_norm(const TestFunction& f, double p, const Domain& domain);

double bergman_norm(const std::function<Complex(Complex)>& f, double p, double alpha,
                    const DiscQuadratureSpec& spec = {});
double bergman_norm(const TestFunction& f, double p, double alpha,
                    const DiscQuadratureSpec& spec = {});

// Weighted p-mean over the domain, weight dist(w, boundary)^alpha dA(w),
// computed by pulling back through the domain's source map (required).
double bergman_norm(const std::function<Complex(Complex)>& f, double p, double alpha,
                    const Domain& domain, const DiscQuadratureSpec& spec = {});

// q-mean against mu.  Atom and grid masses are read at their points, arc
// densities at segment midpoints, the radial density by the polar rule with
// exact radial cell masses.
double lq_mu_norm(const std::function<Complex(Complex)>& f, double q,
                  const PlanarMeasure& mu, const DiscQuadratureSpec& spec = {});
double lq_mu_norm(const TestFunction& f, double q, const PlanarMeasure& mu,
                  const DiscQuadratureSpec& spec = {});

enum class SpaceKind { kHardy, kBergman };

struct SpaceSpec {
  SpaceKind kind = SpaceKind::kHardy;
  double p = 2.0;
  double alpha = 0.0;  // Bergman weight, ignored for Hardy
};

// Kernel centers at radii 1 - 2^-k for k = 1..max_level with
// angular_multiplier * 2^k angles per level starting at angle 0, plus the
// listed monomial degrees.
struct FamilySpec {
  int max_level = 6;
  int angular_multiplier = 4;
  std::vector<int> monomial_degrees = {0, 1, 2, 4, 8, 16, 32};
};

std::vector<TestFunction> default_family(const SpaceSpec& space,
                                         const FamilySpec& spec = {});

struct EmbeddingOptions {
  int boundary_samples = 4096;
  DiscQuadratureSpec quadrature;
};

struct EmbeddingEstimate {
  double constant = 0.0;        // sup over the family of ||f||_{L^q(mu)} / ||f||_X
  double power_constant = 0.0;  // constant^q
  std::size_t witness = 0;      // argmax index into the family
};

// Lower bound for the best constant in ||f||_{L^q(mu)} <= C ||f||_X obtained
// by scanning the family.  Members with vanishing or non-finite space norm
// are skipped.
EmbeddingEstimate embedding_constant(const SpaceSpec& space, double q,
                                     const PlanarMeasure& mu,
                                     const std::vector<TestFunction>& family,
                                     const EmbeddingOptions& opts = {});

// Weighted mass sum along the radius at a boundary angle: for k = 0..levels,
// mu(B_k) / (1 - |z_k|)^{2-q} with z_k = (1 - 2^-k) e^{i theta} and B_k the
// Whitney ball at z_k (radius half the gap to the circle).  Requires q > 1.
double duren_cone_sum(const PlanarMeasure& mu, double theta, double q, int levels);

struct ExteriorPointResult {
  Complex point;
  double clearance = 0.0;  // min(dist to the closed domain, 2R - |point - center|)
  bool ok = false;         // clearance >= R/16
};

// Searches B(center, 2R) on a polar grid for a point far from the closed
// domain, maximizing min(dist(w, closure), 2R - |w - center|).
ExteriorPointResult exterior_point(const Domain& domain, Complex center, double R,
                                   int radial_cells = 24, int angular_cells = 96);

}  // namespace carleson
