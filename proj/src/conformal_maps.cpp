#include "carleson/conformal_maps.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace carleson {

namespace detail {

// Principal logarithm; the catalog keeps every argument inside the right
// half plane away from the branch cut, so this is continuous where used.
inline Complex plog(Complex w) { return std::log(w); }

class MapNode {
 public:
  virtual ~MapNode() = default;
  virtual Complex eval(Complex z) const = 0;
  virtual Complex deriv(Complex z) const = 0;
  virtual Complex log_deriv(Complex z) const = 0;
  virtual std::string describe() const = 0;
};

class IdentityNode final : public MapNode {
 public:
  Complex eval(Complex z) const override { return z; }
  Complex deriv(Complex) const override { return 1.0; }
  Complex log_deriv(Complex) const override { return 0.0; }
  std::string describe() const override { return "identity"; }
};

class MoebiusNode final : public MapNode {
 public:
  explicit MoebiusNode(Complex a) : a_(a) {}
  Complex eval(Complex z) const override {
    return (z + a_) / (1.0 + std::conj(a_) * z);
  }
  Complex deriv(Complex z) const override {
    Complex d = 1.0 + std::conj(a_) * z;
    return (1.0 - std::norm(a_)) / (d * d);
  }
  Complex log_deriv(Complex z) const override {
    // Re(1 + conj(a) z) > 0 on the closed disc, so each factor is principal.
    return std::log(1.0 - std::norm(a_)) - 2.0 * plog(1.0 + std::conj(a_) * z);
  }
  std::string describe() const override {
    std::ostringstream os;
    os << "moebius(" << a_.real() << (a_.imag() < 0 ? "-" : "+")
       << std::abs(a_.imag()) << "i)";
    return os.str();
  }

 private:
  Complex a_;
};

class QuadraticNode final : public MapNode {
 public:
  explicit QuadraticNode(Complex c) : c_(c) {}
  Complex eval(Complex z) const override { return z + c_ * z * z; }
  Complex deriv(Complex z) const override { return 1.0 + 2.0 * c_ * z; }
  Complex log_deriv(Complex z) const override {
    // |2 c z| <= 1 with equality only on the boundary: right half plane.
    return plog(1.0 + 2.0 * c_ * z);
  }
  std::string describe() const override {
    std::ostringstream os;
    os << "quadratic(" << c_.real() << (c_.imag() < 0 ? "-" : "+")
       << std::abs(c_.imag()) << "i)";
    return os.str();
  }

 private:
  Complex c_;
};

class PowerCornerNode final : public MapNode {
 public:
  explicit PowerCornerNode(double gamma) : gamma_(gamma) {}
  Complex eval(Complex z) const override {
    return std::exp(gamma_ * plog(0.5 * (1.0 + z)));
  }
  Complex deriv(Complex z) const override {
    // (gamma/2) ((1+z)/2)^(gamma-1)
    return 0.5 * gamma_ * std::exp((gamma_ - 1.0) * plog(0.5 * (1.0 + z)));
  }
  Complex log_deriv(Complex z) const override {
    return std::log(0.5 * gamma_) + (gamma_ - 1.0) * plog(0.5 * (1.0 + z));
  }
  std::string describe() const override {
    std::ostringstream os;
    os << "power_corner(" << gamma_ << ")";
    return os.str();
  }

 private:
  double gamma_;
};

class ComposeNode final : public MapNode {
 public:
  ComposeNode(std::shared_ptr<const MapNode> outer, std::shared_ptr<const MapNode> inner)
      : outer_(std::move(outer)), inner_(std::move(inner)) {}
  Complex eval(Complex z) const override { return outer_->eval(inner_->eval(z)); }
  Complex deriv(Complex z) const override {
    return outer_->deriv(inner_->eval(z)) * inner_->deriv(z);
  }
  Complex log_deriv(Complex z) const override {
    return outer_->log_deriv(inner_->eval(z)) + inner_->log_deriv(z);
  }
  std::string describe() const override {
    return outer_->describe() + " o " + inner_->describe();
  }

 private:
  std::shared_ptr<const MapNode> outer_;
  std::shared_ptr<const MapNode> inner_;
};

}  // namespace detail

ConformalMap::ConformalMap(std::shared_ptr<const detail::MapNode> node)
    : node_(std::move(node)), descriptor_(node_->describe()), branch_shift_(0.0) {
  // Fold the branch at the origin back to the principal strip.
  Complex at0 = node_->log_deriv(0.0);
  double k = std::floor((at0.imag() + kPi) / kTwoPi);
  branch_shift_ = Complex(0.0, -kTwoPi * k);
}

Complex ConformalMap::eval(Complex z) const { return node_->eval(z); }
Complex ConformalMap::deriv(Complex z) const { return node_->deriv(z); }

Complex ConformalMap::log_deriv(Complex z) const {
  return node_->log_deriv(z) + branch_shift_;
}

double ConformalMap::log_abs_deriv(Complex z) const {
  return std::log(std::abs(node_->deriv(z)));
}

double ConformalMap::boundary_log_abs_deriv(double theta) const {
  return std::log(std::abs(node_->deriv(std::polar(1.0, theta))));
}

const std::string& ConformalMap::descriptor() const { return descriptor_; }

ConformalMap ConformalMap::identity() {
  return ConformalMap(std::make_shared<detail::IdentityNode>());
}

ConformalMap ConformalMap::moebius(Complex a) {
  if (!(std::abs(a) < 1.0)) {
    throw std::invalid_argument("moebius: parameter must satisfy |a| < 1");
  }
  return ConformalMap(std::make_shared<detail::MoebiusNode>(a));
}

ConformalMap ConformalMap::quadratic(Complex c) {
  if (std::abs(c) > 0.5 + 1e-15) {
    throw std::invalid_argument("quadratic: univalence requires |c| <= 1/2");
  }
  return ConformalMap(std::make_shared<detail::QuadraticNode>(c));
}

ConformalMap ConformalMap::power_corner(double gamma) {
  if (!(gamma > 0.0) || gamma > 2.0 + 1e-15) {
    throw std::invalid_argument("power_corner: exponent must lie in (0, 2]");
  }
  return ConformalMap(std::make_shared<detail::PowerCornerNode>(gamma));
}

ConformalMap ConformalMap::compose(const ConformalMap& outer, const ConformalMap& inner) {
  return ConformalMap(std::make_shared<detail::ComposeNode>(outer.node_, inner.node_));
}

double bloch_oscillation(const ConformalMap& map, const BoxTop& top, int samples) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (Complex z : top.sample_grid(samples)) {
    double v = map.log_abs_deriv(z);
    if (!std::isfinite(v)) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(hi >= lo)) return 0.0;
  return hi - lo;
}

BmoEstimate bmo_norm_estimate(const ConformalMap& map, int depth, int quad_points) {
  if (depth < 0 || depth > kMaxDyadicDepth) {
    throw std::invalid_argument("bmo_norm_estimate: depth outside [0, 30]");
  }
  if (quad_points < 2) quad_points = 2;

  BmoEstimate out;
  for (int level = 0; level <= depth; ++level) {
    std::uint64_t count = std::uint64_t{1} << level;
    double length = kTwoPi / static_cast<double>(count);
    double radius = 1.0 - 0.5 * length;
    if (radius < 0.0) radius = 0.0;
    for (std::uint64_t j = 0; j < count; ++j) {
      double start = static_cast<double>(j) * length;
      double center = start + 0.5 * length;
      double ref = map.log_abs_deriv(std::polar(radius, center));
      if (!std::isfinite(ref)) {
        ++out.skipped_nodes;
        continue;
      }
      double sum = 0.0;
      int used = 0;
      for (int m = 0; m < quad_points; ++m) {
        double theta = start + (m + 0.5) * length / quad_points;
        double v = map.boundary_log_abs_deriv(theta);
        if (!std::isfinite(v)) {
          ++out.skipped_nodes;
          continue;
        }
        sum += std::abs(v - ref);
        ++used;
      }
      if (used == 0) continue;
      double mean = sum / used;
      out.value = std::max(out.value, mean);
    }
  }
  return out;
}

double poisson_extension(const std::vector<double>& boundary_values, Complex z) {
  if (boundary_values.empty()) {
    throw std::invalid_argument("poisson_extension: empty boundary grid");
  }
  if (!(std::abs(z) < 1.0)) {
    throw std::invalid_argument("poisson_extension: point must be interior");
  }
  std::size_t n = boundary_values.size();
  double w = 1.0 - std::norm(z);
  double sum = 0.0;
  double comp = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    Complex xi = std::polar(1.0, kTwoPi * static_cast<double>(j) / static_cast<double>(n));
    double term = boundary_values[j] * w / std::norm(xi - z);
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum / static_cast<double>(n);
}

double nontangential_max(const std::function<double(Complex)>& u,
                         double vertex_angle, double aperture, int radial_levels) {
  if (radial_levels < 0) {
    throw std::invalid_argument("nontangential_max: negative level count");
  }
  Cone cone(vertex_angle, aperture);
  double best = -std::numeric_limits<double>::infinity();
  const int sweep = 9;
  for (int k = 0; k <= radial_levels; ++k) {
    double r = 1.0 - std::ldexp(1.0, -k);
    // Angular half width of the cone section at radius r, slightly shrunk to
    // stay strictly inside.
    double half = 0.0;
    if (r > 0.0) {
      double a2 = aperture * aperture - 1.0;
      half = 0.98 * (1.0 - r) * std::sqrt(a2) / r;
    }
    for (int s = 0; s < sweep; ++s) {
      double frac = sweep == 1 ? 0.0 : -1.0 + 2.0 * s / (sweep - 1);
      Complex z = std::polar(r, vertex_angle + frac * half);
      if (k > 0 && !cone.contains(z)) continue;
      double v = std::abs(u(z));
      best = std::max(best, v);
    }
  }
  return best;
}

KoebeBounds koebe_delta_bounds(const ConformalMap& map, Complex z) {
  if (!(std::abs(z) < 1.0)) {
    throw std::invalid_argument("koebe_delta_bounds: point must be interior");
  }
  double scale = std::abs(map.deriv(z)) * (1.0 - std::norm(z));
  return KoebeBounds{0.25 * scale, scale};
}

}  // namespace carleson
