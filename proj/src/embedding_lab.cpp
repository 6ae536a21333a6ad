#include "carleson/embedding_lab.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace carleson {
namespace {

struct KahanSum {
  double total = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double y = x - carry;
    const double t = total + y;
    carry = (t - total) - y;
    total = t;
  }
};

Complex complex_power(Complex base, double exponent) {
  return std::exp(exponent * std::log(base));
}

void check_exponent(double p, const char* what) {
  if (!(p > 0.0)) {
    throw std::invalid_argument(std::string(what) + ": exponent must be positive");
  }
}

void check_quadrature(const DiscQuadratureSpec& spec) {
  if (spec.radial_cells < 1 || spec.angular_cells < 1) {
    throw std::invalid_argument("disc quadrature: cell counts must be positive");
  }
}

std::function<Complex(Complex)> as_function(const TestFunction& f) {
  return [f](Complex z) { return evaluate(f, z); };
}

}  // namespace

Complex evaluate(const TestFunction& f, Complex z) {
  if (const auto* k = std::get_if<HardyKernel>(&f)) {
    const double a2 = std::norm(k->a);
    return std::exp(std::log(1.0 - a2) / k->p -
                    (2.0 / k->p) * std::log(1.0 - std::conj(k->a) * z));
  }
  if (const auto* k = std::get_if<BergmanKernel>(&f)) {
    const double s = (2.0 + k->alpha) / k->p;
    const double a2 = std::norm(k->a);
    return std::exp(s * std::log(1.0 - a2) -
                    2.0 * s * std::log(1.0 - std::conj(k->a) * z));
  }
  if (const auto* pole = std::get_if<ExteriorPole>(&f)) {
    return complex_power(z - pole->pole, -pole->order);
  }
  const auto& mono = std::get<Monomial>(f);
  if (mono.degree == 0) return Complex(mono.scale, 0.0);
  return mono.scale * std::pow(z, static_cast<double>(mono.degree));
}

std::string describe(const TestFunction& f) {
  std::ostringstream out;
  if (const auto* k = std::get_if<HardyKernel>(&f)) {
    out << "hardy-kernel a=(" << k->a.real() << "," << k->a.imag() << ") p=" << k->p;
  } else if (const auto* k = std::get_if<BergmanKernel>(&f)) {
    out << "bergman-kernel a=(" << k->a.real() << "," << k->a.imag() << ") p=" << k->p
        << " alpha=" << k->alpha;
  } else if (const auto* pole = std::get_if<ExteriorPole>(&f)) {
    out << "exterior-pole w0=(" << pole->pole.real() << "," << pole->pole.imag()
        << ") order=" << pole->order;
  } else {
    const auto& mono = std::get<Monomial>(f);
    out << "monomial deg=" << mono.degree << " scale=" << mono.scale;
  }
  return out.str();
}

double disc_weighted_integral(const std::function<double(Complex)>& g, double alpha,
                              const DiscQuadratureSpec& spec) {
  if (!(alpha > -1.0)) {
    throw std::invalid_argument("disc quadrature: alpha must exceed -1");
  }
  check_quadrature(spec);
  const int nr = spec.radial_cells;
  const int na = spec.angular_cells;
  KahanSum sum;
  for (int i = 0; i < nr; ++i) {
    const double r0 = static_cast<double>(i) / nr;
    const double r1 = static_cast<double>(i + 1) / nr;
    const double rm = 0.5 * (r0 + r1);
    // Exact measure of the cell against (1+alpha)(1-r^2)^alpha dA / pi.
    const double cell_weight =
        (std::pow(1.0 - r0 * r0, alpha + 1.0) - std::pow(1.0 - r1 * r1, alpha + 1.0)) /
        na;
    for (int j = 0; j < na; ++j) {
      const double theta = (j + 0.5) * kTwoPi / na;
      sum.add(cell_weight * g(std::polar(rm, theta)));
    }
  }
  return sum.total;
}

double hardy_norm(const std::function<Complex(Complex)>& f, double p,
                  int boundary_samples) {
  check_exponent(p, "hardy norm");
  if (boundary_samples < 8) {
    throw std::invalid_argument("hardy norm: need at least 8 boundary samples");
  }
  KahanSum sum;
  for (int j = 0; j < boundary_samples; ++j) {
    const double theta = (j + 0.5) * kTwoPi / boundary_samples;
    sum.add(std::pow(std::abs(f(std::polar(1.0, theta))), p));
  }
  return std::pow(sum.total / boundary_samples, 1.0 / p);
}

double hardy_norm(const TestFunction& f, double p, int boundary_samples) {
  return hardy_norm(as_function(f), p, boundary_samples);
}

double hardy_norm(const std::function<Complex(Complex)>& f, double p,
                  const Domain& domain) {
  check_exponent(p, "hardy norm");
  const BoundaryCurve& curve = domain.curve();
  KahanSum sum;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const Complex mid = 0.5 * (curve.segment_start(i) + curve.segment_end(i));
    sum.add(curve.segment_length(i) * std::pow(std::abs(f(mid)), p));
  }
  return std::pow(sum.total, 1.0 / p);
}

double hardy_norm(const TestFunction& f, double p, const Domain& domain) {
  return hardy_norm(as_function(f), p, domain);
}

double bergman_norm(const std::function<Complex(Complex)>& f, double p, double alpha,
                    const DiscQuadratureSpec& spec) {
  check_exponent(p, "bergman norm");
  const double mean = disc_weighted_integral(
      [&](Complex z) { return std::pow(std::abs(f(z)), p); }, alpha, spec);
  return std::pow(mean, 1.0 / p);
}

double bergman_norm(const TestFunction& f, double p, double alpha,
                    const DiscQuadratureSpec& spec) {
  return bergman_norm(as_function(f), p, alpha, spec);
}

double bergman_norm(const std::function<Complex(Complex)>& f, double p, double alpha,
                    const Domain& domain, const DiscQuadratureSpec& spec) {
  check_exponent(p, "bergman norm");
  if (!(alpha > -1.0)) {
    throw std::invalid_argument("bergman norm: alpha must exceed -1");
  }
  if (!domain.source_map()) {
    throw std::invalid_argument("bergman norm: domain lacks a source map");
  }
  const ConformalMap& map = *domain.source_map();
  // Unweighted disc quadrature of |f(phi)|^p dist^alpha |phi'|^2, times pi to
  // undo the probability normalization: the result integrates plain area.
  const double mean = disc_weighted_integral(
      [&](Complex z) {
        const Complex w = map.eval(z);
        double value = std::pow(std::abs(f(w)), p) * std::norm(map.deriv(z));
        if (alpha != 0.0) {
          value *= std::pow(boundary_distance(domain, w), alpha);
        }
        return value;
      },
      0.0, spec);
  return std::pow(kPi * mean, 1.0 / p);
}

double lq_mu_norm(const std::function<Complex(Complex)>& f, double q,
                  const PlanarMeasure& mu, const DiscQuadratureSpec& spec) {
  check_exponent(q, "lq norm");
  KahanSum sum;
  if (const auto* radial = std::get_if<RadialPowerDensity>(&mu)) {
    check_quadrature(spec);
    const int nr = spec.radial_cells;
    const int na = spec.angular_cells;
    for (int i = 0; i < nr; ++i) {
      const double r0 = static_cast<double>(i) / nr;
      const double r1 = static_cast<double>(i + 1) / nr;
      const double rm = 0.5 * (r0 + r1);
      const double cell_mass =
          (radial->radial_tail_integral(r0) - radial->radial_tail_integral(r1)) *
          kTwoPi / na;
      for (int j = 0; j < na; ++j) {
        const double theta = (j + 0.5) * kTwoPi / na;
        sum.add(cell_mass * std::pow(std::abs(f(std::polar(rm, theta))), q));
      }
    }
    return std::pow(sum.total, 1.0 / q);
  }
  if (const auto* arcs = std::get_if<BoundaryArcMeasure>(&mu)) {
    const BoundaryCurve& curve = arcs->curve();
    for (std::size_t i = 0; i < curve.size(); ++i) {
      const Complex mid = 0.5 * (curve.segment_start(i) + curve.segment_end(i));
      sum.add(arcs->density()[i] * curve.segment_length(i) *
              std::pow(std::abs(f(mid)), q));
    }
    return std::pow(sum.total, 1.0 / q);
  }
  for (const auto& atom : as_atoms(mu)) {
    sum.add(atom.weight * std::pow(std::abs(f(atom.point)), q));
  }
  return std::pow(sum.total, 1.0 / q);
}

double lq_mu_norm(const TestFunction& f, double q, const PlanarMeasure& mu,
                  const DiscQuadratureSpec& spec) {
  return lq_mu_norm(as_function(f), q, mu, spec);
}

std::vector<TestFunction> default_family(const SpaceSpec& space,
                                         const FamilySpec& spec) {
  if (spec.max_level < 1 || spec.max_level > 16) {
    throw std::invalid_argument("test family: max_level must lie in [1, 16]");
  }
  if (spec.angular_multiplier < 1) {
    throw std::invalid_argument("test family: angular_multiplier must be >= 1");
  }
  std::vector<TestFunction> family;
  for (int level = 1; level <= spec.max_level; ++level) {
    const double rho = 1.0 - std::ldexp(1.0, -level);
    const int n_ang = spec.angular_multiplier << level;
    for (int j = 0; j < n_ang; ++j) {
      const Complex a = std::polar(rho, j * kTwoPi / n_ang);
      if (space.kind == SpaceKind::kHardy) {
        family.push_back(HardyKernel{a, space.p});
      } else {
        family.push_back(BergmanKernel{a, space.p, space.alpha});
      }
    }
  }
  for (int degree : spec.monomial_degrees) {
    if (degree < 0) throw std::invalid_argument("test family: negative degree");
    family.push_back(Monomial{degree, 1.0});
  }
  return family;
}

EmbeddingEstimate embedding_constant(const SpaceSpec& space, double q,
                                     const PlanarMeasure& mu,
                                     const std::vector<TestFunction>& family,
                                     const EmbeddingOptions& opts) {
  check_exponent(q, "embedding scan");
  if (family.empty()) {
    throw std::invalid_argument("embedding scan: empty test family");
  }
  EmbeddingEstimate estimate;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const TestFunction& f = family[i];
    const double space_norm =
        space.kind == SpaceKind::kHardy
            ? hardy_norm(f, space.p, opts.boundary_samples)
            : bergman_norm(f, space.p, space.alpha, opts.quadrature);
    if (!(space_norm > 0.0) || !std::isfinite(space_norm)) continue;
    const double lq = lq_mu_norm(f, q, mu, opts.quadrature);
    if (!std::isfinite(lq)) continue;
    const double ratio = lq / space_norm;
    if (ratio > estimate.constant) {
      estimate.constant = ratio;
      estimate.witness = i;
    }
  }
  estimate.power_constant = std::pow(estimate.constant, q);
  return estimate;
}

double duren_cone_sum(const PlanarMeasure& mu, double theta, double q, int levels) {
  if (!(q > 1.0)) throw std::invalid_argument("cone sum: q must exceed 1");
  if (levels < 0 || levels > 60) {
    throw std::invalid_argument("cone sum: levels out of range");
  }
  KahanSum sum;
  for (int k = 0; k <= levels; ++k) {
    const double gap = std::ldexp(1.0, -k);  // 1 - |z_k|
    const Complex z_k = std::polar(1.0 - gap, theta);
    const DiscWhitneyBall ball = whitney_ball_at(z_k);
    const double mass = measure_of_ball(mu, ball.center, ball.radius);
    if (mass > 0.0) sum.add(mass / std::pow(gap, 2.0 - q));
  }
  return sum.total;
}

ExteriorPointResult exterior_point(const Domain& domain, Complex center, double R,
                                   int radial_cells, int angular_cells) {
  if (!(R > 0.0)) throw std::invalid_argument("exterior point: R must be positive");
  if (radial_cells < 2 || angular_cells < 4) {
    throw std::invalid_argument("exterior point: grid too small");
  }
  const auto clearance_at = [&](Complex w) {
    const double outside =
        domain.contains(w) ? 0.0 : distance_to_curve(domain.curve(), w);
    return std::min(outside, 2.0 * R - std::abs(w - center));
  };
  ExteriorPointResult best;
  best.point = center;
  best.clearance = clearance_at(center);
  for (int i = 0; i < radial_cells; ++i) {
    const double r = (i + 0.5) * 2.0 * R / radial_cells;
    for (int j = 0; j < angular_cells; ++j) {
      const Complex w = center + std::polar(r, (j + 0.5) * kTwoPi / angular_cells);
      const double value = clearance_at(w);
      if (value > best.clearance) {
        best.point = w;
        best.clearance = value;
      }
    }
  }
  best.ok = best.clearance >= R / 16.0;
  return best;
}

}  // namespace carleson
