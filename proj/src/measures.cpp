#include "carleson/measures.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace carleson {

AtomicMeasure::AtomicMeasure(std::vector<WeightedAtom> atoms) : atoms_(std::move(atoms)) {
  for (const auto& a : atoms_) {
    if (a.weight < 0.0) throw std::invalid_argument("AtomicMeasure: negative weight");
    total_ += a.weight;
  }
}

void AtomicMeasure::add(Complex point, double weight) {
  if (weight < 0.0) throw std::invalid_argument("AtomicMeasure: negative weight");
  atoms_.push_back({point, weight});
  total_ += weight;
}

GridDensityMeasure::GridDensityMeasure(double x0, double y0, double dx, double dy,
                                       int nx, int ny, std::vector<double> values)
    : x0_(x0), y0_(y0), dx_(dx), dy_(dy), nx_(nx), ny_(ny), values_(std::move(values)) {
  if (nx_ <= 0 || ny_ <= 0 || !(dx_ > 0.0) || !(dy_ > 0.0)) {
    throw std::invalid_argument("GridDensityMeasure: bad grid spec");
  }
  if (values_.size() != static_cast<std::size_t>(nx_) * ny_) {
    throw std::invalid_argument("GridDensityMeasure: value count mismatch");
  }
  for (double v : values_) {
    if (v < 0.0) throw std::invalid_argument("GridDensityMeasure: negative cell value");
  }
}

Complex GridDensityMeasure::cell_center(int i, int j) const {
  return Complex(x0_ + (i + 0.5) * dx_, y0_ + (j + 0.5) * dy_);
}

double GridDensityMeasure::cell_mass(int i, int j) const {
  return values_[static_cast<std::size_t>(j) * nx_ + i] * dx_ * dy_;
}

double GridDensityMeasure::total_mass() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s * dx_ * dy_;
}

BoundaryArcMeasure::BoundaryArcMeasure(BoundaryCurve curve, std::vector<double> density)
    : curve_(std::move(curve)), density_(std::move(density)) {
  if (density_.size() != curve_.size()) {
    throw std::invalid_argument("BoundaryArcMeasure: one density value per segment");
  }
  for (double v : density_) {
    if (v < 0.0) throw std::invalid_argument("BoundaryArcMeasure: negative density");
  }
}

double BoundaryArcMeasure::total_mass() const {
  double s = 0.0;
  for (std::size_t i = 0; i < density_.size(); ++i) {
    s += density_[i] * curve_.segment_length(i);
  }
  return s;
}

RadialPowerDensity::RadialPowerDensity(double coeff, double exponent)
    : coeff_(coeff), exponent_(exponent) {
  if (coeff < 0.0) throw std::invalid_argument("RadialPowerDensity: negative coefficient");
  if (!(exponent > -1.0)) {
    throw std::invalid_argument("RadialPowerDensity: exponent must exceed -1");
  }
}

double RadialPowerDensity::radial_tail_integral(double r0) const {
  // substitute u = 1 - r: integral of u^s (1 - u) du over (0, 1 - r0].
  double u = 1.0 - std::clamp(r0, 0.0, 1.0);
  double s = exponent_;
  double val = std::pow(u, s + 1.0) / (s + 1.0) - std::pow(u, s + 2.0) / (s + 2.0);
  return coeff_ * val;
}

double RadialPowerDensity::total_mass() const {
  return kTwoPi * radial_tail_integral(0.0);
}

namespace {

double ball_mass_radial(const RadialPowerDensity& mu, Complex center, double radius) {
  if (!(radius > 0.0)) return 0.0;
  double c = std::abs(center);
  if (c - radius >= 1.0) return 0.0;
  if (mu.exponent() == 0.0 && c + radius <= 1.0) {
    return mu.coeff() * kPi * radius * radius;
  }
  // Polar midpoint rule around the ball center, density zero outside the disc.
  const int n_rho = 64;
  const int n_ang = 64;
  double sum = 0.0;
  for (int i = 0; i < n_rho; ++i) {
    double rho = (i + 0.5) * radius / n_rho;
    double ring = 0.0;
    for (int j = 0; j < n_ang; ++j) {
      double ang = (j + 0.5) * kTwoPi / n_ang;
      double r = std::abs(center + std::polar(rho, ang));
      if (r < 1.0) ring += std::pow(1.0 - r, mu.exponent());
    }
    sum += ring * rho;
  }
  return mu.coeff() * sum * (radius / n_rho) * (kTwoPi / n_ang);
}

// Arclength of a polyline segment chain inside a region, by midpoint test on
// sub-segments no longer than the resolution.
template <typename Pred>
double curve_length_where(const BoundaryCurve& curve, const std::vector<double>& density,
                          Pred&& pred) {
  double total = 0.0;
  std::size_t n = curve.size();
  for (std::size_t i = 0; i < n; ++i) {
    Complex a = curve.segment_start(i);
    Complex b = curve.segment_end(i);
    double len = std::abs(b - a);
    if (len == 0.0) continue;
    int pieces = std::max(1, static_cast<int>(std::ceil(len / 1e-3)));
    pieces = std::min(pieces, 64);
    double piece_len = len / pieces;
    for (int k = 0; k < pieces; ++k) {
      Complex mid = a + (b - a) * ((k + 0.5) / pieces);
      if (pred(mid)) total += density[i] * piece_len;
    }
  }
  return total;
}

}  // namespace

double total_mass(const PlanarMeasure& mu) {
  return std::visit([](const auto& m) { return m.total_mass(); }, mu);
}

double measure_of_box(const PlanarMeasure& mu, const CarlesonBox& box) {
  struct Visitor {
    const CarlesonBox& box;
    double operator()(const AtomicMeasure& m) const {
      double s = 0.0;
      for (const auto& a : m.atoms()) {
        if (box.contains(a.point)) s += a.weight;
      }
      return s;
    }
    double operator()(const GridDensityMeasure& m) const {
      double s = 0.0;
      for (int j = 0; j < m.ny(); ++j) {
        for (int i = 0; i < m.nx(); ++i) {
          if (box.contains(m.cell_center(i, j))) s += m.cell_mass(i, j);
        }
      }
      return s;
    }
    double operator()(const BoundaryArcMeasure& m) const {
      return curve_length_where(m.curve(), m.density(),
                                [&](Complex w) { return box.contains(w); });
    }
    double operator()(const RadialPowerDensity& m) const {
      return box.arc().length() * m.radial_tail_integral(box.inner_radius());
    }
  };
  return std::visit(Visitor{box}, mu);
}

double measure_of_top(const PlanarMeasure& mu, const BoxTop& top) {
  struct Visitor {
    const BoxTop& top;
    double operator()(const AtomicMeasure& m) const {
      double s = 0.0;
      for (const auto& a : m.atoms()) {
        if (top.contains(a.point)) s += a.weight;
      }
      return s;
    }
    double operator()(const GridDensityMeasure& m) const {
      double s = 0.0;
      for (int j = 0; j < m.ny(); ++j) {
        for (int i = 0; i < m.nx(); ++i) {
          if (top.contains(m.cell_center(i, j))) s += m.cell_mass(i, j);
        }
      }
      return s;
    }
    double operator()(const BoundaryArcMeasure& m) const {
      return curve_length_where(m.curve(), m.density(),
                                [&](Complex w) { return top.contains(w); });
    }
    double operator()(const RadialPowerDensity&) const { return 0.0; }
  };
  if (std::holds_alternative<RadialPowerDensity>(mu)) {
    const auto& m = std::get<RadialPowerDensity>(mu);
    return top.arc().length() *
           (m.radial_tail_integral(top.inner_radius()) -
            m.radial_tail_integral(top.outer_radius()));
  }
  return std::visit(Visitor{top}, mu);
}

double measure_of_ball(const PlanarMeasure& mu, Complex center, double radius) {
  if (!(radius >= 0.0)) throw std::invalid_argument("measure_of_ball: negative radius");
  struct Visitor {
    Complex center;
    double radius;
    double operator()(const AtomicMeasure& m) const {
      double s = 0.0;
      for (const auto& a : m.atoms()) {
        if (std::abs(a.point - center) <= radius) s += a.weight;
      }
      return s;
    }
    double operator()(const GridDensityMeasure& m) const {
      double s = 0.0;
      for (int j = 0; j < m.ny(); ++j) {
        for (int i = 0; i < m.nx(); ++i) {
          if (std::abs(m.cell_center(i, j) - center) <= radius) s += m.cell_mass(i, j);
        }
      }
      return s;
    }
    double operator()(const BoundaryArcMeasure& m) const {
      // Exact clip of each segment against the ball, constant density each.
      double total = 0.0;
      const auto& curve = m.curve();
      std::size_t n = curve.size();
      for (std::size_t i = 0; i < n; ++i) {
        Complex a = curve.segment_start(i) - center;
        Complex b = curve.segment_end(i) - center;
        Complex d = b - a;
        double dd = std::norm(d);
        if (dd == 0.0) continue;
        double pb = (a.real() * d.real() + a.imag() * d.imag()) / dd;
        double pc = (std::norm(a) - radius * radius) / dd;
        double disc = pb * pb - pc;
        if (disc <= 0.0) continue;
        double sq = std::sqrt(disc);
        double t0 = std::max(-pb - sq, 0.0);
        double t1 = std::min(-pb + sq, 1.0);
        if (t1 > t0) total += m.density()[i] * (t1 - t0) * std::sqrt(dd);
      }
      return total;
    }
    double operator()(const RadialPowerDensity& m) const {
      return ball_mass_radial(m, center, radius);
    }
  };
  return std::visit(Visitor{center, radius}, mu);
}

std::vector<WeightedAtom> as_atoms(const PlanarMeasure& mu) {
  struct Visitor {
    std::vector<WeightedAtom> operator()(const AtomicMeasure& m) const {
      return m.atoms();
    }
    std::vector<WeightedAtom> operator()(const GridDensityMeasure& m) const {
      std::vector<WeightedAtom> out;
      out.reserve(static_cast<std::size_t>(m.nx()) * m.ny());
      for (int j = 0; j < m.ny(); ++j) {
        for (int i = 0; i < m.nx(); ++i) {
          double w = m.cell_mass(i, j);
          if (w > 0.0) out.push_back({m.cell_center(i, j), w});
        }
      }
      return out;
    }
    std::vector<WeightedAtom> operator()(const BoundaryArcMeasure& m) const {
      std::vector<WeightedAtom> out;
      const auto& curve = m.curve();
      for (std::size_t i = 0; i < curve.size(); ++i) {
        double w = m.density()[i] * curve.segment_length(i);
        if (w > 0.0) {
          out.push_back({0.5 * (curve.segment_start(i) + curve.segment_end(i)), w});
        }
      }
      return out;
    }
    std::vector<WeightedAtom> operator()(const RadialPowerDensity&) const {
      throw std::invalid_argument("as_atoms: radial density has no atom view");
    }
  };
  return std::visit(Visitor{}, mu);
}

EmbeddingParams::EmbeddingParams(double p_, double q_, double alpha_)
    : p(p_), q(q_), alpha(alpha_) {
  if (!(p > 0.0)) throw std::invalid_argument("EmbeddingParams: p must be positive");
  if (!(q >= p)) throw std::invalid_argument("EmbeddingParams: q must be >= p");
  if (!(alpha > -1.0)) throw std::invalid_argument("EmbeddingParams: alpha must exceed -1");
}

namespace {

struct SeedGrid {
  std::vector<Complex> z;
  std::vector<Complex> w;
};

SeedGrid build_seed_grid(const ConformalMap& map) {
  SeedGrid g;
  const int n_rad = 24;
  const int n_ang = 48;
  g.z.reserve(n_rad * n_ang + 1);
  g.z.push_back(0.0);
  for (int i = 0; i < n_rad; ++i) {
    double r = (i + 0.5) / n_rad;
    r = 1.0 - std::pow(1.0 - r, 1.5);  // denser near the rim
    for (int j = 0; j < n_ang; ++j) {
      g.z.push_back(std::polar(r, kTwoPi * j / n_ang));
    }
  }
  g.w.resize(g.z.size());
  for (std::size_t i = 0; i < g.z.size(); ++i) g.w[i] = map.eval(g.z[i]);
  return g;
}

InversionResult newton_invert(const ConformalMap& map, Complex w, const SeedGrid& grid,
                              double tol) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.w.size(); ++i) {
    double d = std::abs(grid.w[i] - w);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  Complex z = grid.z[best];
  double res = std::abs(map.eval(z) - w);
  InversionResult out;
  for (int iter = 0; iter < 100; ++iter) {
    if (res <= tol) {
      out.z = z;
      out.converged = true;
      out.residual = res;
      out.iterations = iter;
      return out;
    }
    Complex d = map.deriv(z);
    if (std::abs(d) == 0.0) break;
    Complex step = (map.eval(z) - w) / d;
    double t = 1.0;
    Complex zn = z;
    double rn = res;
    for (int halve = 0; halve < 30; ++halve) {
      Complex cand = z - t * step;
      if (std::abs(cand) >= 1.0) {
        cand *= (1.0 - 1e-12) / std::abs(cand);
      }
      double rc = std::abs(map.eval(cand) - w);
      if (rc < res) {
        zn = cand;
        rn = rc;
        break;
      }
      t *= 0.5;
    }
    if (rn >= res) break;  // no progress
    z = zn;
    res = rn;
  }
  out.z = z;
  out.converged = res <= tol;
  out.residual = res;
  return out;
}

PullbackResult pullback_impl(const ConformalMap& map, const PlanarMeasure& mu,
                             double exponent, double tol) {
  if (std::holds_alternative<BoundaryArcMeasure>(mu) ||
      std::holds_alternative<RadialPowerDensity>(mu)) {
    throw std::invalid_argument("pullback: measure must be atomic or grid density");
  }
  SeedGrid grid = build_seed_grid(map);
  PullbackResult out;
  for (const auto& atom : as_atoms(mu)) {
    InversionResult inv = newton_invert(map, atom.point, grid, tol);
    if (!inv.converged) {
      out.rejected.push_back(atom);
      out.rejected_mass += atom.weight;
      continue;
    }
    if (std::abs(inv.z) > kNearBoundaryRadius) ++out.near_boundary_flags;
    double w = atom.weight;
    if (exponent != 0.0) {
      w /= std::pow(std::abs(map.deriv(inv.z)), exponent);
    }
    out.measure.add(inv.z, w);
  }
  return out;
}

}  // namespace

InversionResult invert_map(const ConformalMap& map, Complex w, double tol) {
  SeedGrid grid = build_seed_grid(map);
  return newton_invert(map, w, grid, tol);
}

PullbackResult pullback(const ConformalMap& map, const PlanarMeasure& mu,
                        double inversion_tol) {
  return pullback_impl(map, mu, 0.0, inversion_tol);
}

PullbackResult weighted_pullback(const ConformalMap& map, const PlanarMeasure& mu,
                                 double exponent, double inversion_tol) {
  return pullback_impl(map, mu, exponent, inversion_tol);
}

AtomicMeasure read_atoms_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open atom file: " + path);
  AtomicMeasure mu;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double x, y, w;
    if (row >> x >> y >> w) mu.add(Complex(x, y), w);
  }
  return mu;
}

void write_atoms_csv(const AtomicMeasure& mu, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write atom file: " + path);
  out << "# x,y,weight\n";
  out.precision(17);
  for (const auto& a : mu.atoms()) {
    out << a.point.real() << "," << a.point.imag() << "," << a.weight << "\n";
  }
}

GridDensityMeasure read_grid_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open grid file: " + path);
  std::string line;
  double x0 = 0, y0 = 0, dx = 0, dy = 0;
  int nx = 0, ny = 0;
  bool have_header = false;
  std::vector<double> values;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    if (!have_header) {
      std::string tag;
      if (!(row >> tag >> x0 >> y0 >> dx >> dy >> nx >> ny) || tag != "grid") {
        throw std::runtime_error("grid file must start with: grid,x0,y0,dx,dy,nx,ny");
      }
      have_header = true;
      values.reserve(static_cast<std::size_t>(nx) * ny);
      continue;
    }
    double v;
    while (row >> v) values.push_back(v);
  }
  if (!have_header) throw std::runtime_error("grid file missing header: " + path);
  return GridDensityMeasure(x0, y0, dx, dy, nx, ny, std::move(values));
}

void write_grid_csv(const GridDensityMeasure& mu, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write grid file: " + path);
  out.precision(17);
  out << "grid," << mu.x0() << "," << mu.y0() << "," << mu.dx() << "," << mu.dy()
      << "," << mu.nx() << "," << mu.ny() << "\n";
  for (int j = 0; j < mu.ny(); ++j) {
    for (int i = 0; i < mu.nx(); ++i) {
      out << mu.values()[static_cast<std::size_t>(j) * mu.nx() + i];
      out << (i + 1 == mu.nx() ? '\n' : ',');
    }
  }
}

std::vector<AtomicMeasure> random_atom_suite(std::uint64_t seed, int n_measures,
                                             int atoms_each, int max_level) {
  if (n_measures <= 0 || atoms_each <= 0 || max_level < 1) {
    throw std::invalid_argument("random_atom_suite: bad suite parameters");
  }
  std::mt19937_64 engine(seed);
  auto uniform = [&engine]() {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
  };
  std::vector<AtomicMeasure> suite;
  suite.reserve(static_cast<std::size_t>(n_measures));
  for (int m = 0; m < n_measures; ++m) {
    AtomicMeasure mu;
    for (int a = 0; a < atoms_each; ++a) {
      int level = 1 + static_cast<int>(uniform() * max_level);
      if (level > max_level) level = max_level;
      double r = 1.0 - std::ldexp(1.0, -level);
      double theta = uniform() * kTwoPi;
      Complex z = std::polar(r, theta);
      // polar can round the modulus a hair below the dyadic radius, which
      // would drop the atom out of its own box band; nudge outward.
      while (std::abs(z) < r) z *= 1.0 + 0x1.0p-52;
      mu.add(z, 1.0);
    }
    suite.push_back(std::move(mu));
  }
  return suite;
}

}  // namespace carleson
