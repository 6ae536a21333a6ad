#include "carleson/planar_domain.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace carleson {

namespace {

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

// Proper segment intersection test, endpoints excluded.
bool segments_cross(Complex p1, Complex p2, Complex q1, Complex q2) {
  double d1 = cross(p2 - p1, q1 - p1);
  double d2 = cross(p2 - p1, q2 - p1);
  double d3 = cross(q2 - q1, p1 - q1);
  double d4 = cross(q2 - q1, p2 - q1);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) &&
         d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0;
}

double point_segment_distance(Complex w, Complex a, Complex b) {
  Complex ab = b - a;
  double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(w - a);
  double t = ((w - a).real() * ab.real() + (w - a).imag() * ab.imag()) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(w - (a + t * ab));
}

}  // namespace

BoundaryCurve::BoundaryCurve(std::vector<Complex> vertices)
    : vertices_(std::move(vertices)) {
  if (vertices_.size() < 16) {
    throw std::invalid_argument("BoundaryCurve: needs at least 16 vertices");
  }
  std::size_t n = vertices_.size();
  cumulative_.resize(n + 1);
  cumulative_[0] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double len = std::abs(segment_end(i) - segment_start(i));
    cumulative_[i + 1] = cumulative_[i] + len;
  }
  if (!(cumulative_.back() > 0.0)) {
    throw std::invalid_argument("BoundaryCurve: degenerate polyline");
  }

  // Orientation: signed area must be positive.
  double twice_area = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    twice_area += cross(segment_start(i), segment_end(i));
  }
  if (!(twice_area > 0.0)) {
    throw std::invalid_argument("BoundaryCurve: vertices must be positively oriented");
  }

  // Simplicity: pairwise crossing check on a strided subset of segments.
  std::size_t stride = n <= 4096 ? 1 : (n + 4095) / 4096;
  for (std::size_t i = 0; i < n; i += stride) {
    for (std::size_t j = i + 2; j < n; j += stride) {
      if (i == 0 && j == n - 1) continue;  // closing segment touches the first
      if (segments_cross(segment_start(i), segment_end(i),
                         segment_start(j), segment_end(j))) {
        throw std::invalid_argument("BoundaryCurve: polyline self-intersects");
      }
    }
  }
}

double BoundaryCurve::segment_length(std::size_t i) const {
  return cumulative_[i + 1] - cumulative_[i];
}

double BoundaryCurve::arc_distance(std::size_t i, std::size_t j) const {
  double total = total_length();
  double d = std::abs(cumulative_[i % vertices_.size()] - cumulative_[j % vertices_.size()]);
  return std::min(d, total - d);
}

BoundaryCurve circle_curve(int n, double radius, Complex center) {
  if (n < 16) throw std::invalid_argument("circle_curve: needs n >= 16");
  std::vector<Complex> v(n);
  for (int j = 0; j < n; ++j) {
    v[j] = center + std::polar(radius, kTwoPi * j / n);
  }
  return BoundaryCurve(std::move(v));
}

BoundaryCurve square_curve(int n_per_side, double half_side) {
  if (n_per_side < 4) throw std::invalid_argument("square_curve: needs n_per_side >= 4");
  std::vector<Complex> v;
  v.reserve(static_cast<std::size_t>(4) * n_per_side);
  double h = half_side;
  Complex corners[4] = {{h, -h}, {h, h}, {-h, h}, {-h, -h}};
  for (int side = 0; side < 4; ++side) {
    Complex a = corners[side];
    Complex b = corners[(side + 1) % 4];
    for (int j = 0; j < n_per_side; ++j) {
      double t = static_cast<double>(j) / n_per_side;
      v.push_back(a + t * (b - a));
    }
  }
  return BoundaryCurve(std::move(v));
}

BoundaryCurve read_curve_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open curve file: " + path);
  std::vector<Complex> v;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double x, y;
    if (row >> x >> y) v.emplace_back(x, y);
  }
  return BoundaryCurve(std::move(v));
}

void write_curve_csv(const BoundaryCurve& curve, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write curve file: " + path);
  out << "# x,y\n";
  out.precision(17);
  for (Complex v : curve.vertices()) {
    out << v.real() << "," << v.imag() << "\n";
  }
}

Domain::Domain(BoundaryCurve curve) : curve_(std::move(curve)) {
  const auto& v = curve_.vertices();
  std::size_t n = v.size();
  double twice_area = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    twice_area += cross(v[i], v[(i + 1) % n]);
  }
  area_ = 0.5 * twice_area;

  // Diameter over a vertex subsample; exact for the subsample, a lower bound
  // for the curve that converges as vertices densify.
  std::size_t stride = n <= 2048 ? 1 : (n + 2047) / 2048;
  double best = 0.0;
  for (std::size_t i = 0; i < n; i += stride) {
    for (std::size_t j = i + 1; j < n; j += stride) {
      best = std::max(best, std::abs(v[i] - v[j]));
    }
  }
  diameter_ = best;
}

Domain Domain::from_map(const ConformalMap& map, int boundary_samples) {
  if (boundary_samples < 16) {
    throw std::invalid_argument("Domain::from_map: needs at least 16 samples");
  }
  std::vector<Complex> v(boundary_samples);
  for (int j = 0; j < boundary_samples; ++j) {
    v[j] = map.eval(std::polar(1.0, kTwoPi * j / boundary_samples));
  }
  Domain out(BoundaryCurve(std::move(v)));
  out.source_map_ = map;

  double sagitta = 0.0;
  for (int j = 0; j < boundary_samples; ++j) {
    double t0 = kTwoPi * j / boundary_samples;
    double t1 = kTwoPi * (j + 1) / boundary_samples;
    Complex mid_true = map.eval(std::polar(1.0, 0.5 * (t0 + t1)));
    Complex a = out.curve_.segment_start(j);
    Complex b = out.curve_.segment_end(j);
    sagitta = std::max(sagitta, point_segment_distance(mid_true, a, b));
  }
  out.sagitta_bound_ = sagitta;
  return out;
}

bool Domain::contains(Complex w) const {
  // Even-odd ray crossing along +x.
  const auto& v = curve_.vertices();
  std::size_t n = v.size();
  bool inside = false;
  for (std::size_t i = 0; i < n; ++i) {
    Complex a = v[i];
    Complex b = v[(i + 1) % n];
    bool a_above = a.imag() > w.imag();
    bool b_above = b.imag() > w.imag();
    if (a_above == b_above) continue;
    double x_hit = a.real() + (w.imag() - a.imag()) * (b.real() - a.real()) /
                                  (b.imag() - a.imag());
    if (x_hit > w.real()) inside = !inside;
  }
  return inside;
}

double Domain::area() const { return area_; }
double Domain::diameter() const { return diameter_; }

double distance_to_curve(const BoundaryCurve& curve, Complex w) {
  const auto& v = curve.vertices();
  std::size_t n = v.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    best = std::min(best, point_segment_distance(w, v[i], v[(i + 1) % n]));
  }
  return best;
}

double boundary_distance(const Domain& domain, Complex w) {
  return distance_to_curve(domain.curve(), w);
}

double curve_length_in_ball(const BoundaryCurve& curve, Complex center, double radius) {
  const auto& v = curve.vertices();
  std::size_t n = v.size();
  double total = 0.0;
  double r2 = radius * radius;
  for (std::size_t i = 0; i < n; ++i) {
    Complex a = v[i] - center;
    Complex b = v[(i + 1) % n] - center;
    Complex d = b - a;
    double dd = std::norm(d);
    if (dd == 0.0) continue;
    // |a + t d|^2 = r^2
    double pb = (a.real() * d.real() + a.imag() * d.imag()) / dd;
    double pc = (std::norm(a) - r2) / dd;
    double disc = pb * pb - pc;
    if (disc <= 0.0) continue;
    double sq = std::sqrt(disc);
    double t0 = std::max(-pb - sq, 0.0);
    double t1 = std::min(-pb + sq, 1.0);
    if (t1 > t0) total += (t1 - t0) * std::sqrt(dd);
  }
  return total;
}

double ahlfors_constant(const BoundaryCurve& curve,
                        std::span<const Complex> centers,
                        std::span<const double> radii) {
  if (centers.empty() || radii.empty()) {
    throw std::invalid_argument("ahlfors_constant: empty probe set");
  }
  double best = 0.0;
  for (Complex c : centers) {
    for (double r : radii) {
      if (!(r > 0.0)) continue;
      best = std::max(best, curve_length_in_ball(curve, c, r) / r);
    }
  }
  return best;
}

double chordarc_constant(const BoundaryCurve& curve, std::size_t sample_pairs) {
  if (sample_pairs < 1) throw std::invalid_argument("chordarc_constant: sample_pairs >= 1");
  std::size_t n = curve.size();
  std::vector<std::size_t> offsets;
  for (std::size_t d = 1; d <= n / 2; d *= 2) offsets.push_back(d);
  // Stride the anchors just enough to stay inside the pair budget.
  std::size_t want = n * offsets.size();
  std::size_t stride = want > sample_pairs ? (want + sample_pairs - 1) / sample_pairs : 1;

  double best = 0.0;
  for (std::size_t i = 0; i < n; i += stride) {
    for (std::size_t d : offsets) {
      std::size_t j = (i + d) % n;
      double chord = std::abs(curve.vertex(i) - curve.vertex(j));
      if (chord <= 0.0) continue;
      best = std::max(best, curve.arc_distance(i, j) / chord);
    }
  }
  return best;
}

double WhitneySquare::diam() const { return side * std::sqrt(2.0); }

bool WhitneySquare::contains(Complex w) const {
  return std::abs(w.real() - center.real()) <= 0.5 * side &&
         std::abs(w.imag() - center.imag()) <= 0.5 * side;
}

double WhitneySquareCover::total_area() const {
  double a = 0.0;
  for (const auto& s : squares) a += s.side * s.side;
  return a;
}

WhitneySquareCover whitney_cover(const Domain& domain, int max_depth) {
  if (max_depth < 0 || max_depth > kMaxWhitneyDepth) {
    throw std::invalid_argument("whitney_cover: max_depth outside [0, 14]");
  }

  const auto& v = domain.curve().vertices();
  double xmin = v[0].real(), xmax = v[0].real();
  double ymin = v[0].imag(), ymax = v[0].imag();
  for (Complex p : v) {
    xmin = std::min(xmin, p.real());
    xmax = std::max(xmax, p.real());
    ymin = std::min(ymin, p.imag());
    ymax = std::max(ymax, p.imag());
  }
  double side = 1.02 * std::max(xmax - xmin, ymax - ymin);
  Complex root_center(0.5 * (xmin + xmax), 0.5 * (ymin + ymax));

  WhitneySquareCover cover;
  cover.root_side = side;
  cover.root_center = root_center;
  cover.per_depth_counts.assign(static_cast<std::size_t>(max_depth) + 1, 0);

  struct Cell {
    Complex center;
    double side;
    int depth;
  };
  std::vector<Cell> stack{{root_center, side, 0}};
  const double sqrt2 = std::sqrt(2.0);

  while (!stack.empty()) {
    Cell cell = stack.back();
    stack.pop_back();
    double diam = cell.side * sqrt2;
    double dist = boundary_distance(domain, cell.center);
    bool inside = domain.contains(cell.center);

    if (!inside && dist > 0.5 * diam) continue;  // fully exterior

    if (inside && diam <= 0.5 * dist) {
      cover.squares.push_back(
          WhitneySquare{cell.center, cell.side, cell.depth, dist});
      cover.per_depth_counts[static_cast<std::size_t>(cell.depth)] += 1;
      continue;
    }

    if (cell.depth == max_depth) {
      cover.dropped_cells += 1;
      cover.dropped_area += cell.side * cell.side;
      continue;
    }

    double h = 0.25 * cell.side;
    double s = 0.5 * cell.side;
    int d = cell.depth + 1;
    stack.push_back({cell.center + Complex(-h, -h), s, d});
    stack.push_back({cell.center + Complex(h, -h), s, d});
    stack.push_back({cell.center + Complex(-h, h), s, d});
    stack.push_back({cell.center + Complex(h, h), s, d});
  }
  return cover;
}

double quasihyperbolic_distance(const Domain& domain, Complex w1, Complex w2,
                                const WhitneySquareCover& cover) {
  if (w1 == w2) return 0.0;
  const auto& sq = cover.squares;
  std::size_t n = sq.size();
  if (n == 0) throw std::runtime_error("quasihyperbolic_distance: empty cover");

  auto locate = [&](Complex w) -> std::size_t {
    for (std::size_t i = 0; i < n; ++i) {
      if (sq[i].contains(w)) return i;
    }
    throw std::runtime_error("quasihyperbolic_distance: point outside the cover");
  };
  std::size_t src = locate(w1);
  std::size_t dst = locate(w2);

  // Touching squares share an edge or corner up to a small tolerance.
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double lim = 0.5 * (sq[i].side + sq[j].side);
      double tol = 1e-9 * lim;
      double dx = std::abs(sq[i].center.real() - sq[j].center.real());
      double dy = std::abs(sq[i].center.imag() - sq[j].center.imag());
      if (dx <= lim + tol && dy <= lim + tol) {
        Complex mid = 0.5 * (sq[i].center + sq[j].center);
        double dist = boundary_distance(domain, mid);
        if (dist <= 0.0) continue;
        double w = std::abs(sq[i].center - sq[j].center) / dist;
        adj[i].push_back({j, w});
        adj[j].push_back({i, w});
      }
    }
  }

  // Endpoint legs from the query points to their square centers.
  auto leg = [&](Complex w, std::size_t cell) {
    double d = std::abs(w - sq[cell].center);
    if (d == 0.0) return 0.0;
    double dist = boundary_distance(domain, 0.5 * (w + sq[cell].center));
    return d / dist;
  };

  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  best[src] = 0.0;
  heap.push({0.0, src});
  while (!heap.empty()) {
    auto [d, i] = heap.top();
    heap.pop();
    if (d > best[i]) continue;
    if (i == dst) break;
    for (auto [j, w] : adj[i]) {
      double nd = d + w;
      if (nd < best[j]) {
        best[j] = nd;
        heap.push({nd, j});
      }
    }
  }
  if (!std::isfinite(best[dst])) {
    throw std::runtime_error("quasihyperbolic_distance: cover graph is disconnected");
  }
  return leg(w1, src) + best[dst] + leg(w2, dst);
}

}  // namespace carleson
