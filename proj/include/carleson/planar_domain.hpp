#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "carleson/conformal_maps.hpp"
#include "carleson/disc_geometry.hpp"

namespace carleson {

// Closed polyline boundary, positively oriented, first vertex not repeated.
// Simplicity is checked pairwise at construction (subsampled above 4096
// vertices to keep construction quadratic cost bounded).
class BoundaryCurve {
 public:
  explicit BoundaryCurve(std::vector<Complex> vertices);

  const std::vector<Complex>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  Complex vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }

  // cumulative_arclength()[i] is the length walked up to vertex i;
  // back() is the total length.
  const std::vector<double>& cumulative_arclength() const { return cumulative_; }
  double total_length() const { return cumulative_.back(); }

  // Length of the shorter boundary arc between two vertices.
  double arc_distance(std::size_t i, std::size_t j) const;

  Complex segment_start(std::size_t i) const { return vertices_[i]; }
  Complex segment_end(std::size_t i) const { return vertices_[(i + 1) % vertices_.size()]; }
  double segment_length(std::size_t i) const;

 private:
  std::vector<Complex> vertices_;
  std::vector<double> cumulative_;
};

BoundaryCurve circle_curve(int n, double radius = 1.0, Complex center = 0.0);
BoundaryCurve square_curve(int n_per_side, double half_side = 1.0);

BoundaryCurve read_curve_csv(const std::string& path);
void write_curve_csv(const BoundaryCurve& curve, const std::string& path);

// Jordan domain bounded by a polyline, optionally remembering the conformal
// map whose boundary samples produced it.
class Domain {
 public:
  explicit Domain(BoundaryCurve curve);

  // Polyline through map(e^{i theta_j}) on the uniform angle grid.  Records a
  // sagitta bound: the largest distance from a true curve midpoint to its
  // chord, which bounds the Hausdorff gap between polyline and curve.
  static Domain from_map(const ConformalMap& map, int boundary_samples);

  const BoundaryCurve& curve() const { return curve_; }
  const std::optional<ConformalMap>& source_map() const { return source_map_; }
  double sagitta_bound() const { return sagitta_bound_; }

  bool contains(Complex w) const;
  double area() const;
  double diameter() const;

 private:
  BoundaryCurve curve_;
  std::optional<ConformalMap> source_map_;
  double sagitta_bound_ = 0.0;
  double area_ = 0.0;
  double diameter_ = 0.0;
};

// Distance from a point (inside or outside) to the boundary polyline.
double boundary_distance(const Domain& domain, Complex w);
double distance_to_curve(const BoundaryCurve& curve, Complex w);

// Length of the part of the polyline inside the closed ball B(center, radius).
double curve_length_in_ball(const BoundaryCurve& curve, Complex center, double radius);

// Max over centers x radii of arclength(curve in B) / radius.
double ahlfors_constant(const BoundaryCurve& curve,
                        std::span<const Complex> centers,
                        std::span<const double> radii);

// Max over sampled vertex pairs of shorter-arc length over chord length.
// Pairs are (i, i + d) for dyadic offsets d = 1, 2, 4, ..., <= n/2 so every
// scale from one segment up to antipodal is probed; sample_pairs bounds the
// total budget by striding the anchor index i when needed.  A corner or cusp
// therefore shows up as soon as the vertex spacing resolves it.
double chordarc_constant(const BoundaryCurve& curve, std::size_t sample_pairs);

struct WhitneySquare {
  Complex center;
  double side = 0.0;
  int depth = 0;
  double center_distance = 0.0;  // distance from center to the boundary

  double diam() const;
  bool contains(Complex w) const;
};

struct WhitneySquareCover {
  std::vector<WhitneySquare> squares;
  std::vector<std::size_t> per_depth_counts;
  std::size_t dropped_cells = 0;  // undecided cells at max_depth
  double dropped_area = 0.0;
  double root_side = 0.0;
  Complex root_center;

  double total_area() const;
};

inline constexpr int kMaxWhitneyDepth = 14;

// Quadtree Whitney cover.  A cell is kept when its center lies inside and
// diam <= dist(center, boundary) / 2; oversized or straddling cells split.
// Kept cells then satisfy diam >= dist / 4.5, the sharp bound for
// center-distance quadtree refinement (see tests).
WhitneySquareCover whitney_cover(const Domain& domain, int max_depth);

// Shortest-path approximation of inf over curves of integral |dw| / dist(w).
// Graph nodes are cover squares, edges join touching squares with weight
// |c1 - c2| / dist(midpoint).  Throws std::runtime_error when the endpoints
// fall outside the cover or the graph is disconnected between them.
double quasihyperbolic_distance(const Domain& domain, Complex w1, Complex w2,
                                const WhitneySquareCover& cover);

}  // namespace carleson
