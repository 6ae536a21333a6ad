#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace carleson {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Lower edge of the admissible Whitney radius band, as a fraction of the
// distance to the boundary.
inline constexpr double kWhitneyLowerFactor = 0.25;

// Maps an arbitrary angle into [0, 2*pi).
double normalize_angle(double theta);

// 1 - length/(2*pi), clamped at 0.  Shared by boxes and box tops so that a
// child box and its parent's top meet at the bit-identical radius.
double inner_radius_for_arc_length(double length);

// Arc of the unit circle.  Arcs are half open: the left endpoint belongs to
// the arc, the right one does not.  A full-circle arc contains every angle.
// Membership is resolved through offset arithmetic, so at the seam between
// two sibling halves an angle can land on either side within one rounding of
// the endpoint; exact seam queries are only meaningful for arcs whose
// endpoints are representable.
class CircleArc {
 public:
  CircleArc(double center_angle, double length);

  double center_angle() const { return center_angle_; }
  double length() const { return length_; }
  double start_angle() const;

  bool contains_angle(double theta) const;
  bool is_full_circle() const { return length_ >= kTwoPi; }

  CircleArc left_half() const;
  CircleArc right_half() const;
  CircleArc rotated(double delta) const;

  // Equality up to 2*pi periodicity of the center angle.
  bool approx_equal(const CircleArc& other, double tol) const;

 private:
  double center_angle_;  // in [0, 2*pi)
  double length_;        // in (0, 2*pi]
};

class BoxTop;

// Carleson box over an arc: radii in [inner_radius, 1), angles in the arc.
class CarlesonBox {
 public:
  explicit CarlesonBox(CircleArc arc);

  const CircleArc& arc() const { return arc_; }
  double inner_radius() const { return inner_radius_; }
  double arc_length() const { return arc_.length(); }

  bool contains(Complex z) const;
  double area() const;

  CarlesonBox left_child() const;
  CarlesonBox right_child() const;
  BoxTop top() const;

 private:
  CircleArc arc_;
  double inner_radius_;
};

// Top slab of a Carleson box: radii in [1 - h, 1 - h/2) with h = |I|/(2*pi).
// The tops of a box and of its children tile the box radially.
class BoxTop {
 public:
  explicit BoxTop(CircleArc arc);

  const CircleArc& arc() const { return arc_; }
  double inner_radius() const { return inner_radius_; }
  double outer_radius() const { return outer_radius_; }

  bool contains(Complex z) const;
  double area() const;

  // Mid-angle, mid-radius point of the slab.  Serves as the reference point
  // z_I attached to the box.
  Complex reference_point() const;

  // Midpoint polar grid used to estimate suprema over the slab.  The budget
  // is split so both directions refine together; at least 2 x 2 points.
  std::vector<Complex> sample_grid(int samples) const;

 private:
  CircleArc arc_;
  double inner_radius_;
  double outer_radius_;
};

// Truncated cone with vertex on the circle: |z - e^{i vertex}| < aperture * (1 - |z|).
struct Cone {
  double vertex_angle;
  double aperture;

  Cone(double vertex_angle_, double aperture_);
  bool contains(Complex z) const;
};

inline constexpr double kDefaultConeAperture = 2.0;

bool cone_contains(const Cone& cone, Complex z);

// Disc ball anchored at an interior point with radius a fixed fraction of the
// distance to the circle.  Valid radii lie in [0.25, 0.5] * (1 - |center|).
struct DiscWhitneyBall {
  Complex center;
  double radius;

  DiscWhitneyBall(Complex center_, double radius_);
  bool contains(Complex z) const;
};

DiscWhitneyBall whitney_ball_at(Complex center, double radius_factor = 0.5);

// Dyadic decomposition of the circle.  Level k splits the circle into 2^k
// arcs; index j covers angles [j, j+1) * 2*pi / 2^k.
inline constexpr int kMaxDyadicDepth = 30;

CircleArc dyadic_arc(int level, std::uint64_t index);
CarlesonBox dyadic_box(int level, std::uint64_t index);

// Inner radius of a level-k dyadic box; exactly 1 - 2^-k.
double dyadic_inner_radius(int level);

// Index of the level-k dyadic arc containing the angle.
std::uint64_t dyadic_angle_index(double theta, int level);

// All dyadic boxes of levels 0..depth.  Rejects depth outside [0, 30].
std::vector<CarlesonBox> dyadic_boxes(int depth);

CarlesonBox carleson_box(const CircleArc& arc);

}  // namespace carleson
