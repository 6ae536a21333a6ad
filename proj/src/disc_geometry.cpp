#include "carleson/disc_geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace carleson {

double normalize_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  // fmod can return exactly 2*pi after the correction when theta is a tiny
  // negative number; fold that case back to 0.
  if (t >= kTwoPi) t = 0.0;
  return t;
}

double inner_radius_for_arc_length(double length) {
  double r = 1.0 - length / kTwoPi;
  return r > 0.0 ? r : 0.0;
}

CircleArc::CircleArc(double center_angle, double length)
    : center_angle_(normalize_angle(center_angle)), length_(length) {
  if (!(length > 0.0) || length > kTwoPi * (1.0 + 1e-12)) {
    throw std::invalid_argument("CircleArc: length must lie in (0, 2*pi]");
  }
  if (length_ > kTwoPi) length_ = kTwoPi;
}

double CircleArc::start_angle() const {
  return normalize_angle(center_angle_ - 0.5 * length_);
}

bool CircleArc::contains_angle(double theta) const {
  if (is_full_circle()) return true;
  double d = normalize_angle(theta - start_angle());
  return d < length_;
}

CircleArc CircleArc::left_half() const {
  return CircleArc(center_angle_ - 0.25 * length_, 0.5 * length_);
}

CircleArc CircleArc::right_half() const {
  return CircleArc(center_angle_ + 0.25 * length_, 0.5 * length_);
}

CircleArc CircleArc::rotated(double delta) const {
  return CircleArc(center_angle_ + delta, length_);
}

bool CircleArc::approx_equal(const CircleArc& other, double tol) const {
  double dc = std::abs(normalize_angle(center_angle_ - other.center_angle_ + kPi) - kPi);
  return dc <= tol && std::abs(length_ - other.length_) <= tol;
}

CarlesonBox::CarlesonBox(CircleArc arc)
    : arc_(arc), inner_radius_(inner_radius_for_arc_length(arc.length())) {}

bool CarlesonBox::contains(Complex z) const {
  double r = std::abs(z);
  if (r < inner_radius_ || r >= 1.0) return false;
  return arc_.contains_angle(std::arg(z));
}

double CarlesonBox::area() const {
  // Annular sector: |I| * (1 - r_in^2) / 2.
  return 0.5 * arc_.length() * (1.0 - inner_radius_ * inner_radius_);
}

CarlesonBox CarlesonBox::left_child() const { return CarlesonBox(arc_.left_half()); }
CarlesonBox CarlesonBox::right_child() const { return CarlesonBox(arc_.right_half()); }
BoxTop CarlesonBox::top() const { return BoxTop(arc_); }

BoxTop::BoxTop(CircleArc arc)
    : arc_(arc),
      inner_radius_(inner_radius_for_arc_length(arc.length())),
      outer_radius_(inner_radius_for_arc_length(0.5 * arc.length())) {}

bool BoxTop::contains(Complex z) const {
  double r = std::abs(z);
  if (r < inner_radius_ || r >= outer_radius_) return false;
  return arc_.contains_angle(std::arg(z));
}

double BoxTop::area() const {
  return 0.5 * arc_.length() * (outer_radius_ * outer_radius_ - inner_radius_ * inner_radius_);
}

Complex BoxTop::reference_point() const {
  double r = 0.5 * (inner_radius_ + outer_radius_);
  return std::polar(r, arc_.center_angle());
}

std::vector<Complex> BoxTop::sample_grid(int samples) const {
  if (samples < 4) samples = 4;
  int n_rad = static_cast<int>(std::floor(std::sqrt(samples / 2.0)));
  if (n_rad < 2) n_rad = 2;
  int n_ang = (samples + n_rad - 1) / n_rad;
  if (n_ang < 2) n_ang = 2;

  std::vector<Complex> pts;
  pts.reserve(static_cast<std::size_t>(n_rad) * n_ang);
  double dr = (outer_radius_ - inner_radius_) / n_rad;
  double da = arc_.length() / n_ang;
  double start = arc_.start_angle();
  for (int i = 0; i < n_rad; ++i) {
    double r = inner_radius_ + (i + 0.5) * dr;
    for (int j = 0; j < n_ang; ++j) {
      pts.push_back(std::polar(r, start + (j + 0.5) * da));
    }
  }
  return pts;
}

Cone::Cone(double vertex_angle_, double aperture_)
    : vertex_angle(normalize_angle(vertex_angle_)), aperture(aperture_) {
  if (!(aperture > 1.0)) {
    throw std::invalid_argument("Cone: aperture must exceed 1");
  }
}

bool Cone::contains(Complex z) const {
  double r = std::abs(z);
  if (r >= 1.0) return false;
  return std::abs(z - std::polar(1.0, vertex_angle)) < aperture * (1.0 - r);
}

bool cone_contains(const Cone& cone, Complex z) { return cone.contains(z); }

DiscWhitneyBall::DiscWhitneyBall(Complex center_, double radius_)
    : center(center_), radius(radius_) {
  double d = 1.0 - std::abs(center);
  if (!(d > 0.0)) {
    throw std::invalid_argument("DiscWhitneyBall: center must be interior");
  }
  if (radius < kWhitneyLowerFactor * d - 1e-15 || radius > 0.5 * d + 1e-15) {
    throw std::invalid_argument("DiscWhitneyBall: radius outside [d/4, d/2]");
  }
}

bool DiscWhitneyBall::contains(Complex z) const {
  return std::abs(z - center) <= radius;
}

DiscWhitneyBall whitney_ball_at(Complex center, double radius_factor) {
  return DiscWhitneyBall(center, radius_factor * (1.0 - std::abs(center)));
}

namespace {

void check_dyadic_level(int level) {
  if (level < 0 || level > kMaxDyadicDepth) {
    throw std::invalid_argument("dyadic level must lie in [0, 30]");
  }
}

}  // namespace

CircleArc dyadic_arc(int level, std::uint64_t index) {
  check_dyadic_level(level);
  std::uint64_t count = std::uint64_t{1} << level;
  if (index >= count) {
    throw std::invalid_argument("dyadic arc index out of range");
  }
  double length = kTwoPi / static_cast<double>(count);
  double center = (static_cast<double>(index) + 0.5) * length;
  return CircleArc(center, length);
}

CarlesonBox dyadic_box(int level, std::uint64_t index) {
  return CarlesonBox(dyadic_arc(level, index));
}

double dyadic_inner_radius(int level) {
  check_dyadic_level(level);
  return 1.0 - std::ldexp(1.0, -level);
}

std::uint64_t dyadic_angle_index(double theta, int level) {
  check_dyadic_level(level);
  std::uint64_t count = std::uint64_t{1} << level;
  double frac = normalize_angle(theta) / kTwoPi;
  auto idx = static_cast<std::int64_t>(std::floor(frac * static_cast<double>(count)));
  if (idx < 0) idx = 0;
  if (idx >= static_cast<std::int64_t>(count)) idx = static_cast<std::int64_t>(count) - 1;
  return static_cast<std::uint64_t>(idx);
}

std::vector<CarlesonBox> dyadic_boxes(int depth) {
  check_dyadic_level(depth);
  std::vector<CarlesonBox> boxes;
  boxes.reserve((std::size_t{1} << (depth + 1)) - 1);
  for (int level = 0; level <= depth; ++level) {
    std::uint64_t count = std::uint64_t{1} << level;
    for (std::uint64_t j = 0; j < count; ++j) {
      boxes.push_back(dyadic_box(level, j));
    }
  }
  return boxes;
}

CarlesonBox carleson_box(const CircleArc& arc) { return CarlesonBox(arc); }

}  // namespace carleson
