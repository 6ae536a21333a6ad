#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <vector>

#include "carleson/conformal_maps.hpp"
#include "carleson/planar_domain.hpp"

using namespace carleson;

namespace {

// boundary polyline of the image of the unit circle under a disc map
BoundaryCurve map_curve(const ConformalMap& map, int n) {
  std::vector<Complex> pts(n);
  for (int j = 0; j < n; ++j) pts[j] = map.eval(std::polar(1.0, j * kTwoPi / n));
  return BoundaryCurve(std::move(pts));
}

std::vector<double> dyadic_radii(double base, int j0, int j1) {
  std::vector<double> r;
  for (int j = j0; j <= j1; ++j) r.push_back(base * std::ldexp(1.0, -j));
  return r;
}

std::vector<Complex> strided_vertices(const BoundaryCurve& c, std::size_t count) {
  std::vector<Complex> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(c.vertex(i * c.size() / count));
  return out;
}

}  // namespace

TEST_SUITE("planar_domain") {

TEST_CASE("circle polyline basics") {
  BoundaryCurve c = circle_curve(512);
  CHECK(c.size() == 512);
  CHECK(std::abs(c.vertex(0) - Complex(1.0, 0.0)) < 1e-15);
  CHECK(c.total_length() < kTwoPi);  // inscribed chords
  CHECK(c.total_length() > kTwoPi - 1e-3);
  // uniform segments, shorter-arc distance symmetric and bounded by half
  CHECK(c.segment_length(3) == doctest::Approx(c.segment_length(100)));
  CHECK(c.arc_distance(10, 20) == doctest::Approx(c.arc_distance(20, 10)));
  CHECK(c.arc_distance(0, 256) == doctest::Approx(c.total_length() / 2));
  CHECK(c.arc_distance(0, 511) == doctest::Approx(c.segment_length(511)));

  BoundaryCurve shifted = circle_curve(64, 2.0, Complex(5.0, 1.0));
  CHECK(std::abs(shifted.vertex(0) - Complex(7.0, 1.0)) < 1e-14);
  CHECK(shifted.total_length() == doctest::Approx(2.0 * circle_curve(64).total_length()));
}

TEST_CASE("curve validation: too few vertices and self intersection") {
  CHECK_THROWS_AS(BoundaryCurve(std::vector<Complex>(8, Complex(0, 0))),
                  std::invalid_argument);
  // {16/5} star: consecutive chords skip five vertices and cross each other
  std::vector<Complex> star;
  for (int j = 0; j < 16; ++j)
    star.push_back(std::polar(1.0, 5.0 * j * kTwoPi / 16.0));
  CHECK_THROWS_AS(BoundaryCurve(std::move(star)), std::invalid_argument);
}

TEST_CASE("square polyline: perimeter and exact chord-arc constant 2") {
  BoundaryCurve sq = square_curve(64);
  CHECK(sq.size() == 256);
  CHECK(sq.total_length() == doctest::Approx(8.0));
  // extremal pair: two side midpoints across a corner, arc pi.../ chord ratio 2
  CHECK(chordarc_constant(sq, sq.size() * 16) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("chord-arc of the circle is pi/2") {
  CHECK(chordarc_constant(circle_curve(4096), 4096 * 16) ==
        doctest::Approx(1.57079617278).epsilon(1e-6));
  CHECK_THROWS_AS(chordarc_constant(circle_curve(64), 0), std::invalid_argument);
}

TEST_CASE("chord-arc under refinement: smooth image stays, tangential cusp grows") {
  // gamma = 1 is affine, so its boundary is a circle
  double g1_a = chordarc_constant(
      Domain::from_map(ConformalMap::power_corner(1.0), 2048).curve(), 2048 * 16);
  double g1_b = chordarc_constant(
      Domain::from_map(ConformalMap::power_corner(1.0), 8192).curve(), 8192 * 16);
  CHECK(g1_a == doctest::Approx(1.570795711).epsilon(1e-6));
  CHECK(std::abs(g1_b - g1_a) / g1_a < 0.05);

  // gamma = 2 opens the corner to an inward-pointing cusp at the image of -1
  double g2_512 = chordarc_constant(
      Domain::from_map(ConformalMap::power_corner(2.0), 512).curve(), 512 * 16);
  double g2_1024 = chordarc_constant(
      Domain::from_map(ConformalMap::power_corner(2.0), 1024).curve(), 1024 * 16);
  CHECK(g2_512 == doctest::Approx(81.48937621).epsilon(1e-6));
  CHECK(g2_1024 == doctest::Approx(162.9756844).epsilon(1e-6));
  CHECK(g2_1024 / g2_512 >= 1.9);  // doubles with the resolved scale
}

TEST_CASE("similar curves share the chord-arc constant") {
  // power_corner(2) is a scaled translate of the half-coefficient quadratic
  double a = chordarc_constant(map_curve(ConformalMap::power_corner(2.0), 1024), 1024 * 16);
  double b = chordarc_constant(map_curve(ConformalMap::quadratic({0.5, 0.0}), 1024), 1024 * 16);
  CHECK(a == doctest::Approx(b).epsilon(1e-9));
  CHECK(a == doctest::Approx(162.976).epsilon(1e-4));
}

TEST_CASE("ahlfors regularity: circle gives pi, flat side midpoint gives 2") {
  BoundaryCurve c = circle_curve(4096);
  auto centers = strided_vertices(c, 16);
  auto radii = dyadic_radii(2.0, 0, 6);
  CHECK(ahlfors_constant(c, centers, radii) ==
        doctest::Approx(3.14159234557).epsilon(1e-6));

  BoundaryCurve sq = square_curve(64);
  std::vector<Complex> one{sq.vertex(32)};  // middle of a side
  std::vector<double> small{0.25, 0.125};
  CHECK(ahlfors_constant(sq, one, small) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("tangential cusp is ahlfors-stable even though chord-arc diverges") {
  for (int n : {2048, 8192}) {
    Domain dom = Domain::from_map(ConformalMap::power_corner(2.0), n);
    const BoundaryCurve& c = dom.curve();
    auto centers = strided_vertices(c, 64);
    auto radii = dyadic_radii(dom.diameter(), 1, 10);
    double a = ahlfors_constant(c, centers, radii);
    CHECK(a == doctest::Approx(n == 2048 ? 3.84921935645 : 3.84922705491).epsilon(1e-6));
  }
}

TEST_CASE("ahlfors constant is at most twice the chord-arc constant") {
  for (const ConformalMap& map :
       {ConformalMap::moebius({0.5, 0.0}), ConformalMap::quadratic({0.0, 0.3}),
        ConformalMap::power_corner(0.5), ConformalMap::power_corner(2.0)}) {
    BoundaryCurve c = map_curve(map, 1024);
    double ka = chordarc_constant(c, c.size() * 16);
    double diam = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i)
      diam = std::max(diam, std::abs(c.vertex(i) - c.vertex(0)));
    double ah = ahlfors_constant(c, strided_vertices(c, 16), dyadic_radii(diam, 1, 6));
    CHECK(ah <= 2.0 * ka + 1e-9);
  }
}

TEST_CASE("domain membership, area and diameter for the disc") {
  Domain disc(circle_curve(512));
  CHECK(disc.contains(Complex(0.0, 0.0)));
  CHECK(disc.contains(Complex(0.9, 0.0)));
  CHECK(!disc.contains(Complex(1.01, 0.0)));
  CHECK(!disc.contains(Complex(0.8, 0.8)));
  CHECK(disc.area() == doctest::Approx(3.1415138).epsilon(1e-6));  // inscribed
  CHECK(disc.area() < kPi);
  CHECK(disc.diameter() == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(boundary_distance(disc, Complex(0.0, 0.0)) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(distance_to_curve(disc.curve(), Complex(2.0, 0.0)) ==
        doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("from_map tightens the polygon as samples grow") {
  Domain d1 = Domain::from_map(ConformalMap::moebius({0.5, 0.0}), 1024);
  Domain d2 = Domain::from_map(ConformalMap::moebius({0.5, 0.0}), 8192);
  CHECK(d1.sagitta_bound() == doctest::Approx(4.23533e-05).epsilon(1e-3));
  CHECK(d2.sagitta_bound() == doctest::Approx(6.61808e-07).epsilon(1e-3));
  CHECK(d1.sagitta_bound() / d2.sagitta_bound() == doctest::Approx(64.0).epsilon(0.01));
  // the image is still the unit disc, traversed off-center
  CHECK(d1.area() == doctest::Approx(kPi).epsilon(1e-4));
}

TEST_CASE("whitney cover of the disc: frozen census at depth 6") {
  Domain disc(circle_curve(512));
  WhitneySquareCover cover = whitney_cover(disc, 6);
  CHECK(cover.squares.size() == 752);
  CHECK(cover.dropped_cells == 668);
  CHECK(cover.dropped_area == doctest::Approx(0.678698).epsilon(1e-4));
  CHECK(cover.total_area() == doctest::Approx(2.61725625).epsilon(1e-6));
  REQUIRE(cover.per_depth_counts.size() == 7);
  std::size_t expect[] = {0, 0, 0, 4, 64, 204, 480};
  for (int d = 0; d <= 6; ++d) CHECK(cover.per_depth_counts[d] == expect[d]);
}

TEST_CASE("whitney squares satisfy the size band and cover up to the dropped area") {
  Domain disc(circle_curve(512));
  WhitneySquareCover cover = whitney_cover(disc, 8);
  CHECK(cover.squares.size() == 3836);
  CHECK(cover.total_area() == doctest::Approx(3.00207217).epsilon(1e-6));
  double lo = 1.0, hi = 0.0;
  for (const WhitneySquare& s : cover.squares) {
    CHECK(disc.contains(s.center));
    double ratio = s.diam() / s.center_distance;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  CHECK(hi <= 0.5 + 1e-12);        // kept rule: diam <= dist / 2
  CHECK(lo >= 1.0 / 4.5 - 1e-12);  // refinement never overshoots past 1/4.5
  // everything not covered was accounted as dropped
  CHECK(disc.area() - cover.total_area() <= cover.dropped_area + 1e-9);
  // counts grow roughly geometrically (factor ~2) along the boundary levels
  for (int d = 5; d < 8; ++d) {
    double growth = static_cast<double>(cover.per_depth_counts[d + 1]) /
                    static_cast<double>(cover.per_depth_counts[d]);
    CHECK(growth >= 1.8);
    CHECK(growth <= 2.5);
  }
}

TEST_CASE("quasihyperbolic distance: frozen value, symmetry and failure modes") {
  Domain disc(circle_curve(512));
  WhitneySquareCover cover = whitney_cover(disc, 10);
  double d = quasihyperbolic_distance(disc, Complex(0.0, 0.0), Complex(0.9, 0.0), cover);
  CHECK(d == doctest::Approx(2.684749381).epsilon(1e-6));
  double log_gap = std::log(10.0);  // log 1/(1 - 0.9)
  CHECK(d >= log_gap);
  CHECK(d <= 2.0 * log_gap);
  double back = quasihyperbolic_distance(disc, Complex(0.9, 0.0), Complex(0.0, 0.0), cover);
  CHECK(std::abs(back - d) < 1e-12);
  // a coarse cover has no square at the deep endpoint
  WhitneySquareCover coarse = whitney_cover(disc, 4);
  CHECK_THROWS_AS(quasihyperbolic_distance(disc, Complex(0.0, 0.0), Complex(0.99, 0.0), coarse),
                  std::runtime_error);
  CHECK_THROWS_AS(quasihyperbolic_distance(disc, Complex(0.0, 0.0), Complex(2.0, 0.0), cover),
                  std::runtime_error);
}

TEST_CASE("curve csv roundtrip") {
  namespace fs = std::filesystem;
  fs::path path = fs::temp_directory_path() / "carleson_curve_roundtrip.csv";
  BoundaryCurve orig = map_curve(ConformalMap::quadratic({0.0, 0.3}), 128);
  write_curve_csv(orig, path.string());
  BoundaryCurve back = read_curve_csv(path.string());
  REQUIRE(back.size() == orig.size());
  for (std::size_t i = 0; i < orig.size(); ++i)
    CHECK(std::abs(back.vertex(i) - orig.vertex(i)) < 1e-15);
  fs::remove(path);
  CHECK_THROWS(read_curve_csv("/nonexistent/curve.csv"));
}

}  // TEST_SUITE
