#include "doctest.h"

#include <cmath>
#include <vector>

#include "carleson/carleson_checkers.hpp"
#include "carleson/disc_geometry.hpp"
#include "carleson/measures.hpp"
#include "carleson/planar_domain.hpp"

using namespace carleson;

namespace {

PlanarMeasure delta(double x, double w = 1.0) {
  AtomicMeasure mu;
  mu.add({x, 0.0}, w);
  return mu;
}

}  // namespace

TEST_SUITE("carleson_checkers") {

TEST_CASE("square scan: a point mass at radius 1/2 gives exactly 1/pi") {
  // the deepest dyadic box holding the atom has arc length pi, mass 1
  CHECK(square_constant(delta(0.5), 1.0, 12) == doctest::Approx(1.0 / kPi).epsilon(1e-15));
  // exponent scaling on the same extremal box
  CHECK(square_constant(delta(0.5), 2.0, 12) ==
        doctest::Approx(1.0 / (kPi * kPi)).epsilon(1e-14));
  CHECK_THROWS_AS(square_constant(delta(0.5), 0.0, 12), std::invalid_argument);
  CHECK_THROWS_AS(square_constant(delta(0.5), 1.0, -1), std::invalid_argument);
  CHECK_THROWS_AS(square_constant(delta(0.5), 1.0, 99), std::invalid_argument);
}

TEST_CASE("square scan is rotation invariant for a single atom") {
  double base = square_constant(delta(0.5), 1.5, 10);
  for (double theta : {0.3, 1.7, 4.0}) {
    AtomicMeasure mu;
    mu.add(std::polar(0.5, theta), 1.0);
    CHECK(square_constant(PlanarMeasure(mu), 1.5, 10) ==
          doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("square scan grows with depth and probes every level") {
  PlanarMeasure flat = RadialPowerDensity(1.0, 0.0);
  double prev = 0.0;
  for (int depth : {2, 4, 8, 12}) {
    double c = square_constant(flat, 2.0, depth);
    CHECK(c >= prev);
    prev = c;
  }
  // per-level ratios for the flat density: ((2 - 2^-k)) / (4 pi) at level k
  std::vector<double> by_level = square_constant_by_level(flat, 2.0, 8);
  REQUIRE(by_level.size() == 9);
  for (int k = 0; k <= 8; ++k) {
    double expect = (2.0 - std::ldexp(1.0, -k)) / (4.0 * kPi);
    CHECK(by_level[k] == doctest::Approx(expect).epsilon(1e-12));
  }
  // the supremum over levels is attained at the deepest one
  CHECK(square_constant(flat, 2.0, 12) ==
        doctest::Approx((2.0 - std::ldexp(1.0, -12)) / (4.0 * kPi)).epsilon(1e-12));
}

TEST_CASE("square scan can report its probes") {
  std::vector<ProbeRecord> probes;
  double c = square_constant(delta(0.5), 1.0, 4, &probes);
  CHECK(!probes.empty());
  double best = 0.0;
  for (const auto& p : probes) {
    CHECK(p.parameter > 0.0);
    best = std::max(best, p.ratio);
  }
  CHECK(best == doctest::Approx(c));
}

TEST_CASE("whitney ball scan: frozen atom values and the flat-density limit") {
  WhitneyScanSpec spec;
  CHECK(whitney_ball_constant(delta(0.5), 1.0, spec) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(whitney_ball_constant(delta(0.5), 2.0, spec) == doctest::Approx(16.0).epsilon(1e-12));
  WhitneyScanSpec deep;
  deep.max_level = 10;
  CHECK(whitney_ball_constant(RadialPowerDensity(1.0, 0.0), 2.0, deep) ==
        doctest::Approx(kPi).epsilon(1e-8));
}

TEST_CASE("whitney scan spec is validated") {
  WhitneyScanSpec bad;
  bad.min_level = 5;
  bad.max_level = 2;
  CHECK_THROWS_AS(whitney_ball_constant(delta(0.5), 1.0, bad), std::invalid_argument);
  bad = WhitneyScanSpec{};
  bad.radius_factor = 0.6;
  CHECK_THROWS_AS(whitney_ball_constant(delta(0.5), 1.0, bad), std::invalid_argument);
  bad = WhitneyScanSpec{};
  bad.angular_multiplier = 0;
  CHECK_THROWS_AS(whitney_ball_constant(delta(0.5), 1.0, bad), std::invalid_argument);
}

TEST_CASE("boundary ball scan on the disc: arclength measure and interior atom") {
  Domain disc(circle_curve(1024));
  const BoundaryCurve& c = disc.curve();
  std::vector<Complex> centers;
  for (std::size_t i = 0; i < c.size(); i += c.size() / 16) centers.push_back(c.vertex(i));
  std::vector<double> radii;
  for (int j = 2; j <= 6; ++j) radii.push_back(2.0 * std::ldexp(1.0, -j));

  // mass = polyline arclength, pushed just inside so every atom is interior
  AtomicMeasure arc;
  for (std::size_t i = 0; i < c.size(); ++i) {
    Complex mid = 0.5 * (c.vertex(i) + c.vertex((i + 1) % c.size()));
    arc.add(mid * 0.999, c.segment_length(i));
  }
  CHECK(boundary_ball_constant(PlanarMeasure(arc), disc, 1.0, centers, radii) ==
        doctest::Approx(2.012579637).epsilon(1e-6));

  // one interior atom: the extremal ball is the smallest one that reaches it
  CHECK(boundary_ball_constant(delta(0.6), disc, 1.0, centers, radii) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(boundary_ball_constant(PlanarMeasure(AtomicMeasure{}), disc, 1.0, centers,
                               radii) == doctest::Approx(0.0));
  CHECK_THROWS_AS(boundary_ball_constant(delta(0.6), disc, 1.0, {}, radii),
                  std::invalid_argument);
}

TEST_CASE("square and ball scans agree for a point mass, ratio (4 pi)^-1.5") {
  EquivalenceReport rep = equivalence_report(delta(0.9), 1.5, 10);
  CHECK(rep.square_c == doctest::Approx(1.436696977).epsilon(1e-8));
  CHECK(rep.ball_c == doctest::Approx(64.0).epsilon(1e-12));
  CHECK(rep.ratio == doctest::Approx(std::pow(4.0 * kPi, -1.5)).epsilon(1e-13));
  CHECK(rep.ratio >= 1.0 / 64.0);
  CHECK(rep.ratio <= 64.0);
}

TEST_CASE("equivalence ratio is scale-free in the atom position") {
  // an atom near the centre is seen through the level-0 ball B(0, 1/2)
  EquivalenceReport rep = equivalence_report(delta(0.1), 1.5, 10);
  CHECK(rep.ratio == doctest::Approx(0.02244839027).epsilon(1e-8));
  AtomicMeasure offaxis;
  offaxis.add({0.1, 0.1}, 1.0);
  CHECK(equivalence_report(PlanarMeasure(offaxis), 1.5, 10).ratio ==
        doctest::Approx(0.02244839027).epsilon(1e-8));
}

TEST_CASE("equivalence report handles empty measures and rejects beta <= 1") {
  EquivalenceReport rep = equivalence_report(PlanarMeasure(AtomicMeasure{}), 1.5, 8);
  CHECK(rep.square_c == 0.0);
  CHECK(rep.ball_c == 0.0);
  CHECK(rep.ratio == 1.0);
  CHECK_THROWS_AS(equivalence_report(delta(0.5), 1.0, 8), std::invalid_argument);
  CHECK_THROWS_AS(equivalence_report(delta(0.5), 0.5, 8), std::invalid_argument);
}

TEST_CASE("both scans diverge together on a boundary-charging atom chain") {
  // atoms at 1 - 2^-k with weight 2^-k: carleson for beta = 1, not for beta = 2
  AtomicMeasure chain;
  for (int k = 1; k <= 12; ++k)
    chain.add(Complex(1.0 - std::ldexp(1.0, -k), 0.0), std::ldexp(1.0, -k));
  PlanarMeasure pm = chain;
  double square_prev = 0.0, ball_prev = 0.0;
  for (int depth : {6, 9, 12}) {
    EquivalenceReport rep = equivalence_report(pm, 2.0, depth);
    CHECK(rep.square_c > square_prev * 2.0);  // keeps growing with depth
    CHECK(rep.ball_c > ball_prev * 2.0);
    square_prev = rep.square_c;
    ball_prev = rep.ball_c;
    CHECK(rep.ratio >= 1.0 / 256.0);  // never more than a bounded factor apart
    CHECK(rep.ratio <= 1.0);
  }
  CHECK(square_prev == doctest::Approx(103.75289205).epsilon(1e-8));
  CHECK(ball_prev == doctest::Approx(16384.0).epsilon(1e-12));
}

TEST_CASE("random suite ratios stay in the bracket near the one-atom floor") {
  // unit atoms on dyadic radii: each ratio is the single-atom constant up to
  // a small combinatorial factor when several atoms share one box, and the
  // most isolated measure of the suite sits exactly on the floor
  const double single = std::pow(4.0 * kPi, -1.5);
  double lowest = 1e300;
  for (const AtomicMeasure& m : random_atom_suite(5, 8, 10, 8)) {
    EquivalenceReport rep = equivalence_report(m, 1.5, 10);
    CHECK(rep.ratio >= 1.0 / 64.0);
    CHECK(rep.ratio <= 64.0);
    CHECK(rep.ratio >= single * (1.0 - 1e-9));
    lowest = std::min(lowest, rep.ratio);
  }
  CHECK(lowest == doctest::Approx(single).epsilon(1e-11));
}

}  // TEST_SUITE
