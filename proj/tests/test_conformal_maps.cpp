#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "carleson/conformal_maps.hpp"
#include "carleson/disc_geometry.hpp"

using namespace carleson;

namespace {

std::vector<Complex> sample_points() {
  std::vector<Complex> pts;
  for (double r : {0.0, 0.35, 0.7, 0.95})
    for (int j = 0; j < 8; ++j) pts.push_back(std::polar(r, j * kPi / 4 + 0.1));
  return pts;
}

std::vector<ConformalMap> catalog() {
  return {ConformalMap::identity(),
          ConformalMap::moebius({0.5, 0.0}),
          ConformalMap::moebius({0.3, -0.4}),
          ConformalMap::quadratic({0.5, 0.0}),
          ConformalMap::quadratic({0.0, 0.3}),
          ConformalMap::power_corner(0.5),
          ConformalMap::power_corner(2.0),
          ConformalMap::compose(ConformalMap::moebius({0.3, 0.1}),
                                ConformalMap::quadratic({0.25, 0.0}))};
}

}  // namespace

TEST_SUITE("conformal_maps") {

TEST_CASE("closed forms: moebius, quadratic, corner power") {
  Complex a(0.3, -0.4);
  ConformalMap m = ConformalMap::moebius(a);
  for (Complex z : sample_points()) {
    Complex expect = (z + a) / (1.0 + std::conj(a) * z);
    CHECK(std::abs(m.eval(z) - expect) < 1e-15);
    Complex d = 1.0 + std::conj(a) * z;
    CHECK(std::abs(m.deriv(z) - (1.0 - std::norm(a)) / (d * d)) < 1e-15);
  }
  CHECK(std::abs(m.eval(0.0) - a) < 1e-16);  // 0 goes to the parameter

  ConformalMap q = ConformalMap::quadratic({0.5, 0.0});
  for (Complex z : sample_points()) {
    CHECK(std::abs(q.eval(z) - (z + 0.5 * z * z)) < 1e-15);
    CHECK(std::abs(q.deriv(z) - (1.0 + z)) < 1e-15);
  }

  ConformalMap c = ConformalMap::power_corner(2.0);
  for (Complex z : sample_points()) {
    Complex half = 0.5 * (1.0 + z);
    CHECK(std::abs(c.eval(z) - half * half) < 1e-15);
    // gamma = 2 is a rescaled copy of the half-coefficient quadratic
    CHECK(std::abs(c.eval(z) - (0.5 * q.eval(z) + 0.25)) < 1e-15);
  }
}

TEST_CASE("identity map is the identity") {
  ConformalMap id = ConformalMap::identity();
  CHECK(id.descriptor() == "identity");
  for (Complex z : sample_points()) {
    CHECK(id.eval(z) == z);
    CHECK(id.deriv(z) == Complex(1.0, 0.0));
    CHECK(id.log_deriv(z) == Complex(0.0, 0.0));
  }
}

TEST_CASE("composition chains eval, deriv and log-deriv") {
  ConformalMap inner = ConformalMap::quadratic({0.25, 0.0});
  ConformalMap outer = ConformalMap::moebius({0.3, 0.1});
  ConformalMap comp = ConformalMap::compose(outer, inner);
  for (Complex z : sample_points()) {
    CHECK(std::abs(comp.eval(z) - outer.eval(inner.eval(z))) < 1e-15);
    Complex chain = outer.deriv(inner.eval(z)) * inner.deriv(z);
    CHECK(std::abs(comp.deriv(z) - chain) < 1e-14);
  }
  CHECK(comp.descriptor() == "moebius(0.3+0.1i) o quadratic(0.25+0i)");
}

TEST_CASE("descriptors name the map and its parameter") {
  CHECK(ConformalMap::moebius({0.5, 0.0}).descriptor() == "moebius(0.5+0i)");
  CHECK(ConformalMap::quadratic({0.0, 0.3}).descriptor() == "quadratic(0+0.3i)");
  CHECK(ConformalMap::power_corner(1.5).descriptor() == "power_corner(1.5)");
}

TEST_CASE("log_deriv exponentiates back to deriv and starts real at 0") {
  for (const ConformalMap& map : catalog()) {
    Complex at0 = map.log_deriv(0.0);
    CHECK(at0.imag() > -kPi - 1e-12);
    CHECK(at0.imag() <= kPi + 1e-12);
    for (Complex z : sample_points()) {
      Complex ld = map.log_deriv(z);
      CHECK(std::abs(std::exp(ld) - map.deriv(z)) <
            1e-12 * std::max(1.0, std::abs(map.deriv(z))));
      CHECK(map.log_abs_deriv(z) == doctest::Approx(std::log(std::abs(map.deriv(z)))));
    }
  }
}

TEST_CASE("boundary log-modulus agrees with the radial limit") {
  ConformalMap q = ConformalMap::quadratic({0.0, 0.3});
  for (double theta : {0.0, 1.0, 2.5, 4.0, 6.0}) {
    CHECK(q.boundary_log_abs_deriv(theta) ==
          doctest::Approx(q.log_abs_deriv(std::polar(1.0, theta))).epsilon(1e-13));
  }
}

TEST_CASE("bloch oscillation vanishes for the identity and is frozen for moebius") {
  BoxTop top = dyadic_box(3, 2).top();
  CHECK(bloch_oscillation(ConformalMap::identity(), top, 64) == 0.0);
  // pinned regression value for the moebius 0.7 pullback on that top
  CHECK(bloch_oscillation(ConformalMap::moebius({0.7, 0.0}), top, 64) ==
        doctest::Approx(0.9585073331).epsilon(1e-8));
}

TEST_CASE("per-level bloch oscillation: smooth maps decay, cusps persist") {
  auto level_max = [](const ConformalMap& map, int depth) {
    double best = 0.0;
    for (std::uint64_t j = 0; j < (1ull << depth); ++j)
      best = std::max(best, bloch_oscillation(map, dyadic_box(depth, j).top(), 24));
    return best;
  };
  // moebius(0.7): phi' is zero-free on the closed disc, so log|phi'| is
  // uniformly continuous up to the circle and the sup over depth-d tops
  // dies off as the tops shrink toward the boundary
  ConformalMap mo = ConformalMap::moebius({0.7, 0.0});
  double m5 = level_max(mo, 5), m8 = level_max(mo, 8);
  CHECK(m8 < 0.5 * m5);
  CHECK(m8 >= m5 / 16.0);
  // quadratic(0.5): phi' vanishes at z = -1, and every level keeps a box
  // whose top straddles the log singularity, so the sup settles at a
  // positive level instead of decaying
  ConformalMap qu = ConformalMap::quadratic({0.5, 0.0});
  double q5 = level_max(qu, 5), q8 = level_max(qu, 8);
  CHECK(q8 == doctest::Approx(q5).epsilon(0.1));
  CHECK(q5 > 1.0);
}

TEST_CASE("bmo norm of log-modulus: frozen catalog values") {
  BmoEstimate m = bmo_norm_estimate(ConformalMap::moebius({0.5, 0.0}), 8, 96);
  CHECK(m.value == doctest::Approx(0.63895363130402039).epsilon(1e-12));
  CHECK(m.skipped_nodes == 0);

  BmoEstimate c2 = bmo_norm_estimate(ConformalMap::power_corner(2.0), 8, 96);
  CHECK(c2.value == doctest::Approx(0.75589715474557317).epsilon(1e-12));
  CHECK(c2.skipped_nodes == 0);
}

TEST_CASE("corner bmo scales like |gamma - 1| and is symmetric around 1") {
  double g05 = bmo_norm_estimate(ConformalMap::power_corner(0.5), 8, 96).value;
  double g10 = bmo_norm_estimate(ConformalMap::power_corner(1.0), 8, 96).value;
  double g15 = bmo_norm_estimate(ConformalMap::power_corner(1.5), 8, 96).value;
  double g20 = bmo_norm_estimate(ConformalMap::power_corner(2.0), 8, 96).value;
  CHECK(g10 == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(g05 == doctest::Approx(g15).epsilon(1e-12));       // |gamma-1| = 1/2 both
  CHECK(g20 == doctest::Approx(2.0 * g15).epsilon(1e-12));
  CHECK(g05 == doctest::Approx(0.37794857737278642).epsilon(1e-12));
}

TEST_CASE("quadratic and corner share bmo when log-derivs differ by a constant") {
  // log(1 + z) versus log((1 + z)/2): same oscillation on every arc
  double q = bmo_norm_estimate(ConformalMap::quadratic({0.5, 0.0}), 8, 96).value;
  double c = bmo_norm_estimate(ConformalMap::power_corner(2.0), 8, 96).value;
  CHECK(q == doctest::Approx(c).epsilon(1e-13));
}

TEST_CASE("poisson extension reproduces harmonic data") {
  const int n = 512;
  std::vector<double> ones(n, 1.0), cosv(n), grid(n);
  for (int j = 0; j < n; ++j) {
    cosv[j] = std::cos(j * kTwoPi / n);
    grid[j] = 2.0 + std::sin(3.0 * j * kTwoPi / n);
  }
  for (Complex z : {Complex(0.0, 0.0), Complex(0.3, 0.2), Complex(-0.5, 0.6)}) {
    CHECK(poisson_extension(ones, z) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(poisson_extension(cosv, z) == doctest::Approx(z.real()).epsilon(1e-10));
  }
  // mean value at the origin
  double mean = 0.0;
  for (double v : grid) mean += v;
  mean /= n;
  CHECK(poisson_extension(grid, 0.0) == doctest::Approx(mean).epsilon(1e-13));
}

TEST_CASE("nontangential max walks the cone to the deepest radial level") {
  // for u = Re z in the cone at angle 0 the max sits on the axis at 1 - 2^-10
  double m = nontangential_max([](Complex z) { return z.real(); }, 0.0, 2.0, 10);
  CHECK(m == doctest::Approx(1.0 - std::ldexp(1.0, -10)).epsilon(1e-15));
  double c = nontangential_max([](Complex) { return 3.25; }, 1.0, 2.0, 6);
  CHECK(c == doctest::Approx(3.25));
}

TEST_CASE("koebe bounds bracket by a factor of four") {
  for (const ConformalMap& map : catalog()) {
    for (Complex z : {Complex(0.0, 0.0), Complex(0.4, 0.3), Complex(-0.2, 0.6)}) {
      KoebeBounds kb = koebe_delta_bounds(map, z);
      double scale = std::abs(map.deriv(z)) * (1.0 - std::norm(z));
      CHECK(kb.lower == doctest::Approx(0.25 * scale));
      CHECK(kb.upper == doctest::Approx(scale));
      CHECK(kb.lower <= kb.upper);
    }
  }
  KoebeBounds at0 = koebe_delta_bounds(ConformalMap::moebius({0.5, 0.0}), 0.0);
  CHECK(at0.upper == doctest::Approx(0.75));  // |phi'(0)| = 1 - |a|^2
}

}  // TEST_SUITE
