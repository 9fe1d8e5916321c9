// SPDX-License-Identifier: Apache-2.0
//
// Scalar conservation-law evolution, kinetic Maxwellian lifts, the entropy
// defect measure, rough transports, and solution-regularity reports.

#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "kinlab/burgers.hpp"
#include "kinlab/errors.hpp"
#include "kinlab/grid.hpp"
#include "oracles/oracle_burgers.hpp"
#include "test_util.hpp"

using kinlab::Axis;
using kinlab::AxisLabel;
using kinlab::ConservationState;
using kinlab::Field;
using kinlab::PhaseGrid;
using kinlab::RoughTransport;
using testutil::kTwoPi;

namespace {

ConservationState step_state(std::size_t n, double left, double right) {
  const Axis ax{AxisLabel::x, n, 1.0};
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = -0.5 + (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    w[i] = x < 0.0 ? left : right;
  }
  return ConservationState(ax, std::move(w));
}

ConservationState sine_state(std::size_t n, double mean, double amp) {
  const Axis ax{AxisLabel::x, n, 1.0};
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = -0.5 + (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    w[i] = mean + amp * std::sin(kTwoPi * x);
  }
  return ConservationState(ax, std::move(w));
}

// Descending 0.5-level crossing of w in the window (0, 0.4), by linear
// interpolation between cell centers.
double half_crossing(const ConservationState& s) {
  const std::size_t n = s.w.size();
  const double dx = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double x = -0.5 + (static_cast<double>(i) + 0.5) * dx;
    if (x <= 0.0 || x > 0.4) continue;
    if (s.w[i] >= 0.5 && s.w[i + 1] < 0.5) {
      return x + dx * (s.w[i] - 0.5) / (s.w[i] - s.w[i + 1]);
    }
  }
  return -1.0;
}

double moment0(const Field& f, std::size_t i, std::size_t nv, double dv) {
  double m = 0.0;
  for (std::size_t j = 0; j < nv; ++j) m += f.values[i * nv + j].real();
  return m * dv;
}

// Largest power of two nt with nt <= traj_size (at least 8), so the lift has
// stride 1 when traj_size < 2 * nt.
std::size_t pow2_slices(std::size_t traj_size) {
  std::size_t nt = 8;
  while (nt * 2 <= traj_size) nt *= 2;
  return nt;
}

}  // namespace

TEST_SUITE("burgers") {

TEST_CASE("conservation state accessors") {
  const Axis ax{AxisLabel::x, 8, 2.0};
  ConservationState s(ax, {1.0, 2.0, -1.0, 0.0, 0.5, 0.5, 3.0, 1.0}, 0.25);
  CHECK(s.t == 0.25);
  CHECK(s.bound == 3.0);
  CHECK(s.max_abs() == 3.0);
  CHECK(s.mass() == doctest::Approx(7.0 * 0.25).epsilon(1e-15));
  // Periodic variation: |2-1|+|-1-2|+|0+1|+|.5-0|+0+|3-.5|+|1-3|+|1-1| = 10
  CHECK(s.total_variation() == doctest::Approx(10.0).epsilon(1e-14));
}

TEST_CASE("shock propagates at half the jump sum") {
  const auto traj = kinlab::solve_burgers(step_state(512, 1.0, 0.0),
                                          RoughTransport{}, 0.3);
  REQUIRE(traj.size() >= 2);
  const auto& last = traj.back();
  CHECK(last.t == doctest::Approx(0.3).epsilon(1e-12));

  const double pos = half_crossing(last);
  REQUIRE(pos > 0.0);
  const double speed = pos / 0.3;
  CHECK(std::abs(speed - 0.5) < 0.01);

  // Conservation, maximum principle, and variation decay.
  CHECK(std::abs(last.mass() - traj.front().mass()) < 1e-10);
  for (double v : last.w) {
    CHECK(v >= -1e-12);
    CHECK(v <= 1.0 + 1e-12);
  }
  CHECK(last.total_variation() <= traj.front().total_variation() + 1e-12);

  // Uniform time steps, initial state included.
  CHECK(traj.front().t == 0.0);
  const double dt = traj[1].t - traj[0].t;
  for (std::size_t k = 1; k + 1 < traj.size(); ++k)
    CHECK(traj[k + 1].t - traj[k].t == doctest::Approx(dt).epsilon(1e-9));
}

TEST_CASE("constant transport shifts the shock speed") {
  const PhaseGrid gtx({{AxisLabel::t, 8, 1.0}, {AxisLabel::x, 8, 1.0}});
  const RoughTransport u = kinlab::constant_transport(0.25, gtx);
  CHECK_FALSE(u.zero());
  CHECK(u.sup_norm == doctest::Approx(0.25).epsilon(1e-15));
  const auto traj = kinlab::solve_burgers(step_state(512, 1.0, 0.0), u, 0.3);
  const double speed = half_crossing(traj.back()) / 0.3;
  CHECK(std::abs(speed - 0.75) < 0.02);
}

TEST_CASE("expansion data spreads into a fan") {
  const auto traj = kinlab::solve_burgers(step_state(512, -0.5, 0.5),
                                          RoughTransport{}, 0.3);
  const auto& last = traj.back();
  double max_jump = 0.0;
  for (std::size_t i = 0; i + 1 < last.w.size(); ++i) {
    const double x = -0.5 + (static_cast<double>(i) + 0.5) / 512.0;
    if (x < -0.35 || x > 0.35) continue;
    max_jump = std::max(max_jump, std::abs(last.w[i + 1] - last.w[i]));
  }
  CHECK(max_jump < 0.05);
  CHECK(last.mass() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("signed-indicator lift recovers the cell averages") {
  const Axis vax{AxisLabel::v, 64, 6.0};
  const Axis xax{AxisLabel::x, 16, 1.0};
  ConservationState s(xax, {0.3, -0.7, 0.0, 1.0, -1.0, 0.5, 0.99, -0.99,
                            0.125, -0.125, 0.8, -0.3, 0.6, -0.6, 0.01, -0.01});
  const Field f = kinlab::maxwellian_burgers(s, vax);
  const double dv = vax.spacing();
  for (std::size_t i = 0; i < 16; ++i) {
    CHECK(moment0(f, i, 64, dv) == doctest::Approx(s.w[i]).epsilon(1e-13));
    for (std::size_t j = 0; j < 64; ++j) {
      const double val = f.values[i * 64 + j].real();
      const double c = -3.0 + static_cast<double>(j) * dv;  // cell center
      CHECK(std::abs(val) <= 1.0 + 1e-15);
      // Cells fully inside v > 0 carry the (0, w) part only; cells fully
      // inside v < 0 carry the -(w, 0) part only.
      if (c - 0.5 * dv >= 0.0) CHECK(val >= -1e-15);
      if (c + 0.5 * dv <= 0.0) CHECK(val <= 1e-15);
      // Outside [-|w|, |w|] the lift vanishes identically.
      if (std::abs(c) - 0.5 * dv > std::abs(s.w[i])) CHECK(val == 0.0);
    }
  }
  // The axis must cover the sup norm plus a unit margin.
  const Axis small{AxisLabel::v, 32, 3.0};
  CHECK_THROWS_AS((void)kinlab::maxwellian_burgers(s, small),
                  kinlab::argument_error);
}

TEST_CASE("equilibrium profile normalizations match quadrature references") {
  for (const auto& row : oracle::kIsentropic) {
    CHECK(kinlab::isentropic_normalization(row.theta) ==
          doctest::Approx(row.c_theta).epsilon(1e-13));
  }
  CHECK_THROWS_AS((void)kinlab::isentropic_normalization(0.0),
                  kinlab::argument_error);
  CHECK_THROWS_AS((void)kinlab::isentropic_normalization(1.5),
                  kinlab::argument_error);
}

TEST_CASE("equilibrium profiles integrate to the density") {
  const Axis vax{AxisLabel::v, 128, 6.0};
  const double dv = vax.spacing();
  for (double theta : {1.0, 0.75, 0.5, 0.25}) {
    for (double rho : {0.2, 0.8, 1.5}) {
      const Field f = kinlab::maxwellian_isentropic(rho, 0.3, theta, vax);
      double m0 = 0.0, m1 = 0.0;
      for (std::size_t j = 0; j < 128; ++j) {
        m0 += f.values[j].real() * dv;
        m1 += f.values[j].real() * (-3.0 + static_cast<double>(j) * dv) * dv;
      }
      CHECK(m0 == doctest::Approx(rho).epsilon(1e-10));
      // Cell-centered first moments approximate rho * u.
      CHECK(m1 == doctest::Approx(rho * 0.3).epsilon(0.01));
    }
  }

  // Centered at a lattice point, the first moment cancels pairwise.
  const Field c = kinlab::maxwellian_isentropic(0.9, 0.0, 0.5, vax);
  double m1 = 0.0;
  for (std::size_t j = 0; j < 128; ++j)
    m1 += c.values[j].real() * (-3.0 + static_cast<double>(j) * dv) * dv;
  CHECK(std::abs(m1) < 1e-12);

  // theta = 1 is the half-strength indicator of [u - rho, u + rho].
  const Field ind = kinlab::maxwellian_isentropic(1.0, 0.0, 1.0, vax);
  for (std::size_t j = 0; j < 128; ++j) {
    const double v = -3.0 + static_cast<double>(j) * dv;  // cell center
    if (std::abs(v) + 0.5 * dv < 0.95)
      CHECK(ind.values[j].real() == doctest::Approx(0.5).epsilon(1e-12));
    if (std::abs(v) - 0.5 * dv > 1.05) CHECK(ind.values[j].real() == 0.0);
  }

  // Degenerate density and unsupported configurations.
  const Field zero = kinlab::maxwellian_isentropic(0.0, 0.3, 0.5, vax);
  CHECK(testutil::max_abs(zero) == 0.0);
  CHECK_THROWS_AS((void)kinlab::maxwellian_isentropic(1.0, 2.5, 0.6, vax),
                  kinlab::argument_error);
  CHECK_THROWS_AS((void)kinlab::maxwellian_isentropic(1.0, 0.0, 0.0, vax),
                  kinlab::argument_error);
}

TEST_CASE("trajectory lift stacks strided snapshots") {
  const auto traj = kinlab::solve_burgers(sine_state(128, 0.5, 0.4),
                                          RoughTransport{}, 0.2);
  REQUIRE(traj.size() >= 8);
  const Axis vax{AxisLabel::v, 32, 6.0};
  const Field lift = kinlab::lift_trajectory(traj, vax, 8);

  REQUIRE(lift.grid.rank() == 3);
  CHECK(lift.grid.axis(0).label == AxisLabel::t);
  CHECK(lift.grid.axis(1).label == AxisLabel::x);
  CHECK(lift.grid.axis(2).label == AxisLabel::v);
  CHECK(lift.grid.axis(0).size == 8);
  CHECK(lift.grid.axis(1).size == 128);
  CHECK(lift.grid.axis(2).size == 32);

  const std::size_t stride = traj.size() / 8;
  const double dt = traj[1].t - traj[0].t;
  CHECK(lift.grid.axis(0).extent ==
        doctest::Approx(dt * static_cast<double>(stride) * 8.0).epsilon(1e-12));

  // Slice k reproduces the lift of state k * stride.
  const double dv = vax.spacing();
  for (std::size_t k : {std::size_t{0}, std::size_t{3}, std::size_t{7}}) {
    const Field direct = kinlab::maxwellian_burgers(traj[k * stride], vax);
    for (std::size_t i = 0; i < 128; ++i) {
      CHECK(moment0(lift, k * 128 + i, 32, dv) ==
            doctest::Approx(traj[k * stride].w[i]).epsilon(1e-12));
      for (std::size_t j = 0; j < 32; ++j)
        CHECK(lift.values[(k * 128 + i) * 32 + j].real() ==
              doctest::Approx(direct.values[i * 32 + j].real())
                  .epsilon(1e-14));
    }
  }

  CHECK_THROWS_AS((void)kinlab::lift_trajectory(
                      std::vector<ConservationState>(traj.begin(),
                                                     traj.begin() + 4),
                      vax, 8),
                  kinlab::argument_error);
  CHECK_THROWS_AS((void)kinlab::lift_trajectory(traj, vax, 4),
                  kinlab::argument_error);
}

TEST_CASE("entropy defect of a smooth flow stays signed and telescopes") {
  const auto traj = kinlab::solve_burgers(sine_state(256, 0.5, 0.4),
                                          RoughTransport{}, 0.3);
  const std::size_t nt = pow2_slices(traj.size());
  REQUIRE(traj.size() / nt == 1);  // stride 1: exact telescoping regime
  const Axis vax{AxisLabel::v, 64, 6.0};
  const Field lift = kinlab::lift_trajectory(traj, vax, nt);
  const auto defect = kinlab::defect_measure(lift, RoughTransport{});
  CHECK(defect.top_residue < 1e-8);
  CHECK(defect.max_value >= 0.0);
  CHECK(defect.min_value >= -1e-6 * std::max(defect.max_value, 1e-30));
}

TEST_CASE("entropy defect concentrates on shocks") {
  const auto shock_traj = kinlab::solve_burgers(step_state(256, 1.0, 0.0),
                                                RoughTransport{}, 0.3);
  const std::size_t nt = pow2_slices(shock_traj.size());
  REQUIRE(shock_traj.size() / nt == 1);
  const Axis vax{AxisLabel::v, 64, 6.0};
  const Field lift = kinlab::lift_trajectory(shock_traj, vax, nt);
  const auto defect = kinlab::defect_measure(lift, RoughTransport{});
  CHECK(defect.top_residue < 1e-8);
  CHECK(defect.min_value >= -1e-6 * defect.max_value);
  CHECK(defect.max_value > 0.0);
  CHECK(defect.total_mass > 0.0);

  const auto fan_traj = kinlab::solve_burgers(step_state(256, -0.5, 0.5),
                                              RoughTransport{}, 0.3);
  const Field lift2 =
      kinlab::lift_trajectory(fan_traj, vax, pow2_slices(fan_traj.size()));
  const auto defect2 = kinlab::defect_measure(lift2, RoughTransport{});
  CHECK(defect2.total_mass < 0.25 * defect.total_mass);
}

TEST_CASE("sampled rough transports are deterministic and calibrated") {
  const PhaseGrid gtx({{AxisLabel::t, 64, 1.0}, {AxisLabel::x, 64, 1.0}});
  const RoughTransport a = kinlab::sample_rough_transport(1.5, 0.3, 11, gtx);
  const RoughTransport b = kinlab::sample_rough_transport(1.5, 0.3, 11, gtx);
  CHECK_FALSE(a.zero());
  CHECK(testutil::max_abs_diff(a.u, b.u) == 0.0);
  CHECK(a.sup_norm == doctest::Approx(0.3).epsilon(1e-13));
  CHECK(testutil::max_abs(a.u) == doctest::Approx(0.3).epsilon(1e-13));
  CHECK(testutil::max_imag(a.u) == 0.0);
  CHECK(a.s0 == 1.5);
  CHECK(a.fitted_s > 0.0);

  const RoughTransport c = kinlab::sample_rough_transport(1.5, 0.3, 12, gtx);
  CHECK(testutil::max_abs_diff(a.u, c.u) > 0.0);

  CHECK(RoughTransport{}.zero());
}

TEST_CASE("regularity report flags smooth and shocked flows correctly") {
  // Smooth data, pre-shock horizon: the measured exponent is far above any
  // threshold (typically at the shell-fit cap).
  const auto smooth = kinlab::solve_burgers(sine_state(1024, 0.0, 0.3),
                                            RoughTransport{}, 0.25);
  REQUIRE(smooth.size() >= 64);
  const auto rep = kinlab::regularity_report(smooth, RoughTransport{});
  CHECK(rep.s0 == 10.0);
  CHECK(rep.threshold == doctest::Approx(1.0 / 3.0 - 0.05).epsilon(1e-12));
  CHECK(rep.pass);
  CHECK(rep.s_measured >= rep.threshold);

  // A shock caps the solution regularity near 1/2, still above 1/3 - 0.05.
  const auto shocked = kinlab::solve_burgers(sine_state(256, 0.0, 0.45),
                                             RoughTransport{}, 0.8);
  REQUIRE(shocked.size() >= 64);
  const auto rep2 = kinlab::regularity_report(shocked, RoughTransport{});
  CHECK(rep2.pass);
  CHECK(rep2.s_measured >= rep2.threshold);

  CHECK_THROWS_AS(
      (void)kinlab::regularity_report(
          std::vector<ConservationState>(smooth.begin(), smooth.begin() + 32),
          RoughTransport{}),
      kinlab::argument_error);
}

}  // TEST_SUITE
