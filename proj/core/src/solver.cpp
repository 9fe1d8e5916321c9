// SPDX-License-Identifier: Apache-2.0

#include "kinlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <string>

#include "kinlab/errors.hpp"
#include "kinlab/fft.hpp"
#include "kinlab/kernel.hpp"
#include "kinlab/spectral.hpp"

namespace kinlab {

namespace {

struct SolverLattice {
  std::size_t ax_x = 0, ax_v = 0;
  std::size_t nx = 0, nv = 0, sx = 0, sv = 0;
  double lx = 0.0, lv = 0.0;
};

SolverLattice solver_lattice(const PhaseGrid& g, const char* who) {
  if (g.rank() != 2 || g.find(AxisLabel::x) < 0 || g.find(AxisLabel::v) < 0)
    throw argument_error(std::string(who) +
                         ": grid must have exactly the axes {x, v}");
  SolverLattice lat;
  lat.ax_x = g.require(AxisLabel::x);
  lat.ax_v = g.require(AxisLabel::v);
  lat.nx = g.axis(lat.ax_x).size;
  lat.nv = g.axis(lat.ax_v).size;
  lat.sx = g.stride(lat.ax_x);
  lat.sv = g.stride(lat.ax_v);
  lat.lx = g.axis(lat.ax_x).extent;
  lat.lv = g.axis(lat.ax_v).extent;
  return lat;
}

// Lattice units the shear moves the velocity frequency of the first x mode
// by in one step of dt; must be an integer for the shear to be exact.
long long shear_shift(double dt, const SolverLattice& lat) {
  const double m = dt * lat.lv / lat.lx;
  const double r = std::round(m);
  if (std::abs(m - r) > 1e-9 * std::max(1.0, std::abs(m))) {
    char msg[256];
    std::snprintf(msg, sizeof msg,
                  "time step %.17g does not map the velocity frequency "
                  "lattice to itself; admissible steps are integer multiples "
                  "of Lx/Lv = %.17g (nearest: %.17g and %.17g)",
                  dt, lat.lx / lat.lv, std::floor(m) * lat.lx / lat.lv,
                  std::ceil(m) * lat.lx / lat.lv);
    throw config_error(msg);
  }
  return static_cast<long long>(r);
}

void check_sigma(double sigma, const char* who) {
  if (!(sigma > 0.0) || sigma > 4.0)
    throw argument_error(std::string(who) + ": sigma must lie in (0, 4]");
}

}  // namespace

Field step_exact_linear(const Field& f, double dt, double sigma,
                        bool dissipation) {
  if (!(dt > 0.0)) throw argument_error("step_exact_linear: dt must be > 0");
  check_sigma(sigma, "step_exact_linear");
  const SolverLattice lat = solver_lattice(f.grid, "step_exact_linear");
  const long long shift = shear_shift(dt, lat);

  const bool was_physical = f.fully_physical();
  if (!was_physical && !f.fully_spectral())
    throw argument_error(
        "step_exact_linear: field must be fully physical or fully spectral");
  const Field fhat = was_physical ? spectral_copy(f) : f;

  const KernelSpec symbol_spec{1, sigma, 32};
  Field out(f.grid, true);
  const long long nv = static_cast<long long>(lat.nv);
  for (std::size_t ix = 0; ix < lat.nx; ++ix) {
    const long long kx = f.grid.freq_index(lat.ax_x, ix);
    const double xi = f.grid.freq(lat.ax_x, ix);
    const long long step_units = kx * shift;
    for (std::size_t iv = 0; iv < lat.nv; ++iv) {
      // Source mode eta + dt xi, wrapped periodically onto the lattice.
      const long long kv = f.grid.freq_index(lat.ax_v, iv);
      const long long src_signed = kv + step_units;
      const std::size_t src =
          static_cast<std::size_t>(((src_signed % nv) + nv) % nv);
      std::complex<double> val = fhat.values[ix * lat.sx + src * lat.sv];
      if (dissipation) {
        const double eta = f.grid.freq(lat.ax_v, iv);
        const double weight =
            drift_symbol(symbol_spec, {dt * xi, 0.0}, {-eta, 0.0});
        val *= std::exp(-dt * weight);
      }
      out.values[ix * lat.sx + iv * lat.sv] = val;
    }
  }
  if (was_physical) {
    inverse_axes(out, {lat.ax_x, lat.ax_v});
  }
  return out;
}

Field advect_u(const Field& f, const Field& u, double dt, AdvectFlux flux) {
  if (!(dt > 0.0)) throw argument_error("advect_u: dt must be > 0");
  if (!f.fully_physical() || !u.fully_physical())
    throw argument_error("advect_u: fields must be physical");
  const SolverLattice lat = solver_lattice(f.grid, "advect_u");
  if (u.grid.rank() != 1 || u.grid.axis(0).label != AxisLabel::x ||
      !(u.grid.axis(0) == f.grid.axis(lat.ax_x)))
    throw argument_error("advect_u: u must live on the x line of f's grid");

  const std::size_t nx = lat.nx, nv = lat.nv;
  const double dx = f.grid.axis(lat.ax_x).spacing();

  std::vector<double> ubar(nx);  // interface speeds at i + 1/2
  for (std::size_t i = 0; i < nx; ++i)
    ubar[i] = 0.5 * (u.values[i].real() + u.values[(i + 1) % nx].real());

  double max_speed = 0.0;
  if (flux == AdvectFlux::transport_only) {
    for (double c : ubar) max_speed = std::max(max_speed, std::abs(c));
  } else {
    const double v_lo = f.grid.coord(lat.ax_v, 0);
    const double v_hi = f.grid.coord(lat.ax_v, nv - 1);
    for (double c : ubar)
      max_speed = std::max({max_speed, std::abs(c + v_lo), std::abs(c + v_hi)});
  }
  if (max_speed * dt / dx > 0.9) {
    char msg[192];
    const double adm = 0.9 * dx / max_speed;
    std::snprintf(msg, sizeof msg,
                  "advect_u: CFL number %.3g exceeds 0.9 (max speed %.6g, "
                  "dx %.6g); use dt <= %.6g",
                  max_speed * dt / dx, max_speed, dx, adm);
    throw cfl_error(msg, adm);
  }

  Field out = f;
  std::vector<std::complex<double>> line(nx), fluxes(nx);
  for (std::size_t jv = 0; jv < nv; ++jv) {
    const double v = f.grid.coord(lat.ax_v, jv);
    for (std::size_t i = 0; i < nx; ++i)
      line[i] = f.values[i * lat.sx + jv * lat.sv];
    for (std::size_t i = 0; i < nx; ++i) {
      const double c =
          flux == AdvectFlux::transport_only ? ubar[i] : ubar[i] + v;
      fluxes[i] = std::max(c, 0.0) * line[i] +
                  std::min(c, 0.0) * line[(i + 1) % nx];
    }
    for (std::size_t i = 0; i < nx; ++i) {
      const std::complex<double> upstream = fluxes[(i + nx - 1) % nx];
      out.values[i * lat.sx + jv * lat.sv] =
          line[i] - dt / dx * (fluxes[i] - upstream);
    }
  }
  return out;
}

void validate(const CauchyProblem& problem) {
  const SolverLattice lat = solver_lattice(problem.grid, "CauchyProblem");
  check_sigma(problem.sigma, "CauchyProblem");
  if (!(problem.T > 0.0)) throw argument_error("CauchyProblem: T must be > 0");
  if (problem.steps < 1)
    throw argument_error("CauchyProblem: steps must be >= 1");
  if (!(problem.f0.grid == problem.grid))
    throw argument_error("CauchyProblem: f0 must live on the problem grid");
  if (problem.drift_u && problem.flux != AdvectFlux::transport_only)
    throw config_error(
        "CauchyProblem: the kinetic shear is integrated spectrally, so the "
        "split advection must use the transport_only flux (the shifted flux "
        "would transport by v twice)");
  shear_shift(problem.T / static_cast<double>(problem.steps), lat);

  // Velocity guard band: the outer 1/8 of v cells per side must be empty so
  // periodic wrap does not contaminate the evolution.
  const Field f0 = problem.f0.fully_physical() ? problem.f0
                                               : physical_copy(problem.f0);
  double max_all = 0.0, max_guard = 0.0;
  const std::size_t guard = lat.nv / 8;
  for (std::size_t jv = 0; jv < lat.nv; ++jv) {
    const bool in_guard = jv < guard || jv >= lat.nv - guard;
    for (std::size_t i = 0; i < lat.nx; ++i) {
      const double a = std::abs(f0.values[i * lat.sx + jv * lat.sv]);
      max_all = std::max(max_all, a);
      if (in_guard) max_guard = std::max(max_guard, a);
    }
  }
  if (max_all > 0.0 && max_guard > 1e-8 * max_all)
    throw precondition_error(
        "CauchyProblem: initial data leaks into the velocity guard band "
        "(outer 1/8 of v cells per side); enlarge the v box");
}

namespace {

StepDiagnostics diagnose(const Field& fhat, const SolverLattice& lat,
                         double t, double sigma) {
  StepDiagnostics d;
  d.t = t;
  d.mass = fhat.values[0].real();
  double sum = 0.0, sum_half = 0.0, sum_full = 0.0;
  for (std::size_t iv = 0; iv < lat.nv; ++iv) {
    const double eta = std::abs(fhat.grid.freq(lat.ax_v, iv));
    const double w_half = std::pow(eta, sigma);        // |eta|^{2 (sigma/2)}
    const double w_full = std::pow(eta, 2.0 * sigma);  // |eta|^{2 sigma}
    for (std::size_t ix = 0; ix < lat.nx; ++ix) {
      const double e = std::norm(fhat.values[ix * lat.sx + iv * lat.sv]);
      sum += e;
      sum_half += w_half * e;
      sum_full += w_full * e;
    }
  }
  const double plancherel = 1.0 / fhat.grid.box_volume();
  d.l2 = std::sqrt(sum * plancherel);
  d.h_half = std::sqrt(sum_half * plancherel);
  d.h_full = std::sqrt(sum_full * plancherel);
  return d;
}

void axpy(Field& y, double a, const Field& x) {
  for (std::size_t i = 0; i < y.values.size(); ++i) y.values[i] += a * x.values[i];
}

}  // namespace

Trajectory solve_cauchy(const CauchyProblem& problem) {
  validate(problem);
  const SolverLattice lat = solver_lattice(problem.grid, "solve_cauchy");
  const double dt = problem.T / static_cast<double>(problem.steps);

  Trajectory traj;
  traj.dt = dt;
  Field state = problem.f0.fully_spectral() ? problem.f0
                                            : spectral_copy(problem.f0);

  auto emit = [&](double t) {
    traj.snapshots.push_back(physical_copy(state));
    traj.diagnostics.push_back(diagnose(state, lat, t, problem.sigma));
  };
  auto sample_spectral = [&](const std::function<Field(double)>& fn, double t) {
    Field g = fn(t);
    if (!(g.grid == problem.grid))
      throw argument_error("solve_cauchy: sampler returned a mismatched grid");
    return g.fully_spectral() ? g : spectral_copy(g);
  };

  emit(0.0);
  Field source_prev(problem.grid, true);
  if (problem.source && !problem.drift_u)
    source_prev = sample_spectral(problem.source, 0.0);

  for (std::size_t n = 0; n < problem.steps; ++n) {
    const double t0 = static_cast<double>(n) * dt;
    if (!problem.drift_u) {
      // Trapezoidal Duhamel: F <- P(dt)[F + dt/2 S(t)] + dt/2 S(t + dt).
      if (problem.source) axpy(state, 0.5 * dt, source_prev);
      state = step_exact_linear(state, dt, problem.sigma, problem.dissipation);
      if (problem.source) {
        Field source_next = sample_spectral(problem.source, t0 + dt);
        axpy(state, 0.5 * dt, source_next);
        source_prev = std::move(source_next);
      }
    } else {
      // Strang: half advect, full linear step, half advect; midpoint source.
      Field phys = physical_copy(state);
      phys = advect_u(phys, problem.drift_u(t0), 0.5 * dt, problem.flux);
      Field spec = spectral_copy(phys);
      spec = step_exact_linear(spec, dt, problem.sigma, problem.dissipation);
      phys = physical_copy(spec);
      phys = advect_u(phys, problem.drift_u(t0 + 0.5 * dt), 0.5 * dt,
                      problem.flux);
      state = spectral_copy(phys);
      if (problem.source)
        axpy(state, dt, sample_spectral(problem.source, t0 + 0.5 * dt));
    }
    emit(t0 + dt);
  }
  return traj;
}

double pde_residual(const Trajectory& trajectory,
                    const CauchyProblem& problem) {
  if (trajectory.snapshots.size() < 3)
    throw argument_error("pde_residual: need at least 3 snapshots");
  const double dt = trajectory.dt;
  double accum = 0.0;
  for (std::size_t j = 1; j + 1 < trajectory.snapshots.size(); ++j) {
    const Field& fj = trajectory.snapshots[j];
    Field r = trajectory.snapshots[j + 1];
    axpy(r, -1.0, trajectory.snapshots[j - 1]);
    for (auto& z : r.values) z *= 1.0 / (2.0 * dt);

    Field shear = coordinate_derivative(fj, AxisLabel::x);
    multiply_by_coordinate(shear, AxisLabel::v);
    axpy(r, 1.0, shear);

    if (problem.dissipation)
      axpy(r, 1.0, fractional_derivative(fj, {AxisLabel::v}, problem.sigma));

    if (problem.drift_u) {
      const Field uj = problem.drift_u(static_cast<double>(j) * dt);
      axpy(r, 1.0, coordinate_derivative(broadcast_multiply(fj, uj),
                                         AxisLabel::x));
    }
    if (problem.source) {
      Field sj = problem.source(static_cast<double>(j) * dt);
      if (!sj.fully_physical()) sj = physical_copy(sj);
      axpy(r, -1.0, sj);
    }
    const double norm = l2_norm(r);
    accum += norm * norm * dt;
  }
  return std::sqrt(accum);
}

EnergyReport energy_inequality_check(const Trajectory& trajectory,
                                     const CauchyProblem& problem, double R) {
  if (!(R > 0.0))
    throw argument_error("energy_inequality_check: R must be > 0");
  if (problem.T > 2.0 * R)
    throw precondition_error(
        "energy_inequality_check: trajectory does not fit the [-R, R] time "
        "window (T > 2R)");
  if (l2_norm(problem.f0) > 1e-12)
    throw precondition_error(
        "energy_inequality_check: requires vanishing initial data");
  if (problem.drift_u) {
    for (double frac : {0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0}) {
      Field u = problem.drift_u(frac * problem.T);
      if (!u.fully_physical()) u = physical_copy(u);
      double lo = u.values[0].real(), hi = lo, amp = 0.0;
      for (const auto& z : u.values) {
        lo = std::min(lo, z.real());
        hi = std::max(hi, z.real());
        amp = std::max(amp, std::abs(z));
      }
      if (hi - lo > 1e-12 * (1.0 + amp))
        throw precondition_error(
            "energy_inequality_check: u must be divergence-free (constant "
            "in x)");
    }
  }

  const double dt = trajectory.dt;
  const std::size_t m = trajectory.diagnostics.size();
  double sum_l2 = 0.0, sum_half = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double w = (j == 0 || j + 1 == m) ? 0.5 : 1.0;
    const StepDiagnostics& d = trajectory.diagnostics[j];
    sum_l2 += w * d.l2 * d.l2 * dt;
    sum_half += w * d.h_half * d.h_half * dt;
  }
  EnergyReport rep;
  rep.numerator = std::sqrt(sum_l2) + std::sqrt(sum_half);

  if (!problem.source) {
    rep.denominator = 0.0;
    rep.ratio = 0.0;
    return rep;
  }
  const double e = 0.5 * problem.sigma;
  double sum_s = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double w = (j == 0 || j + 1 == m) ? 0.5 : 1.0;
    const Field sj = problem.source(static_cast<double>(j) * dt);
    const double norm = sobolev_mixed_norm(sj, 0.0, -e);
    sum_s += w * norm * norm * dt;
  }
  rep.denominator = R * std::sqrt(sum_s);
  if (rep.denominator == 0.0) {
    rep.ratio = rep.numerator < 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
    return rep;
  }
  rep.ratio = rep.numerator / rep.denominator;
  return rep;
}

}  // namespace kinlab
