#include "fifonet/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fifonet {
namespace {

void require_finite(std::span<const double> v, double t, const char* what) {
  for (double e : v) {
    if (!std::isfinite(e)) {
      std::ostringstream os;
      os << "non-finite " << what << " at t=" << t;
      throw NonFiniteState(t, os.str());
    }
  }
}

}  // namespace

Trajectory integrate(const VectorField& field, std::span<const double> x0, double t_final,
                     double dt, const std::optional<Box>& box) {
  if (!(dt > 0.0)) throw std::invalid_argument("integrate: dt must be > 0");
  if (!(t_final >= 0.0)) throw std::invalid_argument("integrate: t_final must be >= 0");
  const std::size_t n = x0.size();
  if (box && (box->lower.size() != n || box->upper.size() != n)) {
    throw std::invalid_argument("integrate: box dimension does not match state");
  }

  Trajectory traj;
  traj.step = dt;
  traj.method = "rk4";

  std::vector<double> x(x0.begin(), x0.end());
  require_finite(x, 0.0, "initial state");
  traj.times.push_back(0.0);
  traj.states.push_back(x);

  // Number of steps, tolerant to t_final being a float multiple of dt.
  const auto steps = static_cast<std::size_t>(std::ceil(t_final / dt - 1e-9));
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  double t = 0.0;
  for (std::size_t i = 1; i <= steps; ++i) {
    const double t_next = i == steps ? t_final : static_cast<double>(i) * dt;
    const double h = t_next - t;

    field(x, k1);
    require_finite(k1, t, "vector field");
    for (std::size_t j = 0; j < n; ++j) tmp[j] = x[j] + 0.5 * h * k1[j];
    field(tmp, k2);
    require_finite(k2, t, "vector field");
    for (std::size_t j = 0; j < n; ++j) tmp[j] = x[j] + 0.5 * h * k2[j];
    field(tmp, k3);
    require_finite(k3, t, "vector field");
    for (std::size_t j = 0; j < n; ++j) tmp[j] = x[j] + h * k3[j];
    field(tmp, k4);
    require_finite(k4, t, "vector field");
    for (std::size_t j = 0; j < n; ++j) {
      x[j] += h / 6.0 * (k1[j] + 2.0 * (k2[j] + k3[j]) + k4[j]);
    }
    require_finite(x, t_next, "state");

    if (box) {
      for (std::size_t j = 0; j < n; ++j) {
        const double c = std::clamp(x[j], box->lower[j], box->upper[j]);
        if (c != x[j]) {
          const double width = box->upper[j] - box->lower[j];
          const double rel = width > 0.0 ? std::abs(c - x[j]) / width : std::abs(c - x[j]);
          traj.max_relative_clamp = std::max(traj.max_relative_clamp, rel);
          x[j] = c;
        }
      }
    }
    t = t_next;
    traj.times.push_back(t);
    traj.states.push_back(x);
  }
  return traj;
}

FdSpec FdSpec::for_scales(std::span<const double> scale) {
  FdSpec spec;
  for (double s : scale) {
    spec.step.push_back(1e-6 * s);
    spec.exclusion_radius.push_back(1e-4 * s);
  }
  return spec;
}

FdJacobian jacobian_fd(const TracedFunction& f, std::span<const double> x, const FdSpec& spec) {
  const std::size_t n = x.size();
  if (spec.step.size() != n || spec.exclusion_radius.size() != n) {
    throw std::invalid_argument("jacobian_fd: FdSpec dimension does not match x");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!(spec.step[j] > 0.0) || !(spec.exclusion_radius[j] >= spec.step[j])) {
      throw std::invalid_argument("jacobian_fd: need step > 0 and exclusion_radius >= step");
    }
  }

  BranchTrace centre;
  const auto f0 = f(x, &centre);
  FdJacobian jac;
  jac.rows = f0.size();
  jac.cols = n;
  jac.values.assign(jac.rows * n, 0.0);
  jac.masked.assign(n, 0);

  std::vector<double> probe(x.begin(), x.end());
  BranchTrace trace;
  auto eval = [&](std::size_t j, double offset) {
    probe[j] = x[j] + offset;
    trace.clear();
    auto out = f(probe, &trace);
    probe[j] = x[j];
    if (!(trace == centre)) jac.masked[j] = 1;
    return out;
  };

  for (std::size_t j = 0; j < n; ++j) {
    const double h = spec.step[j];
    const double r = spec.exclusion_radius[j];
    const auto plus = eval(j, h);
    const auto minus = eval(j, -h);
    if (r > h) {
      eval(j, r);
      eval(j, -r);
    }
    // The denominator is the exact spacing of the probe points.
    const double spacing = (x[j] + h) - (x[j] - h);
    for (std::size_t i = 0; i < jac.rows; ++i) {
      jac.values[i * n + j] = (plus[i] - minus[i]) / spacing;
    }
  }
  return jac;
}

}  // namespace fifonet
