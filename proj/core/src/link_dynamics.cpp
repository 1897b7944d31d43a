#include "fifonet/link_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fifonet {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string fmt_double(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void check_breakpoints(const PiecewiseLinear& curve, double jam_density, const char* what,
                       std::vector<std::string>& problems) {
  const auto& pts = curve.points;
  if (pts.size() < 2) {
    problems.push_back(std::string(what) + ": piecewise_linear needs at least two breakpoints");
    return;
  }
  if (pts.front().first != 0.0) {
    problems.push_back(std::string(what) + ": first breakpoint density must be 0");
  }
  if (pts.back().first != jam_density) {
    problems.push_back(std::string(what) + ": last breakpoint density must equal jam_density " +
                       fmt_double(jam_density));
  }
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (!(pts[i].first > pts[i - 1].first)) {
      problems.push_back(std::string(what) + ": breakpoint densities not strictly increasing at " +
                         std::to_string(i));
    }
  }
}

}  // namespace

double PiecewiseLinear::evaluate(double x, BranchTrace* trace) const {
  // Segment i spans [points[i], points[i+1]].
  auto it = std::upper_bound(points.begin(), points.end(), x,
                             [](double v, const auto& p) { return v < p.first; });
  std::size_t seg = it == points.begin() ? 0 : static_cast<std::size_t>(it - points.begin()) - 1;
  seg = std::min(seg, points.size() - 2);
  record(trace, static_cast<std::uint32_t>(seg));
  const auto& [x0, y0] = points[seg];
  const auto& [x1, y1] = points[seg + 1];
  const double t = (x - x0) / (x1 - x0);
  return (1.0 - t) * y0 + t * y1;
}

std::string family_name(const DemandCurve& curve) {
  return std::visit(overloaded{[](const ExponentialDemand&) { return "exponential"; },
                               [](const PiecewiseLinear&) { return "piecewise_linear"; }},
                    curve);
}

std::string family_name(const SupplyCurve& curve) {
  return std::visit(overloaded{[](const AffineSupply&) { return "affine"; },
                               [](const PiecewiseLinear&) { return "piecewise_linear"; }},
                    curve);
}

double clamp_density(const LinkParams& p, double x) noexcept {
  return std::clamp(x, 0.0, p.jam_density);
}

double demand(const LinkParams& p, double x, BranchTrace* trace) {
  x = clamp_density(p, x);
  return std::visit(
      overloaded{[x](const ExponentialDemand& c) { return -c.scale * std::expm1(-c.rate * x); },
                 [x, trace](const PiecewiseLinear& c) { return c.evaluate(x, trace); }},
      p.demand);
}

double supply(const LinkParams& p, double x, BranchTrace* trace) {
  x = clamp_density(p, x);
  return std::visit(overloaded{[x](const AffineSupply& c) { return c.intercept - x; },
                               [x, trace](const PiecewiseLinear& c) { return c.evaluate(x, trace); }},
                    p.supply);
}

std::vector<std::string> check_link_params(const LinkParams& p, bool has_upstream) {
  std::vector<std::string> problems;
  if (!(p.jam_density > 0.0) || !std::isfinite(p.jam_density)) {
    problems.push_back("jam_density must be finite and > 0");
    return problems;
  }

  if (const auto* e = std::get_if<ExponentialDemand>(&p.demand)) {
    if (!(e->scale > 0.0)) problems.push_back("demand: exponential scale must be > 0");
    if (!(e->rate > 0.0)) problems.push_back("demand: exponential rate must be > 0");
  } else {
    check_breakpoints(std::get<PiecewiseLinear>(p.demand), p.jam_density, "demand", problems);
  }
  if (const auto* a = std::get_if<AffineSupply>(&p.supply)) {
    if (a->intercept != p.jam_density) {
      problems.push_back("supply: affine intercept " + fmt_double(a->intercept) +
                         " must equal jam_density " + fmt_double(p.jam_density));
    }
  } else {
    check_breakpoints(std::get<PiecewiseLinear>(p.supply), p.jam_density, "supply", problems);
  }
  if (!problems.empty()) return problems;

  if (demand(p, 0.0) != 0.0) problems.push_back("demand: d(0) must be 0");
  if (supply(p, p.jam_density) != 0.0) problems.push_back("supply: s(jam_density) must be 0");

  const double step = p.jam_density / kMonotoneGridSteps;
  double prev_d = demand(p, 0.0);
  double prev_s = supply(p, 0.0);
  for (int i = 1; i <= kMonotoneGridSteps; ++i) {
    const double x = i == kMonotoneGridSteps ? p.jam_density : i * step;
    const double d = demand(p, x);
    const double s = supply(p, x);
    if (!std::isfinite(d) || !std::isfinite(s) || d < 0.0 || s < 0.0) {
      problems.push_back("curves must be finite and nonnegative on [0, jam_density]; fails at x=" +
                         fmt_double(x));
      break;
    }
    if (!(d - prev_d > kMonotoneTolerance)) {
      problems.push_back("demand: not strictly increasing near x=" + fmt_double(x));
      break;
    }
    if (!(prev_s - s > kMonotoneTolerance)) {
      problems.push_back("supply: not strictly decreasing near x=" + fmt_double(x));
      break;
    }
    prev_d = d;
    prev_s = s;
  }

  if (has_upstream) {
    if (!p.beta) {
      problems.push_back("beta is required for links with upstream links");
    } else if (!(*p.beta > 0.0) || !std::isfinite(*p.beta)) {
      problems.push_back("beta must be > 0");
    }
  } else if (p.beta) {
    problems.push_back("beta must be absent for links without upstream links");
  }
  if (!(p.gamma >= 0.0) || !std::isfinite(p.gamma)) problems.push_back("gamma must be >= 0");
  if (!(p.delta >= 0.0) || !std::isfinite(p.delta)) problems.push_back("delta must be >= 0");
  return problems;
}

}  // namespace fifonet
