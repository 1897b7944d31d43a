#include "fifonet/verification.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "fifonet/embedding.hpp"
#include "fifonet/numerics.hpp"
#include "fifonet/simulation.hpp"

namespace fifonet {
namespace {

enum class Requirement { NonNegative, NonPositive, Zero };

class Tally {
 public:
  Tally(Condition c, double tolerance) : tolerance_(tolerance) { result_.condition = c; }

  template <class MakeWitness>
  void probe(double value, Requirement req, bool masked, MakeWitness&& make_witness) {
    if (masked) {
      ++result_.masked;
      return;
    }
    ++result_.probes;
    double violation = 0.0;
    switch (req) {
      case Requirement::NonNegative: violation = -value; break;
      case Requirement::NonPositive: violation = value; break;
      case Requirement::Zero: violation = std::abs(value); break;
    }
    violation = std::max(violation, 0.0);
    if (violation > result_.worst_violation) {
      result_.worst_violation = violation;
      if (violation > tolerance_) result_.witness = make_witness();
    }
  }

  ConditionResult finish() {
    result_.pass = result_.worst_violation <= tolerance_;
    return result_;
  }

 private:
  double tolerance_;
  ConditionResult result_;
};

std::vector<double> sample_box(std::mt19937_64& rng, std::span<const double> upper) {
  std::vector<double> x(upper.size());
  for (std::size_t i = 0; i < upper.size(); ++i) {
    x[i] = std::uniform_real_distribution<double>(0.0, upper[i])(rng);
  }
  return x;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double e : v) m = std::max(m, std::abs(e));
  return m;
}

std::string pair_name(const Network& net, std::size_t p) {
  const auto& pair = net.pairs()[p];
  return to_string(net.link_id(pair.from)) + "->" + to_string(net.link_id(pair.to));
}

bool contains(std::span<const std::size_t> set, std::size_t v) {
  return std::find(set.begin(), set.end(), v) != set.end();
}

// Layout of the quantities differentiated for the flow-condition audit.
struct FlowQuantities {
  std::size_t n;
  std::size_t pairs;
  std::size_t inflow(std::size_t l) const { return l; }
  std::size_t outflow(std::size_t l) const { return n + l; }
  std::size_t fifo(std::size_t p) const { return 2 * n + p; }
  std::size_t nonfifo(std::size_t p) const { return 2 * n + pairs + p; }
  std::size_t fifo_into(std::size_t l) const { return 2 * n + 2 * pairs + l; }
  std::size_t nonfifo_into(std::size_t l) const { return 3 * n + 2 * pairs + l; }
  std::size_t total_out(std::size_t l) const { return 4 * n + 2 * pairs + l; }
  std::size_t size() const { return 5 * n + 2 * pairs; }
};

}  // namespace

std::string condition_name(Condition c) {
  switch (c) {
    case Condition::A1: return "A1";
    case Condition::A2: return "A2";
    case Condition::A3: return "A3";
    case Condition::A4: return "A4";
    case Condition::A5: return "A5";
    case Condition::A6: return "A6";
    case Condition::A7: return "A7";
    case Condition::A8: return "A8";
    case Condition::A9: return "A9";
    case Condition::DecompositionIdentity: return "D1.identity";
    case Condition::DecompositionXSign: return "D1.x-sign";
    case Condition::DecompositionYSign: return "D1.y-sign";
  }
  return "?";
}

std::string condition_description(Condition c) {
  switch (c) {
    case Condition::A1: return "exogenous inflow nondecreasing in other densities";
    case Condition::A2: return "exogenous outflow nonincreasing in other densities";
    case Condition::A3: return "non-FIFO flow depends only on links at its junction";
    case Condition::A4: return "FIFO flow depends only on links at its junction";
    case Condition::A5: return "net FIFO inflow nondecreasing in upstream densities";
    case Condition::A6: return "net non-FIFO inflow nondecreasing in upstream densities";
    case Condition::A7: return "net outflow nonincreasing in densities at the head junction";
    case Condition::A8: return "non-FIFO flow nondecreasing in adjacent densities";
    case Condition::A9: return "FIFO flow nonincreasing in adjacent densities";
    case Condition::DecompositionIdentity: return "g(x, x) equals the vector field";
    case Condition::DecompositionXSign: return "g_i nondecreasing in x_j, i != j";
    case Condition::DecompositionYSign: return "g_i nonincreasing in y_j";
  }
  return "?";
}

bool AuditReport::all_pass() const {
  return std::all_of(results.begin(), results.end(),
                     [](const ConditionResult& r) { return r.pass; });
}

const ConditionResult* AuditReport::find(Condition c) const {
  for (const auto& r : results) {
    if (r.condition == c) return &r;
  }
  return nullptr;
}

void AuditReport::append(const AuditReport& other) {
  results.insert(results.end(), other.results.begin(), other.results.end());
}

AuditReport check_assumptions(const FlowModel& model, const AuditOptions& options) {
  const Network& net = model.network();
  const std::size_t n = net.size();
  const auto upper = model.jam_densities();
  const FlowQuantities q{n, net.pairs().size()};

  TracedFunction quantities = [&](std::span<const double> x, BranchTrace* trace) {
    FlowBreakdown f;
    model.evaluate(x, f, trace);
    std::vector<double> out(q.size(), 0.0);
    for (std::size_t l = 0; l < n; ++l) {
      out[q.inflow(l)] = f.inflow_exo[l];
      out[q.outflow(l)] = f.outflow_exo[l];
    }
    for (std::size_t p = 0; p < q.pairs; ++p) {
      const auto& pair = net.pairs()[p];
      out[q.fifo(p)] = f.fifo[p];
      out[q.nonfifo(p)] = f.nonfifo[p];
      out[q.fifo_into(pair.to)] += f.fifo[p];
      out[q.nonfifo_into(pair.to)] += f.nonfifo[p];
      out[q.total_out(pair.from)] += f.pair_total(p);
    }
    return out;
  };

  std::vector<Tally> tallies;
  for (Condition c : kFlowConditions) tallies.emplace_back(c, options.tolerance);
  auto tally = [&](Condition c) -> Tally& { return tallies[static_cast<std::size_t>(c)]; };

  const FdSpec spec = FdSpec::for_scales(upper);
  std::mt19937_64 rng(options.seed);
  for (std::size_t s = 0; s < options.samples; ++s) {
    const auto x = sample_box(rng, upper);
    const FdJacobian jac = jacobian_fd(quantities, x, spec);

    auto check = [&](Condition c, std::size_t row, std::size_t m, Requirement req,
                     const std::string& quantity) {
      tally(c).probe(jac(row, m), req, jac.is_masked(row, m), [&] {
        return Witness{x, {}, quantity, net.link_id(m), false, jac(row, m)};
      });
    };

    for (std::size_t m = 0; m < n; ++m) {
      for (std::size_t l = 0; l < n; ++l) {
        if (m == l) continue;
        const std::string lname = to_string(net.link_id(l));
        check(Condition::A1, q.inflow(l), m, Requirement::NonNegative, "inflow(" + lname + ")");
        check(Condition::A2, q.outflow(l), m, Requirement::NonPositive, "outflow(" + lname + ")");
      }
      for (std::size_t p = 0; p < q.pairs; ++p) {
        const auto& pair = net.pairs()[p];
        const std::size_t v = pair.junction;
        if (!contains(net.in_links(v), m) && !contains(net.out_links(v), m)) {
          check(Condition::A3, q.nonfifo(p), m, Requirement::Zero,
                "nonfifo(" + pair_name(net, p) + ")");
          check(Condition::A4, q.fifo(p), m, Requirement::Zero, "fifo(" + pair_name(net, p) + ")");
        }
        if (contains(net.adjacent(pair.to), m)) {
          check(Condition::A8, q.nonfifo(p), m, Requirement::NonNegative,
                "nonfifo(" + pair_name(net, p) + ")");
          check(Condition::A9, q.fifo(p), m, Requirement::NonPositive,
                "fifo(" + pair_name(net, p) + ")");
        }
      }
      for (std::size_t l = 0; l < n; ++l) {
        const std::string lname = to_string(net.link_id(l));
        if (contains(net.upstream(l), m)) {
          check(Condition::A5, q.fifo_into(l), m, Requirement::NonNegative,
                "sum fifo into " + lname);
          check(Condition::A6, q.nonfifo_into(l), m, Requirement::NonNegative,
                "sum nonfifo into " + lname);
        }
        if (m != l && contains(net.head_neighbourhood(l), m)) {
          check(Condition::A7, q.total_out(l), m, Requirement::NonPositive,
                "sum flow out of " + lname);
        }
      }
    }
  }

  AuditReport report;
  report.samples = options.samples;
  report.seed = options.seed;
  report.tolerance = options.tolerance;
  for (auto& t : tallies) report.results.push_back(t.finish());
  return report;
}

AuditReport check_decomposition(const FlowModel& model, const AuditOptions& options) {
  const Network& net = model.network();
  const std::size_t n = net.size();
  const auto upper = model.jam_densities();

  Tally identity(Condition::DecompositionIdentity, options.identity_tolerance);
  Tally xsign(Condition::DecompositionXSign, options.tolerance);
  Tally ysign(Condition::DecompositionYSign, options.tolerance);

  TracedFunction g = [&](std::span<const double> xy, BranchTrace* trace) {
    return decomposition(model, xy.first(n), xy.subspan(n), trace);
  };
  std::vector<double> scales(upper.begin(), upper.end());
  scales.insert(scales.end(), upper.begin(), upper.end());
  const FdSpec spec = FdSpec::for_scales(scales);

  std::mt19937_64 rng(options.seed);
  for (std::size_t s = 0; s < options.samples; ++s) {
    const auto x = sample_box(rng, upper);
    const auto y = sample_box(rng, upper);

    const auto diag = decomposition(model, x, x);
    const auto field = vector_field(model, x);
    for (std::size_t l = 0; l < n; ++l) {
      identity.probe(std::abs(diag[l] - field[l]), Requirement::NonPositive, false, [&] {
        return Witness{x, x, "g(x,x) - F(x) at " + to_string(net.link_id(l)), net.link_id(l),
                       false, diag[l] - field[l]};
      });
    }

    std::vector<double> xy = x;
    xy.insert(xy.end(), y.begin(), y.end());
    const FdJacobian jac = jacobian_fd(g, xy, spec);
    for (std::size_t i = 0; i < n; ++i) {
      const std::string quantity = "g(" + to_string(net.link_id(i)) + ")";
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) {
          xsign.probe(jac(i, j), Requirement::NonNegative, jac.is_masked(i, j), [&] {
            return Witness{x, y, quantity, net.link_id(j), false, jac(i, j)};
          });
        }
        ysign.probe(jac(i, n + j), Requirement::NonPositive, jac.is_masked(i, n + j), [&] {
          return Witness{x, y, quantity, net.link_id(j), true, jac(i, n + j)};
        });
      }
    }
  }

  AuditReport report;
  report.samples = options.samples;
  report.seed = options.seed;
  report.tolerance = options.tolerance;
  report.results = {identity.finish(), xsign.finish(), ysign.finish()};
  return report;
}

std::string sign_class_name(SignClass c) {
  switch (c) {
    case SignClass::Zero: return "zero";
    case SignClass::NonNegative: return "nonnegative";
    case SignClass::NonPositive: return "nonpositive";
    case SignClass::Mixed: return "mixed";
  }
  return "?";
}

std::size_t SignSurvey::mixed_count() const {
  return static_cast<std::size_t>(std::count_if(
      entries.begin(), entries.end(), [](const SignEntry& e) { return e.sign == SignClass::Mixed; }));
}

SignSurvey jacobian_sign_survey(const FlowModel& model, const AuditOptions& options) {
  const Network& net = model.network();
  const std::size_t n = net.size();
  const auto upper = model.jam_densities();

  SignSurvey survey;
  survey.samples = options.samples;
  survey.tolerance = options.tolerance;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) survey.entries.push_back({i, j});
    }
  }

  TracedFunction field = [&](std::span<const double> x, BranchTrace* trace) {
    return vector_field(model, x, trace);
  };
  const FdSpec spec = FdSpec::for_scales(upper);
  std::mt19937_64 rng(options.seed);
  bool first = true;
  for (std::size_t s = 0; s < options.samples; ++s) {
    const auto x = sample_box(rng, upper);
    const FdJacobian jac = jacobian_fd(field, x, spec);
    for (auto& e : survey.entries) {
      if (jac.is_masked(e.row, e.col)) {
        ++e.masked;
        continue;
      }
      const double v = jac(e.row, e.col);
      if (v > options.tolerance) ++e.positive;
      if (v < -options.tolerance) ++e.negative;
      e.min_value = first ? v : std::min(e.min_value, v);
      e.max_value = first ? v : std::max(e.max_value, v);
    }
    first = false;
  }
  for (auto& e : survey.entries) {
    if (e.positive > 0 && e.negative > 0) {
      e.sign = SignClass::Mixed;
    } else if (e.positive > 0) {
      e.sign = SignClass::NonNegative;
    } else if (e.negative > 0) {
      e.sign = SignClass::NonPositive;
    } else {
      e.sign = SignClass::Zero;
    }
  }
  return survey;
}

ConvergenceCertificate certify_convergence(const FlowModel& model, const CertifyOptions& options) {
  const std::size_t n = model.network().size();
  const auto upper = model.jam_densities();

  ConvergenceCertificate cert;
  cert.horizon = options.t_horizon;
  cert.dt = options.dt;

  const EmbeddingState start{std::vector<double>(n, 0.0),
                             std::vector<double>(upper.begin(), upper.end())};
  const EmbeddingState rate = embedding_field(model, start);
  cert.initial_signs_ok =
      std::all_of(rate.x.begin(), rate.x.end(), [](double v) { return v >= 0.0; }) &&
      std::all_of(rate.y.begin(), rate.y.end(), [](double v) { return v <= 0.0; });
  if (!cert.initial_signs_ok) {
    cert.diagnostics.push_back(
        "initial derivative is not increasing in the southeast order: need g(0, xbar) >= 0 and "
        "g(xbar, 0) <= 0");
  }

  const Trajectory traj = simulate_embedding(model, start, options.t_horizon, options.dt);

  cert.monotonicity_verified = true;
  for (std::size_t i = 1; i < traj.states.size(); ++i) {
    if (!order_leq(split_state(traj.states[i - 1]), split_state(traj.states[i]),
                   options.order_tolerance)) {
      cert.monotonicity_verified = false;
      std::ostringstream os;
      os << "trajectory not increasing in the southeast order between t=" << traj.times[i - 1]
         << " and t=" << traj.times[i];
      cert.diagnostics.push_back(os.str());
      break;
    }
  }

  auto embedding_residual = [&](std::span<const double> stacked) {
    const auto r = embedding_field(model, split_state(stacked));
    return std::max(max_abs(r.x), max_abs(r.y));
  };

  const auto end = split_state(traj.final_state());
  cert.x_final = end.x;
  cert.y_final = end.y;
  cert.embedding_residual = embedding_residual(traj.final_state());
  cert.settled = cert.embedding_residual <= options.residual_tol;

  cert.equilibrium.resize(n);
  for (std::size_t l = 0; l < n; ++l) {
    cert.gap = std::max(cert.gap, std::abs(end.x[l] - end.y[l]));
    cert.equilibrium[l] = 0.5 * (end.x[l] + end.y[l]);
  }
  cert.residual = max_abs(vector_field(model, cert.equilibrium));

  if (!cert.settled) {
    const std::size_t earlier = traj.states.size() * 9 / 10;
    const double before = embedding_residual(traj.states[earlier]);
    cert.horizon_too_short = cert.embedding_residual < before;
    std::ostringstream os;
    os << "embedding field at the horizon is " << cert.embedding_residual << " > "
       << options.residual_tol;
    if (cert.horizon_too_short) os << "; still decreasing, try a longer horizon";
    cert.diagnostics.push_back(os.str());
  }
  if (cert.gap > options.gap_tol) {
    std::ostringstream os;
    os << "gap between x(T) and y(T) is " << cert.gap << " > " << options.gap_tol;
    cert.diagnostics.push_back(os.str());
  }
  if (cert.residual > options.residual_tol) {
    std::ostringstream os;
    os << "vector field at the midpoint is " << cert.residual << " > " << options.residual_tol;
    cert.diagnostics.push_back(os.str());
  }

  const bool certified = cert.initial_signs_ok && cert.monotonicity_verified && cert.settled &&
                         cert.gap <= options.gap_tol && cert.residual <= options.residual_tol;
  cert.status = certified ? CertificateStatus::Certified : CertificateStatus::Inconclusive;

  const std::size_t keep = std::min(options.tail_samples, traj.states.size());
  for (std::size_t i = traj.states.size() - keep; i < traj.states.size(); ++i) {
    cert.tail_times.push_back(traj.times[i]);
    cert.tail_states.push_back(traj.states[i]);
  }
  return cert;
}

EquilibriumCrossCheck cross_check_equilibrium(const FlowModel& model,
                                              std::span<const double> equilibrium,
                                              std::size_t starts, std::uint64_t seed,
                                              double t_horizon, double dt, double tolerance) {
  const auto upper = model.jam_densities();
  EquilibriumCrossCheck out;
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < starts; ++s) {
    auto x0 = sample_box(rng, upper);
    const auto traj = simulate(model, x0, t_horizon, dt);
    double dist = 0.0;
    for (std::size_t l = 0; l < equilibrium.size(); ++l) {
      dist = std::max(dist, std::abs(traj.final_state()[l] - equilibrium[l]));
    }
    out.initial_states.push_back(std::move(x0));
    out.distances.push_back(dist);
    out.worst_distance = std::max(out.worst_distance, dist);
  }
  out.pass = out.worst_distance <= tolerance;
  return out;
}

}  // namespace fifonet
