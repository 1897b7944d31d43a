#include "fifonet/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

namespace fifonet {
namespace {

// Walks a YAML tree keeping the dotted path of the current field, so errors
// can name the offending field and line.
class Reader {
 public:
  Reader(std::string source, YAML::Node node, std::string path)
      : source_(std::move(source)), node_(std::move(node)), path_(std::move(path)) {}

  /// Reader for another node of the same document.
  Reader at(YAML::Node node, std::string path) const {
    return Reader(source_, std::move(node), std::move(path));
  }

  [[noreturn]] void fail(const std::string& message) const {
    const int line = node_.Mark().is_null() ? 0 : node_.Mark().line + 1;
    throw ParseError(source_, line, path_, message);
  }

  const YAML::Node& node() const { return node_; }
  const std::string& path() const { return path_; }

  bool has(const std::string& key) const { return node_[key].IsDefined() && !node_[key].IsNull(); }

  Reader child(const std::string& key) const {
    return Reader(source_, node_[key], path_.empty() ? key : path_ + "." + key);
  }

  Reader required(const std::string& key) const {
    if (!has(key)) fail("missing required field '" + key + "'");
    return child(key);
  }

  Reader element(std::size_t i) const {
    return Reader(source_, node_[i], path_ + "[" + std::to_string(i) + "]");
  }

  void expect_map(std::initializer_list<const char*> allowed) const {
    if (!node_.IsMap()) fail("expected a mapping");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      const auto key = it->first.as<std::string>();
      if (!ok.count(key)) {
        at(it->first, path_.empty() ? key : path_ + "." + key)
            .fail("unknown field '" + key + "'");
      }
    }
  }

  void expect_sequence() const {
    if (!node_.IsSequence()) fail("expected a list");
  }

  template <class T>
  T as(const char* type_name) const {
    if (!node_.IsScalar()) fail(std::string("expected ") + type_name);
    try {
      return node_.as<T>();
    } catch (const YAML::Exception&) {
      fail(std::string("expected ") + type_name + ", got '" + node_.Scalar() + "'");
    }
  }

  double number() const { return as<double>("a number"); }
  std::string text() const { return as<std::string>("a string"); }
  LinkId link_id() const { return LinkId{as<std::int64_t>("an integer link id")}; }

 private:
  std::string source_;
  YAML::Node node_;
  std::string path_;
};

struct RawLink {
  LinkId id;
  LinkParams params;
};

DemandCurve parse_demand(const Reader& r) {
  const auto family = r.required("family").text();
  if (family == "exponential") {
    r.expect_map({"family", "scale", "rate"});
    return ExponentialDemand{r.required("scale").number(), r.required("rate").number()};
  }
  if (family == "piecewise_linear") {
    r.expect_map({"family", "points"});
    const auto pts = r.required("points");
    pts.expect_sequence();
    PiecewiseLinear curve;
    for (std::size_t i = 0; i < pts.node().size(); ++i) {
      const auto pt = pts.element(i);
      if (!pt.node().IsSequence() || pt.node().size() != 2) pt.fail("expected [density, flow]");
      curve.points.emplace_back(pt.element(0).number(), pt.element(1).number());
    }
    return curve;
  }
  r.child("family").fail("unknown demand family '" + family +
                         "' (expected exponential or piecewise_linear)");
}

SupplyCurve parse_supply(const Reader& r, double jam_density) {
  const auto family = r.required("family").text();
  if (family == "affine") {
    r.expect_map({"family", "intercept"});
    return AffineSupply{r.has("intercept") ? r.child("intercept").number() : jam_density};
  }
  if (family == "piecewise_linear") {
    auto demand = parse_demand(r);
    return std::get<PiecewiseLinear>(demand);
  }
  r.child("family").fail("unknown supply family '" + family +
                         "' (expected affine or piecewise_linear)");
}

std::optional<JunctionId> parse_junction(const Reader& r, const std::string& key) {
  if (!r.has(key)) return std::nullopt;
  return JunctionId{r.child(key).text()};
}

std::map<LinkId, double> parse_eta_map(const Reader& r) {
  if (!r.node().IsMap()) r.fail("expected a mapping from link id to eta");
  std::map<LinkId, double> out;
  for (auto it = r.node().begin(); it != r.node().end(); ++it) {
    const auto id = r.at(it->first, r.path()).link_id();
    out[id] = r.at(it->second, r.path() + "." + to_string(id)).number();
  }
  return out;
}

Violation topology_error(const std::string& message) {
  return {Violation::Kind::Topology, Violation::Severity::Error, message, std::nullopt,
          std::nullopt};
}

JunctionModel parse_model(const Reader& r, const Network& net) {
  const auto type = r.required("type").text();
  std::vector<Violation> problems;

  auto eta_vector = [&](double fallback, auto needs_eta) {
    std::vector<double> eta(net.size(), fallback);
    const auto given = r.has("eta") ? parse_eta_map(r.child("eta")) : std::map<LinkId, double>{};
    for (const auto& [id, value] : given) {
      if (auto l = net.index_of(id)) {
        eta[*l] = value;
      } else {
        problems.push_back(topology_error("model.eta refers to unknown link " + to_string(id)));
      }
    }
    for (std::size_t l = 0; l < net.size(); ++l) {
      if (needs_eta(l) && !given.count(net.link_id(l))) {
        problems.push_back({Violation::Kind::ModelParameter, Violation::Severity::Error,
                            "model.eta missing for link " + to_string(net.link_id(l)),
                            std::nullopt, l});
      }
    }
    return eta;
  };

  JunctionModel model;
  if (type == "non_fifo") {
    r.expect_map({"type"});
    model = NonFifo{};
  } else if (type == "full_fifo") {
    r.expect_map({"type"});
    model = FullFifo{};
  } else if (type == "convex_combo") {
    r.expect_map({"type", "eta"});
    model = ConvexCombo{eta_vector(0.0, [&](std::size_t l) { return !net.is_source(l); })};
  } else if (type == "partial_fifo_lanes") {
    r.expect_map({"type", "eta"});
    model = PartialFifoLanes{eta_vector(1.0, [&](std::size_t l) {
      return !net.is_source(l) && !net.adjacent(l).empty();
    })};
  } else if (type == "multi_set_fifo") {
    r.expect_map({"type", "restrictions"});
    MultiSetFifo m;
    m.restrictions.resize(net.junction_count());
    if (r.has("restrictions")) {
      const auto all = r.child("restrictions");
      if (!all.node().IsMap()) all.fail("expected a mapping from junction to restriction sets");
      for (auto it = all.node().begin(); it != all.node().end(); ++it) {
        const auto jname = it->first.as<std::string>();
        const Reader sets = all.at(it->second, all.path() + "." + jname);
        auto v = net.junction_index(JunctionId{jname});
        if (!v) {
          problems.push_back(topology_error("model.restrictions refers to unknown junction " + jname));
          continue;
        }
        sets.expect_sequence();
        for (std::size_t i = 0; i < sets.node().size(); ++i) {
          const auto set = sets.element(i);
          set.expect_map({"links", "eta"});
          const auto links = set.required("links");
          links.expect_sequence();
          FifoRestriction phi;
          for (std::size_t j = 0; j < links.node().size(); ++j) {
            const auto id = links.element(j).link_id();
            if (auto l = net.index_of(id)) {
              phi.links.push_back(*l);
            } else {
              problems.push_back(topology_error(set.path() + " refers to unknown link " + to_string(id)));
            }
          }
          phi.eta.assign(phi.links.size(), 0.0);
          const auto eta = set.has("eta") ? parse_eta_map(set.child("eta")) : std::map<LinkId, double>{};
          for (const auto& [id, value] : eta) {
            auto l = net.index_of(id);
            auto pos = l ? std::find(phi.links.begin(), phi.links.end(), *l) : phi.links.end();
            if (pos == phi.links.end()) {
              problems.push_back({Violation::Kind::ModelParameter, Violation::Severity::Error,
                                  set.path() + ": eta given for link " + to_string(id) +
                                      " which is not in the restriction set (its share must be 0)",
                                  *v, l});
              continue;
            }
            phi.eta[static_cast<std::size_t>(pos - phi.links.begin())] = value;
          }
          m.restrictions[*v].push_back(std::move(phi));
        }
      }
    }
    model = std::move(m);
  } else {
    r.child("type").fail("unknown model type '" + type +
                         "' (expected non_fifo, full_fifo, convex_combo, partial_fifo_lanes or "
                         "multi_set_fifo)");
  }
  if (!problems.empty()) throw ValidationError(std::move(problems));
  return model;
}

ScenarioDefaults parse_defaults(const Reader& r) {
  ScenarioDefaults d;
  r.expect_map({"dt", "t_final", "residual_tol", "gap_tol", "fd_tolerance", "samples", "seed"});
  if (r.has("dt")) d.dt = r.child("dt").number();
  if (r.has("t_final")) d.t_final = r.child("t_final").number();
  if (r.has("residual_tol")) d.residual_tol = r.child("residual_tol").number();
  if (r.has("gap_tol")) d.gap_tol = r.child("gap_tol").number();
  if (r.has("fd_tolerance")) d.fd_tolerance = r.child("fd_tolerance").number();
  if (r.has("samples")) d.samples = r.child("samples").as<std::size_t>("a sample count");
  if (r.has("seed")) d.seed = r.child("seed").as<std::uint64_t>("an unsigned seed");
  if (!(d.dt > 0.0)) r.child("dt").fail("dt must be > 0");
  if (!(d.t_final >= 0.0)) r.child("t_final").fail("t_final must be >= 0");
  return d;
}

std::string describe(const std::vector<Violation>& violations) {
  std::string out = "scenario is invalid:";
  for (const auto& v : violations) out += "\n  " + kind_name(v.kind) + ": " + v.message;
  return out;
}

nlohmann::json to_json(const DemandCurve& curve) {
  if (const auto* e = std::get_if<ExponentialDemand>(&curve)) {
    return {{"family", "exponential"}, {"scale", e->scale}, {"rate", e->rate}};
  }
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& [x, y] : std::get<PiecewiseLinear>(curve).points) pts.push_back({x, y});
  return {{"family", "piecewise_linear"}, {"points", pts}};
}

nlohmann::json to_json(const SupplyCurve& curve) {
  if (const auto* a = std::get_if<AffineSupply>(&curve)) {
    return {{"family", "affine"}, {"intercept", a->intercept}};
  }
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& [x, y] : std::get<PiecewiseLinear>(curve).points) pts.push_back({x, y});
  return {{"family", "piecewise_linear"}, {"points", pts}};
}

}  // namespace

ParseError::ParseError(std::string source, int line, std::string field, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " +
                         (field.empty() ? "" : field + ": ") + message),
      line_(line),
      field_(std::move(field)) {}

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error(describe(violations)), violations_(std::move(violations)) {}

Scenario parse_scenario(std::string_view text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ParseError(source, e.mark.line + 1, "", e.msg);
  }
  const Reader r(source, root, "");
  r.expect_map({"name", "links", "model", "defaults"});

  const std::string name = r.has("name") ? r.child("name").text() : std::string();
  const auto links = r.required("links");
  links.expect_sequence();

  std::vector<Edge> edges;
  std::vector<RawLink> raw;
  for (std::size_t i = 0; i < links.node().size(); ++i) {
    const auto link = links.element(i);
    link.expect_map(
        {"id", "tail", "head", "jam_density", "demand", "supply", "beta", "gamma", "delta"});
    RawLink entry;
    entry.id = link.required("id").link_id();
    entry.params.jam_density = link.required("jam_density").number();
    entry.params.demand = parse_demand(link.required("demand"));
    entry.params.supply = parse_supply(link.required("supply"), entry.params.jam_density);
    if (link.has("beta")) entry.params.beta = link.child("beta").number();
    if (link.has("gamma")) entry.params.gamma = link.child("gamma").number();
    if (link.has("delta")) entry.params.delta = link.child("delta").number();
    edges.push_back({entry.id, parse_junction(link, "tail"), parse_junction(link, "head")});
    raw.push_back(std::move(entry));
  }

  std::optional<Network> net;
  try {
    net = Network::build(edges);
  } catch (const TopologyError& e) {
    throw ValidationError({topology_error(e.what())});
  }

  std::vector<LinkParams> params(net->size());
  for (auto& entry : raw) params[net->require_index(entry.id)] = std::move(entry.params);

  JunctionModel model = parse_model(r.required("model"), *net);
  ScenarioDefaults defaults = r.has("defaults") ? parse_defaults(r.child("defaults")) : ScenarioDefaults{};

  auto violations = validate_structure(*net, params, model);
  if (has_errors(violations)) {
    std::vector<Violation> errors;
    for (auto& v : violations) {
      if (v.severity == Violation::Severity::Error) errors.push_back(std::move(v));
    }
    throw ValidationError(std::move(errors));
  }
  return Scenario{name, TrafficNetwork(std::move(*net), std::move(params), std::move(model)),
                  defaults, std::move(violations)};
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read scenario file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), path.string());
}

std::string scenario_to_json(const Scenario& scenario) {
  const auto& sys = scenario.system;
  const auto& net = sys.network();
  nlohmann::json j;
  j["name"] = scenario.name;

  nlohmann::json links = nlohmann::json::array();
  for (std::size_t l = 0; l < net.size(); ++l) {
    const auto& e = net.edges()[l];
    const auto& p = sys.params()[l];
    nlohmann::json link;
    link["id"] = e.id.value;
    if (e.tail) link["tail"] = e.tail->name;
    if (e.head) link["head"] = e.head->name;
    link["jam_density"] = p.jam_density;
    link["demand"] = to_json(p.demand);
    link["supply"] = to_json(p.supply);
    if (p.beta) link["beta"] = *p.beta;
    link["gamma"] = p.gamma;
    link["delta"] = p.delta;
    links.push_back(link);
  }
  j["links"] = links;

  nlohmann::json model;
  model["type"] = model_name(sys.model());
  auto eta_json = [&](const std::vector<double>& eta) {
    nlohmann::json m = nlohmann::json::object();
    for (std::size_t l = 0; l < net.size(); ++l) {
      if (!net.is_source(l)) m[to_string(net.link_id(l))] = eta[l];
    }
    return m;
  };
  if (const auto* c = std::get_if<ConvexCombo>(&sys.model())) model["eta"] = eta_json(c->eta);
  if (const auto* p = std::get_if<PartialFifoLanes>(&sys.model())) model["eta"] = eta_json(p->eta);
  if (const auto* m = std::get_if<MultiSetFifo>(&sys.model())) {
    nlohmann::json all = nlohmann::json::object();
    for (std::size_t v = 0; v < net.junction_count(); ++v) {
      if (m->restrictions[v].empty()) continue;
      nlohmann::json sets = nlohmann::json::array();
      for (const auto& phi : m->restrictions[v]) {
        nlohmann::json set;
        set["links"] = nlohmann::json::array();
        set["eta"] = nlohmann::json::object();
        for (std::size_t i = 0; i < phi.links.size(); ++i) {
          set["links"].push_back(net.link_id(phi.links[i]).value);
          set["eta"][to_string(net.link_id(phi.links[i]))] = phi.eta[i];
        }
        sets.push_back(set);
      }
      all[net.junction_id(v).name] = sets;
    }
    model["restrictions"] = all;
  }
  j["model"] = model;

  const auto& d = scenario.defaults;
  j["defaults"] = {{"dt", d.dt},
                   {"t_final", d.t_final},
                   {"residual_tol", d.residual_tol},
                   {"gap_tol", d.gap_tol},
                   {"fd_tolerance", d.fd_tolerance},
                   {"samples", d.samples},
                   {"seed", d.seed}};
  return j.dump(2) + "\n";
}

}  // namespace fifonet
