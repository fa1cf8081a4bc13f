#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "perco/asymptotic.hpp"
#include "perco/cluster_properties.hpp"
#include "perco/errors.hpp"
#include "perco/exact.hpp"
#include "perco/group_graph.hpp"
#include "perco/hashing.hpp"
#include "perco/parallel.hpp"
#include "perco/percolation.hpp"
#include "perco/scenery.hpp"

namespace percolab {

namespace {

using namespace perco;

using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, std::string>> provenance;

  void add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw Error("internal: row width does not match the header");
    rows.push_back(std::move(row));
  }
};

Cell integer(std::size_t x) { return static_cast<std::int64_t>(x); }

Cell optional_cell(const std::optional<double>& x) { return x ? Cell{*x} : Cell{}; }

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell_text(const Cell& c) {
  if (std::holds_alternative<std::int64_t>(c)) return std::to_string(std::get<std::int64_t>(c));
  if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
  if (std::holds_alternative<std::string>(c)) return csv_field(std::get<std::string>(c));
  return "";
}

// A leading '#' line carries the provenance, then the header row.
std::string to_csv(const Table& table) {
  std::ostringstream os;
  os << "#";
  for (const auto& [key, value] : table.provenance) os << ' ' << key << '=' << value;
  os << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
    os << '\n';
  }
  return os.str();
}

nlohmann::ordered_json cell_json(const Cell& c) {
  if (std::holds_alternative<std::int64_t>(c)) return std::get<std::int64_t>(c);
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  if (std::holds_alternative<double>(c)) {
    const double x = std::get<double>(c);
    if (!std::isfinite(x)) return format_double(x);
    // Round through the 10-digit text form so both formats carry the same value.
    return std::stod(format_double(x));
  }
  return nullptr;
}

std::string to_json(const Table& table) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json prov = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.provenance) prov[key] = value;
  doc["provenance"] = prov;
  doc["columns"] = table.columns;
  nlohmann::ordered_json data = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    nlohmann::ordered_json col = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) col.push_back(cell_json(row[i]));
    data[table.columns[i]] = col;
  }
  doc["data"] = data;
  return doc.dump(2) + "\n";
}

struct RunConfig {
  std::string subcommand;
  std::string graph = "lattice:2";
  int radius = -1;
  std::vector<double> ps;
  double p0 = -1.0;
  double p1 = -1.0;
  double tol = 0.01;
  std::string property;
  std::string reroot;
  int shift = 2;
  std::vector<int> ns;
  int window_radius = -1;
  std::vector<std::string> window;
  std::string model;
  std::string event = "root-boundary";
  std::vector<int> steps;
  int lo = -4;
  int hi = 4;
  int check_radius = 6;
  bool report = false;
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  int workers = 0;
  std::string format = "csv";
  std::string out_path;
};

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError(std::string(name) + " must lie in [0,1], got " + format_double(p));
}

void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

void need_radius(const RunConfig& c) { require(c.radius >= 0, "--R is required and must be non-negative"); }

void need_ps(const RunConfig& c) {
  require(!c.ps.empty(), "--p is required");
  for (double p : c.ps) check_probability(p, "p");
}

void need_ns(const RunConfig& c) {
  require(!c.ns.empty(), "--n is required");
  for (int n : c.ns) require(n >= 0, "--n values must be non-negative, got " + std::to_string(n));
}

Table start(const RunConfig& c, std::vector<std::string> columns) {
  Table t;
  t.columns = std::move(columns);
  t.provenance = {{"subcommand", c.subcommand}, {"seed", std::to_string(c.seed)}, {"trials", std::to_string(c.trials)}};
  return t;
}

void note(Table& t, const std::string& key, const std::string& value) { t.provenance.emplace_back(key, value); }

SceneryModel model_of(const RunConfig& c, const std::string& fallback) {
  SceneryModel m = SceneryModel::parse(c.model.empty() ? fallback : c.model);
  if (c.radius >= 0) {
    require(c.radius > 0, "--R for a model must be positive (omit it to size the ball automatically)");
    m.radius = c.radius;
  }
  return m;
}

PropertySeqSpec sequence_of(const RunConfig& c, const SceneryModel& m) {
  if (c.property.empty()) return default_sequence(m);
  return {PropertySpec::parse(c.property)};
}

ReRootingSpec rerooting_of(const RunConfig& c, const SceneryModel& m) {
  const GroupGraphSpec spec = m.graph();
  if (!c.reroot.empty()) return ReRootingSpec::parse(spec, c.reroot);
  if (m.kind == SceneryKind::FreeDirected) return ReRootingSpec::directed_walk(1);
  GroupElement g = group::identity(spec);
  g.nf[0] = c.shift;
  return ReRootingSpec::translate(g);
}

std::vector<GroupElement> window_of(const RunConfig& c, const SceneryModel& m) {
  const GroupGraphSpec spec = m.graph();
  if (!c.window.empty()) {
    std::vector<GroupElement> out;
    for (const auto& text : c.window) out.push_back(group::parse(spec, text));
    return out;
  }
  if (c.window_radius >= 0) return window_elements(spec, c.window_radius);
  switch (m.kind) {
    case SceneryKind::TwoLineMajority:
      return {GroupElement{{0, 0}}, GroupElement{{0, 1}}};
    case SceneryKind::ZxZmod4:
      return {GroupElement{{0, 0}}, GroupElement{{0, 1}}, GroupElement{{0, 2}}, GroupElement{{0, 3}}};
    case SceneryKind::FreeDirected:
      return {group::parse(spec, "a"), group::parse(spec, "b")};
  }
  return {};
}

std::string window_text(const SceneryModel& m, const std::vector<GroupElement>& window) {
  std::string out;
  for (std::size_t i = 0; i < window.size(); ++i) out += (i ? ";" : "") + group::to_string(m.graph(), window[i]);
  return out;
}

Table cmd_ball_info(const RunConfig& c) {
  need_radius(c);
  const auto spec = GroupGraphSpec::parse(c.graph);
  const auto ball = build_ball(spec, c.radius);
  Table t = start(c, {"graph", "R", "vertices", "edges", "boundary_vertices"});
  t.add({spec.name(), integer(static_cast<std::size_t>(c.radius)), integer(ball->vertex_count()), integer(ball->edge_count()),
         integer(ball->boundary().size())});
  return t;
}

Table curve_table(const RunConfig& c, const std::vector<CurvePoint>& curve, const std::string& name) {
  Table t = start(c, {"p", name, "stderr", "trials"});
  note(t, "graph", GroupGraphSpec::parse(c.graph).name());
  note(t, "R", std::to_string(c.radius));
  for (const auto& pt : curve) t.add({pt.p, pt.estimate.estimate, pt.estimate.std_error, integer(pt.estimate.trials)});
  return t;
}

Table cmd_theta(const RunConfig& c) {
  need_radius(c);
  need_ps(c);
  const auto spec = GroupGraphSpec::parse(c.graph);
  const auto ball = build_ball(spec, c.radius);
  std::vector<CurvePoint> points;
  for (double p : c.ps) points.push_back({p, theta_hat(*ball, p, c.trials, c.seed, SweepOptions{c.workers, 0})});
  return curve_table(c, points, "theta_hat");
}

Table cmd_theta_curve(const RunConfig& c) {
  need_radius(c);
  need_ps(c);
  require(std::is_sorted(c.ps.begin(), c.ps.end()), "--p values must be ascending");
  const auto spec = GroupGraphSpec::parse(c.graph);
  return curve_table(c, theta_curve(spec, c.ps, c.radius, c.trials, c.seed, c.workers), "theta_hat");
}

Table cmd_pc(const RunConfig& c) {
  need_radius(c);
  require(c.tol > 0.0 && c.tol < 1.0, "--tol must lie in (0,1)");
  const auto spec = GroupGraphSpec::parse(c.graph);
  const auto interval = pc_estimate(spec, c.radius, c.trials, c.tol, c.seed, c.workers);
  Table t = start(c, {"lo", "hi", "tol", "trials"});
  note(t, "graph", spec.name());
  note(t, "R", std::to_string(c.radius));
  t.add({interval.lo, interval.hi, c.tol, integer(c.trials)});
  return t;
}

Table cmd_nclusters(const RunConfig& c) {
  need_radius(c);
  need_ps(c);
  const auto spec = GroupGraphSpec::parse(c.graph);
  return curve_table(c, nclusters_curve(build_ball(spec, c.radius), c.ps, c.trials, c.seed, c.workers),
                     "mean_boundary_clusters");
}

Table cmd_indist(const RunConfig& c) {
  need_radius(c);
  require(c.p1 >= 0.0 || !c.ps.empty(), "--p1 (or --p) is required");
  const double p1 = c.p1 >= 0.0 ? c.p1 : c.ps.front();
  check_probability(p1, "p1");
  require(c.window_radius >= 0, "--window-radius is required");
  const auto spec = GroupGraphSpec::parse(c.graph);
  PropertySpec prop = c.property.empty() ? PropertySpec::touches_boundary() : PropertySpec::parse(c.property);
  if (c.p0 >= 0.0) prop = PropertySpec::contains_subcluster(c.p0);
  if (prop.kind == PropertyKind::ContainsSubclusterAtThreshold) {
    check_probability(prop.p0, "p0");
    require(prop.p0 < p1, "p0 must be smaller than p1");
  }
  require(c.window_radius <= c.radius, "--window-radius must not exceed --R");
  const auto est = indist_statistic(spec, p1, prop, c.radius, c.window_radius, c.trials, c.seed, c.workers);
  Table t = start(c, {"p1", "agreement", "stderr", "trials"});
  note(t, "graph", spec.name());
  note(t, "R", std::to_string(c.radius));
  note(t, "property", prop.name());
  note(t, "window_radius", std::to_string(c.window_radius));
  t.add({p1, est.estimate, est.std_error, integer(est.trials)});
  return t;
}

Table cmd_cluster_prop_check(const RunConfig& c) {
  need_radius(c);
  need_ps(c);
  require(!c.property.empty(), "--property is required");
  const auto spec = GroupGraphSpec::parse(c.graph);
  const auto prop = PropertySpec::parse(c.property);
  const auto ball = build_ball(spec, c.radius);
  Table t = start(c, {"p", "violations", "trials"});
  note(t, "graph", spec.name());
  note(t, "R", std::to_string(c.radius));
  note(t, "property", prop.name());
  for (double p : c.ps) {
    if (prop.kind == PropertyKind::ContainsSubclusterAtThreshold) {
      require(prop.p0 < p, "p must exceed the property's p0");
    }
    t.add({p, integer(check_cluster_property(prop, ball, p, c.trials, c.seed, c.workers)), integer(c.trials)});
  }
  return t;
}

Table cmd_acp(const RunConfig& c) {
  need_ns(c);
  const auto model = model_of(c, "two-line");
  const auto seq = sequence_of(c, model);
  const auto r = rerooting_of(c, model);
  if (c.report) {
    const auto window = window_of(c, model);
    Table t = start(c, {"n", "within_cluster", "connected_pair", "connected_trials", "window_pairs", "cross_cluster"});
    note(t, "model", model.name());
    note(t, "sequence", seq.name());
    note(t, "reroot", r.name(model.graph()));
    note(t, "window", window_text(model, window));
    for (int n : c.ns) {
      const auto rep = acp_equivalence_report(model, seq, r, n, window, c.trials, c.seed, c.workers);
      t.add({integer(static_cast<std::size_t>(n)), rep.within_cluster.estimate, rep.connected_pair.estimate,
             integer(rep.connected_pair.trials), rep.window_pairs.estimate, rep.cross_cluster.estimate});
    }
    return t;
  }
  Table t = start(c, {"n", "mismatch", "stderr", "srw_bound"});
  note(t, "model", model.name());
  note(t, "sequence", seq.name());
  note(t, "reroot", r.name(model.graph()));
  for (int n : c.ns) {
    const auto est = acp_mismatch(model, seq, r, n, c.trials, c.seed, c.workers);
    t.add({integer(static_cast<std::size_t>(n)), est.estimate, est.std_error, optional_cell(two_line_srw_bound(model, r, n))});
  }
  return t;
}

Table cmd_strong_indist(const RunConfig& c) {
  need_ns(c);
  const auto model = model_of(c, "two-line");
  const auto seq = sequence_of(c, model);
  const auto window = window_of(c, model);
  Table t = start(c, {"n", "agreement", "stderr", "trials"});
  note(t, "model", model.name());
  note(t, "sequence", seq.name());
  note(t, "window", window_text(model, window));
  for (int n : c.ns) {
    const auto est = strong_indist_statistic(model, seq, n, window, c.trials, c.seed, c.workers);
    t.add({integer(static_cast<std::size_t>(n)), est.estimate, est.std_error, integer(est.trials)});
  }
  return t;
}

Table cmd_counterexample(const RunConfig& c) {
  need_ns(c);
  const auto model = model_of(c, "two-line");
  if (model.kind == SceneryKind::ZxZmod4) {
    Table t = start(c, {"n", "mismatch", "stderr", "closed_horizontal", "trials"});
    note(t, "model", model.name());
    for (int n : c.ns) {
      const auto res = zxzmod4_mismatch(n, model.radius, c.trials, c.seed, c.workers);
      t.add({integer(static_cast<std::size_t>(n)), res.mismatch.estimate, res.mismatch.std_error,
             integer(res.closed_horizontal), integer(res.mismatch.trials)});
    }
    return t;
  }
  const auto seq = sequence_of(c, model);
  const auto r = rerooting_of(c, model);
  const auto window = window_of(c, model);
  if (model.kind == SceneryKind::TwoLineMajority) {
    Table t = start(c, {"n", "acp_mismatch", "acp_stderr", "srw_bound", "line_mismatch", "line_stderr", "trials"});
    note(t, "model", model.name());
    note(t, "reroot", r.name(model.graph()));
    note(t, "window", window_text(model, window));
    for (int n : c.ns) {
      const auto acp = acp_mismatch(model, seq, r, n, c.trials, c.seed, c.workers);
      const auto strong = strong_indist_statistic(model, seq, n, window, c.trials, c.seed, c.workers);
      t.add({integer(static_cast<std::size_t>(n)), acp.estimate, acp.std_error, optional_cell(two_line_srw_bound(model, r, n)),
             1.0 - strong.estimate, strong.std_error, integer(c.trials)});
    }
    return t;
  }
  // Free-directed: out-degrees are checked on a materialized ball per trial.
  require(c.check_radius >= 1 && c.check_radius <= 10, "--check-radius must lie in [1,10]");
  const auto ball = build_ball(model.graph(), c.check_radius);
  int min_out = 1 << 30;
  int max_out = 0;
  for (std::size_t trial = 0; trial < c.trials; ++trial) {
    const auto config = free_directed_config(ball, perco::trial_seed(c.seed, trial));
    for (VertexIndex v = 0; v < ball->vertex_count(); ++v) {
      if (ball->on_boundary(v)) continue;
      const int d = out_degree(config, v);
      min_out = std::min(min_out, d);
      max_out = std::max(max_out, d);
    }
  }
  Table t = start(c, {"n", "acp_mismatch", "acp_stderr", "root_mismatch", "root_stderr", "min_out_degree",
                      "max_out_degree", "trials"});
  note(t, "model", model.name());
  note(t, "reroot", r.name(model.graph()));
  note(t, "window", window_text(model, window));
  note(t, "check_radius", std::to_string(c.check_radius));
  for (int n : c.ns) {
    const auto acp = acp_mismatch(model, seq, r, n, c.trials, c.seed, c.workers);
    const auto strong = strong_indist_statistic(model, seq, n, window, c.trials, c.seed, c.workers);
    t.add({integer(static_cast<std::size_t>(n)), acp.estimate, acp.std_error, 1.0 - strong.estimate, strong.std_error,
           integer(static_cast<std::size_t>(min_out)), integer(static_cast<std::size_t>(max_out)), integer(c.trials)});
  }
  return t;
}

Table cmd_exact_measure(const RunConfig& c) {
  need_radius(c);
  need_ps(c);
  const auto spec = GroupGraphSpec::parse(c.graph);
  const auto ball = build_ball(spec, c.radius);
  const auto event = parse_event(c.event);
  Table t = start(c, {"p", "exact", "mc_estimate", "mc_stderr", "trials"});
  note(t, "graph", spec.name());
  note(t, "R", std::to_string(c.radius));
  note(t, "event", c.event);
  for (double p : c.ps) {
    const double exact = exact_measure(ball, p, event);
    std::vector<std::uint8_t> hit(c.trials, 0);
    perco::for_each_trial(c.trials, c.workers, [&](std::size_t, std::size_t trial) {
      hit[trial] = event(sample_bernoulli(ball, p, perco::trial_seed(c.seed, trial)));
    });
    const auto mc = EstimateWithCI::from_count(static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 1)), c.trials);
    t.add({p, exact, mc.estimate, mc.std_error, integer(c.trials)});
  }
  return t;
}

Table cmd_insertion_check(const RunConfig& c) {
  need_radius(c);
  need_ps(c);
  const auto spec = GroupGraphSpec::parse(c.graph);
  const auto ball = build_ball(spec, c.radius);
  const auto event = parse_event(c.event);
  Table t = start(c, {"p", "edge", "u", "v", "measure_event", "measure_inserted"});
  note(t, "graph", spec.name());
  note(t, "R", std::to_string(c.radius));
  note(t, "event", c.event);
  for (double p : c.ps) {
    require(p > 0.0 && p < 1.0, "insertion-check needs p in (0,1)");
    const auto rep = insertion_tolerance_check(ball, p, event);
    for (EdgeIndex e = 0; e < ball->edge_count(); ++e) {
      const Edge& ed = ball->edge(e);
      t.add({p, integer(e), group::to_string(spec, ball->normal_form(ed.u)), group::to_string(spec, ball->normal_form(ed.v)),
             rep.measure_b, rep.measure_inserted[e]});
    }
  }
  return t;
}

Table cmd_srw_oracle(const RunConfig& c) {
  require(!c.steps.empty(), "--steps is required");
  for (int s : c.steps) require(s >= 0, "--steps values must be non-negative");
  require(c.lo <= c.hi, "--lo must not exceed --hi");
  Table t = start(c, {"steps", "lo", "hi", "probability"});
  for (int s : c.steps) {
    t.add({integer(static_cast<std::size_t>(s)), static_cast<std::int64_t>(c.lo), static_cast<std::int64_t>(c.hi),
           srw_endpoint_prob(s, c.lo, c.hi)});
  }
  return t;
}

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--trials", c.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  sub->add_option("--seed", c.seed, "master seed");
  sub->add_option("--workers", c.workers, "worker threads (default: PERCO_WORKERS or all cores)")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", c.out_path, "output file (default: stdout)");
}

void add_graph(CLI::App* sub, RunConfig& c) {
  sub->add_option("--graph", c.graph, "lattice:d, free:r, zxzmod:n, line or two-line");
  sub->add_option("--R", c.radius, "ball radius");
}

void add_ps(CLI::App* sub, RunConfig& c) { sub->add_option("--p", c.ps, "edge probabilities")->delimiter(','); }

void add_model(CLI::App* sub, RunConfig& c) {
  sub->add_option("--model", c.model, "two-line, z-zmod4 or free-directed");
  sub->add_option("--R", c.radius, "model radius (default: smallest that fits)");
  sub->add_option("--n", c.ns, "window parameters")->delimiter(',');
  sub->add_option("--property", c.property, "property sequence (default: the model's majority)");
  sub->add_option("--F", c.window, "window vertices, ';'-separated")->delimiter(';');
  sub->add_option("--window-radius", c.window_radius, "window = ball of this radius");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app("Bond percolation laboratory on Cayley graphs", "percolab");
  app.require_subcommand(1);

  auto* ball_info = app.add_subcommand("ball-info", "vertex, edge and boundary counts of a ball");
  add_graph(ball_info, c);
  add_common(ball_info, c);

  auto* theta = app.add_subcommand("theta", "probability that the anchor reaches the boundary");
  add_graph(theta, c);
  add_ps(theta, c);
  add_common(theta, c);

  auto* curve = app.add_subcommand("theta-curve", "coupled theta estimates over ascending p");
  add_graph(curve, c);
  add_ps(curve, c);
  add_common(curve, c);

  auto* pc = app.add_subcommand("pc", "bisection interval for theta = 1/2");
  add_graph(pc, c);
  pc->add_option("--tol", c.tol, "bracket width");
  add_common(pc, c);

  auto* ncl = app.add_subcommand("nclusters-curve", "mean number of boundary-touching clusters");
  add_graph(ncl, c);
  add_ps(ncl, c);
  add_common(ncl, c);

  auto* indist = app.add_subcommand("indist", "agreement of boundary clusters meeting a window");
  add_graph(indist, c);
  add_ps(indist, c);
  indist->add_option("--p0", c.p0, "inner threshold of contains-subcluster");
  indist->add_option("--p1", c.p1, "percolation parameter");
  indist->add_option("--property", c.property, "property (default: touches-boundary)");
  indist->add_option("--window-radius", c.window_radius, "window radius");
  add_common(indist, c);

  auto* cpc = app.add_subcommand("cluster-prop-check", "trials with a cluster on which the property varies");
  add_graph(cpc, c);
  add_ps(cpc, c);
  cpc->add_option("--property", c.property, "property");
  add_common(cpc, c);

  auto* acp = app.add_subcommand("acp", "rerooting mismatch of a property sequence");
  add_model(acp, c);
  acp->add_option("--shift", c.shift, "in-line translation of the root");
  acp->add_option("--reroot", c.reroot, "identity, translate:<g>, lex-walk:<k>, directed-walk:<k>");
  acp->add_flag("--report", c.report, "emit the equivalent-characterization statistics instead");
  add_common(acp, c);

  auto* strong = app.add_subcommand("strong-indist", "unanimity of the sequence over a window");
  add_model(strong, c);
  add_common(strong, c);

  auto* cex = app.add_subcommand("counterexample", "the three models separating the two notions");
  cex->add_option("model", c.model, "two-line, z-zmod4 or free-directed")->required();
  cex->add_option("--R", c.radius, "model radius (default: smallest that fits)");
  cex->add_option("--n", c.ns, "window parameters")->delimiter(',');
  cex->add_option("--shift", c.shift, "in-line translation of the root");
  cex->add_option("--reroot", c.reroot, "rerooting");
  cex->add_option("--check-radius", c.check_radius, "ball radius for the out-degree check");
  add_common(cex, c);

  auto* exact = app.add_subcommand("exact-measure", "exact event probability by enumeration, with a Monte Carlo check");
  add_graph(exact, c);
  add_ps(exact, c);
  exact->add_option("--event", c.event, "root-boundary, open-at-least:k or hash:key[:density]");
  add_common(exact, c);

  auto* ins = app.add_subcommand("insertion-check", "measure of the event with each edge forced open");
  add_graph(ins, c);
  add_ps(ins, c);
  ins->add_option("--event", c.event, "root-boundary, open-at-least:k or hash:key[:density]");
  add_common(ins, c);

  auto* srw = app.add_subcommand("srw-oracle", "exact endpoint probabilities of a simple random walk");
  srw->add_option("--steps", c.steps, "walk lengths")->delimiter(',');
  srw->add_option("--lo", c.lo, "interval start");
  srw->add_option("--hi", c.hi, "interval end");
  add_common(srw, c);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }
  c.subcommand = app.get_subcommands().front()->get_name();

  const auto started = std::chrono::steady_clock::now();
  Table table;
  try {
    if (c.subcommand == "ball-info") table = cmd_ball_info(c);
    else if (c.subcommand == "theta") table = cmd_theta(c);
    else if (c.subcommand == "theta-curve") table = cmd_theta_curve(c);
    else if (c.subcommand == "pc") table = cmd_pc(c);
    else if (c.subcommand == "nclusters-curve") table = cmd_nclusters(c);
    else if (c.subcommand == "indist") table = cmd_indist(c);
    else if (c.subcommand == "cluster-prop-check") table = cmd_cluster_prop_check(c);
    else if (c.subcommand == "acp") table = cmd_acp(c);
    else if (c.subcommand == "strong-indist") table = cmd_strong_indist(c);
    else if (c.subcommand == "counterexample") table = cmd_counterexample(c);
    else if (c.subcommand == "exact-measure") table = cmd_exact_measure(c);
    else if (c.subcommand == "insertion-check") table = cmd_insertion_check(c);
    else table = cmd_srw_oracle(c);
  } catch (const DomainError& e) {
    err << "percolab: error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ConfigError& e) {
    err << "percolab: error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ModelError& e) {
    err << "percolab: error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const UsageError& e) {
    err << "percolab: error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const SizeError& e) {
    err << "percolab: error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "percolab: runtime error: " << e.what() << '\n';
    return kExitRuntime;
  }

  const std::string text = c.format == "json" ? to_json(table) : to_csv(table);
  if (c.out_path.empty()) {
    out << text;
  } else {
    std::ofstream file(c.out_path, std::ios::binary);
    file << text;
    if (!file) {
      err << "percolab: runtime error: cannot write " << c.out_path << '\n';
      return kExitRuntime;
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  err << "percolab " << c.subcommand << ": " << table.rows.size() << " rows, seed " << c.seed << ", trials " << c.trials
      << ", " << format_double(seconds) << " s" << (c.out_path.empty() ? "" : ", wrote " + c.out_path) << '\n';
  return kExitOk;
}

}  // namespace percolab
