/* Copyright 2026 The Redctl Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "redctl/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "criteria.hpp"
#include "redctl/analysis.hpp"
#include "redctl/bloch.hpp"
#include "redctl/transfer.hpp"

namespace redctl::cli {

namespace {

namespace fs = std::filesystem;

const std::vector<std::string> kCommands{"simulate-full", "simulate-reduced", "project", "lift",
                                         "envelope", "reach", "majorize",
                                         "simulate-dominating", "bloch", "selftest"};

double num(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
  const double v = j.at(key).get<double>();
  if (!std::isfinite(v)) throw ConfigError(std::string("'") + key + "' must be finite");
  return v;
}

int integer(const json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) throw ConfigError(std::string("'") + key + "' must be an integer");
  return j.at(key).get<int>();
}

const json& need(const json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("missing '") + key + "'");
  return j.at(key);
}

// Parses configuration pieces; any library error here is a usage error.
template <class F>
auto parse_stage(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  } catch (const json::exception& e) {
    throw ConfigError(e.what());
  }
}

PairDescriptor config_pair(const json& raw) { return parse_pair(need(raw, "pair")); }

DriftField config_drift(const PairDescriptor& pair, const json& raw) {
  return parse_drift(pair, need(raw, "drift"));
}

APoint config_point(const PairDescriptor& pair, const json& raw, const char* key) {
  const Vec v = parse_vec(need(raw, key), key);
  if (v.size() != pair.coord_dim())
    throw ConfigError(std::string("'") + key + "' must have " + std::to_string(pair.coord_dim()) +
                      " entries");
  return v;
}

Selector config_selector(const PairDescriptor& pair, const json& raw, std::uint64_t seed) {
  if (!raw.contains("selector")) return Selector::envelope_max();
  const json& s = raw.at("selector");
  const std::string kind = s.value("kind", std::string("envelope_max"));
  Selector sel;
  if (kind == "envelope_max") {
    sel = Selector::envelope_max();
  } else if (kind == "greedy") {
    Vec d = parse_vec(need(s, "direction"), "selector direction");
    if (d.size() != pair.coord_dim()) throw ConfigError("selector direction has wrong size");
    sel = Selector::greedy_max_inner(d);
  } else if (kind == "random") {
    sel = Selector::random();
  } else if (kind == "convex_mix") {
    std::vector<double> w;
    for (const auto& x : need(s, "weights")) w.push_back(x.get<double>());
    sel = Selector::convex_mix(w);
  } else {
    throw ConfigError("unknown selector kind '" + kind + "'");
  }
  if (s.contains("samples")) sel.source = KSource::haar(integer(s, "samples", 256), seed);
  return sel;
}

Scheme config_scheme(const json& raw) {
  const std::string s = raw.value("scheme", std::string("heun"));
  if (s == "heun") return Scheme::Heun;
  if (s == "euler") return Scheme::Euler;
  throw ConfigError("unknown scheme '" + s + "'");
}

std::vector<std::string> numbered(const std::string& stem, int n) {
  std::vector<std::string> v;
  for (int i = 1; i <= n; ++i) v.push_back(stem + std::to_string(i));
  return v;
}

CsvTable reduced_table(const Trajectory& tr) {
  CsvTable t;
  t.header = {"t"};
  const int d = tr.a.empty() ? 0 : static_cast<int>(tr.a.front().size());
  for (const auto& h : numbered("a", d)) t.header.push_back(h);
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    std::vector<double> row{tr.t[i]};
    for (int j = 0; j < d; ++j) row.push_back(tr.a[i](j));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Trajectory reduced_from_table(const PairDescriptor& pair, const CsvTable& t) {
  Trajectory tr;
  const std::size_t tc = t.column("t");
  std::vector<std::size_t> cols;
  for (const auto& h : numbered("a", pair.coord_dim())) cols.push_back(t.column(h));
  for (const auto& row : t.rows) {
    tr.t.push_back(row[tc]);
    Vec a(pair.coord_dim());
    for (std::size_t j = 0; j < cols.size(); ++j) a(static_cast<Eigen::Index>(j)) = row[cols[j]];
    tr.a.push_back(a);
  }
  if (tr.t.size() > 1) tr.dt = tr.t[1] - tr.t[0];
  return tr;
}

std::string resolve_out(const std::string& out) {
  if (out.empty()) return out;
  const char* dir = std::getenv("REDCTL_OUTPUT_DIR");
  fs::path p(out);
  if (dir && *dir && p.is_relative()) p = fs::path(dir) / p;
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  return p.string();
}

std::string resolve_in(const std::string& in) {
  const char* dir = std::getenv("REDCTL_OUTPUT_DIR");
  fs::path p(in);
  if (dir && *dir && p.is_relative() && !fs::exists(p) && fs::exists(fs::path(dir) / p))
    p = fs::path(dir) / p;
  return p.string();
}

struct Artifacts {
  std::optional<CsvTable> csv;
  json summary;
};

void emit(const RunConfig& cfg, const Artifacts& art, std::ostream& log) {
  const std::string text = art.summary.dump(2) + "\n";
  log << text;
  const std::string out = resolve_out(cfg.out);
  if (out.empty()) return;
  if (art.csv) write_csv(out, *art.csv);
  fs::path js(out);
  js.replace_extension(".json");
  if (js.string() == out && art.csv) js += ".summary.json";
  write_text(js.string(), text);
}

json nan_safe(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

// ---------------------------------------------------------------- commands

Artifacts cmd_simulate_full(const RunConfig& cfg) {
  struct In {
    PairDescriptor pair;
    DriftField x;
    PPoint p0;
    FullControls fc;
  };
  const In in = parse_stage([&] {
    const PairDescriptor pair = config_pair(cfg.raw);
    const DriftField x = config_drift(pair, cfg.raw);
    PPoint p0;
    if (cfg.raw.contains("p0")) {
      const Vec c = parse_vec(cfg.raw.at("p0"), "p0");
      if (c.size() != pair.ambient_dim()) throw ConfigError("'p0' has wrong size");
      p0 = from_ambient(pair, c);
    } else {
      p0 = embed(pair, config_point(pair, cfg.raw, "a0"));
    }
    FullControls fc;
    if (cfg.raw.contains("controls")) {
      const json& c = cfg.raw.at("controls");
      fc.directions = pair.k_basis();
      const double sw = num(c, "switch_dt", 0.05);
      if (!(sw > 0)) throw ConfigError("'switch_dt' must be positive");
      fc.grid = time_nodes(std::max(cfg.T, sw), sw);
      const Eigen::Index rows = static_cast<Eigen::Index>(fc.grid.size() - 1);
      const Eigen::Index cols = static_cast<Eigen::Index>(fc.directions.size());
      if (c.contains("values")) {
        fc.values = parse_mat(c.at("values"), "control values");
        if (fc.values.rows() != rows || fc.values.cols() != cols)
          throw ConfigError("control values must be " + std::to_string(rows) + " x " +
                            std::to_string(cols));
      } else {
        const double amp = num(c, "amplitude", 1.0);
        Rng rng(stream_seed(cfg.seed, 0xc0ULL));
        std::uniform_real_distribution<double> u(-amp, amp);
        fc.values.resize(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i)
          for (Eigen::Index j = 0; j < cols; ++j) fc.values(i, j) = u(rng);
      }
    }
    return In{pair, x, p0, fc};
  });
  const FullTrajectory tr = integrate_full(in.pair, in.x, in.fc, in.p0, cfg.T, cfg.dt);
  Artifacts art;
  CsvTable t;
  t.header = {"t"};
  for (const auto& h : numbered("p", in.pair.ambient_dim())) t.header.push_back(h);
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    std::vector<double> row{tr.t[i]};
    const Vec c = ambient_coords(in.pair, tr.p[i]);
    for (Eigen::Index j = 0; j < c.size(); ++j) row.push_back(c(j));
    t.rows.push_back(std::move(row));
  }
  art.csv = t;
  art.summary = {{"command", cfg.command},
                 {"nodes", tr.t.size()},
                 {"final", vec_to_json(ambient_coords(in.pair, tr.p.back()))}};
  return art;
}

Artifacts cmd_simulate_reduced(const RunConfig& cfg) {
  const PairDescriptor pair = parse_stage([&] { return config_pair(cfg.raw); });
  const DriftField x = parse_stage([&] { return config_drift(pair, cfg.raw); });
  const APoint a0 = parse_stage([&] { return config_point(pair, cfg.raw, "a0"); });
  const Selector sel = parse_stage([&] { return config_selector(pair, cfg.raw, cfg.seed); });
  const Scheme scheme = parse_stage([&] { return config_scheme(cfg.raw); });
  const Trajectory tr = integrate_inclusion(pair, x, sel, a0, cfg.T, cfg.dt, cfg.seed, scheme);
  Artifacts art;
  art.csv = reduced_table(tr);
  art.summary = {{"command", cfg.command},
                 {"nodes", tr.t.size()},
                 {"final", vec_to_json(tr.a.back())},
                 {"path_length", path_length(tr)}};
  return art;
}

Artifacts cmd_project(const RunConfig& cfg) {
  const PairDescriptor pair = parse_stage([&] { return config_pair(cfg.raw); });
  const DriftField x = parse_stage([&] { return config_drift(pair, cfg.raw); });
  const FullTrajectory full = parse_stage([&] {
    const CsvTable t = read_csv(resolve_in(need(cfg.raw, "input").get<std::string>()));
    FullTrajectory f;
    const std::size_t tc = t.column("t");
    std::vector<std::size_t> cols;
    for (const auto& h : numbered("p", pair.ambient_dim())) cols.push_back(t.column(h));
    for (const auto& row : t.rows) {
      f.t.push_back(row[tc]);
      Vec c(pair.ambient_dim());
      for (std::size_t j = 0; j < cols.size(); ++j) c(static_cast<Eigen::Index>(j)) = row[cols[j]];
      f.p.push_back(from_ambient(pair, c));
    }
    if (f.t.empty()) throw ConfigError("input trajectory is empty");
    return f;
  });
  const Trajectory tr = project_trajectory(pair, full);
  Artifacts art;
  art.csv = reduced_table(tr);
  art.summary = {{"command", cfg.command}, {"nodes", tr.t.size()}};
  if (tr.t.size() >= 3) {
    ResidualOptions ro;
    ro.seed = cfg.seed;
    if (cfg.raw.contains("residual")) {
      ro.n_samples = integer(cfg.raw.at("residual"), "samples", ro.n_samples);
      ro.tol = num(cfg.raw.at("residual"), "tol", ro.tol);
    }
    const ResidualReport rep = projection_residual(pair, x, tr, ro);
    art.summary["residual"] = {{"fraction_within", rep.fraction_within},
                               {"max_distance", rep.max_distance},
                               {"tol", rep.tol}};
  }
  return art;
}

Artifacts cmd_lift(const RunConfig& cfg) {
  const PairDescriptor pair = parse_stage([&] { return config_pair(cfg.raw); });
  const DriftField x = parse_stage([&] { return config_drift(pair, cfg.raw); });
  const Trajectory tr = parse_stage([&] {
    return reduced_from_table(pair, read_csv(resolve_in(need(cfg.raw, "input").get<std::string>())));
  });
  const KElement gen = parse_stage([&] {
    if (!cfg.raw.contains("schedule")) return zero_k(pair);
    const Vec c = parse_vec(need(cfg.raw.at("schedule"), "generator"), "schedule generator");
    if (c.size() != pair.k_dim()) throw ConfigError("schedule generator has wrong size");
    return from_k_coords(pair, c);
  });
  const std::optional<double> eps = parse_stage([&]() -> std::optional<double> {
    if (!cfg.raw.contains("eps")) return std::nullopt;
    const double e = num(cfg.raw, "eps", 0.0);
    if (!(e > 0)) throw ConfigError("'eps' must be positive");
    return e;
  });
  ReducedControls sched;
  sched.grid = tr.t;
  for (double t : tr.t) sched.k.push_back(exp_k(pair, scale(gen, t)));
  const LiftResult lift =
      eps ? approximate_lift(pair, x, tr, sched, *eps) : regular_lift(pair, x, tr, sched);
  Artifacts art;
  CsvTable t;
  t.header = {"t"};
  for (const auto& h : numbered("p", pair.ambient_dim())) t.header.push_back(h);
  for (const auto& h : numbered("k", pair.k_dim())) t.header.push_back(h);
  t.header.push_back("excised");
  for (std::size_t i = 0; i < lift.t.size(); ++i) {
    std::vector<double> row{lift.t[i]};
    const Vec c = ambient_coords(pair, lift.p[i]);
    for (Eigen::Index j = 0; j < c.size(); ++j) row.push_back(c(j));
    const Vec k = k_coords(pair, add(lift.induced[i], lift.compensating[i]));
    for (Eigen::Index j = 0; j < k.size(); ++j) row.push_back(k(j));
    row.push_back(lift.excised[i] ? 1.0 : 0.0);
    t.rows.push_back(std::move(row));
  }
  art.csv = t;
  art.summary = {{"command", cfg.command},
                 {"nodes", lift.t.size()},
                 {"deviation", lift.deviation},
                 {"excised_measure", lift.excised_measure},
                 {"singular_times", lift.singular_times}};
  if (lift.bound) art.summary["bound"] = *lift.bound;
  if (lift.blowup_exponent) art.summary["blowup_exponent"] = *lift.blowup_exponent;
  return art;
}

Artifacts cmd_envelope(const RunConfig& cfg) {
  const PairDescriptor pair = parse_stage([&] { return config_pair(cfg.raw); });
  const DriftField x = parse_stage([&] { return config_drift(pair, cfg.raw); });
  if (pair.rank() != 1) throw ConfigError("envelope needs a rank-one pair");
  const int n = parse_stage([&] { return integer(cfg.raw, "grid", 201); });
  const double lo = parse_stage([&] { return num(cfg.raw, "lower", -1.0); });
  const double hi = parse_stage([&] { return num(cfg.raw, "upper", 1.0); });
  if (n < 2 || !(hi > lo)) throw ConfigError("envelope grid needs at least 2 points on lower < upper");
  const bool bloch = x.kind() == DriftKind::Bloch;
  std::optional<BlochParams> bp;
  if (bloch)
    bp = parse_stage([&] {
      return BlochParams::make(x.bloch_gamma_transverse(), x.bloch_gamma_longitudinal());
    });
  Artifacts art;
  CsvTable t;
  t.header = {"a", "lower", "upper"};
  if (bp) t.header.push_back("closed_form");
  const Vec e = pair.abelian_basis().col(0);
  for (int i = 0; i < n; ++i) {
    const double s = lo + (hi - lo) * i / (n - 1);
    const APoint a = s * e;
    double lower, upper;
    if (pair.kind() == PairKind::PolarDec && pair.n() == 2 && x.is_affine()) {
      const Polar2Affine pa = polar2_affine(pair, x);
      upper = pa.value(pa.argmax(s, 1.0, 4096, 3), s);
      lower = pa.value(pa.argmax(s, -1.0, 4096, 3), s);
    } else {
      const DervSample ds = derv_sample(pair, x, a, 256, cfg.seed);
      const Vec proj = ds.values().transpose() * e;
      Eigen::Index jmax = 0, jmin = 0;
      proj.maxCoeff(&jmax);
      proj.minCoeff(&jmin);
      upper = e.dot(support_point(pair, x, a, e, ds.entries[jmax].k).v);
      lower = e.dot(support_point(pair, x, a, -e, ds.entries[jmin].k).v);
    }
    std::vector<double> row{s, lower, upper};
    if (bp) row.push_back(std::abs(s) <= 1.0 ? envelope_u(*bp, s) : std::nan(""));
    t.rows.push_back(std::move(row));
  }
  art.csv = t;
  art.summary = {{"command", cfg.command}, {"points", n}};
  if (bp) {
    double err = 0.0;
    for (const auto& row : t.rows)
      if (std::isfinite(row[3])) err = std::max(err, std::abs(row[2] - row[3]));
    art.summary["max_closed_form_error"] = err;
  }
  return art;
}

Artifacts cmd_reach(const RunConfig& cfg) {
  const PairDescriptor pair = parse_stage([&] { return config_pair(cfg.raw); });
  const DriftField x = parse_stage([&] { return config_drift(pair, cfg.raw); });
  const APoint a0 = parse_stage([&] { return config_point(pair, cfg.raw, "a0"); });
  const int n = parse_stage([&] { return integer(cfg.raw, "n_traj", 64); });
  if (n < 1) throw ConfigError("'n_traj' must be at least 1");
  ReachOptions ro;
  ro.dt = cfg.dt;
  const ReachCloud cloud = reach_sample(pair, x, a0, cfg.T, n, cfg.seed, ro);
  Artifacts art;
  CsvTable t;
  t.header = numbered("a", pair.coord_dim());
  for (Eigen::Index j = 0; j < cloud.points.cols(); ++j) {
    std::vector<double> row;
    for (Eigen::Index i = 0; i < cloud.points.rows(); ++i) row.push_back(cloud.points(i, j));
    t.rows.push_back(std::move(row));
  }
  art.csv = t;
  art.summary = {{"command", cfg.command},
                 {"n_traj", n},
                 {"lower", vec_to_json(cloud.lower)},
                 {"upper", vec_to_json(cloud.upper)}};
  if (cloud.hull) {
    art.summary["hull_dim"] = cloud.hull->dim;
    art.summary["hull_vertices"] = cloud.hull->vertices.size();
  }
  return art;
}

Artifacts cmd_majorize(const RunConfig& cfg) {
  const PairDescriptor pair = parse_stage([&] { return config_pair(cfg.raw); });
  const APoint a = parse_stage([&] { return config_point(pair, cfg.raw, "a"); });
  const APoint b = parse_stage([&] { return config_point(pair, cfg.raw, "b"); });
  const double tol = parse_stage([&] { return num(cfg.raw, "tol", 1e-9); });
  const MajorizationCheck c = majorization_check(pair, a, b, tol);
  const WeylPolytope poly = weyl_polytope(pair, a);
  Artifacts art;
  CsvTable t;
  t.header = numbered("v", pair.coord_dim());
  for (const APoint& v : poly.vertices) {
    std::vector<double> row;
    for (Eigen::Index i = 0; i < v.size(); ++i) row.push_back(v(i));
    t.rows.push_back(std::move(row));
  }
  art.csv = t;
  art.summary = {{"command", cfg.command},
                 {"majorizes", c.lp},
                 {"lp_distance", c.lp_distance},
                 {"vertices", poly.vertices.size()}};
  if (c.fast) art.summary["fast_path"] = *c.fast;
  return art;
}

Artifacts cmd_simulate_dominating(const RunConfig& cfg) {
  const PairDescriptor pair = parse_stage([&] { return config_pair(cfg.raw); });
  const DriftField x = parse_stage([&] { return config_drift(pair, cfg.raw); });
  const APoint a0 = parse_stage([&] { return config_point(pair, cfg.raw, "a0"); });
  const APoint b0 = parse_stage([&] { return config_point(pair, cfg.raw, "b0"); });
  if (!x.is_affine()) throw ConfigError("simulate-dominating needs an affine drift");
  if (!majorizes(pair, b0, a0)) throw ConfigError("'a0' must be majorized by 'b0'");
  Selector sel = parse_stage([&] {
    if (!cfg.raw.contains("selector")) return Selector::random();
    return config_selector(pair, cfg.raw, cfg.seed);
  });
  const Trajectory a = integrate_inclusion(pair, x, sel, a0, cfg.T, cfg.dt, cfg.seed);
  const DominatingResult res = simulate_dominating(pair, x, a, b0);
  Artifacts art;
  CsvTable t;
  t.header = {"t"};
  for (const auto& h : numbered("a", pair.coord_dim())) t.header.push_back(h);
  for (const auto& h : numbered("b", pair.coord_dim())) t.header.push_back(h);
  t.header.push_back("slack");
  for (std::size_t i = 0; i < a.t.size(); ++i) {
    std::vector<double> row{a.t[i]};
    for (Eigen::Index j = 0; j < a.a[i].size(); ++j) row.push_back(a.a[i](j));
    for (Eigen::Index j = 0; j < res.b.a[i].size(); ++j) row.push_back(res.b.a[i](j));
    row.push_back(res.slack[i]);
    t.rows.push_back(std::move(row));
  }
  art.csv = t;
  art.summary = {{"command", cfg.command},
                 {"pass", res.ok},
                 {"min_slack", res.min_slack},
                 {"fallback_steps", res.fallback_steps}};
  if (res.first_violation) art.summary["first_violation"] = *res.first_violation;
  return art;
}

Artifacts cmd_bloch(const RunConfig& cfg) {
  const BlochParams p = parse_stage([&] {
    return BlochParams::make(num(cfg.raw, "Gamma", 3.0), num(cfg.raw, "gamma", 1.0));
  });
  std::vector<double> ts = time_nodes(cfg.T, cfg.dt);
  const double t0 = p.t0();
  if (t0 <= cfg.T) {
    const auto it = std::lower_bound(ts.begin(), ts.end(), t0);
    if (it == ts.end() || *it != t0) ts.insert(it, t0);
  }
  Artifacts art;
  CsvTable t;
  t.header = {"t", "a_star", "phi_star", "omega0", "omega_c"};
  for (double s : ts) {
    const double a = optimal_a_star(p, s);
    const BlochControls c = optimal_controls(p, s);
    t.rows.push_back({s, a, optimal_phi(p, a), c.omega0, c.omega_c});
  }
  art.csv = t;
  art.summary = {{"command", cfg.command},
                 {"Gamma", p.big_gamma},
                 {"gamma", p.small_gamma},
                 {"t0", t0},
                 {"a0", p.a0()},
                 {"eta", p.eta()},
                 {"omega0_integral_last_1e-2", nan_safe(omega0_integral(p, 1e-2))}};
  return art;
}

}  // namespace

RunConfig make_config(const std::string& command, const json& raw, const Overrides& ov) {
  if (std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end())
    throw ConfigError("unknown command '" + command + "'");
  if (!raw.is_object()) throw ConfigError("configuration must be a JSON object");
  RunConfig c;
  c.command = command;
  c.raw = raw;
  c.T = num(raw, "T", command == "bloch" ? 2.0 : 1.0);
  c.dt = num(raw, "dt", 1e-3);
  if (raw.contains("seed")) {
    const json& s = raw.at("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0))
      throw ConfigError("'seed' must be a nonnegative integer");
    c.seed = s.get<std::uint64_t>();
  }
  if (raw.contains("out")) {
    if (!raw.at("out").is_string()) throw ConfigError("'out' must be a string");
    c.out = raw.at("out").get<std::string>();
  }
  if (ov.seed) c.seed = *ov.seed;
  if (ov.dt) c.dt = *ov.dt;
  if (ov.out) c.out = *ov.out;
  if (!(c.dt > 0) || !std::isfinite(c.dt)) throw ConfigError("dt must be positive");
  if (!(c.T >= 0) || !std::isfinite(c.T)) throw ConfigError("T must be nonnegative");
  return c;
}

int run(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
  try {
    if (cfg.command == "selftest") {
      std::vector<int> only;
      if (cfg.raw.contains("criteria"))
        for (const auto& v : cfg.raw.at("criteria")) only.push_back(v.get<int>());
      const int failures = acceptance::run_all(log, only);
      return failures ? kNumerical : kOk;
    }
    Artifacts art;
    if (cfg.command == "simulate-full") art = cmd_simulate_full(cfg);
    else if (cfg.command == "simulate-reduced") art = cmd_simulate_reduced(cfg);
    else if (cfg.command == "project") art = cmd_project(cfg);
    else if (cfg.command == "lift") art = cmd_lift(cfg);
    else if (cfg.command == "envelope") art = cmd_envelope(cfg);
    else if (cfg.command == "reach") art = cmd_reach(cfg);
    else if (cfg.command == "majorize") art = cmd_majorize(cfg);
    else if (cfg.command == "simulate-dominating") art = cmd_simulate_dominating(cfg);
    else if (cfg.command == "bloch") art = cmd_bloch(cfg);
    else throw ConfigError("unknown command '" + cfg.command + "'");
    emit(cfg, art, log);
    return kOk;
  } catch (const ConfigError& e) {
    err << "redctl: usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const json::exception& e) {
    err << "redctl: usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "redctl: numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Reduced control of symmetric-space systems"};
  std::string command, config_path;
  std::uint64_t seed = 0;
  double dt = 0.0;
  std::string out;
  app.add_option("command", command, "one of: simulate-full simulate-reduced project lift "
                                     "envelope reach majorize simulate-dominating bloch selftest")
      ->required();
  app.add_option("--config", config_path, "JSON configuration file");
  auto* seed_opt = app.add_option("--seed", seed, "random seed");
  auto* dt_opt = app.add_option("--dt", dt, "time step");
  auto* out_opt = app.add_option("--out", out, "output CSV path");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  try {
    json raw = json::object();
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw ConfigError("cannot read configuration '" + config_path + "'");
      raw = json::parse(f);
    }
    Overrides ov;
    if (*seed_opt) ov.seed = seed;
    if (*dt_opt) ov.dt = dt;
    if (*out_opt) ov.out = out;
    return run(make_config(command, raw, ov), std::cout, std::cerr);
  } catch (const ConfigError& e) {
    std::cerr << "redctl: usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const json::exception& e) {
    std::cerr << "redctl: usage error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace redctl::cli
