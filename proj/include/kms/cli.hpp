#pragma once

#include <algorithm>
#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "kms/enumerate.hpp"
#include "kms/json_io.hpp"

namespace kms {

enum ExitCode { ExitOk = 0, ExitValidation = 1, ExitViolation = 2, ExitUsage = 3 };

struct RunConfig {
  std::string stratum, graph, cover, model, point;
  std::string mode = "two_level";
  int max_levels = 2;
  int max_edges = 0;
  std::string format = "json";
  int jobs = 1;
  bool connected_only = false;
  bool fixtures = false;
  bool verbose = false;
  std::string check = "poincare";
  double eps = 0.5;
  double cutoff = 0;
  std::vector<double> delta;
  std::vector<double> log_delta;
  std::vector<double> cutoffs;
  std::vector<double> n;
};

namespace detail {

inline EnumerationMode parse_mode(const RunConfig& c) {
  if (c.mode == "two_level") return EnumerationMode::two_level();
  if (c.mode == "one_horizontal") return EnumerationMode::one_horizontal();
  if (c.mode == "all_up_to") return EnumerationMode::all_up_to(c.max_levels, c.max_edges);
  throw CLI::ValidationError("--mode", "expected two_level, one_horizontal or all_up_to");
}

// Order-preserving parallel map over [0, n).
template <class F>
auto parallel_map(size_t n, int jobs, F f) -> std::vector<decltype(f(size_t{}))> {
  using R = decltype(f(size_t{}));
  std::vector<std::optional<R>> out(n);
  std::vector<std::exception_ptr> errs(n);
  const size_t workers = std::max<size_t>(1, std::min<size_t>(jobs < 1 ? 1 : jobs, n));
  auto work = [&](size_t w) {
    for (size_t i = w; i < n; i += workers) {
      try {
        out[i] = f(i);
      } catch (...) {
        errs[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> ts;
    for (size_t w = 0; w < workers; ++w) ts.emplace_back(work, w);
    for (auto& t : ts) t.join();
  }
  std::vector<R> res;
  for (size_t i = 0; i < n; ++i) {
    if (errs[i]) std::rethrow_exception(errs[i]);
    res.push_back(std::move(*out[i]));
  }
  return res;
}

// Covers selected by --cover, --graph or --stratum/--mode.
inline std::vector<GraphCover> select_covers(const RunConfig& c, std::ostream& err) {
  CoverEnumerationOptions opt;
  opt.connected_only = c.connected_only;
  if (c.verbose) opt.verbose = [&err](const std::string& s) { err << s << "\n"; };
  if (!c.cover.empty()) return {parse_cover(load_json_arg(c.cover))};
  std::vector<GraphCover> out;
  auto add = [&](const EnhancedLevelGraph& G) { enumerate_covers(G, [&](const GraphCover& C) { out.push_back(C); }, opt); };
  if (!c.graph.empty()) {
    add(parse_graph(load_json_arg(c.graph)));
  } else {
    enumerate_boundary_graphs(parse_signature(load_json_arg(c.stratum)), parse_mode(c), add);
  }
  return out;
}

inline void require_one_input(const RunConfig& c, bool allow_stratum, bool allow_graph, bool allow_cover) {
  int count = !c.stratum.empty() + !c.graph.empty() + !c.cover.empty();
  if (count != 1) throw CLI::ValidationError("input", "exactly one of --stratum, --graph, --cover is required");
  if ((!c.stratum.empty() && !allow_stratum) || (!c.graph.empty() && !allow_graph) || (!c.cover.empty() && !allow_cover))
    throw CLI::ValidationError("input", "this subcommand does not accept that input kind");
}

inline int cmd_validate(const RunConfig& c, std::ostream& out) {
  require_one_input(c, true, true, true);
  Format f = parse_format(c.format);
  if (!c.stratum.empty()) {
    Signature s = parse_signature(load_json_arg(c.stratum));
    json j = {{"stratum", to_json(s)}, {"finite_area", s.finite_area}, {"dimension", stratum_dimension(s)},
              {"cover_signature", to_json(cover_signature(s))}, {"power_divisors", power_divisors(s)}};
    out << export_report(j, f) << "\n";
    return ExitOk;
  }
  if (!c.graph.empty()) {
    out << export_graph(parse_graph(load_json_arg(c.graph)), f) << "\n";
    return ExitOk;
  }
  GraphCover C = parse_cover(load_json_arg(c.cover));
  CoverReport r = validate_cover(C);
  if (!r.ok()) fail(r.issues.front().code, r.issues.front().message);
  out << export_cover(C, f) << "\n";
  return ExitOk;
}

inline int cmd_boundary(const RunConfig& c, std::ostream& out) {
  require_one_input(c, true, false, false);
  Format f = parse_format(c.format);
  Signature s = parse_signature(load_json_arg(c.stratum));
  enumerate_boundary_graphs(s, parse_mode(c), [&](const EnhancedLevelGraph& G) { out << export_graph(G, f) << "\n"; });
  return ExitOk;
}

inline int cmd_covers(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require_one_input(c, true, true, false);
  Format f = parse_format(c.format);
  for (const auto& C : select_covers(c, err)) out << export_cover(C, f) << "\n";
  return ExitOk;
}

inline int cmd_twist(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require_one_input(c, true, true, true);
  auto covers = select_covers(c, err);
  auto rows = parallel_map(covers.size(), c.jobs, [&](size_t i) {
    const GraphCover& C = covers[i];
    OrbitCount oc = prong_orbit_count(C);
    json j = {{"base_hash", short_hash(canonical_form(C.base))}, {"cover_hash", short_hash(cover_canonical_form(C))},
              {"twist", to_json(twist_group(C))}, {"simple_twist", to_json(simple_twist_and_index(C))},
              {"orbits", to_json(oc)}};
    return std::make_pair(j, oc.agree());
  });
  bool ok = true;
  for (const auto& [j, agree] : rows) {
    out << j.dump() << "\n";
    ok = ok && agree;
  }
  return ok ? ExitOk : ExitViolation;
}

inline int cmd_dims(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require_one_input(c, true, true, true);
  auto covers = select_covers(c, err);
  auto rows = parallel_map(covers.size(), c.jobs, [&](size_t i) {
    const GraphCover& C = covers[i];
    DimensionReport r = check_dimension_identity(C);
    json j = {{"base_hash", short_hash(canonical_form(C.base))}, {"cover_hash", short_hash(cover_canonical_form(C))},
              {"vertex_types", C.vertex_types}, {"edge_shifts", C.edge_shifts}, {"report", to_json(r)}};
    bool ok = !r.connected || r.pass;
    if (r.connected && r.pass) j["shape"] = to_json(pper_coordinate_shape(C));
    if (c.fixtures) {
      json fx = json::array();
      for (size_t e = 0; e < C.edges.size(); ++e) {
        if (C.horizontal(static_cast<int>(e))) {
          auto h = horizontal_fixture_identity("x" + std::to_string(e));
          ok = ok && h.holds;
          fx.push_back(to_json(h));
        } else {
          try {
            fx.push_back(to_json(vertical_fixture_identity(C, static_cast<int>(e))));
          } catch (const Error& ex) {
            ok = false;
            fx.push_back(error_json(ex));
          }
        }
      }
      j["fixtures"] = fx;
    }
    j["pass"] = ok;
    return std::make_pair(j, ok);
  });
  bool ok = true;
  for (const auto& [j, pass] : rows) {
    out << j.dump() << "\n";
    ok = ok && pass;
  }
  return ok ? ExitOk : ExitViolation;
}

inline MetricPoint parse_point(const json& j) {
  MetricPoint P;
  for (const auto& t : detail::get<json>(j, "t")) P.t.push_back(parse_cplx(t));
  for (const auto& lv : detail::get<json>(j, "x")) {
    P.x.emplace_back();
    for (const auto& x : lv) {
      if (!x.is_array() || x.size() != 2) fail(ErrorCode::ParseError, "x entries are [log|x|^2, arg]");
      P.x.back().push_back({x[0].get<double>(), x[1].get<double>()});
    }
  }
  if (j.contains("aux"))
    for (const auto& w : j["aux"]) P.aux.push_back(parse_cplx(w));
  return P;
}

inline int cmd_metric(const RunConfig& c, std::ostream& out) {
  MetricModel M = c.model.empty() ? counterexample_model() : parse_metric_model(load_json_arg(c.model));
  json j;
  bool ok = true;
  if (c.check == "poincare") {
    if (!(c.eps > 0 && c.eps < 1)) fail(ErrorCode::DomainError, "eps must lie in (0,1)");
    QuadratureReport r = poincare_radial_integral(c.eps, c.cutoff);
    j = to_json(r);
    j["eps"] = c.eps;
    ok = r.relative_error() <= 1e-6;
  } else if (c.check == "goodness") {
    std::vector<double> ns = c.n.empty() ? std::vector<double>{1e2, 1e3, 1e4} : c.n;
    GoodnessTable t = goodness_violation(M, ns);
    j = to_json(t);
    ok = t.increasing;
    for (const auto& r : t.rows) ok = ok && std::fabs(r.ratio_over_log_n - 1) <= 0.01;
  } else if (c.check == "tube") {
    std::vector<double> lds = c.log_delta;
    for (double d : c.delta) {
      if (!(d > 0 && d < 1)) fail(ErrorCode::DomainError, "delta must lie in (0,1)");
      lds.push_back(std::log(d));
    }
    if (lds.empty())
      for (int i = 10; i <= 100; i += 10) lds.push_back(-i);
    std::sort(lds.begin(), lds.end(), std::greater<double>());
    std::vector<double> cut = c.cutoffs.empty() ? std::vector<double>{1e-2, 1e-4, 1e-6} : c.cutoffs;
    TubeReport t = tube_integral_estimates(M, c.eps, lds, cut);
    j = to_json(t);
    ok = t.decays && t.double_integral.pass;
    for (const auto& r : t.rows) ok = ok && r.G.relative_error() <= 1e-6;
  } else if (c.check == "blocks") {
    MetricPoint P = c.point.empty() ? MetricPoint{{cplx(1)}, {{}, {{-2, 0}}}, {}} : parse_point(load_json_arg(c.point));
    CurvatureBlocks b = curvature_blocks(M, P);
    j = to_json(b);
    ok = b.hermitian();
  } else {
    throw CLI::ValidationError("--check", "expected poincare, goodness, tube or blocks");
  }
  j["check"] = c.check;
  j["pass"] = ok;
  out << j.dump() << "\n";
  return ok ? ExitOk : ExitViolation;
}

inline void usage_error(std::ostream& err, const std::string& msg) {
  err << json({{"error", "Usage"}, {"message", msg}}).dump() << "\n";
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  RunConfig c;
  CLI::App app{"Boundary graphs, covers, twist lattices and metric estimates for strata of k-differentials", "kms"};
  app.require_subcommand(1);
  auto inputs = [&](CLI::App* s) {
    s->add_option("--stratum", c.stratum, "signature JSON or path");
    s->add_option("--graph", c.graph, "level graph JSON or path");
    s->add_option("--cover", c.cover, "cover JSON or path");
  };
  auto enumeration = [&](CLI::App* s) {
    s->add_option("--mode", c.mode, "two_level | one_horizontal | all_up_to");
    s->add_option("--max-levels", c.max_levels)->check(CLI::PositiveNumber);
    s->add_option("--max-edges", c.max_edges)->check(CLI::NonNegativeNumber);
  };
  auto jobs = [&](CLI::App* s) { s->add_option("--jobs", c.jobs)->check(CLI::PositiveNumber); };
  auto format = [&](CLI::App* s) { s->add_option("--format", c.format, "json | dot | text"); };

  auto* validate = app.add_subcommand("validate", "validate a signature, graph or cover");
  inputs(validate);
  format(validate);
  auto* boundary = app.add_subcommand("boundary", "enumerate boundary graphs as NDJSON");
  inputs(boundary);
  enumeration(boundary);
  format(boundary);
  auto* covers = app.add_subcommand("covers", "enumerate covers of boundary graphs");
  inputs(covers);
  enumeration(covers);
  format(covers);
  covers->add_flag("--connected-only", c.connected_only);
  covers->add_flag("-v,--verbose", c.verbose);
  auto* twist = app.add_subcommand("twist", "twist lattices, simple twist index and prong orbits");
  inputs(twist);
  enumeration(twist);
  jobs(twist);
  auto* dims = app.add_subcommand("dims", "check the residue dimension identity per cover");
  inputs(dims);
  enumeration(dims);
  jobs(dims);
  dims->add_flag("--fixtures", c.fixtures, "also check plumbing fixtures on every edge");
  dims->add_flag("--connected-only", c.connected_only);
  auto* metric = app.add_subcommand("metric", "numerical metric estimates");
  metric->add_option("--check", c.check, "poincare | goodness | tube | blocks");
  metric->add_option("--model", c.model, "metric model JSON or path");
  metric->add_option("--point", c.point, "point JSON for blocks");
  metric->add_option("--eps", c.eps);
  metric->add_option("--cutoff", c.cutoff);
  metric->add_option("--delta", c.delta);
  metric->add_option("--log-delta", c.log_delta);
  metric->add_option("--cutoffs", c.cutoffs);
  metric->add_option("--n", c.n);
  jobs(metric);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ExitOk;
  } catch (const CLI::ParseError& e) {
    detail::usage_error(err, e.what());
    return ExitUsage;
  }

  try {
    if (*validate) return detail::cmd_validate(c, out);
    if (*boundary) return detail::cmd_boundary(c, out);
    if (*covers) return detail::cmd_covers(c, out, err);
    if (*twist) return detail::cmd_twist(c, out, err);
    if (*dims) return detail::cmd_dims(c, out, err);
    if (*metric) return detail::cmd_metric(c, out);
  } catch (const CLI::Error& e) {
    detail::usage_error(err, e.what());
    return ExitUsage;
  } catch (const Error& e) {
    err << error_json(e).dump() << "\n";
    return ExitValidation;
  }
  return ExitUsage;
}

}  // namespace kms
