// Copyright 2026 The jcenters Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// centers: command-line front end for Jeffreys centroids and proxy centers.

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "jcenters/bench.hpp"
#include "jcenters/categorical.hpp"
#include "jcenters/gaussian.hpp"
#include "jcenters/io.hpp"

namespace {

using jcenters::Method;
using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("centers");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("CENTERS_LOG")) {
    const std::string v(env);
    if (v == "error") spdlog::set_level(spdlog::level::err);
    else if (v == "warn") spdlog::set_level(spdlog::level::warn);
    else if (v == "info") spdlog::set_level(spdlog::level::info);
    else if (v == "debug") spdlog::set_level(spdlog::level::debug);
    else spdlog::warn("ignoring unknown CENTERS_LOG value '{}'", v);
  }
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw jcenters::ParseError("cannot write '" + path + "'");
  out << text;
  spdlog::info("wrote {}", path);
}

json diagnostics_json(const jcenters::CenterDiagnostics& d) {
  return {{"iterations", d.iterations},
          {"final_gap", d.final_gap},
          {"residual", d.residual},
          {"elapsed_ns", d.elapsed_ns},
          {"converged", d.converged}};
}

json vec_json(const jcenters::Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json gaussian_json(const jcenters::GaussianParam& p) {
  json cov = json::array();
  for (int i = 0; i < p.dim(); ++i) cov.push_back(vec_json(p.cov.matrix().row(i).transpose()));
  return {{"mean", vec_json(p.mean)}, {"cov", cov}};
}

struct ComputeArgs {
  std::string family;
  std::string method;
  std::string input;
  std::string weights;
  std::string output;
  bool reference = false;
  double epsilon = 0.0;  // 0 selects the method default
};

int compute_categorical(const ComputeArgs& a, Method method, json& report) {
  using namespace jcenters;
  auto rows = parse_histogram_csv(read_file(a.input));
  Vec w = a.weights.empty() ? uniform_weights(rows.size()) : parse_weights_csv(read_file(a.weights), rows.size());
  const HistogramSet set(std::move(rows), w);
  spdlog::info("categorical input: {} histograms, {} bins", set.size(), set.points.front().dim());

  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0).count();
  };
  SimplexPoint center;
  CenterDiagnostics diag;
  int rc = kExitOk;
  switch (method) {
    case Method::kJeffreys: {
      const auto r = jeffreys_centroid_cat(set, a.epsilon > 0 ? a.epsilon : 1e-10);
      center = r.center;
      diag = r.diagnostics;
      report["lambda"] = r.lambda;
      report["mass_residual"] = r.mass_residual;
      report["fixed_point_residual"] = r.fixed_point_residual;
      break;
    }
    case Method::kJfr:
      center = jfr_center_cat(set);
      diag.elapsed_ns = elapsed();
      break;
    case Method::kGb: {
      const auto r = gb_center_cat(set, a.epsilon > 0 ? a.epsilon : 1e-8);
      center = r.center;
      diag = r.diagnostics;
      if (!diag.converged) rc = kExitNumerical;
      break;
    }
    case Method::kArithmetic:
      center = arithmetic_mean(set);
      diag.elapsed_ns = elapsed();
      break;
    case Method::kGeometric:
      center = normalized_geometric_mean(set);
      diag.elapsed_ns = elapsed();
      break;
    case Method::kUnnormalized: {
      const auto u = unnormalized_center(set);
      center = SimplexPoint::Normalized(u.masses);
      diag.elapsed_ns = elapsed();
      report["unnormalized"] = vec_json(u.masses);
      report["mass"] = u.mass;
      break;
    }
  }
  report["dim"] = center.dim();
  report["n"] = set.size();
  report["center"] = vec_json(center.probs());
  report["jeffreys_loss"] = jeffreys_loss_cat(set, center);
  report["diagnostics"] = diagnostics_json(diag);
  if (a.reference && method != Method::kJeffreys) {
    const auto ref = jeffreys_centroid_cat(set, 1e-10);
    const double lref = jeffreys_loss_cat(set, ref.center);
    report["reference"] = {{"center", vec_json(ref.center.probs())},
                           {"jeffreys_loss", lref},
                           {"info_eps", lref > 0 ? approximation_factor(set, center, ref.center) : 0.0},
                           {"tv", tv_cat(center, ref.center)}};
  }
  return rc;
}

bool common_mean(const jcenters::GaussianSet& set) {
  const auto& m0 = set.points.front().mean;
  for (const auto& p : set.points) {
    if ((p.mean - m0).norm() > 1e-12 * std::max(1.0, m0.norm())) return false;
  }
  return true;
}

jcenters::GaussianParam centered_centroid(const jcenters::GaussianSet& set) {
  std::vector<jcenters::SpdMatrix> covs;
  for (const auto& p : set.points) covs.push_back(p.cov);
  return jcenters::jeffreys_centroid_centered(jcenters::SpdSet(covs, set.weights), set.points.front().mean);
}

int compute_gaussian(const ComputeArgs& a, Method method, json& report) {
  using namespace jcenters;
  auto in = parse_gaussian_json(read_file(a.input));
  Vec w = !a.weights.empty() ? parse_weights_csv(read_file(a.weights), in.points.size())
                             : in.weights.value_or(uniform_weights(in.points.size()));
  const GaussianSet set(std::move(in.points), w);
  spdlog::info("gaussian input: {} distributions, dimension {}", set.size(), set.points.front().dim());

  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0).count();
  };
  GaussianParam center;
  CenterDiagnostics diag;
  int rc = kExitOk;
  switch (method) {
    case Method::kJeffreys:
      if (!common_mean(set)) throw DomainError("the closed-form Jeffreys centroid needs a common mean");
      center = centered_centroid(set);
      diag.elapsed_ns = elapsed();
      break;
    case Method::kJfr:
      center = jfr_center_mvn(set);
      diag.elapsed_ns = elapsed();
      break;
    case Method::kGb: {
      GBOptions opts;
      if (a.epsilon > 0) opts.tol = a.epsilon;
      const auto r = gb_center_mvn(set, opts);
      center = r.center;
      diag = r.diagnostics;
      if (!diag.converged) rc = kExitNumerical;
      break;
    }
    case Method::kArithmetic:
      center = mvn_from_natural(sided_kl_centroids_mvn(set).left);
      diag.elapsed_ns = elapsed();
      break;
    case Method::kGeometric:
      center = mvn_from_natural(sided_kl_centroids_mvn(set).right);
      diag.elapsed_ns = elapsed();
      break;
    case Method::kUnnormalized:
      throw DomainError("method 'unnormalized' applies to the categorical family only");
  }
  report["dim"] = center.dim();
  report["n"] = set.size();
  report["center"] = gaussian_json(center);
  report["jeffreys_loss"] = jeffreys_loss_mvn(set, center);
  report["diagnostics"] = diagnostics_json(diag);
  if (a.reference && method != Method::kJeffreys) {
    if (common_mean(set)) {
      const auto ref = centered_centroid(set);
      const double lref = jeffreys_loss_mvn(set, ref);
      report["reference"] = {{"center", gaussian_json(ref)},
                             {"jeffreys_loss", lref},
                             {"info_eps", lref > 0 ? jeffreys_loss_mvn(set, center) / lref - 1.0 : 0.0}};
    } else {
      spdlog::warn("no closed-form reference for Gaussians with distinct means; skipping --reference");
      report["reference"] = nullptr;
    }
  }
  return rc;
}

int run_compute(const ComputeArgs& a) {
  const auto method = jcenters::parse_method(a.method);
  if (!method) throw jcenters::ParseError("unknown method '" + a.method + "'");
  json report;
  report["schema_version"] = 1;
  report["family"] = a.family;
  report["method"] = a.method;
  const int rc = a.family == "categorical" ? compute_categorical(a, *method, report)
                                           : compute_gaussian(a, *method, report);
  emit(jcenters::dump_json(report), a.output);
  if (rc == kExitNumerical) spdlog::error("the iteration did not converge; see diagnostics");
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Jeffreys centroids and fast proxy centers for categorical and Gaussian sets"};
  app.require_subcommand(1);

  ComputeArgs ca;
  auto* compute = app.add_subcommand("compute", "compute one center of a weighted set");
  compute->add_option("--family", ca.family, "input family")->required()->check(CLI::IsMember({"categorical", "gaussian"}));
  compute->add_option("--method", ca.method, "center to compute")
      ->required()
      ->check(CLI::IsMember({"jeffreys", "jfr", "gb", "arithmetic", "geometric", "unnormalized"}));
  compute->add_option("--input", ca.input, "CSV histograms or JSON Gaussians")->required();
  compute->add_option("--weights", ca.weights, "single-row CSV of weights");
  compute->add_flag("--reference", ca.reference, "report the approximation factor against the Jeffreys centroid");
  compute->add_option("--epsilon", ca.epsilon, "bisection width (jeffreys) or stopping gap (gb)")
      ->check(CLI::PositiveNumber);
  compute->add_option("--output", ca.output, "write the JSON report here instead of stdout");

  auto* bench = app.add_subcommand("bench", "reproduce the approximation-quality experiments");
  bench->require_subcommand(1);

  jcenters::RunConfig cfg;
  bool no_timing = false;
  bool serial = false;
  auto* t1 = bench->add_subcommand("table1", "random histogram pairs per dimension");
  t1->add_option("--dims", cfg.dims, "comma-separated bin counts")->delimiter(',');
  t1->add_option("--trials", cfg.trials, "trials per dimension");
  t1->add_option("--seed", cfg.seed, "base seed");
  t1->add_option("--epsilon", cfg.epsilon, "bisection width of the reference centroid")->check(CLI::PositiveNumber);
  t1->add_option("--gb-tol", cfg.gb_tol, "total-variation stop of the GB sequence")->check(CLI::PositiveNumber);
  t1->add_flag("--no-timing", no_timing, "zero the timing columns");
  t1->add_flag("--serial", serial, "use the single-threaded reference runner");
  t1->add_option("--output", cfg.output_path, "write the CSV here instead of stdout");

  std::vector<double> alphas = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8,
                                1e-9, 1e-10, 1e-11, 1e-12, 1e-13, 1e-14, 1e-15, 1e-16};
  double t2_eps = 1e-10;
  double t2_gb_tol = 1e-8;
  std::string t2_out;
  bool t2_no_timing = false;
  auto* t2 = bench->add_subcommand("table2", "three-bin pair (1/3,1/3,1/3) vs (1-a, a/2, a/2)");
  t2->add_option("--alphas", alphas, "comma-separated alpha values in (0,1)")->delimiter(',');
  t2->add_option("--epsilon", t2_eps, "bisection width of the reference centroid")->check(CLI::PositiveNumber);
  t2->add_option("--gb-tol", t2_gb_tol, "total-variation stop of the GB sequence")->check(CLI::PositiveNumber);
  t2->add_flag("--no-timing", t2_no_timing, "zero the timing columns");
  t2->add_option("--output", t2_out, "write the CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (compute->parsed()) return run_compute(ca);
    if (t1->parsed()) {
      cfg.timing = !no_timing;
      spdlog::info("table1: {} dims, {} trials, seed {}", cfg.dims.size(), cfg.trials, cfg.seed);
      const auto recs = jcenters::run_table1(cfg, serial ? jcenters::Execution::kSerial
                                                         : jcenters::Execution::kParallel);
      emit(jcenters::table1_csv(recs), cfg.output_path);
      return kExitOk;
    }
    if (t2->parsed()) {
      const auto rows = jcenters::run_table2(alphas, t2_eps, t2_gb_tol, !t2_no_timing);
      for (const auto& r : rows) {
        if (r.flag != "ok") spdlog::warn("alpha {:.1e}: second input is {} in double precision", r.alpha, r.flag);
      }
      emit(jcenters::table2_csv(rows), t2_out);
      return kExitOk;
    }
  } catch (const jcenters::ParseError& e) {
    spdlog::error("{}", e.what());
    return kExitInput;
  } catch (const jcenters::DomainError& e) {
    spdlog::error("{}", e.what());
    return kExitInput;
  } catch (const jcenters::NumericalError& e) {
    spdlog::error("{}", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitNumerical;
  }
  return kExitOk;
}
