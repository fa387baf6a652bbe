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

#ifndef JCENTERS_BENCH_HPP_
#define JCENTERS_BENCH_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "jcenters/categorical.hpp"

namespace jcenters {

enum class Method { kJeffreys, kJfr, kGb, kArithmetic, kGeometric, kUnnormalized };
inline constexpr std::array<Method, 6> kAllMethods = {Method::kJeffreys,   Method::kJfr,
                                                      Method::kGb,         Method::kArithmetic,
                                                      Method::kGeometric,  Method::kUnnormalized};

const char* method_name(Method m);
std::optional<Method> parse_method(std::string_view name);

struct BenchRecord {
  int dim = 0;
  Method method = Method::kJeffreys;
  double avg_info_eps = 0.0;
  double max_info_eps = 0.0;
  double avg_tv = 0.0;
  double max_tv = 0.0;
  std::int64_t avg_time_ns = 0;
  double speedup_vs_jeffreys = 0.0;
};

struct RunConfig {
  std::uint64_t seed = 42;
  int trials = 1000;
  std::vector<int> dims = {2, 4, 8, 16, 32, 64, 128, 256};
  double epsilon = 1e-10;  // bisection width for the reference centroid
  double gb_tol = 1e-8;    // total-variation stop for the GB double sequence
  int gb_max_iter = 200;
  bool timing = true;      // false zeroes every timing column
  std::string output_path;

  void Validate() const;
};

enum class Execution { kSerial, kParallel };

// Fixed splitting rule: splitmix64 over (seed, dim, trial).
std::uint64_t trial_seed(std::uint64_t seed, int dim, int trial);

// Uniform (Dirichlet(1,...,1)) histogram; draws with a bin below 1e-12 are
// rejected and redrawn.
SimplexPoint random_histogram(std::mt19937_64& rng, int dim);
HistogramSet random_histogram_pair(std::uint64_t seed, int dim, int trial);

struct TrialResult {
  std::array<double, 6> info_eps{};
  std::array<double, 6> tv{};
  std::array<std::int64_t, 6> time_ns{};
};

// Evaluates every method on one input against the numerical Jeffreys centroid.
TrialResult run_trial(const HistogramSet& set, const RunConfig& config);

// Serial is the reference path; both produce identical records when timing is off.
std::vector<BenchRecord> run_table1(const RunConfig& config, Execution exec = Execution::kParallel);

struct Table2Row {
  double alpha = 0.0;
  double jfr_info_eps = 0.0;
  double jfr_tv = 0.0;
  double gb_info_eps = 0.0;
  double gb_tv = 0.0;
  std::int64_t jeffreys_time_ns = 0;
  std::int64_t jfr_time_ns = 0;
  std::int64_t gb_time_ns = 0;
  std::string flag;  // "ok", "lossy" or "indistinct"
};

// Inputs (1/3, 1/3, 1/3) and (1 - alpha, alpha/2, alpha/2), uniform weights.
HistogramSet table2_input(double alpha);
std::vector<Table2Row> run_table2(const std::vector<double>& alphas, double epsilon = 1e-10,
                                  double gb_tol = 1e-8, bool timing = true);

// Sum by recursive halving; the order depends only on the input order.
double pairwise_sum(const double* x, std::size_t n);

std::string format_sci(double v);
std::string table1_csv(const std::vector<BenchRecord>& records);
std::string table2_csv(const std::vector<Table2Row>& rows);

}  // namespace jcenters

#endif  // JCENTERS_BENCH_HPP_
