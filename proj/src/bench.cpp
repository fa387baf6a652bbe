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

#include "jcenters/bench.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <sstream>

namespace jcenters {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::size_t idx(Method m) { return static_cast<std::size_t>(m); }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform in (0, 1], 53 random bits.
double unit_open_closed(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

// Zero reference loss means the inputs coincide; every center is then exact.
double safe_factor(const HistogramSet& set, const SimplexPoint& cand, const SimplexPoint& ref) {
  const double lref = jeffreys_loss_cat(set, ref);
  if (lref <= 1e-24) return 0.0;
  return jeffreys_loss_cat(set, cand) / lref - 1.0;
}

template <class Fn>
auto timed(bool timing, std::int64_t& ns, Fn fn) {
  const auto t0 = Clock::now();
  auto out = fn();
  ns = timing ? std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0).count() : 0;
  return out;
}

std::vector<BenchRecord> aggregate(int dim, const std::vector<TrialResult>& trials, bool timing) {
  const std::size_t n = trials.size();
  std::vector<BenchRecord> out;
  std::vector<double> eps(n), tv(n);
  std::array<double, 6> avg_time{};
  for (Method m : kAllMethods) {
    std::int64_t total = 0;
    for (const auto& t : trials) total += t.time_ns[idx(m)];
    avg_time[idx(m)] = static_cast<double>(total) / static_cast<double>(n);
  }
  for (Method m : kAllMethods) {
    BenchRecord r;
    r.dim = dim;
    r.method = m;
    for (std::size_t i = 0; i < n; ++i) {
      eps[i] = trials[i].info_eps[idx(m)];
      tv[i] = trials[i].tv[idx(m)];
    }
    r.avg_info_eps = pairwise_sum(eps.data(), n) / static_cast<double>(n);
    r.max_info_eps = *std::max_element(eps.begin(), eps.end());
    r.avg_tv = pairwise_sum(tv.data(), n) / static_cast<double>(n);
    r.max_tv = *std::max_element(tv.begin(), tv.end());
    r.avg_time_ns = static_cast<std::int64_t>(std::llround(avg_time[idx(m)]));
    if (timing) {
      const double mine = std::max(avg_time[idx(m)], 1.0);
      r.speedup_vs_jeffreys = avg_time[idx(Method::kJeffreys)] / mine;
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::kJeffreys: return "jeffreys";
    case Method::kJfr: return "jfr";
    case Method::kGb: return "gb";
    case Method::kArithmetic: return "arithmetic";
    case Method::kGeometric: return "geometric";
    case Method::kUnnormalized: return "unnormalized";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : kAllMethods) {
    if (name == method_name(m)) return m;
  }
  return std::nullopt;
}

void RunConfig::Validate() const {
  if (trials < 1) throw DomainError("trials must be at least 1");
  if (dims.empty()) throw DomainError("at least one dimension is required");
  for (int d : dims) {
    if (d < 2) throw DomainError("every dimension must be at least 2");
  }
  if (!(epsilon > 0.0) || !(gb_tol > 0.0)) throw DomainError("tolerances must be positive");
}

std::uint64_t trial_seed(std::uint64_t seed, int dim, int trial) {
  std::uint64_t s = splitmix64(seed);
  s = splitmix64(s ^ static_cast<std::uint64_t>(dim));
  return splitmix64(s ^ (static_cast<std::uint64_t>(trial) << 20));
}

SimplexPoint random_histogram(std::mt19937_64& rng, int dim) {
  Vec x(dim);
  for (;;) {
    for (int j = 0; j < dim; ++j) x[j] = -std::log(unit_open_closed(rng));
    x /= x.sum();
    if (x.minCoeff() >= 1e-12) return SimplexPoint::Normalized(x);
  }
}

HistogramSet random_histogram_pair(std::uint64_t seed, int dim, int trial) {
  std::mt19937_64 rng(trial_seed(seed, dim, trial));
  std::vector<SimplexPoint> rows;
  rows.push_back(random_histogram(rng, dim));
  rows.push_back(random_histogram(rng, dim));
  return HistogramSet(std::move(rows));
}

TrialResult run_trial(const HistogramSet& set, const RunConfig& config) {
  TrialResult r;
  const bool t = config.timing;
  const auto ref = timed(t, r.time_ns[idx(Method::kJeffreys)],
                         [&] { return jeffreys_centroid_cat(set, config.epsilon); });
  std::array<SimplexPoint, 6> centers;
  centers[idx(Method::kJeffreys)] = ref.center;
  centers[idx(Method::kJfr)] = timed(t, r.time_ns[idx(Method::kJfr)], [&] { return jfr_center_cat(set); });
  centers[idx(Method::kGb)] = timed(t, r.time_ns[idx(Method::kGb)], [&] {
    return gb_center_cat(set, config.gb_tol, config.gb_max_iter).center;
  });
  centers[idx(Method::kArithmetic)] =
      timed(t, r.time_ns[idx(Method::kArithmetic)], [&] { return arithmetic_mean(set); });
  centers[idx(Method::kGeometric)] =
      timed(t, r.time_ns[idx(Method::kGeometric)], [&] { return normalized_geometric_mean(set); });
  centers[idx(Method::kUnnormalized)] = timed(t, r.time_ns[idx(Method::kUnnormalized)], [&] {
    const auto u = unnormalized_center(set);
    return SimplexPoint::Normalized(u.masses);
  });
  for (Method m : kAllMethods) {
    r.info_eps[idx(m)] = safe_factor(set, centers[idx(m)], ref.center);
    r.tv[idx(m)] = tv_cat(centers[idx(m)], ref.center);
  }
  return r;
}

std::vector<BenchRecord> run_table1(const RunConfig& config, Execution exec) {
  config.Validate();
  std::vector<BenchRecord> out;
  for (int dim : config.dims) {
    const int n = config.trials;
    std::vector<TrialResult> results(static_cast<std::size_t>(n));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
    auto body = [&](int i) {
      try {
        results[static_cast<std::size_t>(i)] = run_trial(random_histogram_pair(config.seed, dim, i), config);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    };
    if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic, 8)
      for (int i = 0; i < n; ++i) body(i);
    } else {
      for (int i = 0; i < n; ++i) body(i);
    }
    // Report the lowest failing trial so the error is deterministic too.
    for (int i = 0; i < n; ++i) {
      if (errors[static_cast<std::size_t>(i)]) {
        try {
          std::rethrow_exception(errors[static_cast<std::size_t>(i)]);
        } catch (const NumericalError& e) {
          throw NumericalError("dim " + std::to_string(dim) + ", trial " + std::to_string(i) + ": " + e.what());
        } catch (const DomainError& e) {
          throw DomainError("dim " + std::to_string(dim) + ", trial " + std::to_string(i) + ": " + e.what());
        }
      }
    }
    auto recs = aggregate(dim, results, config.timing);
    out.insert(out.end(), recs.begin(), recs.end());
  }
  return out;
}

HistogramSet table2_input(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  Vec u = Vec::Constant(3, 1.0 / 3.0);
  Vec p(3);
  p << 1.0 - alpha, alpha / 2.0, alpha / 2.0;
  return HistogramSet({SimplexPoint::Normalized(u), SimplexPoint::Normalized(p)});
}

std::vector<Table2Row> run_table2(const std::vector<double>& alphas, double epsilon, double gb_tol,
                                  bool timing) {
  std::vector<Table2Row> rows;
  constexpr int kReps = 20;  // repeat the short calls for a stable clock reading
  for (double alpha : alphas) {
    const HistogramSet set = table2_input(alpha);
    Table2Row r;
    r.alpha = alpha;
    const double one_minus = 1.0 - alpha;
    if (one_minus == 1.0) {
      r.flag = "indistinct";
    } else if (std::abs((one_minus - 1.0) + alpha) / alpha > 1e-6) {
      r.flag = "lossy";
    } else {
      r.flag = "ok";
    }
    auto rep = [&](std::int64_t& ns, auto fn) {
      auto out = timed(timing, ns, [&] {
        auto v = fn();
        for (int k = 1; k < kReps; ++k) v = fn();
        return v;
      });
      ns /= kReps;
      return out;
    };
    const auto ref = rep(r.jeffreys_time_ns, [&] { return jeffreys_centroid_cat(set, epsilon); });
    const auto jfr = rep(r.jfr_time_ns, [&] { return jfr_center_cat(set); });
    const auto gb = rep(r.gb_time_ns, [&] { return gb_center_cat(set, gb_tol); });
    r.jfr_info_eps = safe_factor(set, jfr, ref.center);
    r.jfr_tv = tv_cat(jfr, ref.center);
    r.gb_info_eps = safe_factor(set, gb.center, ref.center);
    r.gb_tv = tv_cat(gb.center, ref.center);
    rows.push_back(r);
  }
  return rows;
}

double pairwise_sum(const double* x, std::size_t n) {
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

std::string format_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.5e", v);
  return buf;
}

std::string table1_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream os;
  os << "dim,method,avg_info_eps,max_info_eps,avg_tv,max_tv,avg_time_ns,speedup\n";
  for (const auto& r : records) {
    os << r.dim << ',' << method_name(r.method) << ',' << format_sci(r.avg_info_eps) << ','
       << format_sci(r.max_info_eps) << ',' << format_sci(r.avg_tv) << ',' << format_sci(r.max_tv) << ','
       << format_sci(static_cast<double>(r.avg_time_ns)) << ',' << format_sci(r.speedup_vs_jeffreys) << '\n';
  }
  return os.str();
}

std::string table2_csv(const std::vector<Table2Row>& rows) {
  std::ostringstream os;
  os << "alpha,jfr_info_eps,jfr_tv,jfr_time_ns,jfr_speedup,gb_info_eps,gb_tv,gb_time_ns,gb_speedup,flag\n";
  for (const auto& r : rows) {
    auto speed = [&](std::int64_t ns) {
      return ns > 0 ? static_cast<double>(r.jeffreys_time_ns) / static_cast<double>(ns) : 0.0;
    };
    os << format_sci(r.alpha) << ',' << format_sci(r.jfr_info_eps) << ',' << format_sci(r.jfr_tv) << ','
       << format_sci(static_cast<double>(r.jfr_time_ns)) << ',' << format_sci(speed(r.jfr_time_ns)) << ','
       << format_sci(r.gb_info_eps) << ',' << format_sci(r.gb_tv) << ','
       << format_sci(static_cast<double>(r.gb_time_ns)) << ',' << format_sci(speed(r.gb_time_ns)) << ','
       << r.flag << '\n';
  }
  return os.str();
}

}  // namespace jcenters
