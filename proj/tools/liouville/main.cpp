// Copyright 2026 The Liouville Authors
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

// liouville: experiment driver for the quantum-clock simulation library.
//
//   liouville <command> [--config file.json] [--flag value ...]
//
// Every run writes <output-dir>/<command>-<label or timestamp>/ with
// manifest.json (effective config), results.csv (one row per observation,
// 17 significant digits), and summary.json.  Exit status: 0 on success,
// 2 on validation failure (every violated precondition is listed), 3 on a
// numerical abort, with partial rows preserved under quarantine/.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "liouville/analysis.hpp"
#include "liouville/brownian.hpp"
#include "liouville/clock.hpp"
#include "liouville/errors.hpp"
#include "liouville/geometry.hpp"
#include "liouville/gff.hpp"
#include "liouville/scaling.hpp"
#include "liouville/stats.hpp"
#include "runio.hpp"

#ifndef LIOUVILLE_VERSION
#define LIOUVILLE_VERSION "0.0.0"
#endif

namespace {

using json = nlohmann::ordered_json;
using liouville::tools::fmt_g;
using liouville::tools::fmt_short;
using liouville::tools::parallel_replicates;
using liouville::tools::Row;
using liouville::tools::Table;

constexpr const char* kCommands[] = {
    "field-stats",  "clock-mean", "converge",  "positivity", "conformal-check",
    "thick-dim",    "kpz-table",  "moments",   "pair-count"};

struct Options {
  std::string config_path;
  std::string output_dir = "runs";
  std::string label;
  std::string domain;   // square | disc; resolved per command
  std::string mode;     // analytic | conformal; resolved per command
  std::string d0 = "0,0.25,0.5,0.75,1,1.25,1.5,1.75,2";
  std::string q_grid = "0.2,0.4,0.6,0.8,1";
  std::uint64_t seed = 1;
  std::uint64_t path_replicate = 0;
  std::int64_t n_modes = -1;       // resolved per command
  std::int64_t n_replicates = -1;  // resolved per command
  int k = 5;
  int k_min = -1;  // resolved per command
  int k_max = -1;  // resolved per command
  int n_min = 2;
  int n_max = 5;
  int m = 3;
  int scale_k = 4;
  int resolution_k = 6;
  int offsets = 4;
  double gamma = 1.0;
  double t = 0.05;
  double dt = -1.0;        // resolved per command
  double max_time = -1.0;  // resolved per command
  double margin = 0.125;
  double theta = 1.0471975511965976;  // pi/3
  double alpha = 1.3;
  double delta = 0.05;
  double eta = 1.0;
  double q = 1.5;
};

void add_options(CLI::App& app, Options& o) {
  app.add_option("--config", o.config_path,
                 "JSON config file; a manifest.json is accepted and its "
                 "config block is used");
  app.add_option("--output-dir", o.output_dir, "root for run directories");
  app.add_option("--label", o.label,
                 "run directory suffix replacing the timestamp");
  app.add_option("--domain", o.domain, "square | disc");
  app.add_option("--mode", o.mode,
                 "clock variance normalization: analytic | conformal");
  app.add_option("--seed", o.seed, "root RNG seed");
  app.add_option("--path-replicate", o.path_replicate,
                 "replicate index of the fixed path (clock-mean)");
  app.add_option("--n-modes", o.n_modes, "field truncation (modes)");
  app.add_option("--n-replicates", o.n_replicates,
                 "replicates (paths for pair-count)");
  app.add_option("--k", o.k, "scale exponent, eps = 2^-k");
  app.add_option("--k-min", o.k_min, "first scale exponent");
  app.add_option("--k-max", o.k_max, "last scale exponent");
  app.add_option("--n-min", o.n_min, "first cover level");
  app.add_option("--n-max", o.n_max, "last cover level");
  app.add_option("--m", o.m, "dyadic decomposition depth (moments)");
  app.add_option("--scale-k", o.scale_k, "moment scale, eps = 2^-scale-k");
  app.add_option("--resolution-k", o.resolution_k,
                 "net resolution exponent for monotonicity checks");
  app.add_option("--offsets", o.offsets, "net offsets probed per scale");
  app.add_option("--gamma", o.gamma, "coupling constant in [0, 2)");
  app.add_option("--t", o.t, "Euclidean time horizon");
  app.add_option("--dt", o.dt, "path step");
  app.add_option("--max-time", o.max_time, "path duration cap");
  app.add_option("--margin", o.margin, "stopping margin from the boundary");
  app.add_option("--theta", o.theta, "rotation angle (conformal-check)");
  app.add_option("--alpha", o.alpha, "thickness level");
  app.add_option("--delta", o.delta, "thickness slack");
  app.add_option("--eta", o.eta, "radius exponent slack");
  app.add_option("--q", o.q, "moment order in (1, 2)");
  app.add_option("--d0", o.d0, "comma list of Euclidean dimensions");
  app.add_option("--q-grid", o.q_grid, "comma list of cover sum exponents");
}

bool uses(const std::string& cmd, std::initializer_list<const char*> cmds) {
  for (const char* c : cmds) {
    if (cmd == c) return true;
  }
  return false;
}

void resolve_defaults(Options& o, const std::string& cmd) {
  if (o.domain.empty()) o.domain = (cmd == "thick-dim") ? "disc" : "square";
  if (o.mode.empty()) o.mode = (cmd == "clock-mean") ? "analytic" : "conformal";
  if (o.n_modes < 0) o.n_modes = (cmd == "field-stats") ? 262144 : 65536;
  if (o.k_min < 0) o.k_min = (cmd == "converge") ? 3 : 4;
  if (o.k_max < 0) {
    o.k_max = (cmd == "converge" || cmd == "pair-count") ? 7 : 6;
  }
  if (o.n_replicates < 0) {
    if (cmd == "clock-mean") o.n_replicates = 100;
    else if (cmd == "converge") o.n_replicates = 30;
    else if (cmd == "positivity") o.n_replicates = 100;
    else if (cmd == "conformal-check") o.n_replicates = 40;
    else if (cmd == "thick-dim") o.n_replicates = 10;
    else if (cmd == "moments") o.n_replicates = 100;
    else if (cmd == "pair-count") o.n_replicates = 20;
    else o.n_replicates = 1;
  }
  if (o.dt < 0.0) {
    // Clock commands default to the coarsest admissible step for their
    // finest scale, dt = eps^2 / 16.
    if (uses(cmd, {"clock-mean", "positivity", "thick-dim",
                   "conformal-check"})) {
      o.dt = std::ldexp(1.0, -2 * o.k - 4);
    } else if (cmd == "converge") {
      o.dt = std::ldexp(1.0, -2 * o.k_max - 4);
    } else if (cmd == "pair-count") {
      o.dt = std::ldexp(1.0, -2 * o.k_max);
    } else {
      o.dt = std::ldexp(1.0, -14);
    }
  }
  if (o.max_time < 0.0) {
    // The clock horizon t must sit strictly inside the sampled duration
    // so mu(t) interpolates instead of clamping.
    if (uses(cmd, {"clock-mean", "positivity"})) o.max_time = o.t + 2.0 * o.dt;
    else if (cmd == "converge") o.max_time = o.t;
    else if (cmd == "pair-count") o.max_time = 1.0;
    else o.max_time = 2.0;
  }
}

std::optional<std::vector<double>> parse_list(const std::string& raw) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= raw.size()) {
    std::size_t comma = raw.find(',', pos);
    std::string item = raw.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t a = item.find_first_not_of(" \t");
    if (a == std::string::npos) return std::nullopt;
    std::size_t b = item.find_last_not_of(" \t");
    item = item.substr(a, b - a + 1);
    char* end = nullptr;
    double v = std::strtod(item.c_str(), &end);
    if (end != item.c_str() + item.size() || !std::isfinite(v)) {
      return std::nullopt;
    }
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) return std::nullopt;
  return out;
}

std::vector<std::string> validate_options(const Options& o,
                                          const std::string& cmd) {
  std::vector<std::string> v;
  auto bad = [&](const std::string& code, const std::string& msg) {
    v.push_back(code + ": " + msg);
  };

  if (o.output_dir.empty()) bad("invalid-output-dir", "--output-dir is empty");
  if (o.label.find_first_not_of(
          "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz"
          "0123456789._-") != std::string::npos) {
    bad("invalid-label", "--label may use [A-Za-z0-9._-] only");
  }

  const bool has_domain = uses(cmd, {"field-stats", "clock-mean", "converge",
                                     "positivity", "thick-dim", "pair-count"});
  if (has_domain && o.domain != "square" && o.domain != "disc") {
    bad("invalid-domain", "--domain must be square or disc; got " + o.domain);
  }
  if (has_domain && !(o.margin > 0.0 && o.margin < 0.5)) {
    bad("invalid-margin", "--margin must lie in (0, 1/2); got " +
                              fmt_short(o.margin));
  }
  if (uses(cmd, {"clock-mean", "positivity", "thick-dim"}) &&
      o.mode != "analytic" && o.mode != "conformal") {
    bad("invalid-mode", "--mode must be analytic or conformal; got " + o.mode);
  }

  const bool samples_field =
      uses(cmd, {"field-stats", "clock-mean", "converge", "positivity",
                 "conformal-check", "thick-dim"});
  if (samples_field && o.n_modes < 64) {
    bad("invalid-mode-count", "--n-modes must be at least 64; got " +
                                  std::to_string(o.n_modes));
  }

  const bool has_replicates = cmd != "field-stats" && cmd != "kpz-table";
  const std::int64_t min_reps = (cmd == "conformal-check") ? 2 : 1;
  if (has_replicates && o.n_replicates < min_reps) {
    bad("invalid-replicates", "--n-replicates must be at least " +
                                  std::to_string(min_reps) + "; got " +
                                  std::to_string(o.n_replicates));
  }

  const bool has_gamma = uses(cmd, {"clock-mean", "converge", "positivity",
                                    "conformal-check", "thick-dim",
                                    "kpz-table", "moments"});
  if (has_gamma) {
    const bool open_zero = (cmd == "conformal-check");
    if (!(o.gamma < 2.0) || o.gamma < 0.0 ||
        (open_zero && !(o.gamma > 0.0))) {
      bad("gamma-out-of-range",
          std::string("--gamma must lie in ") +
              (open_zero ? "(0, 2)" : "[0, 2)") + "; got " +
              fmt_short(o.gamma));
    }
  }

  if (uses(cmd, {"clock-mean", "positivity", "thick-dim"})) {
    if (o.k < 1) {
      bad("invalid-scale", "--k must be at least 1; got " +
                               std::to_string(o.k));
    } else if (std::ldexp(1.0, -o.k) > o.margin) {
      bad("epsilon-exceeds-margin",
          "eps = 2^-" + std::to_string(o.k) + " exceeds --margin " +
              fmt_short(o.margin));
    }
  }
  if (cmd == "conformal-check") {
    // The rotation experiment fixes its own disc margin of 0.1.
    if (o.k < 4) {
      bad("epsilon-exceeds-margin",
          "--k must be at least 4 so eps = 2^-k fits the 0.1 margin");
    }
  }

  if (uses(cmd, {"field-stats", "converge", "pair-count"})) {
    if (o.k_min < 1 || o.k_max < o.k_min) {
      bad("invalid-range", "need 1 <= --k-min <= --k-max; got " +
                               std::to_string(o.k_min) + ".." +
                               std::to_string(o.k_max));
    }
  }
  if (cmd == "field-stats" && o.k_min >= 1 &&
      std::ldexp(1.0, -o.k_min) >= 0.5) {
    bad("boundary-proximity",
        "eps = 2^-" + std::to_string(o.k_min) +
            " reaches the boundary from the center; need --k-min >= 2");
  }
  if (cmd == "converge" && o.k_min >= 1 &&
      std::ldexp(1.0, -o.k_min) > o.margin) {
    bad("epsilon-exceeds-margin",
        "eps = 2^-" + std::to_string(o.k_min) + " exceeds --margin " +
            fmt_short(o.margin));
  }

  if (!(o.dt > 0.0) || !std::isfinite(o.dt)) {
    bad("invalid-step", "--dt must be positive; got " + fmt_short(o.dt));
  } else {
    int finest = -1;
    if (uses(cmd, {"clock-mean", "positivity", "thick-dim",
                   "conformal-check"})) {
      finest = o.k;
    } else if (cmd == "converge") {
      finest = o.k_max;
    }
    if (finest >= 1) {
      double cap = std::ldexp(1.0, -2 * finest - 4);
      if (o.dt > cap) {
        bad("dt-too-coarse", "--dt must be at most eps^2/16 = " +
                                 fmt_short(cap) + " for k = " +
                                 std::to_string(finest));
      }
    }
    if (cmd == "pair-count" && o.k_max >= 1 &&
        o.dt > std::ldexp(1.0, -2 * o.k_max)) {
      bad("scale-finer-than-path",
          "--dt must be at most the net spacing 4^-k-max");
    }
  }

  if (uses(cmd, {"clock-mean", "converge", "positivity"}) && !(o.t > 0.0)) {
    bad("invalid-duration", "--t must be positive; got " + fmt_short(o.t));
  }
  if (uses(cmd, {"conformal-check", "thick-dim", "pair-count"}) &&
      !(o.max_time > 0.0)) {
    bad("invalid-duration", "--max-time must be positive; got " +
                                fmt_short(o.max_time));
  }

  if (cmd == "positivity" && (o.resolution_k < 1 || o.resolution_k > 12)) {
    bad("invalid-resolution", "--resolution-k must lie in [1, 12]; got " +
                                  std::to_string(o.resolution_k));
  }

  if (cmd == "thick-dim") {
    if (o.alpha < 0.0 || o.alpha == 2.0) {
      bad("invalid-thickness", "--alpha must be nonnegative and not 2");
    }
    if (!(o.delta > 0.0)) bad("invalid-slack", "--delta must be positive");
    if (!(o.eta > 0.0)) bad("invalid-slack", "--eta must be positive");
    if (o.n_min < 1 || o.n_max < o.n_min) {
      bad("invalid-range", "need 1 <= --n-min <= --n-max; got " +
                               std::to_string(o.n_min) + ".." +
                               std::to_string(o.n_max));
    }
    auto qs = parse_list(o.q_grid);
    if (!qs) {
      bad("invalid-grid", "--q-grid must be a comma list of numbers");
    } else {
      for (double q : *qs) {
        if (!(q > 0.0 && q <= 1.0)) {
          bad("invalid-grid", "--q-grid entries must lie in (0, 1]; got " +
                                  fmt_short(q));
          break;
        }
      }
    }
    if (o.alpha >= 0.0 && o.alpha < 2.0 && o.eta > 0.0 && o.dt > 0.0 &&
        o.n_max >= 1) {
      double K = 3.0 / (o.eta * (2.0 - o.alpha * o.alpha / 2.0));
      double spacing = std::pow(static_cast<double>(o.n_max), -2.0 * K);
      if (spacing < o.dt) {
        bad("scale-finer-than-path",
            "level " + std::to_string(o.n_max) +
                " net spacing r^2 = " + fmt_short(spacing) +
                " is below --dt; lower --n-max or --dt");
      }
    }
  }

  if (cmd == "pair-count" && o.offsets < 1) {
    bad("invalid-offsets", "--offsets must be at least 1");
  }

  if (cmd == "moments") {
    if (!(o.q > 1.0 && o.q < 2.0)) {
      bad("invalid-exponent", "--q must lie in (1, 2); got " +
                                  fmt_short(o.q));
    }
    if (o.scale_k < 3 || o.scale_k > 6) {
      bad("invalid-scale", "--scale-k must lie in [3, 6]; got " +
                               std::to_string(o.scale_k));
    }
    if (o.m < 1 || o.m > 8) {
      bad("invalid-depth", "--m must lie in [1, 8]; got " +
                               std::to_string(o.m));
    }
  }

  if (cmd == "kpz-table") {
    auto ds = parse_list(o.d0);
    if (!ds) {
      bad("invalid-dimension", "--d0 must be a comma list of numbers");
    } else {
      for (double d : *ds) {
        if (d < 0.0 || d > 2.0) {
          bad("invalid-dimension", "--d0 entries must lie in [0, 2]; got " +
                                       fmt_short(d));
          break;
        }
      }
    }
  }

  if (cmd == "conformal-check" && !std::isfinite(o.theta)) {
    bad("invalid-angle", "--theta must be finite");
  }
  return v;
}

liouville::DomainSpec make_domain(const Options& o) {
  liouville::DomainSpec dom;
  dom.kind = (o.domain == "disc") ? liouville::DomainKind::kUnitDisc
                                  : liouville::DomainKind::kUnitSquare;
  dom.inner_margin = o.margin;
  return dom;
}

liouville::SpectralGFF sample_field(const liouville::DomainSpec& dom,
                                    std::int64_t n_modes, std::uint64_t seed,
                                    std::uint64_t replicate) {
  if (dom.kind == liouville::DomainKind::kUnitDisc) {
    return liouville::sample_disc_field(dom, n_modes, seed, replicate);
  }
  return liouville::sample_gff(dom, n_modes, seed, replicate);
}

liouville::VarianceMode parse_mode(const std::string& mode) {
  return mode == "analytic" ? liouville::VarianceMode::kAnalyticModeSum
                            : liouville::VarianceMode::kConformalRadiusFormula;
}

// ---------------------------------------------------------------------------
// Commands.

void run_field_stats(const Options& o, int, Table& table, json& summary) {
  liouville::DomainSpec dom = make_domain(o);
  liouville::Point z = liouville::domain_center(dom);
  table.header = "k,epsilon,variance,tail_estimate,truncated,increment,drift";
  double prev = 0.0;
  double max_inc_dev = 0.0;
  double drift_lo = 0.0, drift_hi = 0.0;
  bool any_truncated = false;
  for (int k = o.k_min; k <= o.k_max; ++k) {
    double eps = std::ldexp(1.0, -k);
    liouville::CircleVariance cv =
        liouville::circle_average_variance(dom, z, eps, o.n_modes);
    double inc = (k > o.k_min)
                     ? cv.value - prev
                     : std::numeric_limits<double>::quiet_NaN();
    double drift = cv.value + std::log(eps);
    if (k > o.k_min) {
      max_inc_dev = std::max(max_inc_dev, std::abs(inc - std::log(2.0)));
    }
    drift_lo = (k == o.k_min) ? drift : std::min(drift_lo, drift);
    drift_hi = (k == o.k_min) ? drift : std::max(drift_hi, drift);
    any_truncated = any_truncated || cv.truncated;
    table.append_serial(Row()
                            .cell(k)
                            .cell(eps)
                            .cell(cv.value)
                            .cell(cv.tail_estimate)
                            .cell(static_cast<int>(cv.truncated))
                            .cell(inc)
                            .cell(drift)
                            .str());
    prev = cv.value;
  }
  summary["z"] = {real(z), imag(z)};
  summary["max-increment-deviation-from-log2"] = max_inc_dev;
  summary["drift-spread"] = drift_hi - drift_lo;
  summary["any-truncated"] = any_truncated;
  summary["log-conformal-radius"] =
      liouville::log_conformal_radius_grid(dom, z);
}

void run_clock_mean(const Options& o, int threads, Table& table,
                    json& summary) {
  liouville::DomainSpec dom = make_domain(o);
  liouville::BrownianPath path =
      liouville::sample_path(dom, liouville::domain_center(dom), o.dt,
                             o.max_time, o.seed, o.path_replicate);
  liouville::VarianceMode mode = parse_mode(o.mode);
  std::int64_t n = o.n_replicates;
  table.header = "replicate,mu_t,total";
  table.resize(n);
  std::vector<double> mu(static_cast<std::size_t>(n));
  parallel_replicates(n, threads, [&](std::int64_t i) {
    liouville::SpectralGFF field =
        sample_field(dom, o.n_modes, o.seed, static_cast<std::uint64_t>(i));
    liouville::ClockProcess clock =
        liouville::clock_process(field, path, o.gamma, o.k, mode);
    mu[static_cast<std::size_t>(i)] = clock.at(o.t);
    table.block(i).push_back(Row()
                                 .cell(i)
                                 .cell(mu[static_cast<std::size_t>(i)])
                                 .cell(clock.total())
                                 .str());
    table.mark_done(i);
  });
  double target = std::min(o.t, path.stop_time());
  double avg = liouville::mean(mu);
  double se = (n >= 2) ? liouville::std_error(mu) : 0.0;
  summary["n-replicates"] = n;
  summary["t"] = o.t;
  summary["stop-time"] = path.stop_time();
  summary["stopped"] = path.stop_index < path.n_steps();
  summary["target"] = target;
  summary["mean"] = avg;
  summary["std-error"] = se;
  summary["rel-error"] = avg / target - 1.0;
  summary["within-three-se"] = std::abs(avg - target) <= 3.0 * se;
  if (o.gamma == 0.0) {
    // With gamma = 0 the clock is the Euclidean time of the stopped path;
    // verify the identity on the grid and at t across replicates.
    liouville::SpectralGFF field = sample_field(dom, o.n_modes, o.seed, 0);
    liouville::ClockProcess clock =
        liouville::clock_process(field, path, 0.0, o.k, mode);
    double dev = 0.0;
    for (std::size_t i = 0; i < clock.values.size(); ++i) {
      double expected =
          std::min(static_cast<double>(i) * clock.dt, clock.stop_time());
      dev = std::max(dev, std::abs(clock.values[i] - expected));
    }
    for (double v : mu) dev = std::max(dev, std::abs(v - target));
    summary["gamma-zero-max-deviation"] = dev;
    summary["gamma-zero-identity"] = (dev < 1e-12) ? "pass" : "fail";
  } else {
    summary["gamma-zero-identity"] = "n/a";
  }
}

void run_converge(const Options& o, int threads, Table& table, json& summary) {
  liouville::DomainSpec dom = make_domain(o);
  std::int64_t n = o.n_replicates;
  int n_k = o.k_max - o.k_min;
  table.header = "replicate,k,abs_diff";
  table.resize(n);
  std::vector<std::vector<double>> diffs(
      static_cast<std::size_t>(n_k),
      std::vector<double>(static_cast<std::size_t>(n)));
  parallel_replicates(n, threads, [&](std::int64_t i) {
    auto rep = static_cast<std::uint64_t>(i);
    liouville::SpectralGFF field = sample_field(dom, o.n_modes, o.seed, rep);
    liouville::BrownianPath path =
        liouville::sample_path(dom, liouville::domain_center(dom), o.dt, o.t,
                               o.seed, rep);
    std::vector<double> d =
        liouville::cauchy_diagnostic(field, path, o.gamma, o.k_min, o.k_max);
    for (int j = 0; j < n_k; ++j) {
      diffs[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
          d[static_cast<std::size_t>(j)];
      table.block(i).push_back(Row()
                                   .cell(i)
                                   .cell(o.k_min + j)
                                   .cell(d[static_cast<std::size_t>(j)])
                                   .str());
    }
    table.mark_done(i);
  });
  json ks = json::array(), med = json::array(), ratios = json::array();
  std::vector<double> medians;
  for (int j = 0; j < n_k; ++j) {
    double m = liouville::median(diffs[static_cast<std::size_t>(j)]);
    medians.push_back(m);
    ks.push_back(o.k_min + j);
    med.push_back(m);
  }
  bool decreasing = true;
  double max_ratio = 0.0;
  for (int j = 0; j + 1 < n_k; ++j) {
    double r = medians[static_cast<std::size_t>(j + 1)] /
               medians[static_cast<std::size_t>(j)];
    ratios.push_back(r);
    max_ratio = std::max(max_ratio, r);
    decreasing = decreasing && (medians[static_cast<std::size_t>(j + 1)] <
                                medians[static_cast<std::size_t>(j)]);
  }
  summary["k"] = ks;
  summary["median-abs-diff"] = med;
  summary["ratios"] = ratios;
  summary["strictly-decreasing"] = decreasing;
  summary["max-ratio"] = max_ratio;
}

void run_positivity(const Options& o, int threads, Table& table,
                    json& summary) {
  liouville::DomainSpec dom = make_domain(o);
  liouville::VarianceMode mode = parse_mode(o.mode);
  std::int64_t n = o.n_replicates;
  double spacing = std::ldexp(1.0, -2 * o.resolution_k);
  table.header =
      "replicate,total,stop_time,n_net,min_increment,strictly_increasing";
  table.resize(n);
  std::vector<double> totals(static_cast<std::size_t>(n));
  std::vector<char> strict(static_cast<std::size_t>(n));
  std::vector<double> min_incs(static_cast<std::size_t>(n));
  parallel_replicates(n, threads, [&](std::int64_t i) {
    auto rep = static_cast<std::uint64_t>(i);
    liouville::SpectralGFF field = sample_field(dom, o.n_modes, o.seed, rep);
    liouville::BrownianPath path =
        liouville::sample_path(dom, liouville::domain_center(dom), o.dt,
                               o.max_time, o.seed, rep);
    liouville::ClockProcess clock =
        liouville::clock_process(field, path, o.gamma, o.k, mode);
    double limit = std::min(o.t, path.stop_time());
    auto n_net = static_cast<std::int64_t>(limit / spacing);
    double prev = 0.0;
    double min_inc = std::numeric_limits<double>::infinity();
    bool increasing = n_net >= 1;
    for (std::int64_t j = 1; j <= n_net; ++j) {
      double cur = clock.at(static_cast<double>(j) * spacing);
      double inc = cur - prev;
      min_inc = std::min(min_inc, inc);
      increasing = increasing && inc > 0.0;
      prev = cur;
    }
    if (n_net < 1) min_inc = 0.0;
    totals[static_cast<std::size_t>(i)] = clock.total();
    strict[static_cast<std::size_t>(i)] = increasing ? 1 : 0;
    min_incs[static_cast<std::size_t>(i)] = min_inc;
    table.block(i).push_back(Row()
                                 .cell(i)
                                 .cell(clock.total())
                                 .cell(path.stop_time())
                                 .cell(n_net)
                                 .cell(min_inc)
                                 .cell(static_cast<int>(increasing))
                                 .str());
    table.mark_done(i);
  });
  std::int64_t positive = 0, monotone = 0;
  double min_total = std::numeric_limits<double>::infinity();
  double min_inc = std::numeric_limits<double>::infinity();
  for (std::int64_t i = 0; i < n; ++i) {
    auto u = static_cast<std::size_t>(i);
    positive += totals[u] > 1e-8 ? 1 : 0;
    monotone += strict[u];
    min_total = std::min(min_total, totals[u]);
    min_inc = std::min(min_inc, min_incs[u]);
  }
  summary["n-replicates"] = n;
  summary["positivity-threshold"] = 1e-8;
  summary["net-spacing"] = spacing;
  summary["fraction-positive"] =
      static_cast<double>(positive) / static_cast<double>(n);
  summary["fraction-strictly-increasing"] =
      static_cast<double>(monotone) / static_cast<double>(n);
  summary["min-total"] = min_total;
  summary["min-increment"] = min_inc;
}

void run_conformal_check(const Options& o, int, Table& table, json& summary) {
  table.header = "replicate,base_total,rotated_total";
  liouville::ConformalCheckReport rep = liouville::conformal_clock_check(
      o.gamma, o.k, o.theta, static_cast<int>(o.n_replicates), o.seed,
      o.n_modes, o.dt, o.max_time);
  for (std::size_t i = 0; i < rep.base_totals.size(); ++i) {
    table.append_serial(Row()
                            .cell(static_cast<std::int64_t>(i))
                            .cell(rep.base_totals[i])
                            .cell(rep.rotated_totals[i])
                            .str());
  }
  summary["n-replicates"] = o.n_replicates;
  summary["theta"] = rep.theta;
  summary["q-constant"] = rep.q_constant;
  summary["ks-statistic"] = rep.ks.statistic;
  summary["ks-critical-5pct"] = rep.ks.critical_5pct;
  summary["ks-reject"] = rep.ks.reject;
  summary["truncated-base"] = rep.truncated_base;
  summary["truncated-rotated"] = rep.truncated_rotated;
}

void run_thick_dim(const Options& o, int threads, Table& table,
                   json& summary) {
  liouville::DomainSpec dom = make_domain(o);
  liouville::VarianceMode mode = parse_mode(o.mode);
  std::vector<double> qs = *parse_list(o.q_grid);
  std::sort(qs.begin(), qs.end());
  std::int64_t n = o.n_replicates;
  std::string header = "replicate,n,radius,net_size,dropped,selected,sum_diam";
  for (double q : qs) header += ",sum_diam_q" + fmt_short(q);
  table.header = header;
  table.resize(n);
  std::vector<double> estimates(static_cast<std::size_t>(n));
  std::vector<char> empty(static_cast<std::size_t>(n));
  std::vector<char> saturated(static_cast<std::size_t>(n));
  parallel_replicates(n, threads, [&](std::int64_t i) {
    auto rep = static_cast<std::uint64_t>(i);
    liouville::SpectralGFF field = sample_field(dom, o.n_modes, o.seed, rep);
    liouville::BrownianPath path =
        liouville::sample_path(dom, liouville::domain_center(dom), o.dt,
                               o.max_time, o.seed, rep);
    liouville::ClockProcess clock =
        liouville::clock_process(field, path, o.gamma, o.k, mode);
    liouville::ThickPointCover cover = liouville::build_thick_cover(
        field, path, clock, o.alpha, o.delta, o.eta, o.n_min, o.n_max);
    liouville::CoverDimensionEstimate est =
        liouville::cover_dimension_estimate(cover, qs);
    for (const auto& level : cover.levels) {
      Row row;
      row.cell(i)
          .cell(level.n)
          .cell(level.radius)
          .cell(level.net_size)
          .cell(level.dropped)
          .cell(static_cast<std::int64_t>(level.selected.size()));
      double sum1 = 0.0;
      for (const auto& [a, b] : level.intervals) sum1 += b - a;
      row.cell(sum1);
      for (double q : qs) {
        double s = 0.0;
        for (const auto& [a, b] : level.intervals) {
          if (b > a) s += std::pow(b - a, q);
        }
        row.cell(s);
      }
      table.block(i).push_back(row.str());
    }
    estimates[static_cast<std::size_t>(i)] = est.estimate;
    empty[static_cast<std::size_t>(i)] = est.empty_cover ? 1 : 0;
    saturated[static_cast<std::size_t>(i)] = est.saturated ? 1 : 0;
    table.mark_done(i);
  });
  std::int64_t below_one = 0, n_empty = 0, n_saturated = 0;
  json ests = json::array();
  for (std::int64_t i = 0; i < n; ++i) {
    auto u = static_cast<std::size_t>(i);
    ests.push_back(estimates[u]);
    below_one += estimates[u] < 1.0 ? 1 : 0;
    n_empty += empty[u];
    n_saturated += saturated[u];
  }
  summary["alpha"] = o.alpha;
  summary["gamma"] = o.gamma;
  if (o.gamma > 0.0) {
    summary["formula-dimension"] =
        liouville::thick_dim_formula(o.alpha, o.gamma);
  } else {
    summary["formula-dimension"] = nullptr;
  }
  summary["estimates"] = ests;
  summary["fraction-below-one"] =
      static_cast<double>(below_one) / static_cast<double>(n);
  summary["fraction-empty"] =
      static_cast<double>(n_empty) / static_cast<double>(n);
  summary["fraction-saturated"] =
      static_cast<double>(n_saturated) / static_cast<double>(n);
}

void run_kpz_table(const Options& o, int, Table& table, json& summary) {
  std::vector<double> ds = *parse_list(o.d0);
  table.header = "d0,d";
  double max_rt = 0.0;
  for (double d0 : ds) {
    double d = liouville::kpz_dimension(d0, o.gamma);
    max_rt = std::max(max_rt, std::abs(liouville::kpz_inverse(d, o.gamma) -
                                       d0));
    table.append_serial(Row().cell(d0).cell(d).str());
  }
  summary["gamma"] = o.gamma;
  summary["n-points"] = static_cast<std::int64_t>(ds.size());
  summary["max-roundtrip-error"] = max_rt;
}

void run_moments(const Options& o, int, Table& table, json& summary) {
  table.header =
      "q,gamma,epsilon,m,n_replicates,value,std_error,diagonal_share,"
      "cross_share,class_moment";
  double eps = std::ldexp(1.0, -o.scale_k);
  liouville::MomentEstimate est = liouville::moment_estimator(
      o.gamma, o.q, eps, o.m, static_cast<int>(o.n_replicates), o.seed);
  table.append_serial(Row()
                          .cell(est.q)
                          .cell(est.gamma)
                          .cell(est.epsilon)
                          .cell(est.m)
                          .cell(static_cast<std::int64_t>(est.n_replicates))
                          .cell(est.value)
                          .cell(est.std_error)
                          .cell(est.diagonal_share)
                          .cell(est.cross_share)
                          .cell(est.class_moment)
                          .str());
  summary["q"] = o.q;
  summary["gamma"] = o.gamma;
  summary["epsilon"] = eps;
  summary["m"] = o.m;
  summary["n-replicates"] = o.n_replicates;
  summary["value"] = est.value;
  summary["std-error"] = est.std_error;
  summary["diagonal-share"] = est.diagonal_share;
  summary["cross-share"] = est.cross_share;
  summary["zeta"] = liouville::zeta(o.q, o.gamma);
  summary["zeta-prime-at-1"] = liouville::zeta_prime_at_1(o.gamma);
  double qstar = liouville::zeta_minimizing_q(o.gamma);
  if (std::isfinite(qstar)) {
    summary["zeta-minimizing-q"] = qstar;
  } else {
    summary["zeta-minimizing-q"] = nullptr;
  }
}

void run_pair_count(const Options& o, int threads, Table& table,
                    json& summary) {
  liouville::DomainSpec dom = make_domain(o);
  std::int64_t n = o.n_replicates;
  int n_k = o.k_max - o.k_min + 1;
  table.header = "path,k,offset,s_offset,count,normalized,partial";
  table.resize(n);
  std::vector<std::vector<double>> norms(
      static_cast<std::size_t>(n_k),
      std::vector<double>(static_cast<std::size_t>(n), 0.0));
  parallel_replicates(n, threads, [&](std::int64_t i) {
    liouville::BrownianPath path =
        liouville::sample_path(dom, liouville::domain_center(dom), o.dt,
                               o.max_time, o.seed,
                               static_cast<std::uint64_t>(i));
    for (int k = o.k_min; k <= o.k_max; ++k) {
      double spacing = std::ldexp(1.0, -2 * k);
      double denom = std::ldexp(1.0, 2 * k) * static_cast<double>(k) *
                     static_cast<double>(k) * static_cast<double>(k);
      for (int j = 0; j < o.offsets; ++j) {
        double s = static_cast<double>(j) * spacing /
                   static_cast<double>(o.offsets);
        bool partial = false;
        std::int64_t c = liouville::pair_count(path, k, s, &partial);
        double norm = static_cast<double>(c) / denom;
        auto& slot =
            norms[static_cast<std::size_t>(k - o.k_min)]
                 [static_cast<std::size_t>(i)];
        slot = std::max(slot, norm);
        table.block(i).push_back(Row()
                                     .cell(i)
                                     .cell(k)
                                     .cell(j)
                                     .cell(s)
                                     .cell(c)
                                     .cell(norm)
                                     .cell(static_cast<int>(partial))
                                     .str());
      }
    }
    table.mark_done(i);
  });
  json ks = json::array(), maxes = json::array();
  std::vector<double> max_norm(static_cast<std::size_t>(n_k), 0.0);
  for (int j = 0; j < n_k; ++j) {
    auto u = static_cast<std::size_t>(j);
    for (double v : norms[u]) max_norm[u] = std::max(max_norm[u], v);
    ks.push_back(o.k_min + j);
    maxes.push_back(max_norm[u]);
  }
  double growth = 0.0;
  if (max_norm.front() > 0.0) {
    for (double v : max_norm) growth = std::max(growth, v / max_norm.front());
  }
  summary["n-paths"] = n;
  summary["offsets-per-scale"] = o.offsets;
  summary["k"] = ks;
  summary["max-normalized"] = maxes;
  summary["growth-ratio-vs-first"] = growth;
}

// ---------------------------------------------------------------------------
// Config plumbing.

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    liouville::throw_invalid("config-missing", "cannot open " + path);
  }
  json j;
  try {
    j = json::parse(in);
  } catch (const std::exception& e) {
    liouville::throw_invalid("config-parse", e.what());
  }
  // A manifest is accepted in place of a config: descend into its block.
  if (j.is_object() && j.contains("config") && j["config"].is_object()) {
    j = j["config"];
  }
  if (!j.is_object()) {
    liouville::throw_invalid("config-shape",
                             "config must be a JSON object of flat keys");
  }
  return j;
}

std::string token_of(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  if (v.is_number()) return v.dump();
  if (v.is_array()) {
    std::string out;
    for (const auto& item : v) {
      if (!out.empty()) out += ',';
      out += token_of(item);
    }
    return out;
  }
  liouville::throw_invalid("config-value",
                           "config values must be scalars or arrays");
}

json config_json(const Options& o, const std::string& cmd) {
  json c;
  auto domain_block = [&] {
    c["domain"] = o.domain;
    c["margin"] = o.margin;
  };
  if (cmd == "field-stats") {
    domain_block();
    c["n-modes"] = o.n_modes;
    c["k-min"] = o.k_min;
    c["k-max"] = o.k_max;
    return c;
  }
  if (cmd == "kpz-table") {
    c["gamma"] = o.gamma;
    c["d0"] = o.d0;
    return c;
  }
  c["seed"] = o.seed;
  c["n-replicates"] = o.n_replicates;
  if (cmd == "clock-mean") {
    domain_block();
    c["gamma"] = o.gamma;
    c["k"] = o.k;
    c["t"] = o.t;
    c["dt"] = o.dt;
    c["max-time"] = o.max_time;
    c["n-modes"] = o.n_modes;
    c["mode"] = o.mode;
    c["path-replicate"] = o.path_replicate;
  } else if (cmd == "converge") {
    domain_block();
    c["gamma"] = o.gamma;
    c["k-min"] = o.k_min;
    c["k-max"] = o.k_max;
    c["t"] = o.t;
    c["dt"] = o.dt;
    c["n-modes"] = o.n_modes;
  } else if (cmd == "positivity") {
    domain_block();
    c["gamma"] = o.gamma;
    c["k"] = o.k;
    c["t"] = o.t;
    c["dt"] = o.dt;
    c["max-time"] = o.max_time;
    c["n-modes"] = o.n_modes;
    c["mode"] = o.mode;
    c["resolution-k"] = o.resolution_k;
  } else if (cmd == "conformal-check") {
    c["gamma"] = o.gamma;
    c["k"] = o.k;
    c["theta"] = o.theta;
    c["dt"] = o.dt;
    c["max-time"] = o.max_time;
    c["n-modes"] = o.n_modes;
  } else if (cmd == "thick-dim") {
    domain_block();
    c["gamma"] = o.gamma;
    c["alpha"] = o.alpha;
    c["delta"] = o.delta;
    c["eta"] = o.eta;
    c["n-min"] = o.n_min;
    c["n-max"] = o.n_max;
    c["k"] = o.k;
    c["dt"] = o.dt;
    c["max-time"] = o.max_time;
    c["n-modes"] = o.n_modes;
    c["mode"] = o.mode;
    c["q-grid"] = o.q_grid;
  } else if (cmd == "moments") {
    c["gamma"] = o.gamma;
    c["q"] = o.q;
    c["scale-k"] = o.scale_k;
    c["m"] = o.m;
  } else if (cmd == "pair-count") {
    domain_block();
    c["k-min"] = o.k_min;
    c["k-max"] = o.k_max;
    c["dt"] = o.dt;
    c["max-time"] = o.max_time;
    c["offsets"] = o.offsets;
  }
  return c;
}

void usage(std::ostream& out) {
  out << "usage: liouville <command> [--config file.json] [options]\n"
         "commands:\n"
         "  field-stats      circle-average variance across dyadic scales\n"
         "  clock-mean       mean quantum clock over field replicates\n"
         "  converge         successive-scale clock differences\n"
         "  positivity       clock positivity and strict monotonicity\n"
         "  conformal-check  total-clock law under rotation\n"
         "  thick-dim        thick-point covers and dimension estimates\n"
         "  kpz-table        Euclidean vs quantum dimension table\n"
         "  moments          moments of the capped occupation integral\n"
         "  pair-count       dyadic net pair counts along paths\n"
         "run `liouville <command> --help` for the option list.\n";
}

int run_main(int argc, char** argv) {
  std::vector<std::string> raw(argv + 1, argv + argc);
  if (raw.empty()) {
    usage(std::cerr);
    return 2;
  }
  if (raw[0] == "--help" || raw[0] == "-h" || raw[0] == "help") {
    usage(std::cout);
    return 0;
  }
  const std::string cmd = raw[0];
  bool known = false;
  for (const char* c : kCommands) known = known || cmd == c;
  if (!known) {
    std::cerr << "error: unknown-command: " << cmd << "\n";
    usage(std::cerr);
    return 2;
  }

  // Pull --config out before CLI parsing; config-file values become
  // synthesized tokens placed ahead of the command line, and the
  // take-last policy lets explicit flags override them.
  std::string config_path;
  std::vector<std::string> rest;
  for (std::size_t i = 1; i < raw.size(); ++i) {
    if (raw[i] == "--config") {
      if (i + 1 >= raw.size()) {
        std::cerr << "error: config-missing-value: --config needs a path\n";
        return 2;
      }
      config_path = raw[++i];
    } else if (raw[i].rfind("--config=", 0) == 0) {
      config_path = raw[i].substr(9);
    } else {
      rest.push_back(raw[i]);
    }
  }

  std::vector<std::string> tokens;
  if (!config_path.empty()) {
    try {
      json file_cfg = load_config(config_path);
      for (const auto& [key, value] : file_cfg.items()) {
        if (key == "command") continue;
        tokens.push_back("--" + key);
        tokens.push_back(token_of(value));
      }
    } catch (const liouville::Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  }
  tokens.insert(tokens.end(), rest.begin(), rest.end());

  CLI::App app{"quantum-clock experiment driver", "liouville"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  Options o;
  add_options(app, o);
  std::reverse(tokens.begin(), tokens.end());
  try {
    app.parse(tokens);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: option-parse: " << e.what() << "\n";
    return 2;
  }

  resolve_defaults(o, cmd);
  std::vector<std::string> violations = validate_options(o, cmd);
  if (!violations.empty()) {
    for (const std::string& v : violations) std::cerr << "error: " << v
                                                      << "\n";
    return 2;
  }

  int threads = liouville::tools::thread_budget();
  std::filesystem::path run_dir;
  try {
    run_dir = liouville::tools::make_run_dir(o.output_dir, cmd, o.label);
  } catch (const liouville::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  Table table;
  json summary;
  summary["command"] = cmd;
  const std::string created = liouville::tools::utc_iso_stamp();
  auto t0 = std::chrono::steady_clock::now();
  int exit_code = 0;
  json error_obj;
  try {
    if (cmd == "field-stats") run_field_stats(o, threads, table, summary);
    else if (cmd == "clock-mean") run_clock_mean(o, threads, table, summary);
    else if (cmd == "converge") run_converge(o, threads, table, summary);
    else if (cmd == "positivity") run_positivity(o, threads, table, summary);
    else if (cmd == "conformal-check")
      run_conformal_check(o, threads, table, summary);
    else if (cmd == "thick-dim") run_thick_dim(o, threads, table, summary);
    else if (cmd == "kpz-table") run_kpz_table(o, threads, table, summary);
    else if (cmd == "moments") run_moments(o, threads, table, summary);
    else if (cmd == "pair-count") run_pair_count(o, threads, table, summary);
  } catch (const liouville::Error& e) {
    if (e.kind() == liouville::ErrorKind::kInvalidArgument) {
      std::cerr << "error: " << e.what() << "\n";
      std::error_code ec;
      std::filesystem::remove(run_dir, ec);
      return 2;
    }
    exit_code = 3;
    error_obj["code"] = e.code();
    error_obj["message"] = e.what();
    error_obj["kind"] = "numerical";
  } catch (const std::exception& e) {
    exit_code = 3;
    error_obj["code"] = "unexpected";
    error_obj["message"] = e.what();
    error_obj["kind"] = "unexpected";
  }
  double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  json manifest;
  manifest["command"] = cmd;
  manifest["version"] = LIOUVILLE_VERSION;
  manifest["rng"] = "philox4x64-10";
  manifest["threads"] = threads;
  manifest["created-utc"] = created;
  manifest["wall-time-seconds"] = wall;
  manifest["config"] = config_json(o, cmd);
  liouville::tools::write_text_file(run_dir / "manifest.json",
                                    manifest.dump(2) + "\n");
  if (exit_code == 0) {
    liouville::tools::write_text_file(run_dir / "results.csv",
                                      table.render(false));
    liouville::tools::write_text_file(run_dir / "summary.json",
                                      summary.dump(2) + "\n");
    std::cout << run_dir.string() << "\n";
    return 0;
  }
  std::filesystem::path qdir = run_dir / "quarantine";
  std::filesystem::create_directories(qdir);
  error_obj["rows-completed"] = table.rows_done();
  liouville::tools::write_text_file(qdir / "results.csv", table.render(true));
  liouville::tools::write_text_file(qdir / "error.json",
                                    error_obj.dump(2) + "\n");
  std::cerr << "error: " << error_obj["message"].get<std::string>() << "\n";
  std::cout << run_dir.string() << "\n";
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) { return run_main(argc, argv); }
