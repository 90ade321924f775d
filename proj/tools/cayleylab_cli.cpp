// Copyright 2026 The CayleyLab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// cayleylab: batch runner for the reductions, bound checkers and Monte Carlo
// experiments. Every subcommand takes --config FILE.json whose keys mirror
// the long flags (dashes or underscores); flags given on the command line win.

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cayleylab/boson.hpp"
#include "cayleylab/cayley.hpp"
#include "cayleylab/circuits.hpp"
#include "cayleylab/interp.hpp"
#include "cayleylab/io.hpp"
#include "cayleylab/pipelines.hpp"
#include "cayleylab/rational.hpp"
#include "cayleylab/simulator.hpp"
#include "cayleylab/toymodel.hpp"

namespace {

using cayleylab::Error;
using cayleylab::ErrorKind;
using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitSearch = 3;
constexpr int kExitNumerical = 4;

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::kValidation:
    case ErrorKind::kDuplicateNode:
    case ErrorKind::kTooLarge:
    case ErrorKind::kTooManyTrajectories:
      return kExitValidation;
    case ErrorKind::kSearchExhausted:
      return kExitSearch;
    default:
      return kExitNumerical;
  }
}

void report_error(const std::string& kind, const std::string& message, int code) {
  json j = {{"error", kind}, {"message", message}, {"exit_code", code}};
  std::cerr << j.dump() << '\n';
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Writes to a sibling temp file and renames it into place; "-" is stdout.
void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) cayleylab::fail(ErrorKind::kValidation, "cannot open output path " + path);
    os << content;
    if (!os.flush()) cayleylab::fail(ErrorKind::kValidation, "failed writing " + path);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    cayleylab::fail(ErrorKind::kValidation, "cannot move output into place: " + ec.message());
  }
}

/// "1..6", "1,2,5" or a mix of both.
std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dots = item.find("..");
    try {
      if (dots == std::string::npos) {
        out.push_back(std::stoi(item));
      } else {
        const int a = std::stoi(item.substr(0, dots)), b = std::stoi(item.substr(dots + 2));
        cayleylab::require(a <= b, "range '" + item + "' is empty");
        for (int v = a; v <= b; ++v) out.push_back(v);
      }
    } catch (const std::logic_error&) {
      cayleylab::fail(ErrorKind::kValidation, "cannot parse integer list '" + text + "'");
    }
  }
  cayleylab::require(!out.empty(), "empty integer list");
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      cayleylab::require(used == item.size(), "trailing characters in '" + item + "'");
    } catch (const std::logic_error&) {
      cayleylab::fail(ErrorKind::kValidation, "cannot parse number list '" + text + "'");
    }
  }
  cayleylab::require(!out.empty(), "empty number list");
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) cayleylab::fail(ErrorKind::kValidation, "cannot read " + path);
  try {
    return json::parse(is);
  } catch (const json::exception& e) {
    cayleylab::fail(ErrorKind::kValidation, "malformed JSON in " + path + ": " + e.what());
  }
}

struct Common {
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string output = "-";
  std::string config;
  std::string precision = "double-double";

  cayleylab::Parallelism par() const { return cayleylab::Parallelism{threads}; }
  cayleylab::SeededRng rng() const { return cayleylab::SeededRng(seed); }
};

void add_common(CLI::App* sub, Common& c, bool with_precision) {
  sub->add_option("--seed", c.seed, "master seed (default: $CAYLEYLAB_SEED, else 1)");
  sub->add_option("--threads", c.threads, "worker threads (0 = logical cores)");
  sub->add_option("--output,-o", c.output, "output path, '-' for stdout");
  sub->add_option("--config", c.config, "JSON config; keys mirror the long flags");
  if (with_precision)
    sub->add_option("--precision", c.precision, "native-double | double-double | quad-double");
}

// ---- reduce / reduce-noisy -------------------------------------------------

struct ReduceArgs {
  int n = 2;
  int m = 2;
  std::string circuit;
  std::string fourier;
  double span = 0.5;
  std::size_t grid_size = 0;
  double delta = 1e-30;
  double eta = 0.1;
  std::string adversary = "offset";
  double margin = 0.1;
  std::string transform = "cayley";
  int taylor_order = 12;
  int rescale_k = 1;
  double zeph = 12.0;
  std::size_t budget = 2000;
  double gamma = 0.1;
  std::string noise_arity = "two-qubit";
};

void add_reduce_options(CLI::App* sub, ReduceArgs& a, bool noisy) {
  sub->add_option("--n", a.n, "qubits of the random brickwork target");
  sub->add_option("--m", a.m, "gates of the random brickwork target");
  sub->add_option("--circuit", a.circuit, "target circuit JSON (overrides --n/--m)");
  sub->add_option("--fourier", a.fourier, "target Fourier-sampling circuit from a 0/1 truth table, e.g. 0110");
  sub->add_option("--span", a.span, "grid endpoint Delta");
  sub->add_option("--grid-size", a.grid_size, "grid points (0 = 100 d^2)");
  sub->add_option("--delta", a.delta, "honest oracle imprecision");
  sub->add_option("--eta", a.eta, "oracle corruption rate");
  sub->add_option("--adversary", a.adversary, "offset | random | chebyshev");
  sub->add_option("--margin", a.margin, "eigenphase margin beta of the pad");
  sub->add_option("--transform", a.transform, "cayley | taylor");
  sub->add_option("--taylor-order", a.taylor_order, "truncation order K of the Taylor variant");
  sub->add_option("--rescale-k", a.rescale_k, "variable rescaling theta = x^k (1 = off)");
  sub->add_option("--zeph", a.zeph, "constant C of the uniform-bound step");
  sub->add_option("--budget", a.budget, "randomized certificate trials");
  if (noisy) {
    sub->add_option("--gamma", a.gamma, "depolarizing rate");
    sub->add_option("--noise-arity", a.noise_arity, "one-qubit | two-qubit depolarizing after each gate");
  }
}

cayleylab::ReductionConfig make_reduction_config(const ReduceArgs& a, const Common& c) {
  cayleylab::ReductionConfig cfg;
  cfg.span = a.span;
  cfg.grid_size = a.grid_size;
  cfg.delta = a.delta;
  cfg.eta = a.eta;
  cfg.margin = cayleylab::EigenMargin(a.margin);
  cfg.precision = cayleylab::PrecisionConfig::parse(c.precision);
  if (a.transform == "cayley") {
    cfg.transform = cayleylab::TransformKind::cayley();
  } else if (a.transform == "taylor" || a.transform == "truncated-taylor") {
    cfg.transform = cayleylab::TransformKind::truncated_taylor(a.taylor_order);
  } else {
    cayleylab::fail(ErrorKind::kValidation, "unknown transform '" + a.transform + "'");
  }
  cfg.rescale_k = a.rescale_k;
  cfg.bounds.zeph = a.zeph;
  cfg.search.budget = a.budget;
  cfg.search.par = c.par();
  return cfg;
}

template <cayleylab::Scalar T>
cayleylab::Circuit<T> target_circuit(const ReduceArgs& a, const cayleylab::SeededRng& rng) {
  if (!a.circuit.empty()) return cayleylab::io::circuit_from_json<T>(read_json_file(a.circuit));
  if (!a.fourier.empty()) {
    std::vector<int> tt;
    for (char ch : a.fourier) {
      cayleylab::require(ch == '0' || ch == '1', "truth table must be a 0/1 string");
      tt.push_back(ch - '0');
    }
    if (tt.size() == 4) return cayleylab::fourier_sampling_brickwork<T>(tt);
    return cayleylab::fourier_sampling_circuit<T>(tt);
  }
  cayleylab::require(a.n >= 1 && a.m >= 1, "--n and --m must be positive");
  return cayleylab::random_circuit<T>(cayleylab::brickwork_with_gates(a.n, static_cast<std::size_t>(a.m)),
                                      rng.split(100));
}

std::string run_reduce(const ReduceArgs& a, const Common& c, bool noisy) {
  const auto cfg = make_reduction_config(a, c);
  const auto kind = cayleylab::parse_adversary(a.adversary);
  return cayleylab::dispatch_precision(cfg.precision, [&]<cayleylab::Scalar T>() -> std::string {
    const auto master = c.rng();
    const auto c0 = target_circuit<T>(a, master);
    json out;
    if (!noisy) {
      const auto oracle =
          cayleylab::make_adversarial_oracle<T>(cayleylab::exact_probability<T>(), cfg.eta, cfg.delta, kind,
                                                master.split(200));
      auto rep = cayleylab::reduce(c0, oracle, cfg, master.split(300));
      cayleylab::attach_truth(rep, cayleylab::output_prob(c0));
      out = cayleylab::io::report_to_json(rep, cfg);
    } else {
      cayleylab::require(a.gamma >= 0.0 && a.gamma <= 1.0, "--gamma must lie in [0, 1]");
      cayleylab::NoiseArity arity;
      if (a.noise_arity == "two-qubit") {
        arity = cayleylab::NoiseArity::kTwoQubit;
      } else if (a.noise_arity == "one-qubit") {
        arity = cayleylab::NoiseArity::kOneQubit;
      } else {
        cayleylab::fail(ErrorKind::kValidation, "unknown noise arity '" + a.noise_arity + "'");
      }
      const auto noise = cayleylab::depolarizing_model<T>(c0.arch, a.gamma, arity);
      const auto oracle = cayleylab::make_adversarial_oracle<T>(cayleylab::noisy_probability(noise), cfg.eta,
                                                                cfg.delta, kind, master.split(200));
      auto rep = cayleylab::reduce_noisy(c0, noise, oracle, cfg, master.split(300));
      cayleylab::attach_truth(rep, cayleylab::noisy_output_prob(c0, noise));
      out = cayleylab::io::report_to_json(rep, cfg);
      out["gamma"] = a.gamma;
      out["noise_arity"] = a.noise_arity;
    }
    out["precision"] = cfg.precision.name();
    out["circuit"] = cayleylab::io::circuit_to_json(c0);
    return out.dump(2) + "\n";
  });
}

// ---- permanent-reduce ------------------------------------------------------

struct PermanentArgs {
  int n = 3;
  std::string x0;
  double span = 0.3;
  std::size_t grid_size = 0;
  double delta = 1e-28;
  double eta = 0.1;
  std::string adversary = "random";
  std::size_t budget = 2000;
};

std::string run_permanent(const PermanentArgs& a, const Common& c) {
  const auto prec = cayleylab::PrecisionConfig::parse(c.precision);
  const auto kind = cayleylab::parse_adversary(a.adversary);
  return cayleylab::dispatch_precision(prec, [&]<cayleylab::Scalar T>() -> std::string {
    using cayleylab::Matrix;
    const auto master = c.rng();
    Matrix<T> x0;
    if (!a.x0.empty()) {
      x0 = cayleylab::io::matrix_from_json<T>(read_json_file(a.x0));
    } else {
      cayleylab::require(a.n >= 1 && a.n <= 8, "--n must lie in [1, 8]");
      cayleylab::SeededRng r = master.split(100);
      // Random 0/1 target with a nonzero permanent.
      do {
        x0 = Matrix<T>(a.n, a.n);
        for (auto& z : x0.data()) z = cayleylab::Complex<T>(T(static_cast<double>(r.below(2))));
      } while (cayleylab::num::hi(cayleylab::norm(cayleylab::permanent_ryser(x0))) == 0.0);
    }
    cayleylab::PermanentReductionConfig cfg;
    cfg.span = a.span;
    cfg.grid_size = a.grid_size;
    cfg.delta = a.delta;
    cfg.eta = a.eta;
    cfg.search.budget = a.budget;
    cfg.search.par = c.par();
    const int d = 2 * static_cast<int>(x0.rows());
    cayleylab::Adversary adv;
    adv.kind = kind;
    adv.eta = a.eta;
    adv.delta = a.delta;
    adv.rng = master.split(200);
    adv.degree = d;
    adv.span = a.span;
    adv.grid_size = a.grid_size ? a.grid_size : cayleylab::default_grid_size(d);
    adv.validate();
    const auto exact = cayleylab::exact_permanent_oracle<T>();
    cayleylab::PermanentOracle<T> oracle = [&](const Matrix<T>& x, std::size_t i) {
      const T theta = T(static_cast<double>(i)) * T(a.span) / T(static_cast<double>(adv.grid_size - 1));
      return adv.apply(exact(x, i), i, theta);
    };
    const auto red = cayleylab::permanent_reduce(x0, oracle, cfg, master.split(300));
    const double truth = cayleylab::num::to_double(cayleylab::norm(cayleylab::permanent_ryser(x0)));
    json out = cayleylab::io::permanent_report_to_json(red, x0, truth);
    out["precision"] = prec.name();
    out["seed"] = c.seed;
    out["adversary"] = cayleylab::adversary_name(kind);
    return out.dump(2) + "\n";
  });
}

// ---- cp-decay --------------------------------------------------------------

struct CpArgs {
  int n = 3;
  double gamma = 0.1;
  std::string depths = "1..6";
  std::size_t trials = 500;
};

std::string run_cp(const CpArgs& a, const Common& c) {
  std::ostringstream os;
  os << "n,d,gamma,closed_form,mc_estimate,stderr,trials\n";
  const auto master = c.rng();
  for (int d : parse_int_list(a.depths)) {
    cayleylab::ToyParams p{a.n, d, a.gamma, a.trials};
    const auto e = cayleylab::cp_monte_carlo(p, master.split(static_cast<std::uint64_t>(d)), c.par());
    os << p.n << ',' << d << ',' << fmt(a.gamma) << ',' << fmt(cayleylab::cp_closed_form(p)) << ',' << fmt(e.estimate)
       << ',' << fmt(e.standard_error) << ',' << e.trials << '\n';
  }
  return os.str();
}

// ---- bounds ----------------------------------------------------------------

struct BoundsArgs {
  std::string check = "chebyshev";
  int dmax = 20;
  std::string spans = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9";
};

std::string run_bounds(const BoundsArgs& a) {
  std::ostringstream os;
  if (a.check == "chebyshev") {
    os << "d,span,bound,value,witness,ok\n";
    for (const auto& r : cayleylab::chebyshev_bound_table(a.dmax, parse_double_list(a.spans)))
      os << r.d << ',' << fmt(r.span) << ',' << r.bound << ',' << fmt(r.value) << ',' << fmt(r.witness) << ','
         << (r.ok ? 1 : 0) << '\n';
  } else if (a.check == "rescaling") {
    const auto [t, v] = cayleylab::minimize_rescaling_exponent();
    os << "t,prefactor\n" << fmt(t) << ',' << fmt(v) << '\n';
  } else {
    cayleylab::fail(ErrorKind::kValidation, "unknown --check '" + a.check + "' (chebyshev or rescaling)");
  }
  return os.str();
}

// ---- rational-check --------------------------------------------------------

struct RationalArgs {
  int n = 3;
  int m = 2;
  int degree = -1;
  double tol = 1e-8;
  double gamma = 0.0;
  double margin = 0.1;
  double window = 1.0;
};

std::string run_rational(const RationalArgs& a, const Common& c) {
  const auto prec = cayleylab::PrecisionConfig::parse(c.precision);
  return cayleylab::dispatch_precision(prec, [&]<cayleylab::Scalar T>() -> std::string {
    const auto master = c.rng();
    cayleylab::require(a.n >= 1 && a.m >= 1, "--n and --m must be positive");
    const auto arch = cayleylab::brickwork_with_gates(a.n, static_cast<std::size_t>(a.m));
    const auto c0 = cayleylab::random_circuit<T>(arch, master.split(100));
    const auto pad = cayleylab::one_time_pad(c0, master.split(0), cayleylab::EigenMargin(a.margin));
    const cayleylab::PerturbedFamily<T> family(c0, pad);
    cayleylab::ProbabilityOracle<T> oracle = cayleylab::exact_probability<T>();
    if (a.gamma > 0.0) oracle = cayleylab::noisy_probability(cayleylab::depolarizing_model<T>(
                           arch, a.gamma, cayleylab::NoiseArity::kTwoQubit));
    const int degree = a.degree >= 0 ? a.degree : cayleylab::numerator_degree_bound(arch);
    const auto rep =
        cayleylab::verify_rational_degree(family, oracle, degree, a.tol, T(0.0), T(a.window), c.par());
    json out = {{"n", a.n},
                {"m", a.m},
                {"gamma", a.gamma},
                {"seed", c.seed},
                {"precision", prec.name()},
                {"degree", rep.degree},
                {"fit_nodes", rep.fit_nodes},
                {"heldout_nodes", rep.heldout_nodes},
                {"max_heldout_residual", rep.max_heldout_residual},
                {"max_abs_numerator", rep.max_abs_numerator},
                {"relative_residual", rep.relative_residual},
                {"tolerance", rep.tolerance},
                {"pass", rep.pass}};
    return out.dump(2) + "\n";
  });
}

// ---- tv-scan ---------------------------------------------------------------

struct TvArgs {
  std::string thetas = "0,0.01,0.02,0.04,0.08";
  std::size_t dim = 4;
  std::size_t samples = 10000;
  std::size_t bins = 40;
};

std::string run_tv(const TvArgs& a, const Common& c) {
  std::ostringstream os;
  os << "theta,tv_estimate,stderr,dim,samples,bins\n";
  for (double theta : parse_double_list(a.thetas)) {
    const auto e = cayleylab::eigenphase_tv_estimate(theta, a.dim, a.samples, a.bins, c.rng(), c.par());
    os << fmt(theta) << ',' << fmt(e.estimate) << ',' << fmt(e.standard_error) << ',' << a.dim << ',' << a.samples
       << ',' << a.bins << '\n';
  }
  return os.str();
}

// ---- barrier-demo ----------------------------------------------------------

struct BarrierArgs {
  int n = 4;
  double t = 0.0;  // 0 selects 1 / (n!)^2
  std::string thetas = "0,0.01,0.02,0.05";
  std::size_t samples = 100;
};

std::string run_barrier(const BarrierArgs& a, const Common& c) {
  double t = a.t;
  if (t == 0.0) {
    double f = 1.0;
    for (int k = 2; k <= a.n; ++k) f *= k;
    t = 1.0 / (f * f);
  }
  const auto rep = cayleylab::barrier_report(a.n, t, parse_double_list(a.thetas), a.samples, c.rng(), c.par());
  json out = cayleylab::io::barrier_report_to_json(rep);
  out["seed"] = c.seed;
  return out.dump(2) + "\n";
}

// ---- config merging ----------------------------------------------------------

std::string json_value_to_arg(const json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_number_float()) return fmt(v.get<double>());
  if (v.is_array()) {
    std::string s;
    for (const auto& e : v) s += (s.empty() ? "" : ",") + json_value_to_arg(e, key);
    return s;
  }
  cayleylab::fail(ErrorKind::kValidation, "config key '" + key + "' has an unsupported value type");
}

/// Turns --config FILE into leading flag arguments so later command-line
/// flags override them.
std::vector<std::string> merge_config(const std::vector<std::string>& args, CLI::App& app) {
  if (args.size() < 2) return args;
  CLI::App* sub = nullptr;
  try {
    sub = app.get_subcommand(args[1]);
  } catch (const CLI::OptionNotFound&) {
    return args;
  }
  std::string path;
  std::vector<std::string> rest;
  for (std::size_t i = 2; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  std::vector<std::string> out{args[0], args[1]};
  if (!path.empty()) {
    const json cfg = read_json_file(path);
    cayleylab::require(cfg.is_object(), "config must be a JSON object");
    for (const auto& [raw_key, value] : cfg.items()) {
      std::string key = raw_key;
      std::replace(key.begin(), key.end(), '_', '-');
      const CLI::Option* opt = sub->get_option_no_throw("--" + key);
      if (opt == nullptr || key == "config") cayleylab::fail(ErrorKind::kValidation, "unknown config key '" + raw_key + "'");
      if (value.is_boolean()) {
        if (value.get<bool>()) out.push_back("--" + key);
        continue;
      }
      out.push_back("--" + key + "=" + json_value_to_arg(value, raw_key));
    }
  }
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cayleylab: worst-to-average-case reductions for random circuits and permanents"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  Common common;
  if (const char* env = std::getenv("CAYLEYLAB_SEED")) {
    try {
      common.seed = std::stoull(env);
    } catch (const std::logic_error&) {
      report_error("Validation", "CAYLEYLAB_SEED is not an unsigned integer", kExitValidation);
      return kExitValidation;
    }
  }

  ReduceArgs reduce_args, noisy_args;
  PermanentArgs perm_args;
  CpArgs cp_args;
  BoundsArgs bounds_args;
  RationalArgs rational_args;
  TvArgs tv_args;
  BarrierArgs barrier_args;
  std::function<std::string()> job;

  auto* reduce = app.add_subcommand("reduce", "noiseless worst-to-average-case reduction (JSON report)");
  add_common(reduce, common, true);
  add_reduce_options(reduce, reduce_args, false);
  reduce->callback([&] { job = [&] { return run_reduce(reduce_args, common, false); }; });

  auto* noisy = app.add_subcommand("reduce-noisy", "reduction against a depolarized oracle (JSON report)");
  add_common(noisy, common, true);
  add_reduce_options(noisy, noisy_args, true);
  noisy->callback([&] { job = [&] { return run_reduce(noisy_args, common, true); }; });

  auto* perm = app.add_subcommand("permanent-reduce", "recover |Per(X0)|^2 along X(theta) (JSON report)");
  add_common(perm, common, true);
  perm->add_option("--n", perm_args.n, "matrix size of the random 0/1 target");
  perm->add_option("--x0", perm_args.x0, "target matrix JSON (rows of [re, im] pairs)");
  perm->add_option("--span", perm_args.span, "grid endpoint Delta");
  perm->add_option("--grid-size", perm_args.grid_size, "grid points (0 = 100 d^2)");
  perm->add_option("--delta", perm_args.delta, "honest oracle imprecision");
  perm->add_option("--eta", perm_args.eta, "oracle corruption rate");
  perm->add_option("--adversary", perm_args.adversary, "offset | random | chebyshev");
  perm->add_option("--budget", perm_args.budget, "randomized certificate trials");
  perm->callback([&] { job = [&] { return run_permanent(perm_args, common); }; });

  auto* cp = app.add_subcommand("cp-decay", "collision probability: closed form vs Monte Carlo (CSV)");
  add_common(cp, common, false);
  cp->add_option("--n", cp_args.n, "qubits");
  cp->add_option("--gamma", cp_args.gamma, "depolarizing rate per qubit per layer");
  cp->add_option("--depths", cp_args.depths, "depth list, e.g. 1..6 or 1,2,4");
  cp->add_option("--trials", cp_args.trials, "Monte Carlo trials per depth");
  cp->callback([&] { job = [&] { return run_cp(cp_args, common); }; });

  auto* bounds = app.add_subcommand("bounds", "extrapolation bound checkers (CSV)");
  add_common(bounds, common, false);
  bounds->add_option("--check", bounds_args.check, "chebyshev | rescaling");
  bounds->add_option("--dmax", bounds_args.dmax, "largest degree");
  bounds->add_option("--spans", bounds_args.spans, "comma-separated Delta values");
  bounds->callback([&] { job = [&] { return run_bounds(bounds_args); }; });

  auto* rational = app.add_subcommand("rational-check", "held-out degree test of P = Pr * Q (JSON)");
  add_common(rational, common, true);
  rational->add_option("--n", rational_args.n, "qubits");
  rational->add_option("--m", rational_args.m, "gates");
  rational->add_option("--degree", rational_args.degree, "fit degree (default 8m)");
  rational->add_option("--tol", rational_args.tol, "relative residual tolerance");
  rational->add_option("--gamma", rational_args.gamma, "two-qubit depolarizing rate (0 = noiseless)");
  rational->add_option("--margin", rational_args.margin, "eigenphase margin beta of the pad");
  rational->add_option("--window", rational_args.window, "fit window [0, window]");
  rational->callback([&] { job = [&] { return run_rational(rational_args, common); }; });

  auto* tv = app.add_subcommand("tv-scan", "TV distance of perturbed vs Haar eigenphases (CSV)");
  add_common(tv, common, false);
  tv->add_option("--thetas", tv_args.thetas, "comma-separated theta values");
  tv->add_option("--dim", tv_args.dim, "unitary dimension");
  tv->add_option("--samples", tv_args.samples, "Haar samples per theta");
  tv->add_option("--bins", tv_args.bins, "histogram bins per phase");
  tv->callback([&] { job = [&] { return run_tv(tv_args, common); }; });

  auto* barrier = app.add_subcommand("barrier-demo", "interpolation barrier: average vs worst-case deviation (JSON)");
  add_common(barrier, common, false);
  barrier->add_option("--n", barrier_args.n, "matrix size");
  barrier->add_option("--t", barrier_args.t, "barrier weight (0 = 1/(n!)^2)");
  barrier->add_option("--thetas", barrier_args.thetas, "comma-separated theta values");
  barrier->add_option("--samples", barrier_args.samples, "Gaussian X1 samples");
  barrier->callback([&] { job = [&] { return run_barrier(barrier_args, common); }; });

  try {
    std::vector<std::string> args(argv, argv + argc);
    args = merge_config(args, app);
    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    app.parse(reversed);
    if (!job) return kExitOk;
    emit(common.output, job());
    return kExitOk;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("Validation", e.what(), kExitValidation);
    return kExitValidation;
  } catch (const Error& e) {
    const int code = exit_code_for(e.kind());
    report_error(cayleylab::error_kind_name(e.kind()), e.what(), code);
    return code;
  } catch (const std::exception& e) {
    report_error("Internal", e.what(), kExitNumerical);
    return kExitNumerical;
  }
}
