// Command-line front end: load a polynomial map (JSON file or named
// construction), run one of the checks, and emit a deterministic JSON report.
// Exit codes: 0 pass, 1 fail, 2 usage or input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "skewcheck/constructions.hpp"
#include "skewcheck/geometry.hpp"
#include "skewcheck/local_condition.hpp"
#include "skewcheck/polymap.hpp"
#include "skewcheck/report.hpp"
#include "skewcheck/skewness.hpp"
#include "skewcheck/sphere.hpp"
#include "skewcheck/stratification.hpp"

namespace {

using namespace skewcheck;

struct CommonArgs {
  std::string map_file;
  std::string construct;
  int n = 0;
  int N = 0;
  std::vector<double> at;
  std::vector<double> p;
  std::vector<double> q;
  double r = 0.05;
  int trials = 10000;
  double tol = -1.0;  // per-command default when negative
  std::uint64_t seed = 12345;
  bool certify = false;
  double mesh = 1e-3;
  std::string out;
  std::string plot_data;
  int threads = 0;
};

void add_map_source(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--map", args.map_file, "polynomial map JSON file");
  cmd->add_option("--construct", args.construct,
                  "named construction: skew-cubic | appendix-triple");
  cmd->add_option("--n", args.n, "domain dimension for --construct");
  cmd->add_option("--N", args.N, "codomain dimension (appendix-triple)");
}

void add_output(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--out", args.out, "report output path (default stdout)");
  cmd->add_option("--seed", args.seed, "root RNG seed (recorded in the report)");
  cmd->add_option("--threads", args.threads, "worker threads (0 = all, 1 = serial)");
}

PolyMap load_map(const CommonArgs& args) {
  const bool has_file = !args.map_file.empty();
  const bool has_construct = !args.construct.empty();
  if (has_file == has_construct)
    throw std::invalid_argument("exactly one of --map and --construct is required");
  if (has_file) return polymap_from_json_file(args.map_file);
  if (args.construct == "skew-cubic") {
    if (args.n < 1) throw std::invalid_argument("skew-cubic requires --n >= 1");
    return skew_cubic(args.n);
  }
  if (args.construct == "appendix-triple") {
    if (args.n < 2) throw std::invalid_argument("appendix-triple requires --n >= 2");
    const int N = args.N > 0 ? args.N : 3 * args.n;
    return appendix_triple(args.n, N);
  }
  throw std::invalid_argument("unknown construction: " + args.construct);
}

Vec to_vec(const std::vector<double>& v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
  return out;
}

Vec point_or_origin(const std::vector<double>& at, int n) {
  if (at.empty()) return Vec::Zero(n);
  if (static_cast<int>(at.size()) != n)
    throw std::invalid_argument("--at has wrong dimension for this map");
  return to_vec(at);
}

Json config_echo(const std::string& command, const CommonArgs& args) {
  Json c;
  c["command"] = command;
  if (!args.map_file.empty()) c["map"] = args.map_file;
  if (!args.construct.empty()) {
    c["construct"] = args.construct;
    c["n"] = args.n;
    if (args.N > 0) c["N"] = args.N;
  }
  if (!args.at.empty()) c["at"] = args.at;
  if (!args.p.empty()) c["p"] = args.p;
  if (!args.q.empty()) c["q"] = args.q;
  c["seed"] = args.seed;
  return c;
}

void emit(const std::string& text, const CommonArgs& args) {
  if (args.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(args.out, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + args.out);
  out << text;
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::array<double, 3>>& rows, int cols) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open plot-data file: " + path);
  out << header << "\n";
  char buf[96];
  for (const auto& row : rows) {
    std::string line;
    for (int c = 0; c < cols; ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", row[static_cast<std::size_t>(c)]);
      if (c) line += ",";
      line += buf;
    }
    out << line << "\n";
  }
}

int cmd_check_local(CommonArgs& args) {
  const PolyMap f = load_map(args);
  const Vec a = point_or_origin(args.at, f.domain_dim());
  const double tol = args.tol > 0 ? args.tol : 1e-8;
  LocalConditionReport rep = [&] {
    if (args.certify) {
      CertifyOptions opts;
      opts.mesh = args.mesh;
      opts.tol = tol;
      opts.seed = args.seed;
      opts.threads = args.threads;
      return certify_local_condition(f, a, opts);
    }
    LocalOptions opts;
    opts.tol = tol;
    opts.seed = args.seed;
    opts.threads = args.threads;
    return check_local_condition(f, a, opts);
  }();
  Json cfg = config_echo("check-local", args);
  cfg["tol"] = tol;
  if (args.certify) cfg["mesh"] = args.mesh;
  emit(finalize_report(report_json(rep), cfg), args);
  if (!args.plot_data.empty() && f.domain_dim() == 2) {
    const Jet3 jet = f.jet3(a);
    std::vector<std::array<double, 3>> rows;
    const int steps = 720;
    for (int i = 0; i < steps; ++i) {
      const double theta = 2.0 * 3.14159265358979323846 * i / steps;
      Vec y(2);
      y << std::cos(theta), std::sin(theta);
      rows.push_back({theta, sigma_min_only(boundary_matrix_from_jet(jet, y)), 0.0});
    }
    write_csv(args.plot_data, "angle,sigma_min", rows, 2);
  }
  return rep.holds == Holds::True ? 0 : 1;
}

int cmd_check_pair(CommonArgs& args) {
  const PolyMap f = load_map(args);
  if (args.p.empty() || args.q.empty())
    throw std::invalid_argument("check-pair requires --p and --q");
  const Vec p = point_or_origin(args.p, f.domain_dim());
  const Vec q = point_or_origin(args.q, f.domain_dim());
  const double tol = args.tol > 0 ? args.tol : 1e-9;
  const PairSkewResult skew = is_pair_skew(f, p, q, tol);
  const FailureClassification cls = classify_failure(f, p, q, tol);
  Json cfg = config_echo("check-pair", args);
  cfg["tol"] = tol;
  emit(finalize_report(report_json(skew, cls), cfg), args);
  return skew.skew ? 0 : 1;
}

int cmd_sweep(CommonArgs& args) {
  const PolyMap f = load_map(args);
  const Vec a = point_or_origin(args.at, f.domain_dim());
  SweepOptions opts;
  opts.r = args.r;
  opts.trials = args.trials;
  opts.tol = args.tol > 0 ? args.tol : 1e-9;
  opts.seed = args.seed;
  opts.threads = args.threads;
  const SweepReport rep = sweep_neighborhood(f, a, opts);
  Json cfg = config_echo("sweep", args);
  cfg["r"] = args.r;
  cfg["trials"] = args.trials;
  cfg["tol"] = opts.tol;
  emit(finalize_report(report_json(rep), cfg), args);
  return rep.pass ? 0 : 1;
}

int cmd_genericity(CommonArgs& args) {
  if (args.n < 1 || args.N < 1)
    throw std::invalid_argument("genericity requires --n and --N");
  GenericityOptions opts;
  opts.seed = args.seed;
  opts.threads = args.threads;
  if (args.tol > 0) opts.local.tol = args.tol;
  const GenericityReport rep = genericity_experiment(args.n, args.N, args.trials, opts);
  Json cfg = config_echo("genericity", args);
  cfg["N"] = args.N;
  cfg["n"] = args.n;
  cfg["trials"] = args.trials;
  emit(finalize_report(report_json(rep), cfg), args);
  if (!args.plot_data.empty()) {
    const int bins = 32;
    double hi = 0.0;
    for (double v : rep.min_sigmas) hi = std::max(hi, v);
    if (hi == 0.0) hi = 1.0;
    std::vector<int> counts(bins, 0);
    for (double v : rep.min_sigmas) {
      int b = static_cast<int>(std::floor(v / hi * bins));
      if (b >= bins) b = bins - 1;
      ++counts[static_cast<std::size_t>(b)];
    }
    std::vector<std::array<double, 3>> rows;
    for (int b = 0; b < bins; ++b) {
      rows.push_back({hi * b / bins, hi * (b + 1) / bins,
                      static_cast<double>(counts[static_cast<std::size_t>(b)])});
    }
    write_csv(args.plot_data, "bin_lo,bin_hi,count", rows, 3);
  }
  return rep.asserted && !rep.pass ? 1 : 0;
}

int cmd_geometry(CommonArgs& args) {
  const PolyMap f = load_map(args);
  const Vec a = point_or_origin(args.at, f.domain_dim());
  LocalOptions opts;
  if (args.tol > 0) opts.tol = args.tol;
  opts.seed = args.seed;
  opts.threads = args.threads;
  const EquivalenceReport rep = equivalence_check(f, a, opts);
  Json cfg = config_echo("geometry", args);
  cfg["tol"] = opts.tol;
  emit(finalize_report(report_json(rep), cfg), args);
  return rep.equivalence_holds ? 0 : 1;
}

int cmd_transversality(CommonArgs& args) {
  if (args.n < 2 || args.N < 3 * args.n)
    throw std::invalid_argument("transversality requires --n >= 2 and --N >= 3n");
  const double tol = args.tol > 0 ? args.tol : 1e-8;
  const TransversalityResult rep = transversality_check(args.n, args.N, tol);
  Json cfg = config_echo("transversality", args);
  cfg["N"] = args.N;
  cfg["n"] = args.n;
  cfg["tol"] = tol;
  emit(finalize_report(report_json(rep, args.n, args.N, tol), cfg), args);
  return rep.injective ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"skewcheck: numerical checks for totally skew embeddings"};
  app.require_subcommand(1);
  CommonArgs args;

  auto* check_local = app.add_subcommand("check-local", "third-order condition at a point");
  add_map_source(check_local, args);
  check_local->add_option("--at", args.at, "base point coordinates")->delimiter(',');
  check_local->add_option("--tol", args.tol, "threshold on the sphere minimum");
  check_local->add_flag("--certify", args.certify, "certified net mode");
  check_local->add_option("--mesh", args.mesh, "net covering radius for --certify");
  check_local->add_option("--plot-data", args.plot_data, "sigma_min vs angle CSV (n = 2)");
  add_output(check_local, args);

  auto* check_pair = app.add_subcommand("check-pair", "tangent-space skewness of a point pair");
  add_map_source(check_pair, args);
  check_pair->add_option("--p", args.p, "first point")->delimiter(',');
  check_pair->add_option("--q", args.q, "second point")->delimiter(',');
  check_pair->add_option("--tol", args.tol, "relative rank tolerance");
  add_output(check_pair, args);

  auto* sweep = app.add_subcommand("sweep", "sample pairs in a ball and test skewness");
  add_map_source(sweep, args);
  sweep->add_option("--at", args.at, "ball center")->delimiter(',');
  sweep->add_option("--r", args.r, "ball radius");
  sweep->add_option("--trials", args.trials, "number of sampled pairs");
  sweep->add_option("--tol", args.tol, "relative rank tolerance");
  add_output(sweep, args);

  auto* genericity = app.add_subcommand("genericity", "random-triple failure statistics");
  genericity->add_option("--n", args.n, "domain dimension")->required();
  genericity->add_option("--N", args.N, "codomain dimension")->required();
  genericity->add_option("--trials", args.trials, "number of sampled triples");
  genericity->add_option("--tol", args.tol, "threshold on the sphere minimum");
  genericity->add_option("--plot-data", args.plot_data, "min_sigma histogram CSV");
  add_output(genericity, args);

  auto* geometry = app.add_subcommand("geometry", "geometric reformulation equivalence");
  add_map_source(geometry, args);
  geometry->add_option("--at", args.at, "base point coordinates")->delimiter(',');
  geometry->add_option("--tol", args.tol, "margin tolerance");
  add_output(geometry, args);

  auto* transversality = app.add_subcommand("transversality", "failure-set codimension witness");
  transversality->add_option("--n", args.n, "domain dimension")->required();
  transversality->add_option("--N", args.N, "codomain dimension")->required();
  transversality->add_option("--tol", args.tol, "injectivity tolerance");
  add_output(transversality, args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (check_local->parsed()) return cmd_check_local(args);
    if (check_pair->parsed()) return cmd_check_pair(args);
    if (sweep->parsed()) return cmd_sweep(args);
    if (genericity->parsed()) return cmd_genericity(args);
    if (geometry->parsed()) return cmd_geometry(args);
    if (transversality->parsed()) return cmd_transversality(args);
  } catch (const NetBudgetError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
