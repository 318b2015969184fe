#include "precog/baselines.hpp"
#include "precog/bench.hpp"
#include "precog/matgen.hpp"
#include "precog/precog.hpp"
#include "precog/rng.hpp"
#include "precog/spectral.hpp"
#include "precog/tdlms.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

using namespace precog;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

bool is_usage_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidDimension:
    case ErrorKind::InvalidInput:
    case ErrorKind::IndexOutOfRange:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::DegenerateParameters:
    case ErrorKind::ParseError:
      return true;
    default:
      return false;
  }
}

// Primary output goes to a file or stdout; the run summary goes to stdout when
// the primary output is a file and to stderr otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw Error(ErrorKind::InvalidInput, "cannot open '" + path + "' for writing");
  }
  std::ostream& out() { return file_ ? *file_ : std::cout; }
  std::ostream& report() { return file_ ? std::cout : std::cerr; }
  void close() {
    if (!file_) return;
    file_->close();
    if (!*file_) throw Error(ErrorKind::InvalidInput, "write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void report_provenance(std::ostream& os, std::uint64_t seed, const HyperParams* hp) {
  os << "seed=" << seed;
  if (hp) os << " gradient_mode=" << to_string(hp->gradient_mode);
  os << " version=" << bench::kToolVersion << '\n';
}

struct MatrixFlags {
  std::string family = "ar1";
  int n = 8;
  double alpha = 0.0;
  double reg = 1e-3;
  double density = 1.0;
  double shift_margin = matgen::kDefaultShiftMargin;
  double rho1 = 0.5;
  double rho2 = 0.0;
  std::string input;

  void attach(CLI::App* app) {
    app->add_option("--family", family, "hilbert, random-pd, sparse-pd, ar1, ar2")->capture_default_str();
    app->add_option("--n", n, "matrix order")->capture_default_str();
    app->add_option("--alpha", alpha, "hilbert ridge")->capture_default_str();
    app->add_option("--reg", reg, "random-pd ridge")->capture_default_str();
    app->add_option("--density", density, "sparse-pd off-diagonal density")->capture_default_str();
    app->add_option("--shift-margin", shift_margin, "sparse-pd margin above |lambda_min|")->capture_default_str();
    app->add_option("--rho,--rho1", rho1, "ar1 correlation or first ar2 pole")->capture_default_str();
    app->add_option("--rho2", rho2, "second ar2 pole")->capture_default_str();
    app->add_option("--input", input, "read the matrix from a file instead")->check(CLI::ExistingFile);
  }

  matgen::MatrixSpec spec(std::uint64_t seed) const {
    matgen::MatrixSpec s;
    if (!input.empty()) {
      s.family = matgen::Family::File;
      s.path = input;
      return s;
    }
    s.family = matgen::parse_family(family);
    s.n = n;
    s.alpha = alpha;
    s.reg = reg;
    s.density = density;
    s.shift_margin = shift_margin;
    s.rho1 = rho1;
    s.rho2 = rho2;
    s.seed = seed;
    return s;
  }
};

struct HyperFlags {
  HyperParams hp;
  std::string mode = "perturbation";
  bool no_band_stop = false;

  void attach(CLI::App* app) {
    app->add_option("--mu", hp.mu, "step size")->capture_default_str();
    app->add_option("--beta", hp.beta, "weight decay")->capture_default_str();
    app->add_option("--eps1", hp.eps1, "upper band width")->capture_default_str();
    app->add_option("--eps2", hp.eps2, "lower band width")->capture_default_str();
    app->add_option("--alpha1", hp.alpha1, "log-degree weight")->capture_default_str();
    app->add_option("--alpha2", hp.alpha2, "transform-sparsity weight")->capture_default_str();
    app->add_option("--iters", hp.max_iter, "iteration cap")->capture_default_str();
    app->add_option("--tol", hp.tol, "stop when |dE_N| falls below")->capture_default_str();
    app->add_option("--mode", mode, "gradient mode: perturbation or pinv-chain")->capture_default_str();
    app->add_option("--degeneracy-gap", hp.degeneracy_gap, "eigenvalue gap that triggers jitter")
        ->capture_default_str();
    app->add_flag("--no-band-stop", no_band_stop, "run to the iteration cap even inside the band");
  }

  HyperParams resolve(std::uint64_t seed) const {
    HyperParams out = hp;
    out.gradient_mode = parse_gradient_mode(mode);
    out.stop_on_band = !no_band_stop;
    out.seed = seed;
    out.validate();
    return out;
  }
};

graph::Topology make_topology(int n, int band) {
  return band > 0 ? graph::banded_topology(n, band) : graph::full_topology(n);
}

// gen

struct GenArgs {
  MatrixFlags matrix;
  std::uint64_t seed = 0;
  std::string out;
};

int run_gen(const GenArgs& args) {
  const auto spec = args.matrix.spec(args.seed);
  const Matrix a = matgen::generate(spec);
  Sink sink(args.out);
  matgen::write_matrix(sink.out(), a);
  sink.close();
  sink.report() << "cond_spd=" << num(spectral::cond_spd(a)) << '\n';
  report_provenance(sink.report(), args.seed, nullptr);
  return kExitOk;
}

// bench

struct BenchArgs {
  MatrixFlags matrix;
  HyperFlags hyper;
  std::uint64_t seed = 0;
  std::vector<int> ns;
  std::vector<double> rhos;
  std::vector<double> densities;
  std::vector<std::uint64_t> matrix_seeds;
  std::vector<int> iters;
  std::vector<std::uint64_t> precog_seeds;
  std::vector<std::string> inputs;
  std::string preset;
  std::vector<std::string> methods;
  double omega = 0.0;
  int band = 2;
  bool timing = false;
  std::string out;
};

std::string case_id(const matgen::MatrixSpec& spec, int n, bool seeded, const HyperParams& hp, bool sweep_iters,
                    bool sweep_seeds) {
  std::string id = std::string(matgen::to_string(spec.family)) + "-n" + std::to_string(n) + "-" + spec.describe();
  for (auto& ch : id) {
    if (ch == ';') ch = '-';
    if (ch == '=') ch = '_';
  }
  if (seeded) id += "-s" + std::to_string(spec.seed);
  if (sweep_iters) id += "-it" + std::to_string(hp.max_iter);
  if (sweep_seeds) id += "-ps" + std::to_string(hp.seed);
  return id;
}

std::vector<matgen::MatrixSpec> bench_specs(const BenchArgs& args) {
  std::vector<matgen::MatrixSpec> specs;
  for (const auto& path : args.inputs) {
    matgen::MatrixSpec s;
    s.family = matgen::Family::File;
    s.path = path;
    specs.push_back(s);
  }
  if (!args.inputs.empty()) return specs;

  const auto base = args.matrix.spec(args.seed);
  const std::vector<int> ns = args.ns.empty() ? std::vector<int>{base.n} : args.ns;
  const std::vector<std::uint64_t> mseeds =
      args.matrix_seeds.empty() ? std::vector<std::uint64_t>{args.seed} : args.matrix_seeds;

  std::vector<matgen::MatrixSpec> shapes;
  if (args.preset == "ar2") {
    for (const auto& [r1, r2] : matgen::ar2_parameter_pairs()) {
      auto s = base;
      s.family = matgen::Family::Ar2;
      s.rho1 = r1;
      s.rho2 = r2;
      shapes.push_back(s);
    }
  } else if (args.preset == "sparse") {
    for (double d : matgen::sparse_density_presets()) {
      auto s = base;
      s.family = matgen::Family::SparsePd;
      s.density = d;
      shapes.push_back(s);
    }
  } else if (!args.rhos.empty()) {
    for (double r : args.rhos) {
      auto s = base;
      s.rho1 = r;
      shapes.push_back(s);
    }
  } else if (!args.densities.empty()) {
    for (double d : args.densities) {
      auto s = base;
      s.density = d;
      shapes.push_back(s);
    }
  } else {
    shapes.push_back(base);
  }

  for (const auto& shape : shapes) {
    const bool seeded = shape.family == matgen::Family::RandomPd || shape.family == matgen::Family::SparsePd;
    for (int n : ns) {
      for (std::size_t k = 0; k < (seeded ? mseeds.size() : 1); ++k) {
        auto s = shape;
        s.n = n;
        s.seed = mseeds[k];
        specs.push_back(s);
      }
    }
  }
  return specs;
}

int run_bench_cmd(const BenchArgs& args) {
  const HyperParams base = args.hyper.resolve(args.seed);
  const std::vector<int> iters = args.iters.empty() ? std::vector<int>{base.max_iter} : args.iters;
  const std::vector<std::uint64_t> pseeds =
      args.precog_seeds.empty() ? std::vector<std::uint64_t>{args.seed} : args.precog_seeds;
  const bool sweep_iters = iters.size() > 1;
  const bool sweep_seeds = pseeds.size() > 1;

  std::vector<bench::BenchCase> cases;
  for (auto spec : bench_specs(args)) {
    const Matrix a = matgen::generate(spec);
    const int n = static_cast<int>(a.rows());
    if (spec.family == matgen::Family::File) spec.n = n;
    const bool seeded = spec.family == matgen::Family::RandomPd || spec.family == matgen::Family::SparsePd;
    for (int it : iters) {
      for (auto ps : pseeds) {
        bench::BenchCase c;
        c.spec = spec;
        c.a = a;
        c.hp = base;
        c.hp.max_iter = it;
        c.hp.seed = ps;
        c.hp.validate();
        c.matrix_id = spec.family == matgen::Family::File
                          ? std::filesystem::path(spec.path).stem().string()
                          : case_id(spec, n, seeded, c.hp, sweep_iters, sweep_seeds);
        if (spec.family == matgen::Family::File) {
          if (sweep_iters) c.matrix_id += "-it" + std::to_string(it);
          if (sweep_seeds) c.matrix_id += "-ps" + std::to_string(ps);
        }
        cases.push_back(std::move(c));
      }
    }
  }

  std::vector<std::string> methods = args.methods;
  if (methods.empty()) methods = bench::method_names();
  bench::BenchOptions options;
  options.omega = args.omega;
  options.band = args.band;
  options.record_timing = args.timing;
  const auto rows = bench::run_bench(cases, methods, options);

  Sink sink(args.out);
  bench::write_bench_csv(sink.out(), rows);
  sink.close();

  std::size_t failed = 0;
  for (const auto& r : rows) failed += r.status != "ok";
  sink.report() << "rows=" << rows.size() << " failed=" << failed << '\n';
  report_provenance(sink.report(), args.seed, &base);
  return failed == rows.size() ? kExitNumerical : kExitOk;
}

// gradcheck

struct GradcheckArgs {
  int n = 6;
  int band = 2;
  std::uint64_t seed = 1;
  double eps1 = 0.1;
  double eps2 = 0.1;
  double beta = 1e-3;
  double step = 1e-6;
};

double rel_err(const Matrix& a, const Matrix& b) {
  return (a - b).norm() / std::max(b.norm(), std::numeric_limits<double>::min());
}

int run_gradcheck(const GradcheckArgs& args) {
  const auto topology = make_topology(args.n, args.band);
  HyperParams hp;
  hp.eps1 = args.eps1;
  hp.eps2 = args.eps2;
  hp.beta = args.beta;
  hp.seed = args.seed;
  hp.validate();

  constexpr int kMaxDraws = 10;
  for (int draw = 0; draw < kMaxDraws; ++draw) {
    const std::uint64_t s = mix_seed(args.seed + static_cast<std::uint64_t>(draw));
    const Matrix r = matgen::random_pd(args.n, s, 1e-3);
    auto eng = make_engine(s, Stream::WeightInit);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> uniform(0.5, 1.5);

    Matrix z(args.n, args.n);
    for (int i = 0; i < args.n; ++i) {
      for (int j = 0; j < args.n; ++j) z(i, j) = normal(eng);
    }
    const Matrix u = Eigen::HouseholderQR<Matrix>(z).householderQ();
    Vector w(static_cast<Eigen::Index>(topology.edge_count()));
    for (auto& v : w) v = uniform(eng);
    const graph::WeightedGraph g(topology, w);
    const auto sp = spectral::sym_eig(graph::laplacian(g));
    const double radius = std::max(std::abs(sp.gamma[0]), std::abs(sp.gamma[sp.gamma.size() - 1]));
    if (sp.degenerate || sp.min_gap < 1e-3 * radius) continue;

    const double h = args.step;
    Matrix fd_u(args.n, args.n);
    Matrix probe = u;
    for (int i = 0; i < args.n; ++i) {
      for (int j = 0; j < args.n; ++j) {
        probe(i, j) = u(i, j) + h;
        const double up = cost_E(r, probe, hp.eps1, hp.eps2);
        probe(i, j) = u(i, j) - h;
        const double down = cost_E(r, probe, hp.eps1, hp.eps2);
        probe(i, j) = u(i, j);
        fd_u(i, j) = (up - down) / (2.0 * h);
      }
    }
    const double err_u = rel_err(grad_E_wrt_U(r, u, hp.eps1, hp.eps2), fd_u);

    Vector fd_w(w.size());
    Vector wp = w;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      wp[i] = w[i] + h;
      const double up = cost_EN(graph::WeightedGraph(topology, wp), r, hp);
      wp[i] = w[i] - h;
      const double down = cost_EN(graph::WeightedGraph(topology, wp), r, hp);
      wp[i] = w[i];
      fd_w[i] = (up - down) / (2.0 * h);
    }
    hp.gradient_mode = GradientMode::Perturbation;
    const double err_w = rel_err(grad_EN_wrt_w(g, r, hp), fd_w);
    hp.gradient_mode = GradientMode::PinvChain;
    const double err_chain = rel_err(grad_EN_wrt_w(g, r, hp), fd_w);
    hp.gradient_mode = GradientMode::Perturbation;

    const bool ok = err_u <= 1e-5 && err_w <= 1e-3;
    std::cout << "n=" << args.n << " edges=" << topology.edge_count() << " draws=" << draw + 1 << '\n'
              << "ambient_rel_err=" << num(err_u) << '\n'
              << "weight_rel_err=" << num(err_w) << '\n'
              << "pinv_chain_rel_err=" << num(err_chain) << '\n'
              << "status=" << (ok ? "ok" : "fail") << '\n';
    report_provenance(std::cout, args.seed, &hp);
    return ok ? kExitOk : kExitNumerical;
  }
  std::cerr << "error: degenerate spectrum at " << kMaxDraws << " consecutive draws\n";
  return kExitNumerical;
}

// precondition

struct PreconditionArgs {
  MatrixFlags matrix;
  HyperFlags hyper;
  std::uint64_t seed = 0;
  int band = 2;
  std::string out_u;
  std::string history;
};

int run_precondition(const PreconditionArgs& args) {
  const auto spec = args.matrix.spec(args.seed);
  const Matrix a = matgen::generate(spec);
  const HyperParams hp = args.hyper.resolve(args.seed);
  const auto result = optimize(a, make_topology(static_cast<int>(a.rows()), args.band), hp);

  if (!args.out_u.empty()) matgen::write_matrix_file(args.out_u, result.u);
  if (!args.history.empty()) {
    Sink sink(args.history);
    sink.out() << "t,cost,cond,grad_norm\n";
    for (const auto& rec : result.history) {
      sink.out() << rec.t << ',' << num(rec.cost) << ',' << num(rec.cond) << ',' << num(rec.grad_norm) << '\n';
    }
    sink.close();
  }
  std::cout << "cond_reference=" << num(result.cond_reference) << '\n'
            << "cond_best=" << num(result.cond_best) << '\n'
            << "best_iteration=" << result.best_iteration << '\n'
            << "iterations=" << result.history.size() << '\n'
            << "stop=" << to_string(result.reason) << '\n'
            << "jitters=" << result.jitters << '\n'
            << "max_orthonormality_defect=" << num(result.max_orthonormality_defect) << '\n';
  report_provenance(std::cout, args.seed, &hp);
  return kExitOk;
}

// lms

struct LmsArgs {
  HyperFlags hyper;
  std::uint64_t seed = 0;
  int taps = 16;
  double step = 0.01;
  double gamma_pow = 0.99;
  double delta_pow = 1e-6;
  std::string input_family = "ar1";
  double rho1 = 0.9;
  double rho2 = 0.0;
  double snr_db = 30.0;
  std::size_t run_len = 20000;
  std::string transform = "dct";
  std::string transform_file;
  double threshold_db = -20.0;
  std::string out;
};

int run_lms(const LmsArgs& args) {
  tdlms::InputSpec input;
  Matrix autocorr;
  if (args.input_family == "white") {
    input.family = tdlms::InputFamily::White;
    autocorr = Matrix::Identity(args.taps, args.taps);
  } else if (args.input_family == "ar1") {
    input = {tdlms::InputFamily::Ar1, args.rho1, 0.0};
    autocorr = matgen::ar1_autocorr(args.taps, args.rho1);
  } else if (args.input_family == "ar2") {
    input = {tdlms::InputFamily::Ar2, args.rho1, args.rho2};
    autocorr = matgen::ar2_autocorr(args.taps, args.rho1, args.rho2);
  } else {
    throw Error(ErrorKind::InvalidInput, "unknown input family '" + args.input_family + "'");
  }

  tdlms::FilterConfig cfg;
  cfg.taps = args.taps;
  cfg.step = args.step;
  cfg.gamma_pow = args.gamma_pow;
  cfg.delta_pow = args.delta_pow;
  std::optional<HyperParams> hp;
  if (args.transform == "dct") {
    cfg.transform = baselines::dct_transform(args.taps);
  } else if (args.transform == "precog") {
    hp = args.hyper.resolve(args.seed);
    cfg.transform = optimize(autocorr, graph::banded_topology(args.taps, 2), *hp).u;
  } else if (args.transform == "file") {
    if (args.transform_file.empty()) throw Error(ErrorKind::InvalidInput, "--transform file needs --transform-file");
    cfg.transform = matgen::read_matrix_file(args.transform_file);
  } else if (args.transform != "none") {
    throw Error(ErrorKind::InvalidInput, "unknown transform '" + args.transform + "'");
  }
  cfg.validate();

  const Vector plant = tdlms::random_plant(args.taps, args.seed);
  const auto trace = tdlms::system_id_experiment(plant, input, args.snr_db, cfg, args.run_len, args.seed);

  Sink sink(args.out);
  tdlms::write_trace_csv(sink.out(), trace);
  sink.close();
  const auto hit = trace.iterations_to_threshold(args.threshold_db);
  sink.report() << "transform=" << args.transform << '\n'
                << "final_misalignment_db=" << num(trace.misalignment_db(trace.misalignment.size() - 1)) << '\n'
                << "iterations_to_threshold=" << (hit ? std::to_string(*hit) : "none") << '\n';
  report_provenance(sink.report(), args.seed, hp ? &*hp : nullptr);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learned graph-Laplacian split preconditioners: generation, benchmarks, LMS runs"};
  app.set_config("--config", "", "TOML file of flag values; command-line flags take precedence");
  app.set_version_flag("--version", std::string(bench::kToolVersion));
  app.require_subcommand(1);

  auto seed_option = [](CLI::App* sub, std::uint64_t& seed) {
    sub->add_option("--seed", seed, "random seed (default from PRECOG_SEED)")->envname("PRECOG_SEED")
        ->capture_default_str();
  };

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a test matrix in matrix text format");
  gen.matrix.attach(gen_cmd);
  seed_option(gen_cmd, gen.seed);
  gen_cmd->add_option("--out,-o", gen.out, "output path (default stdout)");

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "score methods against precog; write a CSV report");
  bench_args.matrix.attach(bench_cmd);
  bench_args.hyper.attach(bench_cmd);
  seed_option(bench_cmd, bench_args.seed);
  bench_cmd->add_option("--ns", bench_args.ns, "sweep of matrix orders")->delimiter(',');
  bench_cmd->add_option("--rhos", bench_args.rhos, "sweep of ar1 correlations")->delimiter(',');
  bench_cmd->add_option("--densities", bench_args.densities, "sweep of sparse-pd densities")->delimiter(',');
  bench_cmd->add_option("--matrix-seeds", bench_args.matrix_seeds, "seeds for random families")->delimiter(',');
  bench_cmd->add_option("--iters-sweep", bench_args.iters, "sweep of iteration caps")->delimiter(',');
  bench_cmd->add_option("--precog-seeds", bench_args.precog_seeds, "sweep of weight initializations")
      ->delimiter(',');
  bench_cmd->add_option("--inputs", bench_args.inputs, "matrix files (replaces the generated family)")
      ->delimiter(',')
      ->check(CLI::ExistingFile);
  bench_cmd->add_option("--preset", bench_args.preset, "ar2 pairs or sparse densities")
      ->check(CLI::IsMember({"ar2", "sparse"}));
  bench_cmd->add_option("--methods", bench_args.methods, "comma-separated methods (default all)")
      ->delimiter(',')
      ->check(CLI::IsMember(bench::method_names()));
  bench_cmd->add_option("--omega", bench_args.omega, "SOR/SSOR relaxation (0: default 1.5)");
  bench_cmd->add_option("--band", bench_args.band, "precog topology band (0: complete graph)")
      ->capture_default_str();
  bench_cmd->add_flag("--timing", bench_args.timing, "record wall time (breaks byte-identical output)");
  bench_cmd->add_option("--out,-o", bench_args.out, "CSV path (default stdout)");

  GradcheckArgs gc;
  auto* gc_cmd = app.add_subcommand("gradcheck", "compare analytic gradients with finite differences");
  gc_cmd->add_option("--n", gc.n, "matrix order, at most 10")->check(CLI::Range(2, 10))->capture_default_str();
  gc_cmd->add_option("--band", gc.band, "topology band (0: complete graph)")->capture_default_str();
  gc_cmd->add_option("--seed", gc.seed, "random seed")->envname("PRECOG_SEED")->capture_default_str();
  gc_cmd->add_option("--eps1", gc.eps1)->capture_default_str();
  gc_cmd->add_option("--eps2", gc.eps2)->capture_default_str();
  gc_cmd->add_option("--beta", gc.beta)->capture_default_str();
  gc_cmd->add_option("--fd-step", gc.step, "central-difference step")->capture_default_str();

  PreconditionArgs pc;
  auto* pc_cmd = app.add_subcommand("precondition", "learn U for one matrix");
  pc.matrix.attach(pc_cmd);
  pc.hyper.attach(pc_cmd);
  seed_option(pc_cmd, pc.seed);
  pc_cmd->add_option("--band", pc.band, "topology band (0: complete graph)")->capture_default_str();
  pc_cmd->add_option("--out-u", pc.out_u, "write U in matrix text format");
  pc_cmd->add_option("--history", pc.history, "write the per-iteration CSV");

  LmsArgs lms;
  auto* lms_cmd = app.add_subcommand("lms", "system identification with (TD)LMS; writes a trace CSV");
  lms.hyper.attach(lms_cmd);
  seed_option(lms_cmd, lms.seed);
  lms_cmd->add_option("--taps", lms.taps)->capture_default_str();
  lms_cmd->add_option("--step", lms.step)->capture_default_str();
  lms_cmd->add_option("--gamma-pow", lms.gamma_pow, "power smoothing")->capture_default_str();
  lms_cmd->add_option("--delta-pow", lms.delta_pow, "power floor")->capture_default_str();
  lms_cmd->add_option("--input-family", lms.input_family)
      ->check(CLI::IsMember({"white", "ar1", "ar2"}))
      ->capture_default_str();
  lms_cmd->add_option("--rho,--rho1", lms.rho1)->capture_default_str();
  lms_cmd->add_option("--rho2", lms.rho2)->capture_default_str();
  lms_cmd->add_option("--snr", lms.snr_db, "dB; inf for noise-free")->capture_default_str();
  lms_cmd->add_option("--run-len", lms.run_len)->capture_default_str();
  lms_cmd->add_option("--transform", lms.transform)
      ->check(CLI::IsMember({"none", "dct", "precog", "file"}))
      ->capture_default_str();
  lms_cmd->add_option("--transform-file", lms.transform_file)->check(CLI::ExistingFile);
  lms_cmd->add_option("--threshold-db", lms.threshold_db)->capture_default_str();
  lms_cmd->add_option("--out,-o", lms.out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*bench_cmd) return run_bench_cmd(bench_args);
    if (*gc_cmd) return run_gradcheck(gc);
    if (*pc_cmd) return run_precondition(pc);
    if (*lms_cmd) return run_lms(lms);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return is_usage_error(e.kind()) ? kExitUsage : kExitNumerical;
  }
  return kExitUsage;
}
