#include "stiefelgeo/check.hpp"
#include "stiefelgeo/conjugate.hpp"
#include "stiefelgeo/curvature.hpp"
#include "stiefelgeo/figures.hpp"
#include "stiefelgeo/io.hpp"
#include "stiefelgeo/json_out.hpp"
#include "stiefelgeo/loops.hpp"
#include "stiefelgeo/matexp.hpp"
#include "stiefelgeo/sampling.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace sg = stiefelgeo;
using Json = nlohmann::ordered_json;

namespace {

enum Exit : int { kOk = 0, kViolation = 2, kBadArgs = 3, kUnsupported = 4 };

struct Options {
  double beta = 0.5;
  int n = 4;
  int p = 2;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  std::string output;
  std::string suite = "all";
  bool fault = false;

  std::vector<double> betas;
  std::size_t samples = 100000;
  std::size_t ascent = 20;
  int ascent_steps = 200;

  std::string kind = "b";
  bool verify_only = false;
  std::string tangent_file;
  double t_loop = 1.0;

  double t_max = 0.0;
  double tol = 1e-6;
  std::string profile;
};

void emit(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw sg::DomainError("cannot write '" + o.output + "'");
  f << text;
}

Json vector_json(const sg::Vector& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

sg::TangentBlock load_tangent(const Options& o) {
  const sg::TangentCoords c = sg::read_tangent_file(o.tangent_file);
  if (c.A.rows() != o.p || c.B.rows() != o.n - o.p) {
    throw sg::DimensionError("tangent file shape does not match --n/--p");
  }
  return sg::TangentBlock::at_identity(c.A, c.B);
}

int run_figures(const Options& o) {
  const std::vector<double> grid = o.betas.empty() ? sg::default_beta_grid() : o.betas;
  sg::write_figures(grid, o.out_dir);
  Json j;
  j["out_dir"] = o.out_dir;
  j["points"] = grid.size();
  j["files"] = {"fig1.csv", "fig1.svg", "fig2.csv", "fig2.svg"};
  std::cout << sg::dump_json(j);
  return kOk;
}

int run_check(const Options& o) {
  std::optional<sg::testing::ScopedExpmFault> fault;
  if (o.fault) fault.emplace();
  const sg::CheckReport report = sg::run_checks(o.suite, o.seed);
  emit(o, sg::dump_json(report.to_json()));
  return report.passed() ? kOk : kViolation;
}

int run_curvature_scan(const Options& o) {
  std::vector<double> betas = o.betas.empty() ? std::vector<double>{o.beta} : o.betas;
  std::ostringstream csv;
  csv << "beta,n,p,samples,best_value,bound,regime\n";
  bool ok = true;
  for (std::size_t i = 0; i < betas.size(); ++i) {
    const double beta = betas[i];
    const sg::CurvatureBound bound = sg::curvature_bound(beta, o.n, o.p);
    const sg::CurvatureSearchResult r =
        sg::max_curvature_search(beta, o.n, o.p, o.samples, o.ascent, sg::derive_seed(o.seed, i), o.ascent_steps);
    ok = ok && r.best_value <= bound.value + 1e-8;
    csv << sg::format_double(beta) << ',' << o.n << ',' << o.p << ',' << r.samples << ','
        << sg::format_double(r.best_value) << ',' << sg::format_double(bound.value) << ',' << bound.regime
        << '\n';
  }
  emit(o, csv.str());
  return ok ? kOk : kViolation;
}

int run_loop(const Options& o) {
  sg::LoopCertificate c = [&] {
    if (o.verify_only) {
      if (o.tangent_file.empty()) throw sg::DomainError("--verify-only needs --tangent-file");
      return sg::verify_loop(o.beta, load_tangent(o), o.t_loop);
    }
    return sg::canonical_loop(o.beta, o.n, o.p, sg::parse_loop_kind(o.kind));
  }();
  Json j;
  j["beta"] = c.beta;
  j["n"] = o.n;
  j["p"] = o.p;
  j["t_L"] = c.t_L;
  j["length"] = c.length;
  j["residual"] = c.residual;
  j["is_loop"] = c.is_loop;
  if (c.blocks) {
    j["phi1"] = vector_json(c.blocks->phi1);
    j["phi2"] = vector_json(c.blocks->phi2);
    j["reduction"] = c.blocks->reduction;
    j["off_diagonal"] = c.blocks->off_diagonal;
  } else {
    j["phi1"] = nullptr;
    j["phi2"] = nullptr;
  }
  j["length_floor"] = sg::loop_length_bound(c.beta);
  emit(o, sg::dump_json(j));
  if (c.is_loop && c.length < sg::loop_length_bound(c.beta) - 1e-6) return kViolation;
  return kOk;
}

sg::TangentBlock default_conjugate_tangent(const Options& o) {
  if (o.p > o.n - 1 || o.n - o.p < 1) throw sg::DimensionError("default tangent needs p <= n - 1");
  sg::Matrix B = sg::Matrix::Zero(o.n - o.p, o.p);
  const int k = std::min(o.n - o.p, o.p);
  for (int i = 0; i < k; ++i) B(i, i) = 1.0 / std::sqrt(static_cast<double>(k));
  return sg::TangentBlock::at_identity(sg::Matrix::Zero(o.p, o.p), B);
}

int run_conjugate(const Options& o) {
  const sg::TangentBlock D = o.tangent_file.empty() ? default_conjugate_tangent(o) : load_tangent(o);
  const double t_max = o.t_max > 0.0 ? o.t_max : 2.0 * sg::kPi;
  const sg::ConjugateResult r = sg::first_conjugate_time(o.beta, D, t_max, 0.0, o.tol);
  const std::string profile = o.profile.empty() ? (std::filesystem::path(o.out_dir) / "sigma_min_profile.csv").string()
                                                : o.profile;
  {
    std::ofstream f(profile, std::ios::binary);
    if (!f) throw sg::DomainError("cannot write '" + profile + "'");
    f << "t,sigma_min,ratio\n";
    for (std::size_t i = 0; i < r.scan.t.size(); ++i) {
      f << sg::format_double(r.scan.t[i]) << ',' << sg::format_double(r.scan.sigma_min[i]) << ','
        << sg::format_double(r.scan.ratio[i]) << '\n';
    }
  }
  Json j;
  j["beta"] = o.beta;
  j["n"] = o.n;
  j["p"] = o.p;
  if (r.t_first) {
    j["t_first"] = *r.t_first;
  } else {
    j["t_first"] = nullptr;
  }
  j["distance"] = r.distance;
  j["roots"] = r.scan.roots;
  j["sigma_min_profile_csv_path"] = profile;
  emit(o, sg::dump_json(j));
  return kOk;
}

int run_inj(const Options& o) {
  const sg::InjectivityResult r = sg::injectivity_radius(o.beta, o.n, o.p);
  Json j;
  j["beta"] = r.beta;
  j["n"] = r.n;
  j["p"] = r.p;
  j["kind"] = sg::to_string(r.kind);
  if (r.kind == sg::InjectivityKind::Interval) {
    j["lo"] = r.lo;
    j["hi"] = r.hi;
  } else {
    j["value"] = r.value;
  }
  j["case_label"] = r.case_label;
  if (r.conjectured) j["conjectured"] = *r.conjectured;
  emit(o, sg::dump_json(j));
  return kOk;
}

void shape_flags(CLI::App* sub, Options& o) {
  sub->add_option("--n", o.n, "ambient dimension")->check(CLI::PositiveNumber);
  sub->add_option("--p", o.p, "number of columns")->check(CLI::PositiveNumber);
}

void beta_flag(CLI::App* sub, Options& o) {
  sub->add_option("--beta", o.beta, "metric parameter")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometry of the Stiefel manifold under the beta-metric family"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--seed", o.seed, "seed for all randomness");

  auto* figures = app.add_subcommand("figures", "write fig1/fig2 CSV and SVG data");
  figures->add_option("--out-dir", o.out_dir, "output directory");
  figures->add_option("--beta-grid", o.betas, "explicit beta grid (default 0.005..1.0, 200 points)");

  auto* check = app.add_subcommand("check", "run invariant suites");
  check->add_option("--suite", o.suite, "matexp|stiefel|curvature|loops|conjugate|all")
      ->check(CLI::IsMember({"matexp", "stiefel", "curvature", "loops", "conjugate", "all"}));
  check->add_option("--output,-o", o.output, "write the JSON report here");
  check->add_flag("--inject-expm-fault", o.fault, "drop the last squaring in expm (self-test)");
  check->add_option("--seed", o.seed, "seed for all randomness");

  auto* scan = app.add_subcommand("curvature-scan", "search for large sectional curvature");
  beta_flag(scan, o);
  shape_flags(scan, o);
  scan->add_option("--betas", o.betas, "several beta values");
  scan->add_option("--samples", o.samples, "random sections per beta");
  scan->add_option("--ascent", o.ascent, "number of best samples refined by ascent");
  scan->add_option("--ascent-steps", o.ascent_steps, "ascent iterations")->check(CLI::NonNegativeNumber);
  scan->add_option("--output,-o", o.output, "write CSV here");
  scan->add_option("--seed", o.seed, "seed for all randomness");

  auto* loop = app.add_subcommand("loop", "certify a geodesic loop");
  beta_flag(loop, o);
  shape_flags(loop, o);
  loop->add_option("--kind", o.kind, "canonical loop kind")->check(CLI::IsMember({"a", "b"}));
  loop->add_flag("--verify-only", o.verify_only, "verify the tangent from --tangent-file");
  loop->add_option("--tangent-file", o.tangent_file, "tangent coordinates")->check(CLI::ExistingFile);
  loop->add_option("--t-loop", o.t_loop, "closing time")->check(CLI::PositiveNumber);
  loop->add_option("--output,-o", o.output, "write JSON here");

  auto* conj = app.add_subcommand("conjugate", "locate the first conjugate point along a geodesic");
  beta_flag(conj, o);
  shape_flags(conj, o);
  conj->add_option("--tangent-file", o.tangent_file, "tangent coordinates (default A=0, B=I/sqrt(k))")
      ->check(CLI::ExistingFile);
  conj->add_option("--t-max", o.t_max, "scan horizon (default 2 pi)")->check(CLI::PositiveNumber);
  conj->add_option("--tol", o.tol, "relative singular value threshold")->check(CLI::PositiveNumber);
  conj->add_option("--profile", o.profile, "sigma_min profile CSV path");
  conj->add_option("--out-dir", o.out_dir, "directory for the default profile path");
  conj->add_option("--output,-o", o.output, "write JSON here");

  auto* inj = app.add_subcommand("inj", "injectivity radius");
  beta_flag(inj, o);
  shape_flags(inj, o);
  inj->add_option("--output,-o", o.output, "write JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kBadArgs;
  }

  try {
    if (*figures) return run_figures(o);
    if (*check) return run_check(o);
    if (*scan) return run_curvature_scan(o);
    if (*loop) return run_loop(o);
    if (*conj) return run_conjugate(o);
    if (*inj) return run_inj(o);
  } catch (const sg::UnsupportedRegime& e) {
    std::cerr << "unsupported regime: " << e.what() << "\n";
    return kUnsupported;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadArgs;
  }
  return kBadArgs;
}
