// Command-line front end: verify | reduce | sweep | simulate | classify.
// Progress goes to standard error; data artifacts are written to files by a
// single writer after each pipeline finishes, so a failing run leaves no
// partial outputs.
#include <CLI11.hpp>

#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "shbif/config.hpp"
#include "shbif/dynamics.hpp"
#include "shbif/io.hpp"
#include "shbif/manifold.hpp"
#include "shbif/matrix.hpp"
#include "shbif/pde.hpp"
#include "shbif/spectral.hpp"
#include "shbif/version.hpp"

namespace {

using namespace shbif;
using ordered_json = nlohmann::ordered_json;

std::string rational_str(const Rational& v) {
  const std::string den = den_str(v);
  return den == "1" ? num_str(v) : num_str(v) + "/" + den;
}

// "p/q" or a decimal literal, parsed exactly.
Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    return rational_from_parts(text.substr(0, slash), text.substr(slash + 1));
  }
  return rational_from_decimal(text);
}

FieldForm parse_form(const std::string& text) {
  if (text == "ansatz") return FieldForm::Ansatz;
  if (text == "graph") return FieldForm::Graph;
  throw ConfigError("form must be \"ansatz\" or \"graph\", got \"" + text + "\"");
}

// Sum of [coeff*]sin2kx / [coeff*]cos2kx terms, e.g. "0.1*sin2x - 0.05*cos4x".
TrigF parse_initial_state(const std::string& expr, int trunc) {
  TrigF out(trunc);
  std::size_t i = 0;
  const auto skip_ws = [&] {
    while (i < expr.size() && std::isspace(static_cast<unsigned char>(expr[i]))) ++i;
  };
  const auto fail = [&](const std::string& why) {
    throw ConfigError("invalid initial state \"" + expr + "\": " + why);
  };

  skip_ws();
  if (i == expr.size()) fail("empty expression");
  bool first = true;
  while (i < expr.size()) {
    double sign = 1.0;
    if (expr[i] == '+' || expr[i] == '-') {
      sign = expr[i] == '-' ? -1.0 : 1.0;
      ++i;
      skip_ws();
    } else if (!first) {
      fail("expected + or - between terms");
    }

    double coeff = 1.0;
    if (i < expr.size() &&
        (std::isdigit(static_cast<unsigned char>(expr[i])) || expr[i] == '.')) {
      std::size_t used = 0;
      try {
        coeff = std::stod(expr.substr(i), &used);
      } catch (const std::exception&) {
        fail("unreadable coefficient");
      }
      i += used;
      skip_ws();
      if (i >= expr.size() || expr[i] != '*') fail("expected * after a coefficient");
      ++i;
      skip_ws();
    }

    Wave wave{};
    if (expr.compare(i, 3, "sin") == 0) {
      wave = Wave::Sin;
    } else if (expr.compare(i, 3, "cos") == 0) {
      wave = Wave::Cos;
    } else {
      fail("expected sin or cos");
    }
    i += 3;
    int n = 0;
    bool any = false;
    while (i < expr.size() && std::isdigit(static_cast<unsigned char>(expr[i]))) {
      n = 10 * n + (expr[i] - '0');
      any = true;
      ++i;
    }
    if (!any || i >= expr.size() || expr[i] != 'x') fail("expected a wavenumber like sin2x");
    ++i;
    if (n <= 0 || n % 2 != 0) fail("wavenumber must be a positive even integer");
    const int k = n / 2;
    if (k > trunc) fail("mode " + std::to_string(n) + " exceeds truncation " +
                        std::to_string(trunc));
    out.add(wave == Wave::Sin ? sin_mode(k) : cos_mode(k), sign * coeff);
    first = false;
    skip_ws();
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path.string());
  f << content;
  f.flush();
  if (!f) throw std::runtime_error("cannot write output file: " + path.string());
}

std::filesystem::path prepare_out_dir(const std::string& out) {
  std::filesystem::path dir(out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + out + ": " + ec.message());
  return dir;
}

// --- verify -----------------------------------------------------------------

struct CheckRow {
  std::string name, expected, computed;
  bool ok = false;
  bool skipped = false;
};

int cmd_verify(int order, bool perturb_alpha1) {
  std::vector<CheckRow> rows;
  const auto exact = [&](std::string name, std::string expected, std::string computed) {
    const bool ok = expected == computed;
    rows.push_back({std::move(name), std::move(expected), std::move(computed), ok, false});
  };

  const CenterManifoldMap m3 = solve_center_manifold(Rational(9), 3);
  CubicCoefficients c = ansatz_coefficients(m3);
  if (perturb_alpha1) c.alpha1 += Rational(1, 2432);
  exact("alpha1", "1/2432", rational_str(c.alpha1));
  exact("alpha2", "-1/2432", rational_str(c.alpha2));
  exact("alpha3", "3/2432", rational_str(c.alpha3));
  exact("alpha4", "-3/2432", rational_str(c.alpha4));

  const ReducedVectorField cubic = reduced_vector_field(m3, 3);
  exact("cubic", "-3/4, -3/4",
        rational_str(cubic.g1.coeff({3, 0})) + ", " + rational_str(cubic.g1.coeff({1, 2})));

  if (order >= 5) {
    const ReducedVectorField quintic = reduced_vector_field(m3, 5);
    exact("quintic", "3/4864, -9/4864",
          rational_str(quintic.g1.coeff({5, 0})) + ", " +
              rational_str(quintic.g1.coeff({3, 2})));
  } else {
    rows.push_back({"quintic", "3/4864, -9/4864", "", false, true});
  }

  {
    const auto residual = homological_residual(m3, Rational(9), 3);
    bool zero = true;
    for (const auto& [mono, value] : residual.terms()) {
      if (!value.is_zero()) zero = false;
    }
    exact("residual", "0", zero ? "0" : "nonzero");
  }

  {
    const auto ref = SpectralDecomposition::make(Rational(9), 6);
    const auto cur = SpectralDecomposition::make(Rational(93, 10), 6);
    const auto pc = center_projection<Rational>(ref);
    const auto ps = stable_projection<Rational>(ref);
    const bool idem = pc * pc == pc && ps * ps == ps &&
                      pc + ps == DenseMatrix<Rational>::identity(12);
    const auto t = transition_isomorphism<Rational>(
        {pc, ps}, {center_projection<Rational>(cur), stable_projection<Rational>(cur)});
    const bool ident = t == DenseMatrix<Rational>::identity(12);
    exact("operators", "identity",
          idem && ident ? "identity" : (idem ? "transition differs" : "not idempotent"));
  }

  int passed = 0, skipped = 0, total = 0;
  for (const auto& r : rows) {
    if (r.skipped) {
      ++skipped;
    } else {
      ++total;
      if (r.ok) ++passed;
    }
  }
  std::printf("%-10s %-22s %-22s %s\n", "check", "expected", "computed", "status");
  for (const auto& r : rows) {
    std::printf("%-10s %-22s %-22s %s\n", r.name.c_str(), r.expected.c_str(),
                r.computed.c_str(), r.skipped ? "skipped" : (r.ok ? "exact" : "MISMATCH"));
  }
  if (passed == total) {
    if (skipped > 0) {
      std::printf("%d/%d checks exact (%d skipped)\n", passed, total, skipped);
    } else {
      std::printf("%d/%d checks exact\n", passed, total);
    }
    return 0;
  }
  for (const auto& r : rows) {
    if (!r.skipped && !r.ok) {
      std::printf("check failed: %s expected %s got %s\n", r.name.c_str(),
                  r.expected.c_str(), r.computed.c_str());
      break;
    }
  }
  return 1;
}

// --- reduce -----------------------------------------------------------------

int cmd_reduce(const std::string& config_path, const std::string& out,
               std::optional<int> order_flag) {
  KeyValueConfig cfg = KeyValueConfig::parse_file(config_path);
  const Rational lambda = parse_rational(cfg.get_string("lambda", "9"));
  int order = static_cast<int>(cfg.get_int("order", 5));
  const FieldForm form = parse_form(cfg.get_string("form", "ansatz"));
  const int trunc = static_cast<int>(cfg.get_int("trunc", 8));
  cfg.finish();
  if (order_flag) order = *order_flag;
  if (order != 3 && order != 5) throw ConfigError("order must be 3 or 5");

  const CenterManifoldMap manifold = solve_center_manifold(lambda, std::max(3, order - 2), trunc);
  const ReducedVectorField field = reduced_vector_field(manifold, order, form);

  const auto dir = prepare_out_dir(out);
  write_file(dir / "center_manifold.json", io::manifold_json(manifold, -1) + "\n");
  write_file(dir / "reduced_field.json", io::reduced_field_json(field, -1) + "\n");
  std::cerr << "reduce: lambda=" << rational_str(lambda) << " order=" << order
            << " form=" << (form == FieldForm::Ansatz ? "ansatz" : "graph") << " -> "
            << (dir / "reduced_field.json").string() << "\n";
  return 0;
}

// --- sweep ------------------------------------------------------------------

int cmd_sweep(const std::string& config_path, const std::string& out,
              std::optional<std::uint64_t> seed_flag) {
  KeyValueConfig cfg = KeyValueConfig::parse_file(config_path);
  if (!cfg.has("grid")) throw ConfigError("sweep requires a grid of parameter values");
  const std::vector<double> grid = cfg.get_grid("grid", {});

  SimConfig base;
  base.trunc = static_cast<int>(cfg.get_int("trunc", base.trunc));
  base.dt = cfg.get_double("dt", base.dt);
  base.t_end = cfg.get_double("t_end", base.t_end);
  base.tol = cfg.get_double("tol", base.tol);
  base.ic_seed = cfg.get_u64("seed", base.ic_seed);
  base.ic_count = static_cast<int>(cfg.get_int("ic_count", base.ic_count));
  base.ic_radius = cfg.get_double("ic_radius", base.ic_radius);

  SweepOptions opts;
  opts.order = static_cast<int>(cfg.get_int("order", opts.order));
  opts.block_r = cfg.get_double("block_r", opts.block_r);
  opts.block_samples = static_cast<int>(cfg.get_int("block_samples", opts.block_samples));
  cfg.finish();
  if (seed_flag) base.ic_seed = *seed_flag;
  base.lambda = grid.front();
  base.validate();

  std::cerr << "sweep: " << grid.size() << " parameter values, trunc=" << base.trunc
            << ", t_end=" << base.t_end << "\n";
  const std::vector<SweepRow> rows = bifurcation_sweep(grid, base, opts);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    std::cerr << "sweep: [" << i + 1 << "/" << rows.size() << "] lambda=" << io::fmt17(r.lambda);
    if (r.error.empty()) {
      std::cerr << " dist_H=" << (r.dist_h ? io::fmt17(*r.dist_h) : "-")
                << " verdict=" << r.verdict << "\n";
    } else {
      std::cerr << " error: " << r.error << "\n";
    }
  }

  ordered_json summary;
  summary["version"] = kVersionString;
  summary["command"] = "sweep";
  ordered_json echo;
  echo["grid"] = grid;
  echo["trunc"] = base.trunc;
  echo["dt"] = base.dt;
  echo["t_end"] = base.t_end;
  echo["tol"] = base.tol;
  echo["seed"] = base.ic_seed;
  echo["ic_count"] = base.ic_count;
  echo["ic_radius"] = base.ic_radius;
  echo["order"] = opts.order;
  echo["block_r"] = opts.block_r;
  echo["block_samples"] = opts.block_samples;
  summary["config"] = std::move(echo);
  ordered_json jrows = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json jr;
    jr["lambda"] = r.lambda;
    jr["status"] = r.error.empty() ? "ok" : "error";
    if (!r.error.empty()) jr["error"] = r.error;
    jrows.push_back(std::move(jr));
  }
  summary["rows"] = std::move(jrows);

  const auto dir = prepare_out_dir(out);
  write_file(dir / "sweep.csv", io::sweep_csv(rows));
  write_file(dir / "sweep_summary.json", summary.dump(2) + "\n");
  std::cerr << "sweep: wrote " << (dir / "sweep.csv").string() << "\n";
  return 0;
}

// --- simulate ---------------------------------------------------------------

int cmd_simulate(const std::string& config_path, const std::string& out) {
  KeyValueConfig cfg = KeyValueConfig::parse_file(config_path);
  SimConfig sim;
  sim.lambda = cfg.get_double("lambda", sim.lambda);
  sim.trunc = static_cast<int>(cfg.get_int("trunc", sim.trunc));
  sim.dt = cfg.get_double("dt", sim.dt);
  sim.t_end = cfg.get_double("t_end", sim.t_end);
  const std::string u0_expr = cfg.get_string("u0", "0.1*sin2x");
  const double sample_dt = cfg.get_double("sample_dt", 1.0);
  cfg.finish();
  sim.validate();
  const TrigF u0 = parse_initial_state(u0_expr, sim.trunc);

  const PdeTrajectory traj = integrate_pde(sim, u0, sample_dt);
  std::cerr << "simulate: lambda=" << io::fmt17(sim.lambda) << " u0=\"" << u0_expr
            << "\" samples=" << traj.states.size() << (traj.escaped ? " (escaped)" : "")
            << "\n";

  const auto dir = prepare_out_dir(out);
  write_file(dir / "trajectory.csv", io::trajectory_csv(traj, sim.lambda));
  std::cerr << "simulate: wrote " << (dir / "trajectory.csv").string() << "\n";
  return 0;
}

// --- classify ---------------------------------------------------------------

int cmd_classify(const std::string& config_path, const std::string& out) {
  KeyValueConfig cfg = KeyValueConfig::parse_file(config_path);
  if (!cfg.has("grid")) throw ConfigError("classify requires a grid of parameter values");
  const std::vector<double> grid = cfg.get_grid("grid", {});
  const double r = cfg.get_double("r", 0.01);
  const int samples = static_cast<int>(cfg.get_int("samples", 64));
  const int order = static_cast<int>(cfg.get_int("order", 5));
  const FieldForm form = parse_form(cfg.get_string("form", "graph"));
  cfg.finish();

  std::string lines;
  for (const double lam : grid) {
    try {
      const ReducedVectorField vf = parameterized_reduction(Rational(lam), order, form);
      const BlockClassification c = classify_block(vf, r, samples);
      // The radial certificate only exists where the field is radial.
      std::optional<double> r_star;
      if (form == FieldForm::Graph || order == 3) {
        if (const auto circle = invariant_circle(vf)) r_star = circle->r_star;
      }
      lines += io::classification_row_json(c, r_star) + "\n";
      std::cerr << "classify: lambda=" << io::fmt17(lam) << " verdict="
                << to_string(c.verdict) << "\n";
    } catch (const std::exception& e) {
      ordered_json row;
      row["lambda"] = lam;
      row["error"] = e.what();
      lines += row.dump() + "\n";
      std::cerr << "classify: lambda=" << io::fmt17(lam) << " error: " << e.what() << "\n";
    }
  }

  const auto dir = prepare_out_dir(out);
  write_file(dir / "classify.jsonl", lines);
  std::cerr << "classify: wrote " << (dir / "classify.jsonl").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bifurcation analysis for a fourth-order pattern-forming equation"};
  app.require_subcommand(1);

  int verify_order = 5;
  bool perturb_alpha1 = false;
  CLI::App* verify = app.add_subcommand("verify", "Exact-arithmetic coefficient checks");
  verify->add_option("--order", verify_order, "Reduction order (3 or 5)")
      ->check(CLI::IsMember({3, 5}));
  verify->add_flag("--perturb-alpha1", perturb_alpha1,
                   "Inject a fault into alpha1 (test only)");

  std::string config_path, out_dir = ".";
  std::optional<int> order_flag;
  std::optional<std::uint64_t> seed_flag;

  CLI::App* reduce = app.add_subcommand("reduce", "Write the center manifold and reduced field");
  CLI::App* sweep = app.add_subcommand("sweep", "Attractor sweep over a parameter grid");
  CLI::App* simulate = app.add_subcommand("simulate", "Integrate one trajectory");
  CLI::App* classify = app.add_subcommand("classify", "Disk-block verdicts over a grid");
  for (CLI::App* sub : {reduce, sweep, simulate, classify}) {
    sub->add_option("--config", config_path, "Key-value configuration file")->required();
    sub->add_option("--out", out_dir, "Output directory");
  }
  reduce->add_option("--order", order_flag, "Override the configured reduction order")
      ->check(CLI::IsMember({3, 5}));
  sweep->add_option("--seed", seed_flag, "Override the configured initial-condition seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (verify->parsed()) return cmd_verify(verify_order, perturb_alpha1);
    if (reduce->parsed()) return cmd_reduce(config_path, out_dir, order_flag);
    if (sweep->parsed()) return cmd_sweep(config_path, out_dir, seed_flag);
    if (simulate->parsed()) return cmd_simulate(config_path, out_dir);
    if (classify->parsed()) return cmd_classify(config_path, out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
