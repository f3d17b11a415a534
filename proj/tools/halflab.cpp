// Command line front end: validation, Cauchy data spaces, indices, theorem
// batteries, worked examples and decay scans. Reports are deterministic JSON;
// scans are CSV. Exit status 0 means every residual vanished and every
// tolerance held, 1 means a numerical check failed, 2 means bad usage.
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "halfline/io.hpp"

namespace {

using namespace halfline;

std::string resolve_out(const std::string& name) {
  const char* dir = std::getenv("OUTPUT_DIR");
  if (dir == nullptr || name.empty() || name.front() == '/') return name;
  return std::string(dir) + "/" + name;
}

void emit(const nlohmann::json& report, const std::string& out) {
  std::string text = dump_deterministic(report);
  if (out.empty()) {
    std::cout << text;
  } else {
    write_text_file(resolve_out(out), text);
  }
}

int run_validate(const std::string& file) {
  nlohmann::json j = read_json_file(file);
  DiracData raw = dirac_from_json(j);
  DiracValidation val = validate_dirac_data(raw.a0, raw.gamma, raw.alpha,
                                            raw.tol > 0 ? raw.tol : -1.0);
  nlohmann::json report;
  report["ok"] = val.ok();
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : val.violations) {
    nlohmann::json item;
    item["relation"] = v.relation;
    item["residual"] = v.residual;
    violations.push_back(item);
  }
  report["violations"] = violations;
  emit(report, "");
  return val.ok() ? 0 : 2;
}

int run_calderon(const std::string& config_file, int steps, const std::string& out) {
  CoefficientPath path = path_from_config(read_json_file(config_file));
  CalderonPair cp = calderon_subspaces(path, {steps, 16});
  emit(to_json(cp), out);
  bool ok = cp.duality_residual <= 1e-8 && cp.cross_check <= 1e-6;
  return ok ? 0 : 1;
}

int run_index(const std::string& config_file, const std::string& condition_file,
              bool use_aps, double aps_level, int steps, const std::string& out) {
  CoefficientPath path = path_from_config(read_json_file(config_file));
  CalderonPair cp = calderon_subspaces(path, {steps, 16});
  BoundaryCondition b =
      use_aps ? aps_condition(path.d, aps_level, true)
              : condition_from_json(read_json_file(condition_file));
  IndexReport rep = ext_index(path.d, b, cp);
  emit(to_json(rep), out);
  return rep.max_residual() == 0.0 ? 0 : 1;
}

int run_verify(const std::string& theorem, const VerifyOptions& opt,
               const std::string& out) {
  std::vector<VerifySummary> sums;
  if (theorem == "windgen") sums.push_back(verify_windgen(opt));
  else if (theorem == "agranovich-dynin") sums.push_back(verify_agranovich_dynin(opt));
  else if (theorem == "duality") sums.push_back(verify_duality(opt));
  else if (theorem == "adjoint-sum") sums.push_back(verify_adjoint_sum(opt));
  else if (theorem == "cobordism") sums.push_back(verify_cobordism(opt));
  else if (theorem == "bojarski") sums.push_back(verify_bojarski(opt));
  else if (theorem == "splitting") sums.push_back(verify_splitting(opt));
  else if (theorem == "susy") sums.push_back(verify_susy(opt));
  else if (theorem == "appendix") sums.push_back(verify_appendix(opt));
  else if (theorem == "trace-bounds")
    sums.push_back(verify_trace_bounds(opt.draws * 10, opt.seed));
  else if (theorem == "all") sums = verify_all(opt);
  else {
    std::cerr << "unknown theorem: " << theorem << "\n";
    return 2;
  }
  nlohmann::json report = nlohmann::json::array();
  bool ok = true;
  for (const auto& s : sums) {
    report.push_back(to_json(s));
    ok = ok && s.ok();
  }
  emit(report, out);
  return ok ? 0 : 1;
}

int run_example(const std::string& name, int K, double mu, const std::string& out) {
  nlohmann::json report;
  bool ok = true;
  if (name == "hyperbolic-even") {
    EvenModelReport rep = hyperbolic_even_model(K);
    report["K"] = rep.K;
    report["r"] = rep.r;
    report["predicted_count"] = rep.predicted_count;
    report["computed_count"] = rep.computed_count;
    report["duality_residual"] = rep.duality_residual;
    report["analytic_residual"] = rep.analytic_residual;
    ok = rep.ok() && rep.analytic_residual <= 1e-6;
  } else if (name == "hyperbolic-odd") {
    OddModelReport rep = hyperbolic_odd_model(K);
    report["K"] = rep.K;
    report["horizons"] = rep.horizons;
    report["slopes"] = rep.slopes;
    report["offsets_measured"] = rep.offsets_measured;
    report["offsets_predicted"] = rep.offsets_predicted;
    report["exactness_residual"] = rep.exactness_residual;
    for (double s : rep.slopes) ok = ok && std::abs(s - 1.0) <= 0.05;
    ok = ok && rep.exactness_residual <= 1e-8;
  } else if (name == "mu") {
    MuModelReport rep = mu_model(mu);
    report["mu"] = rep.mu;
    report["plus_solution_l2"] = rep.plus_solution_l2;
    report["c_max_dim"] = rep.c_max_dim;
    report["c_ext_dim"] = rep.c_ext_dim;
    report["ode_residual"] = rep.ode_residual;
    report["horizons"] = rep.horizons;
    report["masses"] = rep.masses;
    ok = rep.ode_residual <= 1e-4;
  } else {
    std::cerr << "unknown example: " << name << "\n";
    return 2;
  }
  emit(report, out);
  return ok ? 0 : 1;
}

int run_scan(int K, double coupling, double r, std::vector<double> lambdas,
             std::vector<double> s_values, int steps, const std::string& csv_out,
             const std::string& out) {
  CoefficientPath path = cylinder_family(K, coupling, r);
  CalderonPair cp = calderon_subspaces(path, {steps, 16});
  SpectralDecomposition dec = eigendecompose(path.d);
  std::vector<ScanRow> rows = decay_scan(cp.c_ext, dec, lambdas, s_values);
  std::string csv = scan_csv(rows);
  if (csv_out.empty()) {
    std::cout << csv;
  } else {
    write_text_file(resolve_out(csv_out), csv);
  }

  std::vector<SlopeFit> fits = fit_decay_slopes(rows);
  nlohmann::json report;
  report["duality_residual"] = cp.duality_residual;
  nlohmann::json jfits = nlohmann::json::array();
  bool ok = cp.duality_residual <= 1e-6;
  for (const auto& f : fits) {
    nlohmann::json jf;
    jf["s"] = f.s;
    jf["slope_mid"] = f.mid_zero ? "identically zero" : nlohmann::json(f.slope_mid);
    jf["slope_far"] = f.far_zero ? "identically zero" : nlohmann::json(f.slope_far);
    jf["bound_mid"] = -0.5 - f.s + 0.3;
    jf["bound_far"] = -1.0 + 0.3;
    jfits.push_back(jf);
    ok = ok && (f.mid_zero || f.slope_mid <= -0.5 - f.s + 0.3) &&
         (f.far_zero || f.slope_far <= -1.0 + 0.3);
  }
  report["fits"] = jfits;
  if (!out.empty()) emit(report, out);
  else emit(report, "");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite dimensional laboratory for half line boundary problems"};
  app.require_subcommand(1);

  auto* validate = app.add_subcommand("validate", "check structural relations of a system");
  std::string validate_file;
  validate->add_option("--file", validate_file, "system JSON file")->required();

  auto* calderon = app.add_subcommand("calderon", "compute the Cauchy data spaces");
  std::string calderon_config, calderon_out;
  int calderon_steps = 2048;
  calderon->add_option("--path", calderon_config, "coefficient path config")->required();
  calderon->add_option("--steps", calderon_steps, "integrator steps");
  calderon->add_option("--out", calderon_out, "output JSON file");

  auto* index = app.add_subcommand("index", "index of a boundary condition");
  std::string index_config, index_condition, index_out;
  double index_aps = 0.0;
  int index_steps = 2048;
  index->add_option("--path", index_config, "coefficient path config")->required();
  auto* cond_opt = index->add_option("--condition", index_condition,
                                     "boundary condition JSON file");
  auto* aps_opt = index->add_option("--aps", index_aps,
                                    "spectral cut condition at this level");
  index->add_option("--steps", index_steps, "integrator steps");
  index->add_option("--out", index_out, "output JSON file");

  auto* verify = app.add_subcommand("verify", "randomised identity batteries");
  std::string verify_theorem, verify_out;
  VerifyOptions vopt;
  verify->add_option("theorem", verify_theorem,
                     "windgen | agranovich-dynin | duality | adjoint-sum | cobordism"
                     " | bojarski | splitting | susy | appendix | trace-bounds | all")
      ->required();
  verify->add_option("--dims", vopt.dims, "system dimensions to cycle")->delimiter(',');
  verify->add_option("--draws", vopt.draws, "number of draws");
  verify->add_option("--seed", vopt.seed, "master seed");
  verify->add_option("--coupling", vopt.coupling, "potential bump strength");
  verify->add_option("--steps", vopt.steps, "integrator steps for coupled draws");
  verify->add_option("--out", verify_out, "output JSON file");

  auto* example = app.add_subcommand("example", "worked closed form families");
  std::string example_name, example_out;
  int example_K = 4;
  double example_mu = 1.0;
  example->add_option("name", example_name, "hyperbolic-even | hyperbolic-odd | mu")
      ->required();
  example->add_option("--K", example_K, "number of blocks");
  example->add_option("--mu", example_mu, "decay exponent for the mu family");
  example->add_option("--out", example_out, "output JSON file");

  auto* scan = app.add_subcommand("scan", "graph decay scan over spectral levels");
  int scan_K = 64, scan_steps = 8192;
  double scan_coupling = 0.5, scan_r = 1.0;
  std::vector<double> scan_lambdas = {4, 8, 16, 32};
  std::vector<double> scan_s = {-0.5, 0.0, 0.5};
  std::string scan_csv_out, scan_json_out;
  scan->add_option("--K", scan_K, "modes per chirality");
  scan->add_option("--coupling", scan_coupling, "potential strength");
  scan->add_option("--r", scan_r, "support of the potential");
  scan->add_option("--lambdas", scan_lambdas, "levels")->delimiter(',');
  scan->add_option("--s", scan_s, "weights")->delimiter(',');
  scan->add_option("--steps", scan_steps, "integrator steps");
  scan->add_option("--csv", scan_csv_out, "output CSV file");
  scan->add_option("--out", scan_json_out, "output JSON file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return run_validate(validate_file);
    if (calderon->parsed()) return run_calderon(calderon_config, calderon_steps, calderon_out);
    if (index->parsed()) {
      if (cond_opt->count() == 0 && aps_opt->count() == 0) {
        std::cerr << "index: pass either --condition or --aps\n";
        return 2;
      }
      return run_index(index_config, index_condition, aps_opt->count() > 0, index_aps,
                       index_steps, index_out);
    }
    if (verify->parsed()) return run_verify(verify_theorem, vopt, verify_out);
    if (example->parsed()) return run_example(example_name, example_K, example_mu, example_out);
    if (scan->parsed())
      return run_scan(scan_K, scan_coupling, scan_r, scan_lambdas, scan_s, scan_steps,
                      scan_csv_out, scan_json_out);
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "json error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
