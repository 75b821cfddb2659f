#include "gke/cli.hpp"

#include <cstdio>
#include <iostream>
#include <sstream>
#include <utility>

#include "CLI11.hpp"

#include "gke/errors.hpp"
#include "gke/generate.hpp"
#include "gke/io.hpp"
#include "gke/log.hpp"
#include "gke/suite.hpp"

namespace gke {
namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string token;
  std::istringstream in(s);
  while (std::getline(in, token, sep)) out.push_back(token);
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(what + ": not a number: \"" + s + "\"");
  }
}

SpectrumBounds parse_spectrum(const std::string& spec) {
  const std::vector<std::string> parts = split(spec, ',');
  if (parts.size() != 2) throw ConfigError("--spectrum needs the form m,M, got \"" + spec + "\"");
  const double m = parse_double(parts[0], "--spectrum");
  const double M = parse_double(parts[1], "--spectrum");
  if (!(m > 0.0 && m < M)) throw ConfigError("--spectrum needs 0 < m < M, got \"" + spec + "\"");
  return SpectrumBounds(m, M);
}

std::vector<double> parse_weights(const std::string& spec) {
  std::vector<double> w;
  for (const std::string& part : split(spec, ',')) w.push_back(parse_double(part, "--weights"));
  if (w.empty()) throw ConfigError("--weights is empty");
  double total = 0.0;
  for (double v : w) {
    if (!(v > 0.0)) throw ConfigError("--weights entries must be positive");
    total += v;
  }
  for (double& v : w) v /= total;
  return w;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
  } else {
    write_text_file(path, text);
  }
}

}  // namespace

std::vector<std::string> resolve_suite_ids(const std::string& spec) {
  if (spec.empty() || spec == "all") return all_check_ids();
  std::vector<std::string> out;
  for (const std::string& token : split(spec, ',')) {
    if (token.empty()) throw ConfigError("--suite has an empty entry");
    if (is_check_id(token)) {
      out.push_back(token);
      continue;
    }
    std::vector<std::string> matches;
    for (const auto& id : all_check_ids()) {
      if (id.rfind(token, 0) == 0) matches.push_back(id);
    }
    if (matches.size() == 1) {
      out.push_back(matches.front());
    } else if (matches.empty()) {
      std::string known;
      for (const auto& id : all_check_ids()) known += (known.empty() ? "" : ", ") + id;
      throw ConfigError("--suite: unknown check \"" + token + "\" (known: " + known + ")");
    } else {
      std::string hits;
      for (const auto& id : matches) hits += (hits.empty() ? "" : ", ") + id;
      throw ConfigError("--suite: \"" + token + "\" is ambiguous (" + hits + ")");
    }
  }
  return out;
}

std::string format_report(const std::vector<CheckResult>& results, const std::string& report, bool stable) {
  if (report == "csv") return check_results_csv(results);
  if (report != "json") throw ConfigError("--report must be json or csv, got \"" + report + "\"");
  std::string out;
  for (const auto& r : results) out += check_result_json_line(r, stable);
  return out;
}

int cmd_generate(const RunConfig& cfg) {
  const SpectrumBounds b = parse_spectrum(cfg.spectrum);
  const MatrixEnsemble e = generate_ensemble(cfg.dim, cfg.count, b.m, b.M, cfg.seed);
  emit(cfg.output, ensemble_to_json(e));
  log_info("generated ensemble: k=" + std::to_string(cfg.dim) + " n=" + std::to_string(cfg.count));
  return 0;
}

int cmd_solve(const RunConfig& cfg) {
  if (cfg.input.empty()) throw ConfigError("solve needs --input");
  MatrixEnsemble e = read_ensemble_file(cfg.input);
  if (!cfg.weights.empty()) e = e.reweighted(parse_weights(cfg.weights));
  const Generator g = Generator::parse(cfg.generator);
  SolveOptions opts;
  opts.tol = cfg.tol;
  opts.max_iter = cfg.max_iter;
  const SolveReport report = solve_gke(e, g, opts);
  emit(cfg.output, solve_report_to_json(report));
  char line[160];
  std::snprintf(line, sizeof(line), "%s after %d iterations, residual %.3e (threshold %.3e)",
                report.converged ? "converged" : "stopped", report.iterations, report.final_residual,
                report.tolerance);
  std::cerr << "gke: solve " << line << "\n";
  return report.converged ? 0 : 2;
}

int cmd_verify(const RunConfig& cfg) {
  const SpectrumBounds b = parse_spectrum(cfg.spectrum);
  if (cfg.trials < 0) throw ConfigError("--trials must be nonnegative");
  Generator::parse(cfg.generator);
  if (cfg.report != "json" && cfg.report != "csv") {
    throw ConfigError("--report must be json or csv, got \"" + cfg.report + "\"");
  }
  InstanceRecipe recipe;
  recipe.dim = cfg.dim;
  recipe.count = cfg.count;
  recipe.m = b.m;
  recipe.M = b.M;
  recipe.generator = cfg.generator;
  std::vector<SuiteItem> items;
  for (const auto& id : resolve_suite_ids(cfg.suite)) items.push_back({id, recipe, cfg.trials});
  const std::vector<CheckResult> results = run_suite(items, cfg.seed, Execution::parallel, cfg.tol);
  emit(cfg.output, format_report(results, cfg.report, cfg.stable));
  int failures = 0;
  for (const auto& s : summarize(results)) {
    failures += s.failures;
    char line[200];
    std::snprintf(line, sizeof(line), "%-28s trials=%-4d failures=%-3d min_margin=%.6g", s.check_id.c_str(),
                  s.trials, s.failures, s.min_margin);
    std::cerr << "gke: " << line << "\n";
  }
  return failures == 0 ? 0 : 2;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"positive definite matrix means: generation, solving, inequality verification"};
  app.require_subcommand(1);
  RunConfig cfg;

  CLI::App* gen = app.add_subcommand("generate", "write a seeded random ensemble file");
  gen->add_option("--output", cfg.output, "output path (default stdout)");
  gen->add_option("--dim", cfg.dim, "matrix dimension k")->capture_default_str();
  gen->add_option("--count", cfg.count, "number of matrices n")->capture_default_str();
  gen->add_option("--spectrum", cfg.spectrum, "eigenvalue range m,M")->capture_default_str();
  gen->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();

  CLI::App* solve = app.add_subcommand("solve", "solve the mean equation for an ensemble file");
  solve->add_option("--input", cfg.input, "ensemble JSON path")->required();
  solve->add_option("--output", cfg.output, "report path (default stdout)");
  solve->add_option("--generator", cfg.generator, "log | affine | harmonic | power:T")->capture_default_str();
  solve->add_option("--weights", cfg.weights, "override weights (comma list, normalized)");
  solve->add_option("--tol", cfg.tol, "solver tolerance (0 selects the default)");
  solve->add_option("--max-iter", cfg.max_iter, "iteration budget")->capture_default_str();

  CLI::App* verify = app.add_subcommand("verify", "run inequality checks and write a report");
  verify->add_option("--output", cfg.output, "report path (default stdout)");
  verify->add_option("--suite", cfg.suite, "all or comma list of check ids")->capture_default_str();
  verify->add_option("--trials", cfg.trials, "trials per check")->capture_default_str();
  verify->add_option("--seed", cfg.seed, "suite seed")->capture_default_str();
  verify->add_option("--dim", cfg.dim, "matrix dimension k")->capture_default_str();
  verify->add_option("--count", cfg.count, "matrices per ensemble n")->capture_default_str();
  verify->add_option("--spectrum", cfg.spectrum, "eigenvalue range m,M")->capture_default_str();
  verify->add_option("--generator", cfg.generator, "log | affine | harmonic | power:T")->capture_default_str();
  verify->add_option("--tol", cfg.tol, "comparison tolerance (0 selects per-check defaults)");
  verify->add_option("--report", cfg.report, "json | csv")->capture_default_str();
  verify->add_flag("--stable", cfg.stable, "omit timing fields so reports compare byte-identically");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) {
      cfg.command = "generate";
      return cmd_generate(cfg);
    }
    if (solve->parsed()) {
      cfg.command = "solve";
      return cmd_solve(cfg);
    }
    cfg.command = "verify";
    return cmd_verify(cfg);
  } catch (const SolverError& e) {
    std::cerr << "gke: " << e.what() << "\n";
    return cfg.command == "verify" ? 3 : 2;
  } catch (const Error& e) {
    std::cerr << "gke: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "gke: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace gke
