#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "relfix/instance.hpp"
#include "relfix/random_instance.hpp"
#include "relfix/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMathFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitNonConvergence = 3;

std::size_t worker_count() {
  if (const char* env = std::getenv("RELFIX_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return 1;
}

relfix::ReportFormat parse_format(const std::string& text) {
  return text == "machine" ? relfix::ReportFormat::machine : relfix::ReportFormat::text;
}

relfix::FiniteInstance& as_finite(relfix::Instance& instance) {
  auto* f = std::get_if<relfix::FiniteInstance>(&instance);
  if (!f) throw relfix::ParseError("this subcommand needs a finite-mode instance");
  return *f;
}

int cmd_verify(const std::string& path, const std::string& format_text,
               const std::string& require_text) {
  relfix::Instance instance = relfix::load_instance(path);
  relfix::FiniteInstance& fi = as_finite(instance);
  relfix::VerifyOptions options;
  options.workers = worker_count();
  const auto report = relfix::verify(fi.space, fi.pair, fi.relation, fi.contraction, options);
  std::cout << relfix::render_verification(report, fi.space, relfix::instance_digest(instance),
                                           parse_format(format_text));

  if (fi.explicit_form) {
    const auto implicit_route =
        relfix::check_contraction(fi.space, fi.pair, fi.relation, fi.contraction);
    const auto explicit_route =
        relfix::check_contraction(fi.space, fi.pair, fi.relation, *fi.explicit_form);
    if (implicit_route.holds != explicit_route.holds) {
      std::cout << "FORM DISAGREEMENT: explicit and implicit contraction routes differ\n";
      return kExitMathFailure;
    }
    std::cout << "explicit/implicit contraction routes agree\n";
  }

  relfix::ConclusionRank require = fi.options.require;
  if (!require_text.empty()) {
    const auto parsed = relfix::rank_from_string(require_text);
    if (!parsed) throw relfix::ParseError("unknown conclusion rank '" + require_text + "'");
    require = *parsed;
  }
  if (!report.cross_check_ok) return kExitMathFailure;
  return report.rank >= require ? kExitOk : kExitMathFailure;
}

int cmd_solve(const std::string& path, const std::string& format_text, const std::string& x0_label,
              double tol_override, long max_iter_override) {
  relfix::Instance instance = relfix::load_instance(path);
  relfix::FiniteInstance& fi = as_finite(instance);
  const auto format = parse_format(format_text);

  std::optional<std::size_t> x0 = fi.options.x0;
  if (!x0_label.empty()) {
    x0 = fi.space.index_of(x0_label);
    if (!x0) throw relfix::ParseError("unknown label '" + x0_label + "'");
  }
  if (!x0) {
    x0 = relfix::find_start(fi.pair, fi.relation);
    if (!x0) {
      std::cout << "no admissible starting point: no x with (gx, Tx) related\n";
      return kExitMathFailure;
    }
  }
  const double tol = tol_override >= 0.0 ? tol_override : fi.options.tol;
  const std::size_t max_iter =
      max_iter_override >= 0 ? static_cast<std::size_t>(max_iter_override) : fi.options.max_iter;

  const auto result = relfix::iterate(fi.space, fi.pair, *x0, tol, max_iter);
  relfix::BoundCheck bounds;
  if (fi.contraction.phi()) bounds = relfix::error_bounds(result.trace, *fi.contraction.phi());
  std::cout << relfix::render_trace(result.trace, fi.space, fi.pair, format,
                                    bounds.observed_vs_bound);
  if (result.status == relfix::SolveStatus::preimage_missing) {
    std::cout << "range hypothesis violated at " << fi.space.label(*result.failure_point)
              << ": T-image has no g-preimage\n";
    return kExitMathFailure;
  }
  if (result.status == relfix::SolveStatus::max_iter_exceeded) {
    std::cout << "did not converge within " << max_iter << " iterations; last residual "
              << (result.trace.residuals.empty() ? 0.0 : result.trace.residuals.back()) << "\n";
    return kExitNonConvergence;
  }
  std::cout << relfix::render_certificate(*result.certificate, fi.space);
  if (fi.contraction.phi())
    std::cout << "residual bounds " << (bounds.holds ? "hold" : "FAIL") << " along the trace\n";

  const std::size_t w = result.certificate->points.front();
  const std::size_t gw = fi.pair.g_of(w);
  const relfix::Certificate poc{relfix::CertificateKind::point_of_coincidence,
                                {gw},
                                result.certificate->residual,
                                "value g " + fi.space.label(w) + " = T " + fi.space.label(w)};
  std::cout << relfix::render_certificate(poc, fi.space);
  const auto promoted = relfix::promote_to_common_fixed_point(fi.space, fi.pair, w, tol);
  std::cout << relfix::render_certificate(promoted, fi.space);
  return kExitOk;
}

int cmd_path(const std::string& path, const std::string& alpha_label,
             const std::string& beta_label, bool no_interior, bool raw, long max_len) {
  relfix::Instance instance = relfix::load_instance(path);
  relfix::FiniteInstance& fi = as_finite(instance);
  const auto alpha = fi.space.index_of(alpha_label);
  const auto beta = fi.space.index_of(beta_label);
  if (!alpha || !beta) throw relfix::ParseError("unknown endpoint label");

  const auto g_img = fi.pair.g_image();
  const relfix::Relation base =
      raw ? fi.relation.symmetric_closure()
          : fi.relation.restricted_to(g_img).symmetric_closure();
  const std::size_t limit =
      max_len > 0 ? static_cast<std::size_t>(max_len) : fi.space.size();

  std::optional<relfix::GPath> found;
  try {
    found = relfix::find_g_path(base, fi.pair.g(), fi.pair.t(), *alpha, *beta, !no_interior,
                                limit);
  } catch (const std::invalid_argument& e) {
    std::cout << e.what() << '\n';
    return kExitMathFailure;
  }
  if (!found) {
    std::cout << "no g-path of length <= " << limit << " joins " << alpha_label << " to "
              << beta_label << '\n';
    return kExitMathFailure;
  }
  std::cout << "g-path of length " << found->length() << ":";
  for (std::size_t w : found->witnesses) std::cout << ' ' << fi.space.label(w);
  std::cout << '\n';
  return kExitOk;
}

int cmd_urysohn(const std::string& path, const std::string& format_text, const std::string& out,
                long grid_override, double tol_override, long max_iter_override) {
  relfix::Instance instance = relfix::load_instance(path);
  auto* ui = std::get_if<relfix::UrysohnInstance>(&instance);
  if (!ui) throw relfix::ParseError("this subcommand needs a urysohn-mode instance");
  if (grid_override > 0) ui->problem.grid_size = static_cast<std::size_t>(grid_override);

  const auto& problem = ui->problem;
  const relfix::GridFunction u0 = relfix::constant_grid_function(problem, 0.0);

  std::vector<relfix::GridFunction> samples;
  samples.push_back(u0);
  samples.push_back(relfix::sample_on_grid(problem, problem.alpha));
  samples.push_back(relfix::sample_on_grid(problem, [](double t) { return t; }));
  samples.push_back(relfix::sample_on_grid(problem, [](double t) { return 0.5 * t + 0.25; }));

  const auto h_report = relfix::check_H(problem, u0, samples);
  std::cout << relfix::render_h_report(h_report, parse_format(format_text));
  if (!h_report.solve_admissible()) {
    std::cout << "the admission conditions fail; not solving\n";
    return kExitMathFailure;
  }

  const double tol = tol_override >= 0.0 ? tol_override : ui->options.tol;
  const std::size_t max_iter = max_iter_override >= 0
                                   ? static_cast<std::size_t>(max_iter_override)
                                   : ui->options.max_iter;
  const auto result = relfix::solve(problem, u0, tol, max_iter);
  std::cout << "iterations: " << result.iterations
            << ", final residual: " << result.residual_history.back() << '\n';
  if (result.status != relfix::SolveStatus::converged) {
    std::cout << "did not converge within " << max_iter << " iterations\n";
    return kExitNonConvergence;
  }

  const std::string out_path = out.empty() ? ui->name + ".solution.txt" : out;
  std::ofstream f(out_path);
  if (!f) throw relfix::ParseError("cannot write '" + out_path + "'");
  const auto nodes = relfix::grid_nodes(problem);
  f.precision(17);
  for (std::size_t i = 0; i < nodes.size(); ++i)
    f << nodes[i] << '\t' << result.solution[i] << '\n';
  std::cout << "solution written to " << out_path << '\n';
  return kExitOk;
}

int cmd_catalog() {
  for (const auto& line : relfix::catalog_listing()) std::cout << line << '\n';
  return kExitOk;
}

int cmd_fuzz(std::uint64_t seed, std::size_t count, std::size_t min_points,
             std::size_t max_points) {
  std::mt19937_64 rng(seed);
  std::size_t verified = 0;
  for (std::size_t i = 0; i < count; ++i) {
    relfix::GeneratorOptions options;
    options.min_points = min_points;
    options.max_points = max_points;
    options.designed_pass = (i % 2 == 0);
    const auto inst = relfix::random_instance(rng, options);
    const auto report = relfix::verify(inst.space, inst.pair, inst.relation, inst.contraction);

    if (report.rank >= relfix::ConclusionRank::coincidence) {
      ++verified;
      if (report.brute.coincidence_points.empty()) {
        std::cout << "SOUNDNESS DEFECT at instance " << i
                  << ": hypotheses hold but no coincidence point exists\n";
        return kExitMathFailure;
      }
    }
    if (!report.cross_check_ok) {
      std::cout << "CROSS-CHECK DEFECT at instance " << i << ": " << report.cross_check_note
                << '\n';
      return kExitMathFailure;
    }

    // The alternatives imply the path condition under the range inclusion (b).
    const bool u1_any = report.hypothesis_holds("u1'") || report.hypothesis_holds("u1''");
    if (u1_any && report.hypothesis_holds("b") && !report.hypothesis_holds("u1")) {
      std::cout << "IMPLICATION DEFECT at instance " << i
                << ": an alternative holds but the path condition fails\n";
      return kExitMathFailure;
    }

    // The sequence-enumeration oracle is exponential in the point count;
    // cross-check it on the small instances only.
    if (inst.space.size() <= 5) {
      const auto characterization =
          relfix::check_compatibility_finite(inst.pair, inst.relation);
      const auto oracle = relfix::compatibility_oracle(inst.space, inst.pair, inst.relation,
                                                       inst.space.size() + 2);
      if (characterization.holds != oracle.holds) {
        std::cout << "COMPATIBILITY DEFECT at instance " << i
                  << ": characterization and oracle disagree\n";
        return kExitMathFailure;
      }
    }
  }
  std::cout << "fuzz sweep clean: " << count << " instances, " << verified
            << " passed full verification\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relational fixed-point toolkit"};
  app.require_subcommand(1);

  std::string file, format = "text", require, x0, alpha, beta, out;
  double tol = -1.0;
  long max_iter = -1, grid = -1, max_len = -1;
  bool no_interior = false, raw = false;
  std::uint64_t seed = 20240901;
  std::size_t count = 100, min_points = 3, max_points = 8;

  auto* verify = app.add_subcommand("verify", "check every hypothesis of an instance");
  verify->add_option("file", file)->required();
  verify->add_option("--report", format, "text|machine");
  verify->add_option("--require", require, "conclusion rank required for exit 0");

  auto* solve = app.add_subcommand("solve", "run the coincidence iteration");
  solve->add_option("file", file)->required();
  solve->add_option("--report", format);
  solve->add_option("--x0", x0, "starting label");
  solve->add_option("--tol", tol);
  solve->add_option("--max-iter", max_iter);

  auto* path_cmd = app.add_subcommand("path", "search for a g-path between two points");
  path_cmd->add_option("file", file)->required();
  path_cmd->add_option("alpha", alpha)->required();
  path_cmd->add_option("beta", beta)->required();
  path_cmd->add_flag("--no-interior", no_interior, "drop the interior condition");
  path_cmd->add_flag("--raw", raw, "search the full relation, not its g-image restriction");
  path_cmd->add_option("--max-len", max_len);

  auto* urysohn = app.add_subcommand("urysohn", "solve an integral-equation instance");
  urysohn->add_option("file", file)->required();
  urysohn->add_option("--report", format);
  urysohn->add_option("--out", out, "solution file path");
  urysohn->add_option("--grid", grid, "override the grid size");
  urysohn->add_option("--tol", tol);
  urysohn->add_option("--max-iter", max_iter);

  auto* catalog = app.add_subcommand("catalog", "list contraction forms and constraints");

  auto* fuzz = app.add_subcommand("fuzz", "random-instance soundness sweep");
  fuzz->add_option("file", file, "optional seed file");
  fuzz->add_option("--seed", seed);
  fuzz->add_option("--count", count);
  fuzz->add_option("--min-points", min_points);
  fuzz->add_option("--max-points", max_points);

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return cmd_verify(file, format, require);
    if (solve->parsed()) return cmd_solve(file, format, x0, tol, max_iter);
    if (path_cmd->parsed()) return cmd_path(file, alpha, beta, no_interior, raw, max_len);
    if (urysohn->parsed()) return cmd_urysohn(file, format, out, grid, tol, max_iter);
    if (catalog->parsed()) return cmd_catalog();
    if (fuzz->parsed()) {
      if (!file.empty()) {
        // File values apply where no explicit flag was given.
        std::ifstream in(file);
        if (!in) throw relfix::ParseError("cannot open '" + file + "'");
        std::ostringstream buffer;
        buffer << in.rdbuf();
        auto j = nlohmann::json::parse(buffer.str());
        if (j.contains("seed") && fuzz->count("--seed") == 0)
          seed = j["seed"].get<std::uint64_t>();
        if (j.contains("count") && fuzz->count("--count") == 0)
          count = j["count"].get<std::size_t>();
        if (j.contains("min_points") && fuzz->count("--min-points") == 0)
          min_points = j["min_points"].get<std::size_t>();
        if (j.contains("max_points") && fuzz->count("--max-points") == 0)
          max_points = j["max_points"].get<std::size_t>();
      }
      return cmd_fuzz(seed, count, min_points, max_points);
    }
  } catch (const relfix::ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMathFailure;
  }
  return kExitInputError;
}
