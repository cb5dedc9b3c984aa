// Acceptance suite: one pass/fail line per criterion, exit code equal to the
// number of failed criteria. Each criterion pins its tolerances in code.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "relfix/instance.hpp"
#include "relfix/random_instance.hpp"
#include "relfix/urysohn.hpp"
#include "relfix/verifier.hpp"

using namespace relfix;

namespace {

int failures = 0;

struct Criterion {
  int number;
  std::string what;
  std::ostringstream detail;
  std::vector<std::string> problems;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  Criterion(int n, std::string description) : number(n), what(std::move(description)) {}

  void require(bool ok, const std::string& message) {
    if (!ok) problems.push_back(message);
  }

  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }

  void finish(double time_budget_seconds) {
    const double elapsed = seconds();
    if (time_budget_seconds > 0.0 && elapsed > time_budget_seconds)
      problems.push_back("runtime " + std::to_string(elapsed) + "s exceeds budget " +
                         std::to_string(time_budget_seconds) + "s");
    if (problems.empty()) {
      std::cout << "[PASS] criterion " << number << ": " << what;
    } else {
      ++failures;
      std::cout << "[FAIL] criterion " << number << ": " << what;
    }
    std::cout << " (" << elapsed << "s)\n";
    const std::string extra = detail.str();
    if (!extra.empty()) std::cout << "       " << extra << "\n";
    for (const auto& p : problems) std::cout << "       problem: " << p << "\n";
  }
};

std::string fixture(const std::string& name) {
  return std::string(RELFIX_FIXTURE_DIR) + "/" + name;
}

FiniteInstance load_finite(const std::string& name) {
  Instance instance = load_instance(fixture(name));
  return std::move(std::get<FiniteInstance>(instance));
}

void criterion_1() {
  Criterion c(1, "four-point fixture reproduction (verify + solve + unique common fixed point)");
  const FiniteInstance fi = load_finite("example-5-2.json");
  const auto report = verify(fi.space, fi.pair, fi.relation, fi.contraction);
  for (const char* id : {"a", "b", "c", "d", "e1", "e2", "u1", "u2"})
    c.require(report.hypothesis_holds(id), std::string("hypothesis ") + id + " does not hold");
  c.require(report.rank == ConclusionRank::common_fixed_point_unique,
            "rank is not common-fixed-point-unique");
  c.require(report.cross_check_ok, "brute-force cross-check failed");

  const auto x0 = fi.space.index_of("0.5");
  c.require(x0.has_value(), "fixture lacks the 0.5 start");
  const auto solved = iterate(fi.space, fi.pair, *x0, 1e-10, 100000);
  c.require(solved.status == SolveStatus::converged, "iteration did not converge");
  c.require(solved.trace.steps() <= 3, "iteration needed more than 3 steps");
  c.require(solved.certificate && solved.certificate->residual == 0.0,
            "coincidence residual is not exactly 0");

  const auto cfp =
      promote_to_common_fixed_point(fi.space, fi.pair, solved.certificate->points.front(), 1e-12);
  c.require(cfp.kind == CertificateKind::common_fixed_point, "promotion failed");
  c.require(!cfp.points.empty() && fi.space.label(cfp.points.front()) == "0",
            "common fixed point is not 0");
  c.require(cfp.residual <= 1e-12, "common fixed point residual exceeds 1e-12");
  c.require(report.brute.common_fixed_points.size() == 1 &&
                fi.space.label(report.brute.common_fixed_points.front()) == "0",
            "brute force does not confirm the unique common fixed point 0");
  c.finish(1.0);
}

void criterion_2() {
  Criterion c(2, "negative control: the Banach form fails at the pair (1, 2) for k in {0.5, 0.9, 0.99}");
  const FiniteInstance fi = load_finite("example-5-2.json");
  for (double k : {0.5, 0.9, 0.99}) {
    const auto g = make_catalog(CatalogId::I, {{"k", k}});
    const auto check = check_contraction(fi.space, fi.pair, fi.relation, g);
    c.require(!check.holds, "check holds for k = " + std::to_string(k));
    const bool witness_ok = check.witness && fi.space.label(check.witness->first) == "1" &&
                            fi.space.label(check.witness->second) == "2";
    c.require(witness_ok, "witness pair is not (1, 2) for k = " + std::to_string(k));
    if (check.witness)
      c.require(std::fabs(check.witness_value - (1.0 - k)) <= 1e-12,
                "the violation margin is not 1 - k");
  }
  c.finish(1.0);
}

void criterion_3() {
  Criterion c(3, "squaring fixture reproduction (continuity branch, unique common fixed point 0)");
  const FiniteInstance fi = load_finite("example-5-1.json");
  const auto report = verify(fi.space, fi.pair, fi.relation, fi.contraction);
  for (const char* id : {"a", "b", "c", "d", "e1", "e2"})
    c.require(report.hypothesis_holds(id), std::string("hypothesis ") + id + " does not hold");
  c.require(report.hypothesis_holds("e2.continuity"),
            "the continuous-T,g branch is not recorded as holding");
  c.require(report.rank == ConclusionRank::common_fixed_point_unique,
            "rank is not common-fixed-point-unique");
  c.require(report.cross_check_ok, "brute-force cross-check failed");
  c.require(report.brute.common_fixed_points.size() == 1 &&
                fi.space.label(report.brute.common_fixed_points.front()) == "0",
            "unique common fixed point is not 0");

  const auto x0 = find_start(fi.pair, fi.relation);
  c.require(x0.has_value() && fi.space.label(*x0) == "0", "admissible start is not 0");
  const auto solved = iterate(fi.space, fi.pair, *x0, 1e-12, 100);
  c.require(solved.status == SolveStatus::converged && solved.certificate->residual <= 1e-12,
            "coincidence at 0 not reproduced within 1e-12");
  const auto cfp =
      promote_to_common_fixed_point(fi.space, fi.pair, solved.certificate->points.front(), 1e-12);
  c.require(cfp.kind == CertificateKind::common_fixed_point &&
                fi.space.label(cfp.points.front()) == "0",
            "promotion does not reach the common fixed point 0");
  c.finish(1.0);
}

void criteria_4_and_5() {
  Criterion c4(4, "residual bound suite over 500 verified random instances");
  Criterion c5(5, "alternative path hypotheses imply the path condition on the same instances");
  std::mt19937_64 rng(20240901);
  GeneratorOptions options;
  options.designed_pass = true;
  std::size_t checked_bounds = 0, alt_instances = 0;
  for (std::size_t i = 0; i < 500; ++i) {
    const auto inst = random_instance(rng, options);
    const auto report = verify(inst.space, inst.pair, inst.relation, inst.contraction);
    if (report.rank < ConclusionRank::coincidence) {
      c4.require(false, "designed instance " + std::to_string(i) + " failed verification");
      continue;
    }

    const auto x0 = find_start(inst.pair, inst.relation);
    if (!x0) {
      c4.require(false, "instance " + std::to_string(i) + " lost its starting point");
      continue;
    }
    const auto solved = iterate(inst.space, inst.pair, *x0, 1e-10, 100000);
    if (solved.status != SolveStatus::converged) {
      c4.require(false, "instance " + std::to_string(i) + " did not converge");
      continue;
    }
    if (!inst.contraction.phi() || !inst.contraction.phi()->is_linear()) {
      c4.require(false, "instance " + std::to_string(i) + " lacks a linear comparison function");
      continue;
    }
    const auto bounds = error_bounds(solved.trace, *inst.contraction.phi());
    if (!bounds.holds)
      c4.require(false, "instance " + std::to_string(i) + " violates the residual bound");
    ++checked_bounds;

    const std::size_t limit = solved.certificate->points.front();
    const auto brute = brute_force_coincidence(inst.pair);
    const bool in_c = std::find(brute.coincidence_points.begin(), brute.coincidence_points.end(),
                                limit) != brute.coincidence_points.end();
    if (!in_c)
      c4.require(false,
                 "instance " + std::to_string(i) + " limit is outside the coincidence set");

    const bool alt = report.hypothesis_holds("u1'") || report.hypothesis_holds("u1''");
    if (alt) {
      ++alt_instances;
      if (!report.hypothesis_holds("u1"))
        c5.require(false, "instance " + std::to_string(i) +
                              " satisfies an alternative but not the path condition");
    }
  }
  c4.detail << "bound-checked traces: " << checked_bounds;
  c4.require(checked_bounds == 500, "fewer than 500 instances were bound-checked");
  c4.finish(30.0);
  c5.detail << "instances with an alternative hypothesis: " << alt_instances;
  c5.require(alt_instances >= 100, "too few instances exercised the alternatives");
  c5.finish(30.0);
}

void criterion_6() {
  Criterion c(6, "catalog conformance on the grid {0, 0.1, ..., 10}^2");
  const auto grid = default_check_grid();

  const std::vector<std::pair<CatalogId, Params>> cases = {
      {CatalogId::I, {{"k", 0.9}}},
      {CatalogId::II, {}},
      {CatalogId::III, {{"k", 0.4}}},
      {CatalogId::IV, {{"k", 0.4}}},
      {CatalogId::V, {{"a1", 0.3}, {"a2", 0.2}, {"a3", 0.1}}},
      {CatalogId::VI, {{"k", 0.8}, {"L", 1.5}}},
      {CatalogId::VII, {{"k", 0.8}, {"L", 1.5}}},
      {CatalogId::VIII, {{"k", 0.45}}},
      {CatalogId::IX, {{"a1", 0.5}, {"a2", 0.02}, {"a3", 0.02}, {"a4", 0.02}, {"a5", 0.02}}},
      {CatalogId::X, {{"k", 0.8}}},
      {CatalogId::XI, {{"k", 0.7}, {"a", 0.3}, {"b", 0.2}}},
      {CatalogId::XII, {{"a1", 0.4}, {"a2", 0.2}, {"a3", 0.2}, {"a4", 0.3}}},
      {CatalogId::XIII, {{"k", 0.8}}},
      {CatalogId::XIV, {{"a1", 0.5}, {"a2", 0.2}, {"a3", 0.3}}},
      {CatalogId::XV, {{"k", 0.05}}},
      {CatalogId::XVI, {{"a1", 1.5}, {"a2", 0.7}}},
  };
  for (const auto& [id, params] : cases) {
    try {
      const auto g = make_catalog(id, params,
                                  id == CatalogId::II
                                      ? std::optional(ComparisonFunction::linear(0.7))
                                      : std::nullopt);
      if (!check_g1(g, grid).holds)
        c.require(false, std::string("catalog ") + to_string(id) + " fails the g1 check");
      if (!check_g2(g, grid).holds)
        c.require(false, std::string("catalog ") + to_string(id) + " fails the g2 check");
    } catch (const std::exception& e) {
      c.require(false, std::string("catalog ") + to_string(id) + " rejected: " + e.what());
    }
  }

  auto rejected = [](auto&& build) {
    try {
      build();
      return false;
    } catch (const std::invalid_argument&) {
      return true;
    }
  };
  c.require(rejected([] { make_catalog(CatalogId::I, {{"k", 1.0}}); }),
            "k = 1 is not rejected for form I");
  c.require(rejected([] { make_catalog(CatalogId::XV, {{"k", 1.0 / 11.0}}); }),
            "k = 1/11 is not rejected for form XV");
  c.require(rejected([] { make_catalog(CatalogId::XVI, {{"a1", 2.0}, {"a2", 0.5}}); }),
            "a1 = 2 is not rejected for form XVI");

  const auto quotient = make_quotient_ratio(ComparisonFunction::linear(0.7));
  const auto g3 = check_g3(quotient, grid);
  c.require(!g3.holds, "the quotient form does not fail the g3 check");
  c.require(g3.witness_r.has_value(), "no failing grid point recorded for the quotient form");
  c.finish(10.0);
}

void criterion_7() {
  Criterion c(7, "integral-equation desk problem (convergence, accuracy, grid refinement)");
  Instance instance = load_instance(fixture("desk-volterra.json"));
  auto& ui = std::get<UrysohnInstance>(instance);
  c.require(ui.problem.grid_size == 200, "fixture grid is not 200");

  auto run = [](const UrysohnProblem& p, double tol, std::size_t max_iter) {
    const auto u0 = constant_grid_function(p, 0.0);
    return solve(p, u0, tol, max_iter);
  };
  auto sup_error = [](const UrysohnProblem& p, const GridFunction& u) {
    const auto nodes = grid_nodes(p);
    double worst = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      worst = std::max(worst, std::fabs(u[i] - nodes[i]));  // exact solution u(t) = t
    return worst;
  };

  const auto coarse = run(ui.problem, 1e-8, 500);
  c.require(coarse.status == SolveStatus::converged, "no convergence at N = 200");
  c.require(coarse.iterations <= 60,
            "needed " + std::to_string(coarse.iterations) + " iterations (> 60)");
  const double err200 = sup_error(ui.problem, coarse.solution);
  c.require(err200 <= 5e-3, "sup error at N = 200 exceeds 5e-3");

  UrysohnProblem refined = ui.problem;
  refined.grid_size = 400;
  const auto fine = run(refined, 1e-8, 500);
  c.require(fine.status == SolveStatus::converged, "no convergence at N = 400");
  const double err400 = sup_error(refined, fine.solution);
  const double ratio = err400 > 0.0 ? err200 / err400 : 0.0;
  c.detail << "sup errors: N=200 -> " << err200 << ", N=400 -> " << err400
           << ", ratio " << ratio << "; final residuals " << coarse.residual_history.back()
           << " / " << fine.residual_history.back();
  c.require(ratio >= 3.0 && ratio <= 5.0,
            "grid doubling changed the converged error by " + std::to_string(ratio) +
                ", outside [3, 5]");
  c.finish(5.0);
}

void criterion_8() {
  Criterion c(8, "compatibility characterization agrees with the sequence-enumeration oracle");
  std::mt19937_64 rng(777);
  GeneratorOptions options;
  options.min_points = 2;
  options.max_points = 5;
  for (std::size_t i = 0; i < 200; ++i) {
    options.designed_pass = (i % 4 == 0);
    const auto inst = random_instance(rng, options);
    const auto characterization = check_compatibility_finite(inst.pair, inst.relation);
    const auto oracle = compatibility_oracle(inst.space, inst.pair, inst.relation,
                                             inst.space.size() + 2);
    if (characterization.holds != oracle.holds)
      c.require(false, "instance " + std::to_string(i) + ": characterization says " +
                           (characterization.holds ? "compatible" : "incompatible") +
                           " but the oracle disagrees");
  }
  c.finish(30.0);
}

}  // namespace

int main() {
  try {
    criterion_1();
    criterion_2();
    criterion_3();
    criteria_4_and_5();
    criterion_6();
    criterion_7();
    criterion_8();
  } catch (const std::exception& e) {
    std::cout << "[FAIL] acceptance suite aborted: " << e.what() << "\n";
    return 99;
  }
  if (failures == 0) {
    std::cout << "all acceptance criteria passed\n";
    return 0;
  }
  std::cout << failures << " acceptance criteria failed\n";
  return failures;
}
