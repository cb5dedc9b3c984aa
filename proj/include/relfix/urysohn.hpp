#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relfix/comparison.hpp"
#include "relfix/verifier.hpp"

namespace relfix {

/// Integral-equation problem g(u)(t) = integral_0^t K(t, tau, u(tau)) dtau
/// + alpha(t) on [0, horizon], discretised on a uniform grid and solved by
/// the coincidence iteration in the sup metric.
struct UrysohnProblem {
  std::function<double(double t, double tau, double u)> kernel;
  /// Whether K genuinely depends on its first argument; when false the
  /// partial integrals are accumulated in one O(N) sweep.
  bool kernel_t_dependent = false;
  std::function<double(double)> alpha;
  std::function<double(double)> g = [](double u) { return u; };
  std::function<double(double)> g_inverse = [](double u) { return u; };
  bool g_is_identity = true;
  /// Comparator defining the relation {(u,v) : eta(u(t), v(t)) <= 0 for all t}.
  std::function<double(double, double)> eta = [](double, double) { return -1.0; };
  ComparisonFunction phi = ComparisonFunction::linear(0.5);
  double horizon = 0.9;
  std::size_t grid_size = 200;
  /// The subsequence-selection hypothesis is user-asserted; recorded with
  /// provenance, never decided.
  bool h3_asserted = true;
  std::string name = "urysohn";
};

/// Values at the N+1 uniform nodes of [0, horizon].
using GridFunction = std::vector<double>;

std::vector<double> grid_nodes(const UrysohnProblem& problem);

GridFunction constant_grid_function(const UrysohnProblem& problem, double value);

GridFunction sample_on_grid(const UrysohnProblem& problem,
                            const std::function<double(double)>& f);

/// (Tu)(t_i) by composite trapezoid quadrature over [0, t_i] plus alpha(t_i).
GridFunction apply_T(const UrysohnProblem& problem, const GridFunction& u);

/// max_i |g(u(t_i)) - (Tu)(t_i)|.
double residual(const UrysohnProblem& problem, const GridFunction& u);

/// sup-metric between grid functions.
double sup_distance(const GridFunction& a, const GridFunction& b);

struct HConditionReport {
  std::vector<HypothesisVerdict> verdicts;  // ids h1 .. h5
  bool solve_admissible() const;            // h1 and h5 hold
  const HypothesisVerdict* find(std::string_view id) const;
};

/// H1 at u0 across all nodes; H2 and H4 on sampled pairs (holds-on-samples,
/// not a proof); H3 recorded as asserted; H5 (horizon < 1) exactly.
HConditionReport check_H(const UrysohnProblem& problem, const GridFunction& u0,
                         std::span<const GridFunction> samples);

struct UrysohnSolveResult {
  SolveStatus status = SolveStatus::converged;
  GridFunction solution;
  std::vector<double> residual_history;
  std::size_t iterations = 0;
  /// eta(u_n(t), u_{n+1}(t)) <= 0 held at every node of every step.
  bool relation_preserved = true;
};

/// Nodewise iteration u_{n+1} = g^{-1}(T u_n) until the sup residual
/// d(g u_n, T u_n) falls below tol.
UrysohnSolveResult solve(const UrysohnProblem& problem, const GridFunction& u0, double tol,
                         std::size_t max_iter);

/// The stock desk problem: K = u/2, alpha(t) = t - t^2/4, g identity,
/// horizon 0.9; its solution is u(t) = t.
UrysohnProblem desk_problem(std::size_t grid_size = 200);

}  // namespace relfix
