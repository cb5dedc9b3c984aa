#include "relfix/urysohn.hpp"

#include <cmath>
#include <stdexcept>

namespace relfix {

namespace {
constexpr double kSampleTol = 1e-12;
}

std::vector<double> grid_nodes(const UrysohnProblem& problem) {
  const std::size_t n = problem.grid_size;
  const double h = problem.horizon / static_cast<double>(n);
  std::vector<double> t(n + 1);
  for (std::size_t i = 0; i <= n; ++i) t[i] = h * static_cast<double>(i);
  return t;
}

GridFunction constant_grid_function(const UrysohnProblem& problem, double value) {
  return GridFunction(problem.grid_size + 1, value);
}

GridFunction sample_on_grid(const UrysohnProblem& problem,
                            const std::function<double(double)>& f) {
  const auto t = grid_nodes(problem);
  GridFunction u(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) u[i] = f(t[i]);
  return u;
}

GridFunction apply_T(const UrysohnProblem& problem, const GridFunction& u) {
  const std::size_t n = problem.grid_size;
  if (u.size() != n + 1)
    throw std::invalid_argument("grid function does not match the problem grid");
  const auto t = grid_nodes(problem);
  const double h = problem.horizon / static_cast<double>(n);
  GridFunction out(n + 1);

  auto guard = [](double v) {
    if (!std::isfinite(v)) throw std::runtime_error("kernel evaluation produced a non-finite value");
    return v;
  };

  if (!problem.kernel_t_dependent) {
    double acc = 0.0;
    double prev = guard(problem.kernel(t[0], t[0], u[0]));
    out[0] = problem.alpha(t[0]);
    for (std::size_t i = 1; i <= n; ++i) {
      const double cur = guard(problem.kernel(t[i], t[i], u[i]));
      acc += 0.5 * h * (prev + cur);
      out[i] = acc + problem.alpha(t[i]);
      prev = cur;
    }
    return out;
  }

  for (std::size_t i = 0; i <= n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= i; ++j) {
      const double f0 = guard(problem.kernel(t[i], t[j - 1], u[j - 1]));
      const double f1 = guard(problem.kernel(t[i], t[j], u[j]));
      acc += 0.5 * h * (f0 + f1);
    }
    out[i] = acc + problem.alpha(t[i]);
  }
  return out;
}

double sup_distance(const GridFunction& a, const GridFunction& b) {
  if (a.size() != b.size()) throw std::invalid_argument("grid functions differ in size");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
  return d;
}

double residual(const UrysohnProblem& problem, const GridFunction& u) {
  const GridFunction tu = apply_T(problem, u);
  double worst = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    worst = std::max(worst, std::fabs(problem.g(u[i]) - tu[i]));
  return worst;
}

bool HConditionReport::solve_admissible() const {
  const auto* h1 = find("h1");
  const auto* h5 = find("h5");
  return h1 && h1->status == HypothesisStatus::holds && h5 &&
         h5->status == HypothesisStatus::holds;
}

const HypothesisVerdict* HConditionReport::find(std::string_view id) const {
  for (const auto& v : verdicts)
    if (v.id == id) return &v;
  return nullptr;
}

HConditionReport check_H(const UrysohnProblem& problem, const GridFunction& u0,
                         std::span<const GridFunction> samples) {
  HConditionReport report;
  const auto t = grid_nodes(problem);

  // H1: the comparator admits u0 against its image.
  {
    const GridFunction tu0 = apply_T(problem, u0);
    std::optional<std::size_t> bad;
    for (std::size_t i = 0; i < t.size(); ++i)
      if (problem.eta(problem.g(u0[i]), tu0[i]) > 0.0) {
        bad = i;
        break;
      }
    report.verdicts.push_back(
        {"h1", bad ? HypothesisStatus::fails : HypothesisStatus::holds,
         bad ? "node " + std::to_string(*bad) : "",
         bad ? "eta(g u0, T u0) > 0 at t = " + std::to_string(t[*bad])
             : "eta(g u0(t), (T u0)(t)) <= 0 at every node"});
  }

  // H2: the comparator is propagated by T on the sampled pairs.
  {
    bool ok = true;
    std::string witness;
    for (std::size_t a = 0; a < samples.size() && ok; ++a) {
      for (std::size_t b = 0; b < samples.size() && ok; ++b) {
        const auto& u = samples[a];
        const auto& v = samples[b];
        bool related = true;
        for (std::size_t i = 0; i < t.size() && related; ++i)
          related = problem.eta(problem.g(u[i]), problem.g(v[i])) <= 0.0;
        if (!related) continue;
        const GridFunction tu = apply_T(problem, u);
        const GridFunction tv = apply_T(problem, v);
        for (std::size_t i = 0; i < t.size(); ++i)
          if (problem.eta(tu[i], tv[i]) > 0.0) {
            ok = false;
            witness = "sample pair (" + std::to_string(a) + "," + std::to_string(b) +
                      ") at node " + std::to_string(i);
            break;
          }
      }
    }
    report.verdicts.push_back({"h2", ok ? HypothesisStatus::holds : HypothesisStatus::fails,
                               witness,
                               "checked on " + std::to_string(samples.size()) +
                                   " sampled functions (holds on samples, not a proof)"});
  }

  // H3: subsequence selection is asserted, never decided.
  report.verdicts.push_back({"h3",
                             problem.h3_asserted ? HypothesisStatus::asserted
                                                 : HypothesisStatus::not_applicable,
                             "", "subsequence condition supplied by assertion"});

  // H4: kernel increments are dominated by phi on sampled related pairs.
  {
    bool ok = true;
    std::string witness;
    for (std::size_t a = 0; a < samples.size() && ok; ++a) {
      for (std::size_t b = 0; b < samples.size() && ok; ++b) {
        const auto& u = samples[a];
        const auto& v = samples[b];
        bool related = true;
        for (std::size_t i = 0; i < t.size() && related; ++i)
          related = problem.eta(problem.g(u[i]), problem.g(v[i])) <= 0.0;
        if (!related) continue;
        for (std::size_t i = 0; i < t.size() && ok; ++i) {
          for (std::size_t j = 0; j <= i; ++j) {
            const double lhs =
                std::fabs(problem.kernel(t[i], t[j], u[j]) - problem.kernel(t[i], t[j], v[j]));
            const double rhs = problem.phi(std::fabs(problem.g(u[j]) - problem.g(v[j])));
            if (lhs > rhs + kSampleTol) {
              ok = false;
              witness = "samples (" + std::to_string(a) + "," + std::to_string(b) +
                        ") at (t,tau) = (" + std::to_string(t[i]) + "," + std::to_string(t[j]) +
                        ")";
              break;
            }
          }
        }
      }
    }
    report.verdicts.push_back({"h4", ok ? HypothesisStatus::holds : HypothesisStatus::fails,
                               witness,
                               "kernel increment dominated by phi on sampled pairs"});
  }

  // H5: sup_t integral_0^t dtau = horizon < 1, checked exactly.
  report.verdicts.push_back(
      {"h5", problem.horizon < 1.0 ? HypothesisStatus::holds : HypothesisStatus::fails, "",
       "horizon = " + std::to_string(problem.horizon) +
           (problem.horizon < 1.0 ? " < 1" : " >= 1 (the printed smallness condition fails)")});
  return report;
}

UrysohnSolveResult solve(const UrysohnProblem& problem, const GridFunction& u0, double tol,
                         std::size_t max_iter) {
  UrysohnSolveResult result;
  GridFunction u = u0;
  for (std::size_t n = 0; n <= max_iter; ++n) {
    const GridFunction tu = apply_T(problem, u);
    double res = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
      res = std::max(res, std::fabs(problem.g(u[i]) - tu[i]));
    result.residual_history.push_back(res);
    if (res <= tol) {
      result.status = SolveStatus::converged;
      result.solution = std::move(u);
      result.iterations = n;
      return result;
    }
    if (n == max_iter) break;
    GridFunction next(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) next[i] = problem.g_inverse(tu[i]);
    for (std::size_t i = 0; i < u.size() && result.relation_preserved; ++i)
      result.relation_preserved = problem.eta(u[i], next[i]) <= 0.0;
    const double probe = problem.g(problem.g_inverse(tu[0]));
    if (!std::isfinite(probe))
      throw std::runtime_error("g-inverse produced a non-finite value");
    u = std::move(next);
  }
  result.status = SolveStatus::max_iter_exceeded;
  result.solution = std::move(u);
  result.iterations = max_iter;
  return result;
}

UrysohnProblem desk_problem(std::size_t grid_size) {
  UrysohnProblem p;
  p.kernel = [](double, double, double u) { return u / 2.0; };
  p.kernel_t_dependent = false;
  p.alpha = [](double t) { return t - t * t / 4.0; };
  p.phi = ComparisonFunction::linear(0.5);
  p.horizon = 0.9;
  p.grid_size = grid_size;
  p.name = "desk-volterra";
  return p;
}

}  // namespace relfix
