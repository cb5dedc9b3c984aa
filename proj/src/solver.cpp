#include "relfix/solver.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace relfix {

namespace {
constexpr double kBoundSlack = 1e-9;
}

MappingPair::MappingPair(SelfMap t, SelfMap g) : t_(std::move(t)), g_(std::move(g)) {
  const std::size_t n = t_.size();
  if (g_.size() != n) throw std::invalid_argument("T and g must act on the same point set");
  if (n == 0) throw std::invalid_argument("mapping pair needs a non-empty point set");
  for (std::size_t v : t_)
    if (v >= n) throw std::invalid_argument("T is not a self-map");
  for (std::size_t v : g_)
    if (v >= n) throw std::invalid_argument("g is not a self-map");
  preimage_.assign(n, std::nullopt);
  for (std::size_t x = n; x-- > 0;) preimage_[g_[x]] = x;  // least index wins
}

std::optional<std::size_t> MappingPair::preimage(std::size_t y) const {
  if (y >= preimage_.size()) return std::nullopt;
  return preimage_[y];
}

std::vector<std::size_t> MappingPair::g_image() const {
  std::set<std::size_t> s(g_.begin(), g_.end());
  return {s.begin(), s.end()};
}

std::vector<std::size_t> MappingPair::t_image() const {
  std::set<std::size_t> s(t_.begin(), t_.end());
  return {s.begin(), s.end()};
}

std::optional<std::size_t> find_start(const MappingPair& pair, const Relation& r) {
  for (std::size_t x = 0; x < pair.size(); ++x)
    if (r.contains(pair.g_of(x), pair.t_of(x))) return x;
  return std::nullopt;
}

std::vector<std::size_t> starting_points(const MappingPair& pair, const Relation& r) {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < pair.size(); ++x)
    if (r.contains(pair.g_of(x), pair.t_of(x))) out.push_back(x);
  return out;
}

SolveResult iterate(const FiniteMetricSpace& space, const MappingPair& pair, std::size_t x0,
                    double tol, std::size_t max_iter) {
  if (x0 >= pair.size()) throw std::invalid_argument("starting point out of range");
  SolveResult result;
  result.trace.points.push_back(x0);
  std::size_t x = x0;
  for (std::size_t n = 0; n <= max_iter; ++n) {
    const double residual = space.distance(pair.g_of(x), pair.t_of(x));
    if (residual <= tol) {
      result.status = SolveStatus::converged;
      result.certificate = Certificate{CertificateKind::coincidence,
                                       {x},
                                       residual,
                                       "d(g " + space.label(x) + ", T " + space.label(x) +
                                           ") = " + std::to_string(residual)};
      return result;
    }
    if (n == max_iter) break;
    result.trace.residuals.push_back(residual);
    const auto next = pair.preimage(pair.t_of(x));
    if (!next) {
      result.status = SolveStatus::preimage_missing;
      result.failure_point = x;
      return result;
    }
    x = *next;
    result.trace.points.push_back(x);
  }
  result.status = SolveStatus::max_iter_exceeded;
  result.failure_point = x;
  return result;
}

BoundCheck error_bounds(const IterationTrace& trace, const ComparisonFunction& phi) {
  BoundCheck check;
  if (trace.residuals.empty()) return check;
  const double d0 = trace.residuals.front();
  double bound = d0;
  for (std::size_t n = 0; n < trace.residuals.size(); ++n) {
    if (n > 0) bound = phi(bound);  // phi^n(d0)
    const double observed = trace.residuals[n];
    check.observed_vs_bound.emplace_back(observed, bound);
    if (observed > bound + kBoundSlack && !check.first_violation) {
      check.holds = false;
      check.first_violation = n;
    }
    check.cauchy_tail.push_back(phi.tail_bound(d0, n));
  }
  return check;
}

Certificate promote_to_common_fixed_point(const FiniteMetricSpace& space,
                                          const MappingPair& pair, std::size_t w, double tol) {
  const double coincidence_residual = space.distance(pair.g_of(w), pair.t_of(w));
  if (coincidence_residual > tol)
    return Certificate{CertificateKind::violation,
                       {w},
                       coincidence_residual,
                       "point " + space.label(w) + " is not a coincidence point"};
  const std::size_t gw = pair.g_of(w);
  const double commute = space.distance(pair.t_of(gw), pair.g_of(pair.t_of(w)));
  if (commute > tol)
    return Certificate{CertificateKind::violation,
                       {w},
                       commute,
                       "T and g do not commute at " + space.label(w) + ": d(T(gw), g(Tw)) = " +
                           std::to_string(commute)};
  const std::size_t z = gw;
  const double fixed_t = space.distance(z, pair.t_of(z));
  const double fixed_g = space.distance(z, pair.g_of(z));
  if (fixed_t > tol)
    return Certificate{CertificateKind::violation,
                       {z},
                       fixed_t,
                       "d(z, Tz) exceeds tolerance at z = " + space.label(z)};
  if (fixed_g > tol)
    return Certificate{CertificateKind::violation,
                       {z},
                       fixed_g,
                       "d(z, gz) exceeds tolerance at z = " + space.label(z)};
  return Certificate{CertificateKind::common_fixed_point,
                     {z},
                     std::max(fixed_t, fixed_g),
                     "z = g " + space.label(w) + " = " + space.label(z) +
                         " satisfies z = Tz = gz"};
}

}  // namespace relfix
