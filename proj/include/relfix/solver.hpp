#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "relfix/comparison.hpp"
#include "relfix/metric_space.hpp"
#include "relfix/relation.hpp"

namespace relfix {

/// Two total self-maps with a deterministic g-preimage selector
/// (least index among {x : gx = y}).
class MappingPair {
 public:
  MappingPair(SelfMap t, SelfMap g);

  const SelfMap& t() const noexcept { return t_; }
  const SelfMap& g() const noexcept { return g_; }
  std::size_t size() const noexcept { return t_.size(); }
  std::size_t t_of(std::size_t x) const { return t_[x]; }
  std::size_t g_of(std::size_t x) const { return g_[x]; }

  std::optional<std::size_t> preimage(std::size_t y) const;

  /// Sorted distinct g-images / T-images.
  std::vector<std::size_t> g_image() const;
  std::vector<std::size_t> t_image() const;

 private:
  SelfMap t_, g_;
  std::vector<std::optional<std::size_t>> preimage_;
};

/// Record of the successive-approximation run gx_{n+1} = Tx_n.
struct IterationTrace {
  std::vector<std::size_t> points;  // x_0 .. x_m
  std::vector<double> residuals;    // d(gx_n, Tx_n) = d(gx_n, gx_{n+1}) for n < m
  std::size_t steps() const { return residuals.size(); }
};

enum class CertificateKind { coincidence, point_of_coincidence, common_fixed_point, violation };

struct Certificate {
  CertificateKind kind = CertificateKind::violation;
  std::vector<std::size_t> points;
  double residual = 0.0;
  std::string evidence;
};

enum class SolveStatus { converged, preimage_missing, max_iter_exceeded };

struct SolveResult {
  SolveStatus status = SolveStatus::converged;
  IterationTrace trace;
  std::optional<Certificate> certificate;
  std::optional<std::size_t> failure_point;
};

/// Least-index x0 with (gx0, Tx0) related, or nothing.
std::optional<std::size_t> find_start(const MappingPair& pair, const Relation& r);

/// All w with (gw, Tw) related, ascending.
std::vector<std::size_t> starting_points(const MappingPair& pair, const Relation& r);

/// Runs x_{n+1} = preimage(Tx_n) until d(gx_n, Tx_n) <= tol (coincidence
/// certificate at x_n), the preimage is missing (range hypothesis violated),
/// or max_iter is exhausted (residual history kept either way).
SolveResult iterate(const FiniteMetricSpace& space, const MappingPair& pair, std::size_t x0,
                    double tol, std::size_t max_iter);

struct BoundCheck {
  bool holds = true;
  /// (observed residual, phi^n(d0)) per step.
  std::vector<std::pair<double, double>> observed_vs_bound;
  /// A-priori tail bound on d(gx_n, gx_m) for m beyond the trace.
  std::vector<double> cauchy_tail;
  std::optional<std::size_t> first_violation;
};

/// Checks observed residual_n <= phi^n(d0) + 1e-9 along a trace and emits
/// the geometric tail estimates.
BoundCheck error_bounds(const IterationTrace& trace, const ComparisonFunction& phi);

/// Promotes a coincidence point w: checks commutation at w, sets z = gw and
/// certifies d(z, Tz) <= tol and d(z, gz) <= tol, or reports the failed
/// equality.
Certificate promote_to_common_fixed_point(const FiniteMetricSpace& space,
                                          const MappingPair& pair, std::size_t w, double tol);

}  // namespace relfix
