#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "relfix/relation.hpp"

namespace relfix {

/// Finite metric space: labelled points, a dense distance matrix and a
/// distinguished non-empty subspace Y. Construction checks shape only;
/// validate_metric decides the metric axioms.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace(std::vector<std::string> labels, std::vector<double> distances,
                    std::vector<std::size_t> subspace);

  /// Points on the real line with the absolute-difference metric.
  static FiniteMetricSpace from_coordinates(std::vector<std::string> labels,
                                            const std::vector<double>& coordinates,
                                            std::vector<std::size_t> subspace);

  std::size_t size() const noexcept { return labels_.size(); }
  double distance(std::size_t i, std::size_t j) const { return dist_[i * size() + j]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  std::span<const std::size_t> subspace() const noexcept { return subspace_; }
  std::optional<std::size_t> index_of(std::string_view label) const;

 private:
  std::vector<std::string> labels_;
  std::vector<double> dist_;
  std::vector<std::size_t> subspace_;
};

struct MetricViolation {
  enum class Kind { identity, positivity, symmetry, triangle };
  Kind kind;
  std::size_t i = 0, j = 0, k = 0;
  std::string describe() const;
};

/// Checks identity, positivity, symmetry exactly and the triangle
/// inequality with tolerance 1e-12; returns the first violation in
/// lexicographic scan order, or nothing when the matrix is a metric.
std::optional<MetricViolation> validate_metric(const FiniteMetricSpace& space);

/// Verdict that is decided by the structure of finite spaces rather than by
/// search; the rationale string feeds verification reports.
struct RationaleVerdict {
  bool holds = true;
  std::string rationale;
};

/// R-completeness of a finite space: every Cauchy sequence is eventually
/// constant, hence converges inside any subset containing its tail.
RationaleVerdict finite_r_completeness(const FiniteMetricSpace& space, const Relation& r);

/// d-self-closedness of R on a finite subset: an R-preserving convergent
/// sequence is eventually constant at its limit x, so (x,x) lies in R and
/// the constant tail is the required comparable subsequence.
RationaleVerdict finite_d_self_closed(const FiniteMetricSpace& space, const Relation& r,
                                      std::span<const std::size_t> subset);

}  // namespace relfix
