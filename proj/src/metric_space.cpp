#include "relfix/metric_space.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace relfix {

namespace {
constexpr double kTriangleTol = 1e-12;
}

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels,
                                     std::vector<double> distances,
                                     std::vector<std::size_t> subspace)
    : labels_(std::move(labels)), dist_(std::move(distances)), subspace_(std::move(subspace)) {
  const std::size_t n = labels_.size();
  if (n == 0) throw std::invalid_argument("space needs at least one point");
  if (dist_.size() != n * n)
    throw std::invalid_argument("distance matrix dimensions do not match label count");
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != n) throw std::invalid_argument("labels must be unique");
  if (subspace_.empty()) throw std::invalid_argument("subspace Y must be non-empty");
  for (std::size_t y : subspace_)
    if (y >= n) throw std::invalid_argument("subspace index out of range");
}

FiniteMetricSpace FiniteMetricSpace::from_coordinates(std::vector<std::string> labels,
                                                      const std::vector<double>& coordinates,
                                                      std::vector<std::size_t> subspace) {
  const std::size_t n = labels.size();
  if (coordinates.size() != n)
    throw std::invalid_argument("coordinate count does not match label count");
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::fabs(coordinates[i] - coordinates[j]);
  return FiniteMetricSpace(std::move(labels), std::move(d), std::move(subspace));
}

std::optional<std::size_t> FiniteMetricSpace::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

std::string MetricViolation::describe() const {
  switch (kind) {
    case Kind::identity:
      return "d(" + std::to_string(i) + "," + std::to_string(i) + ") != 0";
    case Kind::positivity:
      return "d(" + std::to_string(i) + "," + std::to_string(j) + ") <= 0 for distinct points";
    case Kind::symmetry:
      return "d(" + std::to_string(i) + "," + std::to_string(j) + ") != d(" + std::to_string(j) +
             "," + std::to_string(i) + ")";
    case Kind::triangle:
      return "d(" + std::to_string(i) + "," + std::to_string(j) + ") > d(" + std::to_string(i) +
             "," + std::to_string(k) + ") + d(" + std::to_string(k) + "," + std::to_string(j) + ")";
  }
  return {};
}

std::optional<MetricViolation> validate_metric(const FiniteMetricSpace& space) {
  const std::size_t n = space.size();
  for (std::size_t i = 0; i < n; ++i)
    if (space.distance(i, i) != 0.0)
      return MetricViolation{MetricViolation::Kind::identity, i, i, i};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (space.distance(i, j) != space.distance(j, i))
        return MetricViolation{MetricViolation::Kind::symmetry, i, j, j};
      if (i != j && !(space.distance(i, j) > 0.0))
        return MetricViolation{MetricViolation::Kind::positivity, i, j, j};
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j || i == j) continue;
        if (space.distance(i, j) > space.distance(i, k) + space.distance(k, j) + kTriangleTol)
          return MetricViolation{MetricViolation::Kind::triangle, i, j, k};
      }
  return std::nullopt;
}

RationaleVerdict finite_r_completeness(const FiniteMetricSpace& space, const Relation& r) {
  (void)r;
  return {true,
          "finite space with " + std::to_string(space.size()) +
              " points: every Cauchy sequence is eventually constant, hence converges in any "
              "non-empty subset containing its tail"};
}

RationaleVerdict finite_d_self_closed(const FiniteMetricSpace& space, const Relation& r,
                                      std::span<const std::size_t> subset) {
  (void)space;
  (void)r;
  return {true,
          "finite subset of " + std::to_string(subset.size()) +
              " points: a convergent R-preserving sequence is eventually constant at its limit "
              "x, so (x,x) lies in R and the constant tail is the required comparable "
              "subsequence"};
}

}  // namespace relfix
