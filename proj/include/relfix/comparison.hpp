#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace relfix {

/// Raised when a candidate comparison function cannot be certified to have
/// summable iterates.
class PhiCertificationError : public std::runtime_error {
 public:
  explicit PhiCertificationError(const std::string& what) : std::runtime_error(what) {}
};

/// Comparison function: non-decreasing, phi(0) = 0, with summable iterates.
/// Summability is certified numerically at construction: at each probe point
/// the iterate sum must admit a geometric tail bound.
///
/// Families:
///   linear   phi(t) = k t,       0 <= k < 1
///   power    phi(t) = t^p / c,   p >= 1, c > 0
///   table    piecewise-linear through sorted knots starting at (0, 0)
class ComparisonFunction {
 public:
  static ComparisonFunction linear(double slope);
  static ComparisonFunction power(double scale_divisor, double exponent);
  static ComparisonFunction table(std::vector<std::pair<double, double>> knots);

  double operator()(double t) const;

  /// n-fold application.
  double iterate(double t, std::size_t n) const;

  /// Upper bound on sum_{j >= n} phi^j(t0). Closed form for the linear
  /// family; otherwise a truncated sum plus a geometric majorant. Throws
  /// PhiCertificationError when no geometric tail is detected.
  double tail_bound(double t0, std::size_t n) const;

  bool is_linear() const { return family_ == Family::kLinear; }
  double linear_slope() const { return a_; }

  std::string describe() const;

 private:
  enum class Family { kLinear, kPower, kTable };

  ComparisonFunction(Family family, double a, double b,
                     std::vector<std::pair<double, double>> knots);

  /// sup over 0 < s <= t of phi(s)/s; the geometric factor governing tails
  /// started below t.
  double contraction_factor_at(double t) const;

  void certify() const;

  Family family_;
  double a_ = 0.0;  // slope (linear) or divisor c (power)
  double b_ = 0.0;  // exponent p (power)
  std::vector<std::pair<double, double>> knots_;
};

/// Upper bound on sum_{j >= n} phi^j(t0); see ComparisonFunction::tail_bound.
double phi_tail_bound(const ComparisonFunction& phi, double t0, std::size_t n);

}  // namespace relfix
