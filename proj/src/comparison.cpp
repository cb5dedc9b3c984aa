#include "relfix/comparison.hpp"

#include <algorithm>
#include <cmath>

namespace relfix {

namespace {
constexpr double kCertificationProbes[] = {0.1, 1.0, 10.0};
constexpr std::size_t kTailBudget = 256;
}  // namespace

ComparisonFunction::ComparisonFunction(Family family, double a, double b,
                                       std::vector<std::pair<double, double>> knots)
    : family_(family), a_(a), b_(b), knots_(std::move(knots)) {}

ComparisonFunction ComparisonFunction::linear(double slope) {
  if (!(slope >= 0.0) || !(slope < 1.0))
    throw PhiCertificationError("not certified in Phi: linear slope must lie in [0,1), got " +
                                std::to_string(slope));
  return ComparisonFunction(Family::kLinear, slope, 0.0, {});
}

ComparisonFunction ComparisonFunction::power(double scale_divisor, double exponent) {
  if (!(scale_divisor > 0.0)) throw std::invalid_argument("power family needs a positive divisor");
  if (!(exponent >= 1.0)) throw std::invalid_argument("power family needs exponent >= 1");
  ComparisonFunction phi(Family::kPower, scale_divisor, exponent, {});
  phi.certify();
  return phi;
}

ComparisonFunction ComparisonFunction::table(std::vector<std::pair<double, double>> knots) {
  if (knots.empty()) throw std::invalid_argument("table family needs at least one knot");
  std::sort(knots.begin(), knots.end());
  if (knots.front().first != 0.0 || knots.front().second != 0.0)
    throw std::invalid_argument("table family must start at the knot (0,0)");
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (knots[i].first <= knots[i - 1].first)
      throw std::invalid_argument("table knots must have strictly increasing abscissae");
    if (knots[i].second < knots[i - 1].second)
      throw std::invalid_argument("table values must be non-decreasing");
  }
  ComparisonFunction phi(Family::kTable, 0.0, 0.0, std::move(knots));
  phi.certify();
  return phi;
}

double ComparisonFunction::operator()(double t) const {
  if (t <= 0.0) return 0.0;
  switch (family_) {
    case Family::kLinear:
      return a_ * t;
    case Family::kPower:
      return std::pow(t, b_) / a_;
    case Family::kTable: {
      if (knots_.size() == 1) return 0.0;
      std::size_t hi = 1;
      while (hi + 1 < knots_.size() && knots_[hi].first < t) ++hi;
      const auto& [t0, y0] = knots_[hi - 1];
      const auto& [t1, y1] = knots_[hi];
      const double slope = (y1 - y0) / (t1 - t0);
      // Beyond the last knot the final segment extends with its own slope.
      return y0 + slope * (t - t0);
    }
  }
  return 0.0;
}

double ComparisonFunction::iterate(double t, std::size_t n) const {
  double v = t;
  for (std::size_t i = 0; i < n; ++i) v = (*this)(v);
  return v;
}

double ComparisonFunction::contraction_factor_at(double t) const {
  if (t <= 0.0) return 0.0;
  switch (family_) {
    case Family::kLinear:
      return a_;
    case Family::kPower:
      return std::pow(t, b_ - 1.0) / a_;
    case Family::kTable: {
      // phi(s)/s is piecewise monotone, so its sup over (0, t] is attained
      // at a knot or at t itself.
      double q = (*this)(t) / t;
      for (std::size_t i = 1; i < knots_.size() && knots_[i].first <= t; ++i)
        q = std::max(q, knots_[i].second / knots_[i].first);
      return q;
    }
  }
  return 0.0;
}

double ComparisonFunction::tail_bound(double t0, std::size_t n) const {
  if (!(t0 >= 0.0)) throw std::invalid_argument("tail bound needs t0 >= 0");
  if (t0 == 0.0) return 0.0;
  if (family_ == Family::kLinear) {
    if (a_ == 0.0) return n == 0 ? t0 : 0.0;
    return std::pow(a_, static_cast<double>(n)) * t0 / (1.0 - a_);
  }
  double current = iterate(t0, n);
  double sum = 0.0;
  for (std::size_t step = 0; step < kTailBudget; ++step) {
    if (current <= 0.0) return sum;
    const double q = contraction_factor_at(current);
    if (q < 1.0) return sum + current / (1.0 - q);
    sum += current;
    const double next = (*this)(current);
    if (next >= current && step > 8)
      throw PhiCertificationError("not certified in Phi: iterates do not decay from " +
                                  std::to_string(current));
    current = next;
  }
  throw PhiCertificationError("not certified in Phi: no geometric tail within budget");
}

void ComparisonFunction::certify() const {
  for (double probe : kCertificationProbes) {
    try {
      (void)tail_bound(probe, 1);
    } catch (const PhiCertificationError&) {
      throw PhiCertificationError("not certified in Phi: iterate sum diverges at probe " +
                                  std::to_string(probe));
    }
  }
}

std::string ComparisonFunction::describe() const {
  switch (family_) {
    case Family::kLinear:
      return "linear(k=" + std::to_string(a_) + ")";
    case Family::kPower:
      return "power(t^" + std::to_string(b_) + "/" + std::to_string(a_) + ")";
    case Family::kTable:
      return "table(" + std::to_string(knots_.size()) + " knots)";
  }
  return {};
}

double phi_tail_bound(const ComparisonFunction& phi, double t0, std::size_t n) {
  return phi.tail_bound(t0, n);
}

}  // namespace relfix
