#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relfix/comparison.hpp"

namespace relfix {

/// Argument order of the six-variable contraction tuple:
///   (d(Tx,Ty), d(gx,gy), d(gx,Tx), d(gy,Ty), d(gx,Ty), d(gy,Tx)).
using SixTuple = std::array<double, 6>;

/// Six-argument sign function G whose non-positivity on related pairs
/// encodes a contraction condition. The three sign conditions carried as
/// flags:
///   g1: non-increasing in arguments 5 and 6, and G(r,s,s,r,r+s,0) <= 0
///       forces r <= phi(s) for the attached comparison function;
///   g2: G(r,0,r,0,0,r) > 0 for r > 0;
///   g3: G(r,r,0,0,r,r) > 0 for r > 0.
class ImplicitRelation {
 public:
  using Evaluator = std::function<double(const SixTuple&)>;

  ImplicitRelation(std::string name, Evaluator evaluator, bool g1, bool g2, bool g3,
                   std::optional<ComparisonFunction> phi);

  /// Evaluates G; all components must be non-negative.
  double operator()(const SixTuple& r) const;

  bool declared_g1() const noexcept { return g1_; }
  bool declared_g2() const noexcept { return g2_; }
  bool declared_g3() const noexcept { return g3_; }
  const std::optional<ComparisonFunction>& phi() const noexcept { return phi_; }
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
  Evaluator eval_;
  bool g1_, g2_, g3_;
  std::optional<ComparisonFunction> phi_;
};

/// The sixteen catalog forms.
enum class CatalogId {
  I, II, III, IV, V, VI, VII, VIII, IX, X, XI, XII, XIII, XIV, XV, XVI
};

const char* to_string(CatalogId id);
std::optional<CatalogId> catalog_id_from_string(std::string_view text);

using Params = std::map<std::string, double>;

/// Builds a catalog member. Parameter constraints are enforced at
/// construction and violations are rejected with a message naming the
/// constraint. Form II takes the majorant through `varphi`; every other
/// form derives its canonical comparison function from the parameters.
ImplicitRelation make_catalog(CatalogId id, const Params& params,
                              std::optional<ComparisonFunction> varphi = std::nullopt);

/// G = sum_i c_i r_i with c_1 > 0. The sign-condition flags and, when
/// certifiable, the comparison function are computed from the coefficients.
ImplicitRelation make_linear_combination(const std::array<double, 6>& coefficients);

/// Quotient-weighted form r1 - varphi(r2 (r5+r6)/(r3+r4)), falling back to
/// r1 - r2 when r3 + r4 = 0. Satisfies g1 (with phi = varphi) and g2 but
/// fails g3 on the zero-denominator branch.
ImplicitRelation make_quotient_ratio(ComparisonFunction varphi);

/// An explicit printed contraction inequality on the six-tuple, paired with
/// the equivalent implicit form (G <= 0). The two routes are computed
/// independently.
struct ExplicitCondition {
  int id = 0;
  std::string summary;
  std::function<bool(const SixTuple&)> satisfied;
  ImplicitRelation implicit;
};

/// Conditions 16 through 35 (the printed inequality list). Condition 17
/// takes its majorant through `varphi`.
ExplicitCondition make_explicit_condition(int id, const Params& params,
                                          std::optional<ComparisonFunction> varphi = std::nullopt);

int explicit_condition_min_id();
int explicit_condition_max_id();

/// One line per catalog form / explicit condition with its constraint.
std::vector<std::string> catalog_listing();

struct GridIssue {
  std::string what;
  SixTuple at{};
  double value = 0.0;
};

struct G1Report {
  bool holds = true;
  bool phi_attached = true;
  std::size_t points_checked = 0;
  double worst_slack = 0.0;  // max of r - phi(s) over triggered implications
  std::vector<GridIssue> violations;
};

struct SignReport {
  bool holds = true;
  double worst_margin = 0.0;  // min of G over the grid family
  std::optional<double> witness_r;
};

/// Grid {0, 0.1, ..., 10} used by the conformance checks.
std::vector<double> default_check_grid();

/// Verifies, over grid x grid, that G is non-increasing under one-at-a-time
/// perturbations of arguments 5 and 6 from the base family (r,s,s,r,r+s,0),
/// and that G(r,s,s,r,r+s,0) <= 0 implies r <= phi(s) + 1e-12.
G1Report check_g1(const ImplicitRelation& g, std::span<const double> grid,
                  std::span<const double> perturbations = {});

/// G(r,0,r,0,0,r) > 1e-12 for all positive grid values.
SignReport check_g2(const ImplicitRelation& g, std::span<const double> grid);

/// G(r,r,0,0,r,r) > 1e-12 for all positive grid values.
SignReport check_g3(const ImplicitRelation& g, std::span<const double> grid);

}  // namespace relfix
