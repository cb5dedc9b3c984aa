#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "relfix/contraction.hpp"
#include "relfix/random_instance.hpp"

using namespace relfix;

namespace {

// Valid parameters for every catalog form, reused by the conformance loops.
struct CatalogCase {
  CatalogId id;
  Params params;
  bool needs_varphi = false;
};

std::vector<CatalogCase> valid_catalog_cases() {
  return {
      {CatalogId::I, {{"k", 0.9}}},
      {CatalogId::II, {}, true},
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
}

ImplicitRelation build(const CatalogCase& c) {
  return make_catalog(c.id, c.params,
                      c.needs_varphi ? std::optional(ComparisonFunction::linear(0.7))
                                     : std::nullopt);
}

ImplicitRelation fixture_contraction() {
  // G = r1 - r5/5 - 3 r6/5 from the four-point fixture.
  return make_linear_combination({1.0, 0.0, 0.0, 0.0, -0.2, -0.6});
}

SixTuple random_tuple(std::mt19937_64& rng) {
  SixTuple t;
  for (double& v : t) v = rand_real(rng, 0.0, 10.0);
  // Sprinkle exact zeros so guard branches get exercised.
  if (rand_index(rng, 4) == 0) t[rand_index(rng, 6)] = 0.0;
  return t;
}

}  // namespace

TEST_CASE("direct evaluations") {
  const auto g1 = make_catalog(CatalogId::I, {{"k", 0.5}});
  CHECK(g1({1, 3, 0, 0, 0, 0}) == doctest::Approx(-0.5));

  const auto g2 = fixture_contraction();
  CHECK(g2({1, 1, 1, 1, 0, 2}) == doctest::Approx(-0.2));
  // Oracle arithmetic: 1 - 0/5 - 3*2/5.
  CHECK(g2({1, 1, 1, 1, 0, 2}) == doctest::Approx(1.0 - 0.0 / 5.0 - 3.0 * 2.0 / 5.0));

  for (const auto& c : valid_catalog_cases()) {
    const auto g = build(c);
    CHECK(g({0, 0, 0, 0, 0, 0}) <= 0.0);
  }
}

TEST_CASE("negative arguments are rejected") {
  const auto g = make_catalog(CatalogId::I, {{"k", 0.5}});
  CHECK_THROWS_AS(g({-1, 0, 0, 0, 0, 0}), std::domain_error);
  CHECK_THROWS_AS(g({0, 0, 0, 0, 0, -1e-9}), std::domain_error);
}

TEST_CASE("the fixture contraction derives phi(t) = t/4 and passes the g1 check") {
  const auto g = fixture_contraction();
  REQUIRE(g.declared_g1());
  REQUIRE(g.phi().has_value());
  CHECK(g.phi()->is_linear());
  CHECK(g.phi()->linear_slope() == doctest::Approx(0.25));
  CHECK(g.declared_g2());
  CHECK(g.declared_g3());

  const auto grid = default_check_grid();
  const auto report = check_g1(g, grid);
  CHECK(report.holds);
  CHECK(report.violations.empty());
}

TEST_CASE("catalog I with k = 0.5 passes g1 on the [0,10] grid") {
  const auto g = make_catalog(CatalogId::I, {{"k", 0.5}});
  const auto report = check_g1(g, default_check_grid());
  CHECK(report.holds);
  CHECK(report.worst_slack <= 1e-12);
}

TEST_CASE("a form increasing in the fifth argument fails g1 with a witness") {
  const ImplicitRelation broken(
      "broken", [](const SixTuple& r) { return r[0] + r[4]; }, false, true, true, std::nullopt);
  const auto report = check_g1(broken, default_check_grid());
  CHECK_FALSE(report.holds);
  REQUIRE_FALSE(report.violations.empty());
  bool found_monotonicity = false;
  for (const auto& v : report.violations)
    found_monotonicity |= v.what.find("argument 5") != std::string::npos;
  CHECK(found_monotonicity);
}

TEST_CASE("g2 and g3 margins for catalog I reduce to r and (1-k) r") {
  const auto g = make_catalog(CatalogId::I, {{"k", 0.5}});
  const auto grid = default_check_grid();
  const auto g2 = check_g2(g, grid);
  CHECK(g2.holds);
  CHECK(g2.worst_margin == doctest::Approx(0.1));  // smallest positive grid value
  const auto g3 = check_g3(g, grid);
  CHECK(g3.holds);
  CHECK(g3.worst_margin == doctest::Approx(0.05));  // (1-k) * 0.1
}

TEST_CASE("every catalog form with valid parameters passes g1 and g2; all pass g3") {
  const auto grid = default_check_grid();
  for (const auto& c : valid_catalog_cases()) {
    INFO("catalog ", to_string(c.id));
    const auto g = build(c);
    const auto r1 = check_g1(g, grid);
    CHECK(r1.holds);
    const auto r2 = check_g2(g, grid);
    CHECK(r2.holds);
    CHECK(g.declared_g3());
    CHECK(check_g3(g, grid).holds);
  }
}

TEST_CASE("the quotient-ratio family fails g3 on the zero-denominator branch") {
  const auto g = make_quotient_ratio(ComparisonFunction::linear(0.7));
  CHECK(g.declared_g1());
  CHECK(g.declared_g2());
  CHECK_FALSE(g.declared_g3());

  const auto grid = default_check_grid();
  CHECK(check_g1(g, grid).holds);
  CHECK(check_g2(g, grid).holds);
  const auto r3 = check_g3(g, grid);
  CHECK_FALSE(r3.holds);
  REQUIRE(r3.witness_r.has_value());
  // G(r,r,0,0,r,r) falls into the r1 - r2 = 0 branch at every r.
  CHECK(g({1, 1, 0, 0, 1, 1}) == doctest::Approx(0.0));
}

TEST_CASE("constraint violations are rejected with messages naming the constraint") {
  CHECK_THROWS_WITH_AS(make_catalog(CatalogId::I, {{"k", 1.0}}),
                       "parameter constraint violated: catalog I requires k in [0,1)",
                       std::invalid_argument);
  CHECK_THROWS_AS(make_catalog(CatalogId::XV, {{"k", 0.2}}), std::invalid_argument);
  CHECK_THROWS_AS(make_catalog(CatalogId::XV, {{"k", 1.0 / 11.0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_catalog(CatalogId::XVI, {{"a1", 2.0}, {"a2", 0.5}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_catalog(CatalogId::V, {{"a1", 0.5}, {"a2", 0.3}, {"a3", 0.1}}),
                  std::invalid_argument);
  CHECK_NOTHROW(make_catalog(CatalogId::I, {{"k", 0.9}}));
  CHECK_NOTHROW(make_catalog(CatalogId::V, {{"a1", 0.3}, {"a2", 0.2}, {"a3", 0.1}}));
  CHECK_THROWS_AS(make_catalog(CatalogId::II, {}), std::invalid_argument);
  CHECK_THROWS_AS(make_catalog(CatalogId::I, {}), std::invalid_argument);
}

TEST_CASE("quotient guard branches evaluate exactly as printed") {
  const auto xiii = make_catalog(CatalogId::XIII, {{"k", 0.8}});
  CHECK(xiii({0, 0, 1, 2, 3, 4}) == 0.0);  // r1 + r2 = 0 branch returns r1

  const auto xvi = make_catalog(CatalogId::XVI, {{"a1", 1.5}, {"a2", 0.7}});
  CHECK(xvi({2, 0, 5, 0, 7, 8}) == 2.0);  // r2 + r4 = 0 branch returns r1

  const auto quotient = make_quotient_ratio(ComparisonFunction::linear(0.7));
  CHECK(quotient({3, 1, 0, 0, 5, 5}) == doctest::Approx(2.0));  // r3 + r4 = 0 branch
}

TEST_CASE("explicit condition 16 rejects the unit tuple for k = 0.9") {
  const auto cond = make_explicit_condition(16, {{"k", 0.9}});
  CHECK_FALSE(cond.satisfied({1, 1, 1, 1, 1, 1}));
  CHECK(cond.implicit({1, 1, 1, 1, 1, 1}) > 0.0);
}

TEST_CASE("explicit condition 18 accepts the worked tuple") {
  const auto cond = make_explicit_condition(18, {{"k", 0.4}});
  // 0.5 <= 0.4 * (1 + 0.5) = 0.6.
  CHECK(cond.satisfied({0.5, 0, 1, 0.5, 0, 0}));
  CHECK(cond.implicit({0.5, 0, 1, 0.5, 0, 0}) <= 0.0);
}

namespace {

Params explicit_params(int id) {
  switch (id) {
    case 16: return {{"k", 0.9}};
    case 17: return {};
    case 18: case 19: return {{"k", 0.4}};
    case 20: case 21: return {{"k", 0.8}};
    case 22: return {{"a1", 0.3}, {"a2", 0.2}, {"a3", 0.1}};
    case 23: return {{"k", 0.7}};
    case 24: return {{"k", 0.8}, {"L", 1.5}};
    case 25: return {{"a1", 0.3}, {"a2", 0.1}, {"a3", 0.1}, {"a4", 0.2}};
    case 26: return {{"k", 0.8}, {"L", 1.5}};
    case 27: return {{"k", 0.45}};
    case 28: return {{"a1", 0.5}, {"a2", 0.02}, {"a3", 0.02}, {"a4", 0.02}, {"a5", 0.02}};
    case 29: return {{"k", 0.8}};
    case 30: return {{"k", 0.7}, {"a", 0.3}, {"b", 0.2}};
    case 31: return {{"a1", 0.4}, {"a2", 0.2}, {"a3", 0.2}, {"a4", 0.3}};
    case 32: return {{"k", 0.8}};
    case 33: return {{"a1", 0.5}, {"a2", 0.2}, {"a3", 0.3}};
    case 34: return {{"k", 0.05}};
    case 35: return {{"a1", 1.5}, {"a2", 0.7}};
    default: return {};
  }
}

ExplicitCondition build_explicit(int id) {
  return make_explicit_condition(id, explicit_params(id),
                                 id == 17 ? std::optional(ComparisonFunction::linear(0.7))
                                          : std::nullopt);
}

}  // namespace

TEST_CASE("the zero tuple satisfies every explicit condition") {
  for (int id = explicit_condition_min_id(); id <= explicit_condition_max_id(); ++id) {
    INFO("condition ", id);
    const auto cond = build_explicit(id);
    CHECK(cond.satisfied({0, 0, 0, 0, 0, 0}));
    CHECK(cond.implicit({0, 0, 0, 0, 0, 0}) <= 0.0);
  }
}

TEST_CASE("explicit and implicit routes agree on 10^4 random tuples per condition") {
  std::mt19937_64 rng(99);
  for (int id = explicit_condition_min_id(); id <= explicit_condition_max_id(); ++id) {
    INFO("condition ", id);
    const auto cond = build_explicit(id);
    std::size_t boundary = 0;
    for (int it = 0; it < 10000; ++it) {
      const SixTuple t = random_tuple(rng);
      const double gval = cond.implicit(t);
      const bool lhs = gval <= 0.0;
      const bool rhs = cond.satisfied(t);
      if (std::fabs(gval) <= 1e-12) {
        ++boundary;  // both routes sit on the numeric boundary; either sign is fine
        continue;
      }
      CHECK(lhs == rhs);
    }
    CHECK(boundary < 100);
  }
}

TEST_CASE("explicit condition parameter ranges are enforced") {
  CHECK_THROWS_AS(make_explicit_condition(16, {{"k", 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_explicit_condition(18, {{"k", 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(make_explicit_condition(27, {{"k", 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(make_explicit_condition(15, {{"k", 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(make_explicit_condition(36, {{"k", 0.5}}), std::invalid_argument);
}

TEST_CASE("condition 34 keeps its printed wide range but only certifies phi below 1/11") {
  const auto tight = make_explicit_condition(34, {{"k", 0.05}});
  CHECK(tight.implicit.declared_g1());
  const auto wide = make_explicit_condition(34, {{"k", 0.5}});
  CHECK_FALSE(wide.implicit.declared_g1());
  // Both routes still agree.
  std::mt19937_64 rng(5);
  for (int it = 0; it < 1000; ++it) {
    const SixTuple t = random_tuple(rng);
    const double gval = wide.implicit(t);
    if (std::fabs(gval) <= 1e-12) continue;
    CHECK((gval <= 0.0) == wide.satisfied(t));
  }
}

TEST_CASE("tail bounds: closed forms for linear comparison functions") {
  const auto quarter = ComparisonFunction::linear(0.25);
  CHECK(phi_tail_bound(quarter, 8.0, 1) == doctest::Approx(8.0 / 3.0));
  CHECK(phi_tail_bound(quarter, 0.0, 3) == 0.0);

  const auto nine = ComparisonFunction::linear(0.9);
  CHECK(phi_tail_bound(nine, 1.0, 10) == doctest::Approx(std::pow(0.9, 10) / 0.1));

  // Monotone decreasing in n.
  double prev = phi_tail_bound(nine, 1.0, 0);
  for (std::size_t n = 1; n < 20; ++n) {
    const double cur = phi_tail_bound(nine, 1.0, n);
    CHECK(cur <= prev + 1e-15);
    prev = cur;
  }
}

TEST_CASE("tail bounds dominate truncated sums for all families") {
  const std::vector<ComparisonFunction> phis = {
      ComparisonFunction::linear(0.5),
      ComparisonFunction::linear(0.95),
      ComparisonFunction::power(20.0, 2.0),
      ComparisonFunction::table({{0.0, 0.0}, {1.0, 0.4}, {5.0, 2.0}, {10.0, 6.0}}),
  };
  for (const auto& phi : phis) {
    for (double t0 : {0.1, 1.0, 7.5}) {
      for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{5}}) {
        double partial = 0.0;
        for (std::size_t j = n; j < n + 50; ++j) partial += phi.iterate(t0, j);
        CHECK(phi.tail_bound(t0, n) >= partial - 1e-12);
      }
    }
  }
}

TEST_CASE("non-summable candidates are rejected") {
  CHECK_THROWS_AS(ComparisonFunction::linear(1.0), PhiCertificationError);
  CHECK_THROWS_AS(ComparisonFunction::linear(-0.1), PhiCertificationError);
  // phi(t) = t^2/5 exceeds t at the probe 10, so iterates blow up there.
  CHECK_THROWS_AS(ComparisonFunction::power(5.0, 2.0), PhiCertificationError);
  // A table crossing the identity is not certifiable either.
  CHECK_THROWS_AS(ComparisonFunction::table({{0.0, 0.0}, {1.0, 1.2}}), PhiCertificationError);
  // Table constraints.
  CHECK_THROWS_AS(ComparisonFunction::table({{1.0, 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(ComparisonFunction::table({{0.0, 0.0}, {1.0, 0.5}, {2.0, 0.2}}),
                  std::invalid_argument);
}

TEST_CASE("comparison function basics") {
  const auto half = ComparisonFunction::linear(0.5);
  CHECK(half(2.0) == 1.0);
  CHECK(half.iterate(8.0, 3) == 1.0);
  CHECK(half(0.0) == 0.0);
  CHECK(half(-1.0) == 0.0);

  const auto quad = ComparisonFunction::power(20.0, 2.0);
  CHECK(quad(10.0) == doctest::Approx(5.0));
  CHECK(quad(0.0) == 0.0);

  const auto tab = ComparisonFunction::table({{0.0, 0.0}, {2.0, 1.0}, {4.0, 1.5}});
  CHECK(tab(1.0) == doctest::Approx(0.5));
  CHECK(tab(3.0) == doctest::Approx(1.25));
  CHECK(tab(8.0) == doctest::Approx(2.5));  // final slope continues
}

TEST_CASE("linear combinations compute their flags from the coefficients") {
  const auto g = make_linear_combination({1.0, 0.0, -0.6, -0.6, 0.0, 0.0});
  CHECK_FALSE(g.declared_g1());  // reduction slope 3/2 is not summable
  CHECK(g.declared_g2());        // 1 - 0.6 = 0.4 > 0
  CHECK(g.declared_g3());        // 1 > 0
  CHECK_FALSE(g.phi().has_value());

  CHECK_THROWS_AS(make_linear_combination({0.0, 1, 1, 1, 1, 1}), std::invalid_argument);

  const auto increasing5 = make_linear_combination({1.0, -0.5, 0.0, 0.0, 0.2, 0.0});
  CHECK_FALSE(increasing5.declared_g1());
}

TEST_CASE("catalog listing covers all forms and conditions") {
  const auto listing = catalog_listing();
  CHECK(listing.size() == 36);  // 16 forms + 20 printed conditions
}
