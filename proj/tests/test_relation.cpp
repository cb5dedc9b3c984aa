#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "relfix/random_instance.hpp"
#include "relfix/relation.hpp"

using namespace relfix;

namespace {

// Value set {0, 1, 2} of the three-value relation used across the suite:
// {(0,0),(1,1),(2,2),(0,1),(0,2),(1,2)}.
Relation three_value_relation() {
  return Relation(3, {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}});
}

// Independent oracle for (T,g)-closedness: plain double loop, no early exit
// machinery shared with the implementation.
bool tg_closed_oracle(const Relation& r, const SelfMap& t, const SelfMap& g) {
  for (std::size_t x = 0; x < r.point_count(); ++x)
    for (std::size_t y = 0; y < r.point_count(); ++y)
      if (r.contains(g[x], g[y]) && !r.contains(t[x], t[y])) return false;
  return true;
}

SelfMap identity(std::size_t n) {
  SelfMap m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = i;
  return m;
}

Relation random_relation(std::mt19937_64& rng, std::size_t n) {
  std::vector<IndexPair> edges{{rand_index(rng, n), rand_index(rng, n)}};
  const std::size_t extra = rand_index(rng, n * n);
  for (std::size_t e = 0; e < extra; ++e)
    edges.emplace_back(rand_index(rng, n), rand_index(rng, n));
  return Relation(n, edges);
}

SelfMap random_map(std::mt19937_64& rng, std::size_t n) {
  SelfMap m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = rand_index(rng, n);
  return m;
}

}  // namespace

TEST_CASE("construction rejects empty or out-of-range edge sets") {
  CHECK_THROWS_AS(Relation(3, {}), std::invalid_argument);
  CHECK_THROWS_AS(Relation(2, {{0, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(Relation(0, {{0, 0}}), std::invalid_argument);
}

TEST_CASE("symmetric closure of the three-value relation adds the three transposes") {
  const Relation r = three_value_relation();
  const Relation s = r.symmetric_closure();
  CHECK(s.edge_count() == 9);
  CHECK(s.contains(1, 0));
  CHECK(s.contains(2, 0));
  CHECK(s.contains(2, 1));
  for (const auto& [i, j] : r.edges()) CHECK(s.contains(i, j));
}

TEST_CASE("symmetric closure fixes symmetric relations") {
  const Relation diag(3, {{0, 0}, {1, 1}, {2, 2}});
  CHECK(diag.symmetric_closure().edges() == diag.edges());

  const Relation single(4, {{1, 3}});
  const Relation closed = single.symmetric_closure();
  CHECK(closed.edge_count() == 2);
  CHECK(closed.contains(1, 3));
  CHECK(closed.contains(3, 1));
}

TEST_CASE("symmetric closure is idempotent and monotone on random relations") {
  std::mt19937_64 rng(101);
  for (int it = 0; it < 200; ++it) {
    const std::size_t n = 2 + rand_index(rng, 5);
    const Relation r = random_relation(rng, n);
    const Relation s = r.symmetric_closure();
    CHECK(s.symmetric_closure().edges() == s.edges());
    CHECK(s.edge_count() >= r.edge_count());
    for (const auto& [i, j] : r.edges()) CHECK(s.contains(i, j));
    CHECK(s.is_symmetric());
  }
}

TEST_CASE("the four-point fixture relation is (T,g)-closed") {
  // Labels 0, 0.5, 1, 2 as indices 0..3; T = (0,0,0,1-value) and g keeps
  // value classes.
  const Relation r(4, {{0, 0}, {2, 2}, {3, 3}, {0, 2}, {0, 3}, {2, 3}});
  const SelfMap t{0, 0, 0, 2};
  const SelfMap g{0, 0, 2, 3};
  const auto res = is_tg_closed(r, t, g);
  CHECK(res.holds);
  CHECK_FALSE(res.witness.has_value());
}

TEST_CASE("identity maps make every relation (T,g)-closed") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 50; ++it) {
    const std::size_t n = 2 + rand_index(rng, 4);
    const Relation r = random_relation(rng, n);
    CHECK(is_tg_closed(r, identity(n), identity(n)).holds);
  }
}

TEST_CASE("a swap violating the relation is caught with its witness") {
  const Relation r(2, {{0, 1}});
  const SelfMap t{1, 0};  // swaps the points; (1,0) is not an edge
  const auto res = is_tg_closed(r, t, identity(2));
  REQUIRE_FALSE(res.holds);
  REQUIRE(res.witness.has_value());
  CHECK(res.witness->first == 0);
  CHECK(res.witness->second == 1);
}

TEST_CASE("is_t_closed equals is_tg_closed with identity g") {
  std::mt19937_64 rng(42);
  for (int it = 0; it < 300; ++it) {
    const std::size_t n = 2 + rand_index(rng, 5);
    const Relation r = random_relation(rng, n);
    const SelfMap t = random_map(rng, n);
    const auto direct = is_t_closed(r, t);
    const auto via_g = is_tg_closed(r, t, identity(n));
    CHECK(direct.holds == via_g.holds);
    CHECK(direct.holds == tg_closed_oracle(r, t, identity(n)));
  }
}

TEST_CASE("the fixture T with identity g is T-closed") {
  const Relation r(4, {{0, 0}, {2, 2}, {3, 3}, {0, 2}, {0, 3}, {2, 3}});
  const SelfMap t{0, 0, 0, 2};
  CHECK(is_t_closed(r, t).holds == tg_closed_oracle(r, t, identity(4)));
  CHECK(is_t_closed(r, t).holds);
}

TEST_CASE("constant T is T-closed when the target carries a loop") {
  const Relation reflexive(3, {{0, 0}, {1, 1}, {2, 2}, {0, 1}});
  const SelfMap constant{1, 1, 1};
  CHECK(is_t_closed(reflexive, constant).holds);
}

TEST_CASE("completeness of subsets") {
  const Relation r = three_value_relation();
  const std::vector<std::size_t> all{0, 1, 2};
  CHECK(is_complete_relation(r, all));

  const std::vector<std::size_t> singleton{1};
  CHECK(is_complete_relation(r, singleton));

  const Relation sparse(3, {{0, 0}, {1, 1}, {2, 2}});
  CHECK_FALSE(is_complete_relation(sparse, all));
  const auto witness = completeness_witness(sparse, all);
  REQUIRE(witness.has_value());
  CHECK(witness->first == 0);
  CHECK(witness->second == 1);
}

TEST_CASE("directedness: singleton with a loop through g") {
  const Relation r(2, {{0, 0}});
  const SelfMap g = identity(2);
  const std::vector<std::size_t> d{0};
  const auto res = is_g_directed(d, g, r);
  CHECK(res.holds);
  REQUIRE(res.witnesses.size() == 1);
  CHECK(res.witnesses.front().second == 0);
  CHECK(res.delta == std::vector<std::size_t>{0});
}

TEST_CASE("directedness on the fixture T-image, decided against a scan oracle") {
  const Relation r(4, {{0, 0}, {2, 2}, {3, 3}, {0, 2}, {0, 3}, {2, 3}});
  const Relation rs = r.symmetric_closure();
  const SelfMap g{0, 0, 2, 3};
  const std::vector<std::size_t> t_image{0, 2};
  const auto res = is_g_directed(t_image, g, rs);

  bool oracle = true;
  for (std::size_t a : t_image)
    for (std::size_t b : t_image) {
      bool found = false;
      for (std::size_t z = 0; z < 4 && !found; ++z)
        found = rs.contains(a, g[z]) && rs.contains(b, g[z]);
      oracle = oracle && found;
    }
  CHECK(res.holds == oracle);
  CHECK(res.holds);
}

TEST_CASE("directedness fails when some pair has no hub") {
  const Relation r(3, {{0, 0}, {1, 1}});
  const SelfMap g = identity(3);
  const std::vector<std::size_t> d{0, 1};
  const auto res = is_g_directed(d, g, r);
  CHECK_FALSE(res.holds);
  REQUIRE(res.failing_pair.has_value());
}

TEST_CASE("R-preserving sequences") {
  const Relation r = three_value_relation();
  const std::vector<std::size_t> good{0, 1, 2, 2};
  CHECK(is_r_preserving(good, r));
  const std::vector<std::size_t> bad{2, 1};
  CHECK_FALSE(is_r_preserving(bad, r));
  const std::vector<std::size_t> single{2};
  CHECK(is_r_preserving(single, r));
}

TEST_CASE("g-path search on the fixture finds a short interior-admissible path") {
  const Relation r(4, {{0, 0}, {2, 2}, {3, 3}, {0, 2}, {0, 3}, {2, 3}});
  const SelfMap g{0, 0, 2, 3};
  const SelfMap t{0, 0, 0, 2};
  const auto g_image = std::vector<std::size_t>{0, 2, 3};
  const Relation restricted = r.restricted_to(g_image).symmetric_closure();

  const auto path = find_g_path(restricted, g, t, 0, 2, true, 4);
  REQUIRE(path.has_value());
  CHECK(path->length() <= 2);
  CHECK(path->validate(restricted, g, t, 0, 2, true));
}

TEST_CASE("constant path when the endpoint relates to itself") {
  const Relation r(3, {{1, 1}});
  SelfMap g = identity(3);
  SelfMap t = identity(3);
  const auto path = find_g_path(r, g, t, 1, 1, true, 3);
  REQUIRE(path.has_value());
  CHECK(path->length() == 1);
  CHECK(path->witnesses == std::vector<std::size_t>{1, 1});
  CHECK(path->validate(r, g, t, 1, 1, true));
}

TEST_CASE("disconnected endpoints admit no path") {
  const Relation r(4, {{0, 1}, {2, 3}});
  SelfMap g = identity(4);
  SelfMap t = identity(4);
  CHECK_FALSE(find_g_path(r, g, t, 0, 3, false, 4).has_value());
}

TEST_CASE("endpoints outside the g-image are rejected") {
  const Relation r(3, {{0, 1}});
  const SelfMap g{0, 0, 1};  // image {0, 1}; 2 has no preimage
  const SelfMap t = identity(3);
  CHECK_THROWS_WITH_AS(static_cast<void>(find_g_path(r, g, t, 0, 2, false, 3)),
                       "endpoint has no g-preimage", std::invalid_argument);
}

TEST_CASE("interior condition actually constrains the path") {
  // 0 -> 1 -> 2 is the only chain, but the interior vertex 1 has [g1, T1]
  // unrelated, so the constrained search must fail.
  const Relation r(3, {{0, 1}, {1, 2}});
  SelfMap g = identity(3);
  const SelfMap t{0, 0, 2};  // [1, T1] = [1, 0]: (1,0) and (0,1) give [g1,T1] related...
  // Use a T whose image at 1 is unrelated to 1 instead.
  const Relation r2(4, {{0, 1}, {1, 2}});
  SelfMap g2 = identity(4);
  const SelfMap t2{0, 3, 2, 3};  // [1, 3] never related
  CHECK(find_g_path(r2, g2, t2, 0, 2, false, 4).has_value());
  CHECK_FALSE(find_g_path(r2, g2, t2, 0, 2, true, 4).has_value());
  CHECK(find_g_path(r, g, t, 0, 2, true, 3).has_value());
}

TEST_CASE("returned paths re-validate on random instances") {
  std::mt19937_64 rng(555);
  for (int it = 0; it < 200; ++it) {
    const std::size_t n = 2 + rand_index(rng, 5);
    const Relation r = random_relation(rng, n);
    const SelfMap g = random_map(rng, n);
    const SelfMap t = random_map(rng, n);
    const bool interior = rand_index(rng, 2) == 0;
    const std::size_t alpha = g[rand_index(rng, n)];
    const std::size_t beta = g[rand_index(rng, n)];
    const auto path = find_g_path(r, g, t, alpha, beta, interior, n);
    if (path) {
      CHECK(path->validate(r, g, t, alpha, beta, interior));
      CHECK(path->length() >= 1);
      CHECK(path->length() <= n);
    }
  }
}

TEST_CASE("order relation of the usual order on three points") {
  const auto leq = [](std::size_t i, std::size_t j) { return i <= j; };
  const Relation order = order_relation(3, leq);
  CHECK(order.edge_count() == 6);
  const Relation comp = comparability_relation(3, leq);
  CHECK(comp.edge_count() == 9);
}

TEST_CASE("antichain order relation is the diagonal") {
  const auto leq = [](std::size_t i, std::size_t j) { return i == j; };
  const Relation order = order_relation(2, leq);
  CHECK(order.edge_count() == 2);
  CHECK(order.contains(0, 0));
  CHECK(order.contains(1, 1));
}

TEST_CASE("chains of n points yield n(n+1)/2 order edges") {
  for (std::size_t n = 1; n <= 7; ++n) {
    const auto leq = [](std::size_t i, std::size_t j) { return i <= j; };
    const Relation order = order_relation(n, leq);
    // Enumeration oracle.
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i <= j) ++count;
    CHECK(order.edge_count() == count);
    CHECK(count == n * (n + 1) / 2);
  }
}

TEST_CASE("comparability equals the symmetric closure of the order relation") {
  // A diamond partial order: 0 below 1 and 2, both below 3.
  const auto leq = [](std::size_t i, std::size_t j) {
    if (i == j) return true;
    if (i == 0) return true;
    if (j == 3) return true;
    return false;
  };
  const Relation comp = comparability_relation(4, leq);
  const Relation closure = order_relation(4, leq).symmetric_closure();
  CHECK(comp.edges() == closure.edges());
  CHECK(comp.is_symmetric());
}

TEST_CASE("partial-order axiom violations are rejected with a witness") {
  const auto not_reflexive = [](std::size_t i, std::size_t j) { return i < j; };
  CHECK_THROWS_AS(order_relation(2, not_reflexive), std::invalid_argument);

  const auto not_antisymmetric = [](std::size_t, std::size_t) { return true; };
  CHECK_THROWS_AS(order_relation(2, not_antisymmetric), std::invalid_argument);

  // 0 <= 1 and 1 <= 2 but not 0 <= 2.
  const auto not_transitive = [](std::size_t i, std::size_t j) {
    return i == j || (i == 0 && j == 1) || (i == 1 && j == 2);
  };
  try {
    order_relation(3, not_transitive);
    FAIL("expected a transitivity rejection");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("transitivity") != std::string::npos);
  }
}

TEST_CASE("restriction keeps only inside edges and may be empty") {
  const Relation r = three_value_relation();
  const std::vector<std::size_t> sub{0, 1};
  const Relation restricted = r.restricted_to(sub);
  CHECK(restricted.edge_count() == 3);  // (0,0), (1,1), (0,1)
  CHECK(restricted.contains(0, 1));
  CHECK_FALSE(restricted.contains(0, 2));

  const Relation edgeless = Relation(3, {{0, 1}}).restricted_to(std::vector<std::size_t>{2});
  CHECK(edgeless.edge_count() == 0);
  CHECK_FALSE(edgeless.contains(2, 2));
}
