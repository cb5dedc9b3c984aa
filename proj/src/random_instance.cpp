#include "relfix/random_instance.hpp"

#include <algorithm>
#include <cmath>

namespace relfix {

std::size_t rand_index(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % n);
}

double rand_real(std::mt19937_64& rng, double a, double b) {
  const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return a + unit * (b - a);
}

namespace {

std::vector<std::string> point_labels(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = "p" + std::to_string(i);
  return labels;
}

Relation closure_completed(std::size_t n, std::vector<IndexPair> edges, const SelfMap& t,
                           const SelfMap& g) {
  // Add (Tx, Ty) whenever (gx, gy) is present until stable, so the result
  // is (T,g)-closed by construction.
  std::vector<char> member(n * n, 0);
  for (const auto& [i, j] : edges) member[i * n + j] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (member[g[x] * n + g[y]] && !member[t[x] * n + t[y]]) {
          member[t[x] * n + t[y]] = 1;
          changed = true;
        }
  }
  std::vector<IndexPair> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (member[i * n + j]) out.emplace_back(i, j);
  return Relation(n, out);
}

ImplicitRelation designed_contraction(std::mt19937_64& rng) {
  switch (rand_index(rng, 7)) {
    case 0:
      return make_catalog(CatalogId::I, {{"k", rand_real(rng, 0.55, 0.95)}});
    case 1:
      return make_catalog(CatalogId::II, {},
                          ComparisonFunction::linear(rand_real(rng, 0.55, 0.95)));
    case 2: {
      const double a1 = rand_real(rng, 0.55, 0.8);
      const double rest = (1.0 - a1) / 2.0 * 0.8;
      return make_catalog(CatalogId::V, {{"a1", a1},
                                         {"a2", rand_real(rng, 0.0, rest / 2.0)},
                                         {"a3", rand_real(rng, 0.0, rest / 2.0)}});
    }
    case 3:
      return make_catalog(CatalogId::VI, {{"k", rand_real(rng, 0.55, 0.95)},
                                          {"L", rand_real(rng, 0.0, 2.0)}});
    case 4:
      return make_catalog(CatalogId::VII, {{"k", rand_real(rng, 0.55, 0.95)},
                                           {"L", rand_real(rng, 0.0, 2.0)}});
    case 5: {
      const double a1 = rand_real(rng, 0.55, 0.8);
      const double eps = rand_real(rng, 0.005, 0.03);
      return make_catalog(CatalogId::IX, {{"a1", a1},
                                          {"a2", eps},
                                          {"a3", eps},
                                          {"a4", eps},
                                          {"a5", eps}});
    }
    default:
      return make_catalog(CatalogId::X, {{"k", rand_real(rng, 0.55, 0.95)}});
  }
}

ImplicitRelation any_valid_contraction(std::mt19937_64& rng) {
  switch (rand_index(rng, 10)) {
    case 0:
      return make_catalog(CatalogId::I, {{"k", rand_real(rng, 0.0, 0.99)}});
    case 1:
      return make_catalog(CatalogId::III, {{"k", rand_real(rng, 0.0, 0.49)}});
    case 2:
      return make_catalog(CatalogId::IV, {{"k", rand_real(rng, 0.0, 0.49)}});
    case 3:
      return make_catalog(CatalogId::VIII, {{"k", rand_real(rng, 0.0, 0.49)}});
    case 4:
      return make_catalog(CatalogId::X, {{"k", rand_real(rng, 0.0, 0.99)}});
    case 5:
      return make_catalog(CatalogId::XI, {{"k", rand_real(rng, 0.0, 0.9)},
                                          {"a", rand_real(rng, 0.0, 0.45)},
                                          {"b", rand_real(rng, 0.0, 0.45)}});
    case 6:
      return make_catalog(CatalogId::XIII, {{"k", rand_real(rng, 0.0, 0.99)}});
    case 7:
      return make_catalog(CatalogId::XV, {{"k", rand_real(rng, 0.0, 0.09)}});
    case 8:
      return make_catalog(CatalogId::XVI, {{"a1", rand_real(rng, 0.1, 1.9)},
                                           {"a2", rand_real(rng, 0.1, 1.5)}});
    default:
      return designed_contraction(rng);
  }
}

RandomInstance designed_instance(std::mt19937_64& rng, const GeneratorOptions& options) {
  const std::size_t n =
      options.min_points + rand_index(rng, options.max_points - options.min_points + 1);

  // Geometric coordinates 0, s, 3s, 7s, ...: mapping index i to max(i-1, 0)
  // halves every distance exactly.
  const double s = 0.25 * static_cast<double>(1 + rand_index(rng, 8));
  std::vector<double> coords(n);
  for (std::size_t i = 0; i < n; ++i)
    coords[i] = s * (std::pow(2.0, static_cast<double>(i)) - 1.0);

  const std::size_t depth = 1 + rand_index(rng, 2);
  SelfMap g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = i;
  if (rand_index(rng, 2) == 0) {
    for (std::size_t i = n; i-- > 1;) std::swap(g[i], g[rand_index(rng, i + 1)]);
  }
  SelfMap t(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t gx = g[i];
    t[i] = gx > depth ? gx - depth : 0;
  }

  // Seed edges: a guaranteed starting pair, some diagonal, some noise.
  std::vector<IndexPair> edges;
  const std::size_t x0 = rand_index(rng, n);
  edges.emplace_back(g[x0], t[x0]);
  for (std::size_t i = 0; i < n; ++i)
    if (rand_index(rng, 2) == 0) edges.emplace_back(i, i);
  const std::size_t noise = rand_index(rng, n * n / 2 + 1);
  for (std::size_t e = 0; e < noise; ++e)
    edges.emplace_back(rand_index(rng, n), rand_index(rng, n));
  Relation relation = closure_completed(n, std::move(edges), t, g);

  // Y contains T(X) and random extras; g is bijective so Y stays inside g(X).
  std::vector<char> in_y(n, 0);
  for (std::size_t i = 0; i < n; ++i) in_y[t[i]] = 1;
  for (std::size_t i = 0; i < n; ++i)
    if (rand_index(rng, 3) == 0) in_y[i] = 1;
  std::vector<std::size_t> y;
  for (std::size_t i = 0; i < n; ++i)
    if (in_y[i]) y.push_back(i);

  FiniteMetricSpace space =
      FiniteMetricSpace::from_coordinates(point_labels(n), coords, std::move(y));
  return RandomInstance{std::move(space), MappingPair(std::move(t), std::move(g)),
                        std::move(relation), designed_contraction(rng)};
}

RandomInstance unconstrained_instance(std::mt19937_64& rng, const GeneratorOptions& options) {
  const std::size_t n =
      options.min_points + rand_index(rng, options.max_points - options.min_points + 1);

  // Distinct multiples of 1/4 keep every positive distance at least 0.25.
  std::vector<double> ticks;
  for (std::size_t i = 0; i < 4 * n; ++i) ticks.push_back(0.25 * static_cast<double>(i));
  for (std::size_t i = ticks.size(); i-- > 1;) std::swap(ticks[i], ticks[rand_index(rng, i + 1)]);
  std::vector<double> coords(ticks.begin(), ticks.begin() + static_cast<long>(n));

  SelfMap t(n), g(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = rand_index(rng, n);
    g[i] = rand_index(rng, n);
  }

  std::vector<IndexPair> edges;
  edges.emplace_back(rand_index(rng, n), rand_index(rng, n));
  const std::size_t extra = rand_index(rng, n * n);
  for (std::size_t e = 0; e < extra; ++e)
    edges.emplace_back(rand_index(rng, n), rand_index(rng, n));

  std::vector<std::size_t> y;
  for (std::size_t i = 0; i < n; ++i)
    if (rand_index(rng, 2) == 0) y.push_back(i);
  if (y.empty()) y.push_back(rand_index(rng, n));

  FiniteMetricSpace space =
      FiniteMetricSpace::from_coordinates(point_labels(n), coords, std::move(y));
  return RandomInstance{std::move(space), MappingPair(std::move(t), std::move(g)),
                        Relation(n, edges), any_valid_contraction(rng)};
}

}  // namespace

RandomInstance random_instance(std::mt19937_64& rng, const GeneratorOptions& options) {
  return options.designed_pass ? designed_instance(rng, options)
                               : unconstrained_instance(rng, options);
}

}  // namespace relfix
