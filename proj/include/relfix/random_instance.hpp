#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "relfix/contraction.hpp"
#include "relfix/metric_space.hpp"
#include "relfix/relation.hpp"
#include "relfix/solver.hpp"

namespace relfix {

struct RandomInstance {
  FiniteMetricSpace space;
  MappingPair pair;
  Relation relation;
  ImplicitRelation contraction;
};

struct GeneratorOptions {
  std::size_t min_points = 3;
  std::size_t max_points = 8;
  /// When set, instances are constructed to satisfy the coincidence
  /// hypotheses: geometric coordinates, a halving-type T against a bijective
  /// g, a (T,g)-closure-completed relation seeded with a starting edge, and
  /// a catalog contraction (linear comparison function) dominated by the
  /// halving factor.
  bool designed_pass = false;
};

/// Deterministic given the engine state.
RandomInstance random_instance(std::mt19937_64& rng, const GeneratorOptions& options);

/// Uniform integer in [0, n) from the top bits of the engine.
std::size_t rand_index(std::mt19937_64& rng, std::size_t n);

/// Uniform real in [a, b).
double rand_real(std::mt19937_64& rng, double a, double b);

}  // namespace relfix
