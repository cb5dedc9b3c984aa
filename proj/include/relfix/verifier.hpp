#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relfix/contraction.hpp"
#include "relfix/metric_space.hpp"
#include "relfix/relation.hpp"
#include "relfix/solver.hpp"

namespace relfix {

enum class HypothesisStatus { holds, fails, asserted, not_applicable };

const char* to_string(HypothesisStatus s);

struct HypothesisVerdict {
  std::string id;
  HypothesisStatus status = HypothesisStatus::holds;
  std::string witness;
  std::string detail;
};

enum class ConclusionRank {
  none = 0,
  coincidence = 1,
  point_of_coincidence_unique = 2,
  common_fixed_point_unique = 3,
};

const char* to_string(ConclusionRank rank);
std::optional<ConclusionRank> rank_from_string(std::string_view text);

struct ContractionCheck {
  bool holds = true;
  std::size_t related_pairs = 0;
  /// Pair maximising G among related pairs with d(gx,gy) > 0 (all related
  /// pairs when none is separated).
  std::optional<IndexPair> worst_pair;
  double worst_value = 0.0;
  /// Violating pair maximising G, present when !holds.
  std::optional<IndexPair> witness;
  double witness_value = 0.0;
};

/// Evaluates G on the six-tuple of every ordered pair (x, y) with
/// (gx, gy) related; holds when every value is <= 1e-12. Pair scanning is
/// split across `workers` threads with a deterministic reduction.
ContractionCheck check_contraction(const FiniteMetricSpace& space, const MappingPair& pair,
                                   const Relation& r, const ImplicitRelation& g,
                                   std::size_t workers = 1);

/// Same scan driven by an explicit printed inequality.
ContractionCheck check_contraction(const FiniteMetricSpace& space, const MappingPair& pair,
                                   const Relation& r, const ExplicitCondition& condition,
                                   std::size_t workers = 1);

struct CoincidenceSets {
  std::vector<std::size_t> coincidence_points;     // {x : Tx = gx}
  std::vector<std::size_t> points_of_coincidence;  // {gx : Tx = gx}
  std::vector<std::size_t> common_fixed_points;    // {z : z = Tz = gz}
};

CoincidenceSets brute_force_coincidence(const MappingPair& pair);

struct PathTableEntry {
  std::size_t alpha = 0, beta = 0;
  std::optional<GPath> path;
};

struct U1Report {
  bool holds = true;
  std::vector<PathTableEntry> table;
  std::size_t max_length = 0;
};

/// For every alpha, beta in T(X): a g-path through the symmetrised
/// restriction of R to g(X), with the interior condition.
U1Report check_u1(const MappingPair& pair, const Relation& r);

struct U1Alternatives {
  bool u1_prime = false;  // restriction of R to g(X) is complete
  std::optional<IndexPair> u1_prime_witness;
  bool u1_dprime = false;  // T(X) directed + admissible hubs start the iteration
  std::string u1_dprime_detail;
};

U1Alternatives check_u1_alternatives(const MappingPair& pair, const Relation& r);

struct CompatibilityReport {
  bool holds = true;
  std::string rationale;
  std::optional<std::size_t> violating_point;
};

/// Finite-space compatibility: for every point of coincidence v reachable
/// as the constant tail of R-preserving image sequences (which forces
/// (v,v) in R), g and T must agree at v.
CompatibilityReport check_compatibility_finite(const MappingPair& pair, const Relation& r);

struct CompatibilityOracleResult {
  bool holds = true;
  std::vector<std::size_t> witness_sequence;
};

/// Independent route: enumerates every sequence of length <= max_len whose
/// T- and g-image sequences, extended by their constant tails, are
/// R-preserving and share a limit, and tests d(g(limit-source)...) -> 0
/// directly.
CompatibilityOracleResult compatibility_oracle(const FiniteMetricSpace& space,
                                               const MappingPair& pair, const Relation& r,
                                               std::size_t max_len);

struct VerifyOptions {
  double tol = 1e-12;
  std::size_t workers = 1;
};

struct VerificationReport {
  std::vector<HypothesisVerdict> verdicts;
  ContractionCheck contraction;
  U1Report u1;
  CoincidenceSets brute;
  ConclusionRank rank = ConclusionRank::none;
  bool cross_check_ok = true;
  std::string cross_check_note;

  const HypothesisVerdict* find(std::string_view id) const;
  bool hypothesis_holds(std::string_view id) const;
};

/// Decides every hypothesis on the finite instance, assigns the licensed
/// conclusion rank and cross-validates unique ranks against brute force.
VerificationReport verify(const FiniteMetricSpace& space, const MappingPair& pair,
                          const Relation& r, const ImplicitRelation& g,
                          const VerifyOptions& options = {});

}  // namespace relfix
