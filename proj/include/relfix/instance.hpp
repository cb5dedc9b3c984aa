#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "relfix/contraction.hpp"
#include "relfix/metric_space.hpp"
#include "relfix/relation.hpp"
#include "relfix/solver.hpp"
#include "relfix/urysohn.hpp"
#include "relfix/verifier.hpp"

namespace relfix {

/// Malformed or unreadable instance input (maps to CLI exit code 2).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct SolverOptions {
  std::optional<std::size_t> x0;
  double tol = 1e-10;
  std::size_t max_iter = 100000;
  ConclusionRank require = ConclusionRank::coincidence;
};

struct FiniteInstance {
  std::string name;
  std::string comment;
  FiniteMetricSpace space;
  Relation relation;
  MappingPair pair;
  ImplicitRelation contraction;
  /// Present when the contraction was given as an explicit printed
  /// inequality; carries the independent predicate route.
  std::optional<ExplicitCondition> explicit_form;
  SolverOptions options;
  /// Canonical serialization, produced at parse time.
  std::string canonical_text;
};

struct UrysohnOptions {
  double tol = 1e-8;
  std::size_t max_iter = 500;
};

struct UrysohnInstance {
  std::string name;
  std::string comment;
  UrysohnProblem problem;
  UrysohnOptions options;
  std::string canonical_text;
};

using Instance = std::variant<FiniteInstance, UrysohnInstance>;

/// Loads and validates an instance file; metric axioms are enforced here.
Instance load_instance(const std::string& path);

Instance parse_instance(const std::string& json_text);

/// Canonical serialization (sorted keys, two-space indent, trailing
/// newline); load-then-serialize is idempotent byte-for-byte.
std::string canonical_json(const Instance& instance);

/// FNV-1a over the canonical serialization, as 16 hex digits.
std::string instance_digest(const Instance& instance);

}  // namespace relfix
