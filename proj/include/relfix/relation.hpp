#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace relfix {

/// Total self-map on an indexed point set: entry i is the image of point i.
using SelfMap = std::vector<std::size_t>;

using IndexPair = std::pair<std::size_t, std::size_t>;

/// Binary relation over points {0, ..., n-1} with O(1) membership lookup.
///
/// A relation built through the public constructor always has at least one
/// edge; relations derived by restriction may come out empty and behave as
/// "no pair related".
class Relation {
 public:
  Relation(std::size_t point_count, const std::vector<IndexPair>& edges);

  std::size_t point_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return count_; }

  bool contains(std::size_t i, std::size_t j) const;
  /// [i,j]: (i,j) or (j,i) is an edge.
  bool contains_either(std::size_t i, std::size_t j) const;
  bool is_symmetric() const;

  /// Edge list sorted lexicographically.
  std::vector<IndexPair> edges() const;

  /// Union with the transpose relation.
  Relation symmetric_closure() const;

  /// Edges with both endpoints in `subset`; the result may be empty.
  Relation restricted_to(std::span<const std::size_t> subset) const;

 private:
  Relation() = default;

  std::size_t n_ = 0;
  std::size_t count_ = 0;
  std::vector<char> member_;
};

struct ClosednessResult {
  bool holds = true;
  std::optional<IndexPair> witness;  // (x, y) violating the implication
};

/// (T,g)-closedness: (gx, gy) in R implies (Tx, Ty) in R for all x, y.
ClosednessResult is_tg_closed(const Relation& r, const SelfMap& t, const SelfMap& g);

/// T-closedness: the g = identity case of is_tg_closed.
ClosednessResult is_t_closed(const Relation& r, const SelfMap& t);

/// Every pair of points of `subset` is comparable: [x,y] in R.
bool is_complete_relation(const Relation& r, std::span<const std::size_t> subset);

/// First non-comparable pair of `subset`, if any.
std::optional<IndexPair> completeness_witness(const Relation& r,
                                              std::span<const std::size_t> subset);

struct DirectednessResult {
  bool holds = true;
  std::optional<IndexPair> failing_pair;
  /// One witness z per (x, y) pair, least index, in pair scan order.
  std::vector<std::pair<IndexPair, std::size_t>> witnesses;
  /// All z admissible for some pair of D (sorted, unique).
  std::vector<std::size_t> delta;
};

/// (g,R)-directedness of D: every pair x,y of D admits z with (x,gz) and
/// (y,gz) in R. Also collects the union of admissible z over all pairs.
DirectednessResult is_g_directed(std::span<const std::size_t> d, const SelfMap& g,
                                 const Relation& r);

/// Consecutive members related: (s_k, s_{k+1}) in R for all k.
bool is_r_preserving(std::span<const std::size_t> sequence, const Relation& r);

/// Witness chain w_0..w_l whose g-images join two points through R.
struct GPath {
  std::vector<std::size_t> witnesses;

  std::size_t length() const { return witnesses.empty() ? 0 : witnesses.size() - 1; }

  /// Re-checks every defining condition of the path.
  bool validate(const Relation& r, const SelfMap& g, const SelfMap& t,
                std::size_t alpha, std::size_t beta, bool interior_condition) const;
};

/// Shortest g-path from alpha to beta of length in [1, max_len], if one
/// exists. Arcs are pairs (u, v) with (gu, gv) in the symmetric closure of
/// `r`; when `interior_condition` is set, interior vertices w must satisfy
/// [gw, Tw] in that closure. Frontier expansion uses least-index order, so
/// the returned path is deterministic.
///
/// Throws std::invalid_argument("endpoint has no g-preimage") when alpha or
/// beta is not a g-image.
std::optional<GPath> find_g_path(const Relation& r, const SelfMap& g, const SelfMap& t,
                                 std::size_t alpha, std::size_t beta,
                                 bool interior_condition, std::size_t max_len);

/// Point-indexed partial-order oracle: leq(i, j) means i precedes j.
using OrderOracle = std::function<bool(std::size_t, std::size_t)>;

/// Relation {(i,j): i <= j} of a partial order. The oracle is checked for
/// reflexivity, antisymmetry and transitivity; a violation is rejected via
/// std::invalid_argument naming a witness.
Relation order_relation(std::size_t point_count, const OrderOracle& leq);

/// Relation {(i,j): i <= j or j <= i}; equals the symmetric closure of
/// order_relation for the same oracle.
Relation comparability_relation(std::size_t point_count, const OrderOracle& leq);

}  // namespace relfix
