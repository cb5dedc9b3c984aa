#include "relfix/relation.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <string>

namespace relfix {

namespace {

std::string pair_text(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

Relation::Relation(std::size_t point_count, const std::vector<IndexPair>& edges)
    : n_(point_count), member_(point_count * point_count, 0) {
  if (point_count == 0) throw std::invalid_argument("relation needs a non-empty point set");
  if (edges.empty()) throw std::invalid_argument("relation must have a non-empty edge set");
  for (const auto& [i, j] : edges) {
    if (i >= n_ || j >= n_)
      throw std::invalid_argument("relation edge " + pair_text(i, j) + " out of range");
    char& cell = member_[i * n_ + j];
    if (!cell) {
      cell = 1;
      ++count_;
    }
  }
}

bool Relation::contains(std::size_t i, std::size_t j) const {
  return i < n_ && j < n_ && member_[i * n_ + j] != 0;
}

bool Relation::contains_either(std::size_t i, std::size_t j) const {
  return contains(i, j) || contains(j, i);
}

bool Relation::is_symmetric() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (member_[i * n_ + j] != member_[j * n_ + i]) return false;
  return true;
}

std::vector<IndexPair> Relation::edges() const {
  std::vector<IndexPair> out;
  out.reserve(count_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (member_[i * n_ + j]) out.emplace_back(i, j);
  return out;
}

Relation Relation::symmetric_closure() const {
  Relation out;
  out.n_ = n_;
  out.member_.assign(n_ * n_, 0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (member_[i * n_ + j]) {
        if (!out.member_[i * n_ + j]) {
          out.member_[i * n_ + j] = 1;
          ++out.count_;
        }
        if (!out.member_[j * n_ + i]) {
          out.member_[j * n_ + i] = 1;
          ++out.count_;
        }
      }
  return out;
}

Relation Relation::restricted_to(std::span<const std::size_t> subset) const {
  std::vector<char> keep(n_, 0);
  for (std::size_t p : subset)
    if (p < n_) keep[p] = 1;
  Relation out;
  out.n_ = n_;
  out.member_.assign(n_ * n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    if (!keep[i]) continue;
    for (std::size_t j = 0; j < n_; ++j)
      if (keep[j] && member_[i * n_ + j]) {
        out.member_[i * n_ + j] = 1;
        ++out.count_;
      }
  }
  return out;
}

ClosednessResult is_tg_closed(const Relation& r, const SelfMap& t, const SelfMap& g) {
  const std::size_t n = r.point_count();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (r.contains(g[x], g[y]) && !r.contains(t[x], t[y]))
        return {false, IndexPair{x, y}};
  return {true, std::nullopt};
}

ClosednessResult is_t_closed(const Relation& r, const SelfMap& t) {
  SelfMap identity(r.point_count());
  for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = i;
  return is_tg_closed(r, t, identity);
}

std::optional<IndexPair> completeness_witness(const Relation& r,
                                              std::span<const std::size_t> subset) {
  for (std::size_t a = 0; a < subset.size(); ++a)
    for (std::size_t b = a; b < subset.size(); ++b)
      if (!r.contains_either(subset[a], subset[b]))
        return IndexPair{subset[a], subset[b]};
  return std::nullopt;
}

bool is_complete_relation(const Relation& r, std::span<const std::size_t> subset) {
  return !completeness_witness(r, subset).has_value();
}

DirectednessResult is_g_directed(std::span<const std::size_t> d, const SelfMap& g,
                                 const Relation& r) {
  DirectednessResult out;
  const std::size_t n = r.point_count();
  std::set<std::size_t> delta;
  for (std::size_t a = 0; a < d.size(); ++a) {
    for (std::size_t b = a; b < d.size(); ++b) {
      const std::size_t x = d[a];
      const std::size_t y = d[b];
      std::optional<std::size_t> found;
      for (std::size_t z = 0; z < n; ++z) {
        if (r.contains(x, g[z]) && r.contains(y, g[z])) {
          if (!found) found = z;
          delta.insert(z);
        }
      }
      if (found) {
        out.witnesses.push_back({IndexPair{x, y}, *found});
      } else {
        out.holds = false;
        if (!out.failing_pair) out.failing_pair = IndexPair{x, y};
      }
    }
  }
  out.delta.assign(delta.begin(), delta.end());
  return out;
}

bool is_r_preserving(std::span<const std::size_t> sequence, const Relation& r) {
  for (std::size_t k = 0; k + 1 < sequence.size(); ++k)
    if (!r.contains(sequence[k], sequence[k + 1])) return false;
  return true;
}

bool GPath::validate(const Relation& r, const SelfMap& g, const SelfMap& t,
                     std::size_t alpha, std::size_t beta, bool interior_condition) const {
  if (witnesses.size() < 2) return false;
  if (g[witnesses.front()] != alpha || g[witnesses.back()] != beta) return false;
  for (std::size_t i = 0; i + 1 < witnesses.size(); ++i)
    if (!r.contains_either(g[witnesses[i]], g[witnesses[i + 1]])) return false;
  if (interior_condition) {
    for (std::size_t i = 1; i + 1 < witnesses.size(); ++i)
      if (!r.contains_either(g[witnesses[i]], t[witnesses[i]])) return false;
  }
  return true;
}

std::optional<GPath> find_g_path(const Relation& r, const SelfMap& g, const SelfMap& t,
                                 std::size_t alpha, std::size_t beta,
                                 bool interior_condition, std::size_t max_len) {
  const std::size_t n = r.point_count();
  if (max_len < 1) throw std::invalid_argument("max_len must be at least 1");

  bool alpha_ok = false, beta_ok = false;
  for (std::size_t w = 0; w < n; ++w) {
    alpha_ok |= g[w] == alpha;
    beta_ok |= g[w] == beta;
  }
  if (!alpha_ok || !beta_ok) throw std::invalid_argument("endpoint has no g-preimage");

  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent(n, kUnset);
  std::vector<char> visited(n, 0);
  std::vector<std::size_t> frontier;
  for (std::size_t w = 0; w < n; ++w)
    if (g[w] == alpha) {
      visited[w] = 1;
      frontier.push_back(w);
    }

  auto reconstruct = [&](std::size_t last_interior, std::size_t final_vertex) {
    std::vector<std::size_t> chain{final_vertex};
    for (std::size_t v = last_interior; v != kUnset; v = parent[v]) chain.push_back(v);
    std::reverse(chain.begin(), chain.end());
    return GPath{std::move(chain)};
  };

  for (std::size_t level = 0; level < max_len && !frontier.empty(); ++level) {
    std::vector<std::size_t> next;
    for (std::size_t u : frontier) {
      for (std::size_t v = 0; v < n; ++v) {
        if (!r.contains_either(g[u], g[v])) continue;
        if (g[v] == beta) return reconstruct(u, v);
        if (visited[v]) continue;
        if (interior_condition && !r.contains_either(g[v], t[v])) continue;
        visited[v] = 1;
        parent[v] = u;
        next.push_back(v);
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

namespace {

void check_partial_order(std::size_t n, const OrderOracle& leq) {
  for (std::size_t i = 0; i < n; ++i)
    if (!leq(i, i))
      throw std::invalid_argument("partial-order axiom violated: not reflexive at " +
                                  std::to_string(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && leq(i, j) && leq(j, i))
        throw std::invalid_argument("partial-order axiom violated: antisymmetry fails at " +
                                    pair_text(i, j));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (leq(i, j) && leq(j, k) && !leq(i, k))
          throw std::invalid_argument("partial-order axiom violated: transitivity fails at (" +
                                      std::to_string(i) + "," + std::to_string(j) + "," +
                                      std::to_string(k) + ")");
}

}  // namespace

Relation order_relation(std::size_t point_count, const OrderOracle& leq) {
  check_partial_order(point_count, leq);
  std::vector<IndexPair> edges;
  for (std::size_t i = 0; i < point_count; ++i)
    for (std::size_t j = 0; j < point_count; ++j)
      if (leq(i, j)) edges.emplace_back(i, j);
  return Relation(point_count, edges);
}

Relation comparability_relation(std::size_t point_count, const OrderOracle& leq) {
  return order_relation(point_count, leq).symmetric_closure();
}

}  // namespace relfix
