#include "relfix/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <thread>

namespace relfix {

namespace {

constexpr double kTol = 1e-12;

struct PairScanBest {
  bool holds = true;
  std::size_t related = 0;
  double separated_max = 0.0;
  std::optional<IndexPair> separated_pair;
  double overall_max = 0.0;
  std::optional<IndexPair> overall_pair;
};

SixTuple tuple_for(const FiniteMetricSpace& space, const MappingPair& pair, std::size_t x,
                   std::size_t y) {
  const std::size_t tx = pair.t_of(x), ty = pair.t_of(y);
  const std::size_t gx = pair.g_of(x), gy = pair.g_of(y);
  return SixTuple{space.distance(tx, ty), space.distance(gx, gy), space.distance(gx, tx),
                  space.distance(gy, ty), space.distance(gx, ty), space.distance(gy, tx)};
}

template <typename Value>
PairScanBest scan_chunk(const FiniteMetricSpace& space, const MappingPair& pair,
                        const Relation& r, std::size_t x_begin, std::size_t x_end,
                        const Value& value_of) {
  PairScanBest best;
  const std::size_t n = pair.size();
  for (std::size_t x = x_begin; x < x_end; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (!r.contains(pair.g_of(x), pair.g_of(y))) continue;
      ++best.related;
      const SixTuple t = tuple_for(space, pair, x, y);
      const double v = value_of(t);
      if (v > kTol) best.holds = false;
      if (!best.overall_pair || v > best.overall_max) {
        best.overall_max = v;
        best.overall_pair = IndexPair{x, y};
      }
      if (t[1] > 0.0 && (!best.separated_pair || v > best.separated_max)) {
        best.separated_max = v;
        best.separated_pair = IndexPair{x, y};
      }
    }
  }
  return best;
}

template <typename Value>
ContractionCheck run_pair_scan(const FiniteMetricSpace& space, const MappingPair& pair,
                               const Relation& r, std::size_t workers, const Value& value_of) {
  const std::size_t n = pair.size();
  std::vector<PairScanBest> chunks;
  if (workers <= 1 || n < 2 * workers) {
    chunks.push_back(scan_chunk(space, pair, r, 0, n, value_of));
  } else {
    const std::size_t chunk = (n + workers - 1) / workers;
    chunks.resize((n + chunk - 1) / chunk);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < chunks.size(); ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      pool.emplace_back([&, w, begin, end] {
        chunks[w] = scan_chunk(space, pair, r, begin, end, value_of);
      });
    }
    for (auto& th : pool) th.join();
  }
  // Deterministic reduction: chunk order equals ascending x, ties keep the
  // least pair.
  PairScanBest merged;
  for (const auto& c : chunks) {
    merged.holds = merged.holds && c.holds;
    merged.related += c.related;
    if (c.overall_pair && (!merged.overall_pair || c.overall_max > merged.overall_max)) {
      merged.overall_max = c.overall_max;
      merged.overall_pair = c.overall_pair;
    }
    if (c.separated_pair && (!merged.separated_pair || c.separated_max > merged.separated_max)) {
      merged.separated_max = c.separated_max;
      merged.separated_pair = c.separated_pair;
    }
  }
  ContractionCheck out;
  out.holds = merged.holds;
  out.related_pairs = merged.related;
  if (merged.separated_pair) {
    out.worst_pair = merged.separated_pair;
    out.worst_value = merged.separated_max;
  } else if (merged.overall_pair) {
    out.worst_pair = merged.overall_pair;
    out.worst_value = merged.overall_max;
  }
  if (!merged.holds) {
    out.witness = merged.overall_pair;
    out.witness_value = merged.overall_max;
  }
  return out;
}

}  // namespace

const char* to_string(HypothesisStatus s) {
  switch (s) {
    case HypothesisStatus::holds: return "holds";
    case HypothesisStatus::fails: return "fails";
    case HypothesisStatus::asserted: return "asserted";
    case HypothesisStatus::not_applicable: return "not-applicable";
  }
  return "?";
}

const char* to_string(ConclusionRank rank) {
  switch (rank) {
    case ConclusionRank::none: return "none";
    case ConclusionRank::coincidence: return "coincidence";
    case ConclusionRank::point_of_coincidence_unique: return "point-of-coincidence-unique";
    case ConclusionRank::common_fixed_point_unique: return "common-fixed-point-unique";
  }
  return "?";
}

std::optional<ConclusionRank> rank_from_string(std::string_view text) {
  for (auto rank : {ConclusionRank::none, ConclusionRank::coincidence,
                    ConclusionRank::point_of_coincidence_unique,
                    ConclusionRank::common_fixed_point_unique})
    if (text == to_string(rank)) return rank;
  return std::nullopt;
}

ContractionCheck check_contraction(const FiniteMetricSpace& space, const MappingPair& pair,
                                   const Relation& r, const ImplicitRelation& g,
                                   std::size_t workers) {
  return run_pair_scan(space, pair, r, workers, [&g](const SixTuple& t) { return g(t); });
}

ContractionCheck check_contraction(const FiniteMetricSpace& space, const MappingPair& pair,
                                   const Relation& r, const ExplicitCondition& condition,
                                   std::size_t workers) {
  // Satisfied inequalities score negative, violations positive, so the scan
  // verdict matches the predicate while witness selection still works.
  return run_pair_scan(space, pair, r, workers, [&condition](const SixTuple& t) {
    return condition.satisfied(t) ? -1.0 : 1.0;
  });
}

CoincidenceSets brute_force_coincidence(const MappingPair& pair) {
  CoincidenceSets out;
  std::set<std::size_t> points_of;
  for (std::size_t x = 0; x < pair.size(); ++x) {
    if (pair.t_of(x) == pair.g_of(x)) {
      out.coincidence_points.push_back(x);
      points_of.insert(pair.g_of(x));
    }
    if (pair.t_of(x) == x && pair.g_of(x) == x) out.common_fixed_points.push_back(x);
  }
  out.points_of_coincidence.assign(points_of.begin(), points_of.end());
  return out;
}

U1Report check_u1(const MappingPair& pair, const Relation& r) {
  U1Report report;
  const auto g_img = pair.g_image();
  const auto t_img = pair.t_image();
  const Relation restricted = r.restricted_to(g_img).symmetric_closure();
  for (std::size_t alpha : t_img) {
    for (std::size_t beta : t_img) {
      PathTableEntry entry{alpha, beta, std::nullopt};
      // A T-image outside g(X) admits no g-path at all.
      const bool reachable = pair.preimage(alpha).has_value() && pair.preimage(beta).has_value();
      if (reachable)
        entry.path = find_g_path(restricted, pair.g(), pair.t(), alpha, beta,
                                 /*interior_condition=*/true, pair.size());
      if (entry.path) {
        report.max_length = std::max(report.max_length, entry.path->length());
      } else {
        report.holds = false;
      }
      report.table.push_back(std::move(entry));
    }
  }
  return report;
}

U1Alternatives check_u1_alternatives(const MappingPair& pair, const Relation& r) {
  U1Alternatives out;
  const auto g_img = pair.g_image();
  const auto t_img = pair.t_image();

  out.u1_prime_witness = completeness_witness(r.restricted_to(g_img), g_img);
  out.u1_prime = !out.u1_prime_witness.has_value();

  const Relation directed_rel = r.restricted_to(g_img).symmetric_closure();
  const auto directed = is_g_directed(t_img, pair.g(), directed_rel);
  if (!directed.holds) {
    out.u1_dprime = false;
    out.u1_dprime_detail = "T(X) is not directed under the symmetrised restriction";
    return out;
  }
  // Delta over the symmetric closure of the full relation must consist of
  // admissible starting points.
  const Relation r_sym = r.symmetric_closure();
  const auto delta = is_g_directed(t_img, pair.g(), r_sym).delta;
  const auto admissible = starting_points(pair, r_sym);
  for (std::size_t z : delta) {
    if (!std::binary_search(admissible.begin(), admissible.end(), z)) {
      out.u1_dprime = false;
      out.u1_dprime_detail =
          "hub " + std::to_string(z) + " lies outside the admissible starting set";
      return out;
    }
  }
  out.u1_dprime = true;
  out.u1_dprime_detail = "directed with " + std::to_string(delta.size()) + " admissible hubs";
  return out;
}

CompatibilityReport check_compatibility_finite(const MappingPair& pair, const Relation& r) {
  CompatibilityReport report;
  report.rationale =
      "jointly convergent R-preserving image sequences in a finite space are eventually "
      "constant at a common value v with (v,v) in R, so compatibility reduces to g and T "
      "agreeing at every such v";
  for (std::size_t x = 0; x < pair.size(); ++x) {
    if (pair.t_of(x) != pair.g_of(x)) continue;
    const std::size_t v = pair.t_of(x);
    if (!r.contains(v, v)) continue;  // no R-preserving constant tail reaches v
    if (pair.t_of(v) != pair.g_of(v)) {
      report.holds = false;
      report.violating_point = v;
      report.rationale += "; violated at v = " + std::to_string(v);
      return report;
    }
  }
  return report;
}

CompatibilityOracleResult compatibility_oracle(const FiniteMetricSpace& space,
                                               const MappingPair& pair, const Relation& r,
                                               std::size_t max_len) {
  const std::size_t n = pair.size();
  std::vector<std::size_t> seq;
  CompatibilityOracleResult result;

  // Depth-first enumeration of prefixes; each prefix is completed by the
  // constant tail at its last member.
  std::function<bool(std::size_t)> extend = [&](std::size_t depth) -> bool {
    for (std::size_t x = 0; x < n; ++x) {
      if (!seq.empty()) {
        const std::size_t prev = seq.back();
        if (!r.contains(pair.t_of(prev), pair.t_of(x)) ||
            !r.contains(pair.g_of(prev), pair.g_of(x)))
          continue;
      }
      seq.push_back(x);
      const std::size_t tx = pair.t_of(x), gx = pair.g_of(x);
      // Constant-tail completion: both image tails must be R-preserving and
      // the limits must agree.
      if (r.contains(tx, tx) && r.contains(gx, gx) && tx == gx) {
        const std::size_t v = tx;
        if (space.distance(pair.g_of(v), pair.t_of(v)) > 0.0) {
          result.holds = false;
          result.witness_sequence = seq;
          seq.pop_back();
          return true;
        }
      }
      if (depth + 1 < max_len && extend(depth + 1)) {
        seq.pop_back();
        return true;
      }
      seq.pop_back();
    }
    return false;
  };
  extend(0);
  return result;
}

const HypothesisVerdict* VerificationReport::find(std::string_view id) const {
  for (const auto& v : verdicts)
    if (v.id == id) return &v;
  return nullptr;
}

bool VerificationReport::hypothesis_holds(std::string_view id) const {
  const auto* v = find(id);
  return v != nullptr && v->status == HypothesisStatus::holds;
}

VerificationReport verify(const FiniteMetricSpace& space, const MappingPair& pair,
                          const Relation& r, const ImplicitRelation& g,
                          const VerifyOptions& options) {
  VerificationReport report;
  auto add = [&report](std::string id, bool holds, std::string witness, std::string detail) {
    report.verdicts.push_back({std::move(id),
                               holds ? HypothesisStatus::holds : HypothesisStatus::fails,
                               std::move(witness), std::move(detail)});
  };

  // (a) admissible starting point
  const auto start = find_start(pair, r);
  add("a", start.has_value(), start ? space.label(*start) : "",
      start ? "least starting point x0 = " + space.label(*start)
            : "no x with (gx, Tx) related");

  // (b) T(X) inside Y and g(X)
  {
    std::optional<std::size_t> bad;
    const auto g_img = pair.g_image();
    std::set<std::size_t> y_set(space.subspace().begin(), space.subspace().end());
    for (std::size_t x = 0; x < pair.size() && !bad; ++x) {
      const std::size_t tx = pair.t_of(x);
      if (!y_set.count(tx) || !std::binary_search(g_img.begin(), g_img.end(), tx)) bad = x;
    }
    add("b", !bad.has_value(), bad ? space.label(*bad) : "",
        bad ? "T " + space.label(*bad) + " escapes Y or g(X)" : "T(X) lies in Y and g(X)");
  }

  // (c) (T,g)-closedness
  {
    const auto closed = is_tg_closed(r, pair.t(), pair.g());
    add("c", closed.holds,
        closed.witness ? "(" + space.label(closed.witness->first) + "," +
                             space.label(closed.witness->second) + ")"
                       : "",
        closed.holds ? "relation is (T,g)-closed" : "closedness fails at the witness pair");
  }

  // (d) contraction inequality on related pairs
  report.contraction = check_contraction(space, pair, r, g, options.workers);
  {
    std::string witness;
    if (report.contraction.witness)
      witness = "(" + space.label(report.contraction.witness->first) + "," +
                space.label(report.contraction.witness->second) + ")";
    std::string detail = "G = " + g.name();
    if (report.contraction.worst_pair)
      detail += "; worst pair (" + space.label(report.contraction.worst_pair->first) + "," +
                space.label(report.contraction.worst_pair->second) +
                ") value " + std::to_string(report.contraction.worst_value);
    add("d", report.contraction.holds, witness, detail);
  }

  // Y is R-complete (structural in finite spaces)
  {
    const auto complete = finite_r_completeness(space, r);
    add("Y-complete", complete.holds, "", complete.rationale);
  }

  // (e1) Y inside g(X)
  {
    const auto g_img = pair.g_image();
    std::optional<std::size_t> bad;
    for (std::size_t y : space.subspace())
      if (!std::binary_search(g_img.begin(), g_img.end(), y)) {
        bad = y;
        break;
      }
    add("e1", !bad.has_value(), bad ? space.label(*bad) : "",
        bad ? "subspace point outside g(X)" : "Y lies inside g(X)");
  }

  // (e2) branches; all automatic on finite instances
  add("e2.g-continuity", true, "",
      "automatic: in a finite space convergent sequences are eventually constant");
  add("e2.continuity", true, "",
      "automatic: every self-map of a finite metric space is continuous");
  {
    const auto sc = finite_d_self_closed(space, r.restricted_to(space.subspace()),
                                         space.subspace());
    add("e2.self-closed", sc.holds, "", sc.rationale);
  }
  add("e2", true, "", "all three continuity branches available");

  // (e'1) compatibility, (e'2) R-continuity
  const auto compat = check_compatibility_finite(pair, r);
  add("e'1", compat.holds,
      compat.violating_point ? space.label(*compat.violating_point) : "", compat.rationale);
  add("e'2", true, "", "automatic: finite-space continuity");

  // (u1) and alternatives
  report.u1 = check_u1(pair, r);
  add("u1", report.u1.holds, "",
      report.u1.holds
          ? "g-paths exist for all T-image pairs; max length " +
                std::to_string(report.u1.max_length)
          : "some T-image pair admits no g-path");
  const auto alts = check_u1_alternatives(pair, r);
  add("u1'", alts.u1_prime,
      alts.u1_prime_witness ? "(" + space.label(alts.u1_prime_witness->first) + "," +
                                  space.label(alts.u1_prime_witness->second) + ")"
                            : "",
      alts.u1_prime ? "restriction of R to g(X) is complete"
                    : "incomparable pair inside g(X)");
  add("u1''", alts.u1_dprime, "", alts.u1_dprime_detail);

  // (u2) commutation at coincidence points
  report.brute = brute_force_coincidence(pair);
  {
    std::optional<std::size_t> bad;
    for (std::size_t w : report.brute.coincidence_points) {
      const double gap = space.distance(pair.t_of(pair.g_of(w)), pair.g_of(pair.t_of(w)));
      if (gap > options.tol) {
        bad = w;
        break;
      }
    }
    add("u2", !bad.has_value(), bad ? space.label(*bad) : "",
        bad ? "T(gw) != g(Tw) at the witness"
            : "T and g commute at all " + std::to_string(report.brute.coincidence_points.size()) +
                  " coincidence points");
  }

  // (G3) sign condition of the contraction
  add("G3", g.declared_g3(), "",
      g.declared_g3() ? "sign condition holds for " + g.name()
                      : "sign condition fails for " + g.name());

  const bool coincidence_rank =
      report.hypothesis_holds("a") && report.hypothesis_holds("b") &&
      report.hypothesis_holds("c") && report.hypothesis_holds("d") &&
      ((report.hypothesis_holds("e1") && report.hypothesis_holds("e2")) ||
       (report.hypothesis_holds("e'1") && report.hypothesis_holds("e'2")));
  const bool u1_any = report.hypothesis_holds("u1") || report.hypothesis_holds("u1'") ||
                      report.hypothesis_holds("u1''");
  report.rank = ConclusionRank::none;
  if (coincidence_rank) {
    report.rank = ConclusionRank::coincidence;
    if (u1_any && report.hypothesis_holds("G3")) {
      report.rank = ConclusionRank::point_of_coincidence_unique;
      if (report.hypothesis_holds("u2")) report.rank = ConclusionRank::common_fixed_point_unique;
    }
  }

  // Cross-validation of the assigned rank against brute force.
  if (report.rank >= ConclusionRank::coincidence && report.brute.coincidence_points.empty()) {
    report.cross_check_ok = false;
    report.cross_check_note = "rank promises a coincidence point but brute force finds none";
  }
  if (report.rank >= ConclusionRank::point_of_coincidence_unique &&
      report.brute.points_of_coincidence.size() != 1) {
    report.cross_check_ok = false;
    report.cross_check_note = "rank promises a unique point of coincidence but brute force finds " +
                              std::to_string(report.brute.points_of_coincidence.size());
  }
  if (report.rank == ConclusionRank::common_fixed_point_unique &&
      report.brute.common_fixed_points.size() != 1) {
    report.cross_check_ok = false;
    report.cross_check_note = "rank promises a unique common fixed point but brute force finds " +
                              std::to_string(report.brute.common_fixed_points.size());
  }
  return report;
}

}  // namespace relfix
