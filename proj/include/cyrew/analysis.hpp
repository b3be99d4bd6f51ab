#ifndef CYREW_ANALYSIS_HPP
#define CYREW_ANALYSIS_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cyrew/cyclic.hpp"
#include "cyrew/system.hpp"
#include "cyrew/word.hpp"

namespace cyrew {

/// The first rotation of w (scanning amounts upward) on which both rules'
/// left-hand sides occur, if any. An omitted rule is vacuously satisfied.
/// Each given rule must apply to at least one rotation of w on its own.
inline std::optional<Word> joint_rotation(const RewritingSystem& rs, const Word& w,
                                          std::optional<std::size_t> rule1,
                                          std::optional<std::size_t> rule2) {
  for (const auto& r : {rule1, rule2}) {
    if (r && !occurs_cyclically(w, rs.rule(*r).lhs)) {
      throw std::invalid_argument("joint_rotation: rule " + rs.rule(*r).id
                                  + " applies to no rotation of the word");
    }
  }
  const std::size_t rotations = w.empty() ? 1 : w.size();
  for (std::size_t i = 0; i < rotations; ++i) {
    const Word rotated = rotate(w, i);
    const bool ok1 = !rule1 || occurs(rotated, rs.rule(*rule1).lhs);
    const bool ok2 = !rule2 || occurs(rotated, rs.rule(*rule2).lhs);
    if (ok1 && ok2) {
      return rotated;
    }
  }
  return std::nullopt;
}

/// Sufficient one-way test: when the prefix set of one lhs misses the suffix
/// set of the other (in either direction), every word admitting both rules
/// admits them on a common rotation. The converse does not hold.
inline bool presuf_disjoint_guarantee(const Rule& r1, const Rule& r2) {
  auto intersects = [](const std::vector<Word>& a, const std::vector<Word>& b) {
    std::set<Word> sa(a.begin(), a.end());
    for (const Word& w : b) {
      if (sa.count(w)) {
        return true;
      }
    }
    return false;
  };
  const bool pre2_suf1 = intersects(prefixes(r2.lhs), suffixes(r1.lhs));
  const bool pre1_suf2 = intersects(prefixes(r1.lhs), suffixes(r2.lhs));
  return !pre2_suf1 || !pre1_suf2;
}

/// A factorization l1 = x u y, l2 = y v x with x, y non-empty.
struct OverlapSplit {
  Word x, u, y, v;
};

/// Every factorization of the pair into the blocking shape of a cyclic
/// overlap; u and v may be empty (those sites double as inclusions).
inline std::vector<OverlapSplit> overlap_splits(const Word& l1, const Word& l2) {
  std::vector<OverlapSplit> out;
  for (std::size_t p = 1; p + 1 <= l1.size(); ++p) {
    for (std::size_t q = 1; p + q <= l1.size(); ++q) {
      if (p + q > l2.size()) {
        continue;
      }
      const Word x(l1.begin(), l1.begin() + static_cast<std::ptrdiff_t>(p));
      const Word y(l1.end() - static_cast<std::ptrdiff_t>(q), l1.end());
      if (!std::equal(y.begin(), y.end(), l2.begin())) {
        continue;
      }
      if (!std::equal(x.begin(), x.end(), l2.end() - static_cast<std::ptrdiff_t>(p))) {
        continue;
      }
      const Word u(l1.begin() + static_cast<std::ptrdiff_t>(p),
                   l1.end() - static_cast<std::ptrdiff_t>(q));
      const Word v(l2.begin() + static_cast<std::ptrdiff_t>(q),
                   l2.end() - static_cast<std::ptrdiff_t>(p));
      out.push_back({x, u, y, v});
    }
  }
  return out;
}

enum class Resolution { resolves, fails, unknown };

inline const char* to_string(Resolution r) {
  switch (r) {
    case Resolution::resolves: return "resolves";
    case Resolution::fails: return "fails";
    default: return "unknown";
  }
}

/// Outcome of exploring the two reducts of an ambiguity. The ambiguity
/// resolves as soon as any rotation class is reachable from both sides; it
/// fails only when both explorations are exhaustive and share nothing.
struct ResolutionReport {
  Resolution status = Resolution::unknown;
  Word meeting;                 // common canonical class when it resolves
  std::vector<Word> forms1, forms2;  // canonical irreducible forms per side
  bool exhaustive1 = false, exhaustive2 = false;
  bool cycle_found = false;     // some side exploration proved non-termination
};

inline ResolutionReport check_resolution(const RewritingSystem& rs, const Word& side1,
                                         const Word& side2,
                                         const ExploreBudget& budget = {}) {
  ResolutionReport out;
  if (are_cyclic_conjugates(side1, side2)) {
    out.status = Resolution::resolves;
    out.meeting = canonical_rotation(side1);
    out.exhaustive1 = out.exhaustive2 = true;
    return out;
  }
  const ExplorationReport a = explore_cyclic(rs, side1, budget);
  const ExplorationReport b = explore_cyclic(rs, side2, budget);
  out.forms1 = a.irreducible_forms;
  out.forms2 = b.irreducible_forms;
  out.exhaustive1 = !a.budget_hit;
  out.exhaustive2 = !b.budget_hit;
  out.cycle_found = a.witness.has_value() || b.witness.has_value();

  std::set<Word> reach_a(a.order.begin(), a.order.end());
  std::optional<Word> meeting;
  for (const Word& node : b.order) {
    if (reach_a.count(node) && (!meeting || shortlex_less(node, *meeting))) {
      meeting = node;
    }
  }
  if (meeting) {
    out.status = Resolution::resolves;
    out.meeting = *meeting;
  } else if (out.exhaustive1 && out.exhaustive2) {
    out.status = Resolution::fails;
  } else {
    out.status = Resolution::unknown;
  }
  return out;
}

/// A cyclic overlap site between two rules: lhs1 = x u y and lhs2 = y v x
/// with x, y non-empty. side1/side2 are the two reducts of the fused word
/// x u y v.
struct CyclicOverlap {
  std::size_t rule1, rule2;
  OverlapSplit split;
  Word source;   // x u y v, the word admitting both rules only separately
  Word side1;    // rhs1 . v
  Word side2;    // u . rhs2
  bool trivially_resolved = false;  // side1 and side2 already conjugate
  ResolutionReport resolution;
};

inline std::vector<CyclicOverlap> find_cyclic_overlaps(const RewritingSystem& rs,
                                                       const ExploreBudget& budget = {},
                                                       bool resolve = true) {
  std::vector<CyclicOverlap> out;
  const auto& rules = rs.rules();
  for (std::size_t i = 0; i < rules.size(); ++i) {
    for (std::size_t j = 0; j < rules.size(); ++j) {
      for (const OverlapSplit& split : overlap_splits(rules[i].lhs, rules[j].lhs)) {
        CyclicOverlap candidate;
        candidate.rule1 = i;
        candidate.rule2 = j;
        candidate.split = split;
        candidate.source = concat(concat(split.x, split.u), concat(split.y, split.v));
        candidate.side1 = concat(rules[i].rhs, split.v);
        candidate.side2 = concat(split.u, rules[j].rhs);
        candidate.trivially_resolved =
            are_cyclic_conjugates(candidate.side1, candidate.side2);
        if (resolve) {
          candidate.resolution = check_resolution(rs, candidate.side1, candidate.side2,
                                                  budget);
        }
        out.push_back(std::move(candidate));
      }
    }
  }
  return out;
}

enum class InclusionKind { conjugate, proper_subword };

inline const char* to_string(InclusionKind k) {
  return k == InclusionKind::conjugate ? "conjugate" : "proper-subword";
}

/// A cyclic inclusion site: the inner rule's lhs is a rotation of the outer
/// rule's lhs (conjugate kind), or a proper suffix of one of its rotations
/// rotate(l, i) = u . l' (proper_subword kind). side1/side2 are the two
/// reducts of the outer lhs.
struct CyclicInclusion {
  std::size_t outer, inner;
  InclusionKind kind = InclusionKind::conjugate;
  std::size_t rotation = 0;  // i with rotate(lhs_outer, i) = prefix . lhs_inner
  Word prefix;               // u; empty in conjugate kind
  Word source;               // lhs_outer
  Word side1;                // rhs_outer
  Word side2;                // prefix . rhs_inner
  bool trivially_resolved = false;
  ResolutionReport resolution;
};

inline std::vector<CyclicInclusion> find_cyclic_inclusions(
    const RewritingSystem& rs, const ExploreBudget& budget = {}, bool resolve = true) {
  std::vector<CyclicInclusion> out;
  const auto& rules = rs.rules();
  auto finish = [&](CyclicInclusion candidate) {
    candidate.trivially_resolved =
        are_cyclic_conjugates(candidate.side1, candidate.side2);
    if (resolve) {
      candidate.resolution = check_resolution(rs, candidate.side1, candidate.side2,
                                              budget);
    }
    out.push_back(std::move(candidate));
  };
  for (std::size_t i = 0; i < rules.size(); ++i) {
    for (std::size_t j = 0; j < rules.size(); ++j) {
      if (i == j) {
        continue;
      }
      const Word& l = rules[i].lhs;
      const Word& inner = rules[j].lhs;
      if (l.size() == inner.size()) {
        if (i < j && are_cyclic_conjugates(l, inner)) {
          CyclicInclusion candidate;
          candidate.outer = i;
          candidate.inner = j;
          candidate.kind = InclusionKind::conjugate;
          candidate.rotation = *rotation_taking(l, inner);
          candidate.source = l;
          candidate.side1 = rules[i].rhs;
          candidate.side2 = rules[j].rhs;
          finish(std::move(candidate));
        }
      } else if (inner.size() < l.size()) {
        for (std::size_t r = 0; r < l.size(); ++r) {
          const Word rotated = rotate(l, r);
          if (!std::equal(inner.begin(), inner.end(),
                          rotated.end() - static_cast<std::ptrdiff_t>(inner.size()))) {
            continue;
          }
          CyclicInclusion candidate;
          candidate.outer = i;
          candidate.inner = j;
          candidate.kind = InclusionKind::proper_subword;
          candidate.rotation = r;
          candidate.prefix = Word(rotated.begin(),
                                  rotated.end()
                                      - static_cast<std::ptrdiff_t>(inner.size()));
          candidate.source = l;
          candidate.side1 = rules[i].rhs;
          candidate.side2 = concat(candidate.prefix, rules[j].rhs);
          finish(std::move(candidate));
        }
      }
    }
  }
  return out;
}

enum class Confluence { confluent, not_confluent, unknown };

inline const char* to_string(Confluence c) {
  switch (c) {
    case Confluence::confluent: return "confluent";
    case Confluence::not_confluent: return "not-confluent";
    default: return "unknown";
  }
}

enum class TerminationEvidence { established, refuted, unknown };

inline const char* to_string(TerminationEvidence t) {
  switch (t) {
    case TerminationEvidence::established: return "established";
    case TerminationEvidence::refuted: return "refuted";
    default: return "unknown";
  }
}

/// Trichotomous cyclic-confluence verdict. `confluent` holds when there are
/// no overlap or inclusion sites, or all sites resolve; it is conditional on
/// cyclic termination, whose evidence is reported separately. A site whose
/// two reducts exhaustively reach disjoint sets is an unconditional
/// non-confluence witness.
struct ConfluenceVerdict {
  Confluence status = Confluence::unknown;
  TerminationEvidence termination = TerminationEvidence::unknown;
  std::string termination_note;
  std::optional<Word> witness;       // word with provably distinct reducts
  std::vector<Word> witness_forms;
  std::size_t candidates = 0;
  std::size_t unresolved = 0;
};

inline ConfluenceVerdict cyclic_confluence_verdict(const RewritingSystem& rs,
                                                   const ExploreBudget& budget = {}) {
  ConfluenceVerdict verdict;
  const auto overlaps = find_cyclic_overlaps(rs, budget, true);
  const auto inclusions = find_cyclic_inclusions(rs, budget, true);
  verdict.candidates = overlaps.size() + inclusions.size();

  bool cycle_found = false;
  auto absorb = [&](const ResolutionReport& res, const Word& source) {
    cycle_found = cycle_found || res.cycle_found;
    if (res.status == Resolution::fails && !verdict.witness) {
      verdict.witness = source;
      verdict.witness_forms = res.forms1;
      verdict.witness_forms.insert(verdict.witness_forms.end(), res.forms2.begin(),
                                   res.forms2.end());
      std::sort(verdict.witness_forms.begin(), verdict.witness_forms.end(),
                shortlex_less);
    }
    if (res.status == Resolution::unknown) {
      ++verdict.unresolved;
    }
  };
  for (const auto& o : overlaps) {
    absorb(o.resolution, o.source);
  }
  for (const auto& c : inclusions) {
    absorb(c.resolution, c.source);
  }

  if (rs.length_decreasing()) {
    verdict.termination = TerminationEvidence::established;
    verdict.termination_note = "every rule shortens its word, so cyclic reduction "
                               "terminates";
  } else if (cycle_found) {
    verdict.termination = TerminationEvidence::refuted;
    verdict.termination_note = "a cyclic-reduction cycle was found while resolving "
                               "candidates; the system is not cyclically terminating";
  } else {
    verdict.termination = TerminationEvidence::unknown;
    verdict.termination_note = "cyclic termination was not established; the verdict "
                               "is conditional on it";
  }

  if (verdict.witness) {
    verdict.status = Confluence::not_confluent;
  } else if (verdict.unresolved > 0) {
    verdict.status = Confluence::unknown;
  } else {
    verdict.status = Confluence::confluent;
  }
  return verdict;
}

}  // namespace cyrew

#endif  // CYREW_ANALYSIS_HPP
