#ifndef CYREW_REWRITE_HPP
#define CYREW_REWRITE_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyrew/system.hpp"
#include "cyrew/word.hpp"

namespace cyrew {

inline constexpr std::size_t kDefaultStepBudget = 1'000'000;

/// Thrown when an iteration cap is hit; usually means the system is not
/// terminating even though it was asserted complete, or the cap is too small.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TraceStep {
  std::size_t rule;  // index into RewritingSystem::rules()
  std::size_t pos;   // offset of the replaced left-hand side
};

/// A replayable record of ordinary reductions from start to end.
struct ReductionTrace {
  Word start;
  Word end;
  std::vector<TraceStep> steps;
};

struct StepApplication {
  Word result;
  std::size_t rule;
  std::size_t pos;
};

inline Word apply_rule_at(const RewritingSystem& rs, const Word& w, std::size_t rule,
                          std::size_t pos) {
  const Rule& r = rs.rule(rule);
  if (pos + r.lhs.size() > w.size()
      || !std::equal(r.lhs.begin(), r.lhs.end(),
                     w.begin() + static_cast<std::ptrdiff_t>(pos))) {
    throw std::logic_error("apply_rule_at: rule " + r.id + " does not match at position "
                           + std::to_string(pos));
  }
  Word out(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
  out.insert(out.end(), r.rhs.begin(), r.rhs.end());
  out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(pos + r.lhs.size()),
             w.end());
  return out;
}

/// One deterministic reduction step: the first rule in declaration order that
/// occurs anywhere in w, applied at its leftmost occurrence.
inline std::optional<StepApplication> reduce_once(const RewritingSystem& rs,
                                                  const Word& w) {
  for (std::size_t i = 0; i < rs.rules().size(); ++i) {
    const auto pos = occurrences(w, rs.rules()[i].lhs);
    if (!pos.empty()) {
      return StepApplication{apply_rule_at(rs, w, i, pos.front()), i, pos.front()};
    }
  }
  return std::nullopt;
}

struct NormalFormResult {
  Word word;
  ReductionTrace trace;
};

/// Iterates reduce_once to a fixed point. The result is the normal form when
/// the system is complete; for other systems it is just the leftmost-innermost
/// fixed point of the reduction strategy.
inline NormalFormResult normal_form(const RewritingSystem& rs, Word w,
                                    std::size_t step_budget = kDefaultStepBudget) {
  ReductionTrace trace;
  trace.start = w;
  std::size_t steps = 0;
  while (auto next = reduce_once(rs, w)) {
    if (++steps > step_budget) {
      throw BudgetExceeded("normal_form: no fixed point after "
                           + std::to_string(step_budget)
                           + " steps; the system may not terminate");
    }
    trace.steps.push_back({next->rule, next->pos});
    w = std::move(next->result);
  }
  trace.end = w;
  return {std::move(w), std::move(trace)};
}

inline bool equal_in_monoid(const RewritingSystem& rs, const Word& u, const Word& v,
                            std::size_t step_budget = kDefaultStepBudget) {
  return normal_form(rs, u, step_budget).word == normal_form(rs, v, step_budget).word;
}

/// Replays a trace from its start word; throws if any step fails to apply or
/// the end word differs.
inline Word replay(const RewritingSystem& rs, const ReductionTrace& trace) {
  Word w = trace.start;
  for (const TraceStep& s : trace.steps) {
    w = apply_rule_at(rs, w, s.rule, s.pos);
  }
  if (w != trace.end) {
    throw std::logic_error("replay: trace does not end at its recorded end word");
  }
  return w;
}

struct ReducednessViolation {
  enum class Kind { reducible_rhs, nested_lhs };
  Kind kind;
  std::size_t rule;   // the offending rule
  std::size_t other;  // the rule reducing its rhs / contained in its lhs
};

/// Empty iff every right-hand side is irreducible and no rule's lhs contains
/// another rule's lhs as a subword.
inline std::vector<ReducednessViolation> check_reduced(const RewritingSystem& rs) {
  std::vector<ReducednessViolation> out;
  const auto& rules = rs.rules();
  for (std::size_t i = 0; i < rules.size(); ++i) {
    for (std::size_t j = 0; j < rules.size(); ++j) {
      if (occurs(rules[i].rhs, rules[j].lhs)) {
        out.push_back({ReducednessViolation::Kind::reducible_rhs, i, j});
        break;
      }
    }
    for (std::size_t j = 0; j < rules.size(); ++j) {
      if (i != j && occurs(rules[i].lhs, rules[j].lhs)) {
        out.push_back({ReducednessViolation::Kind::nested_lhs, i, j});
      }
    }
  }
  return out;
}

/// An ordinary critical pair whose two one-step reducts have distinct normal
/// forms under the leftmost strategy.
struct UnresolvedCriticalPair {
  std::size_t rule1;
  std::size_t rule2;
  Word peak;
  Word left;      // peak reduced by rule1
  Word right;     // peak reduced by rule2
  Word left_nf;
  Word right_nf;
  bool from_inclusion;  // lhs2 inside lhs1 rather than a proper overlap
};

/// Enumerates overlap ambiguities (a proper suffix of one lhs equal to a
/// proper prefix of another) and inclusion ambiguities (one lhs inside
/// another), reduces both sides of each peak, and returns the pairs whose
/// normal forms differ. Empty output together with termination certifies
/// completeness.
inline std::vector<UnresolvedCriticalPair> check_local_confluence(
    const RewritingSystem& rs, std::size_t step_budget = kDefaultStepBudget) {
  std::vector<UnresolvedCriticalPair> out;
  const auto& rules = rs.rules();
  auto consider = [&](std::size_t i, std::size_t j, const Word& peak, const Word& left,
                      const Word& right, bool inclusion) {
    const Word lnf = normal_form(rs, left, step_budget).word;
    const Word rnf = normal_form(rs, right, step_budget).word;
    if (lnf != rnf) {
      out.push_back({i, j, peak, left, right, lnf, rnf, inclusion});
    }
  };
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const Word& l1 = rules[i].lhs;
    for (std::size_t j = 0; j < rules.size(); ++j) {
      const Word& l2 = rules[j].lhs;
      // Overlaps: last k letters of l1 equal the first k letters of l2.
      const std::size_t max_k = std::min(l1.size(), l2.size()) - 1;
      for (std::size_t k = 1; k <= max_k; ++k) {
        if (!std::equal(l2.begin(), l2.begin() + static_cast<std::ptrdiff_t>(k),
                        l1.end() - static_cast<std::ptrdiff_t>(k))) {
          continue;
        }
        Word peak(l1);
        peak.insert(peak.end(), l2.begin() + static_cast<std::ptrdiff_t>(k), l2.end());
        Word left(rules[i].rhs);
        left.insert(left.end(), l2.begin() + static_cast<std::ptrdiff_t>(k), l2.end());
        Word right(l1.begin(), l1.end() - static_cast<std::ptrdiff_t>(k));
        right.insert(right.end(), rules[j].rhs.begin(), rules[j].rhs.end());
        consider(i, j, peak, left, right, false);
      }
      // Inclusions: l2 inside l1, counting duplicate left-hand sides once.
      if (i != j && (l2.size() < l1.size() || (l1 == l2 && i < j))) {
        for (std::size_t p : occurrences(l1, l2)) {
          const Word& peak = l1;
          const Word& left = rules[i].rhs;
          Word right(l1.begin(), l1.begin() + static_cast<std::ptrdiff_t>(p));
          right.insert(right.end(), rules[j].rhs.begin(), rules[j].rhs.end());
          right.insert(right.end(),
                       l1.begin() + static_cast<std::ptrdiff_t>(p + l2.size()),
                       l1.end());
          consider(i, j, peak, left, right, true);
        }
      }
    }
  }
  return out;
}

}  // namespace cyrew

#endif  // CYREW_REWRITE_HPP
