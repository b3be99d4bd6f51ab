#ifndef CYREW_COMPLETION_HPP
#define CYREW_COMPLETION_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cyrew/analysis.hpp"
#include "cyrew/conjugacy.hpp"
#include "cyrew/cyclic.hpp"
#include "cyrew/system.hpp"
#include "cyrew/word.hpp"

namespace cyrew {

/// A whole-word reduction produced by completion, together with the ambiguity
/// that forced it and the verified conjugator pair (x, y) connecting lhs and
/// rhs through base rules only.
struct AddedReduction {
  CyclicRule rule;  // lhs and rhs stored as canonical rotations
  std::string origin;
  std::optional<std::pair<Word, Word>> conjugators;
};

enum class CompletionStatus { completed, failed, budget_exhausted };

inline const char* to_string(CompletionStatus s) {
  switch (s) {
    case CompletionStatus::completed: return "completed";
    case CompletionStatus::failed: return "failed";
    default: return "budget-exhausted";
  }
}

struct CompletionBudget {
  std::size_t max_added = 1000;
  ExploreBudget explore{};
};

struct CompletionOutcome {
  CompletionStatus status = CompletionStatus::completed;
  RewritingSystem system;  // base rules plus every cyclic rule
  std::vector<AddedReduction> added;
  std::vector<std::string> log;
  std::string failure;
  std::size_t unresolved = 0;
  CertificateTable certificates;  // rule id -> (x, y)
};

/// Deterministic orientation of an unresolved pair of cyclically irreducible
/// forms. A form that is already the source of a cyclic rule must stay a
/// source of exactly that rule, which forces the direction; two constrained
/// forms are the algorithm's failure condition.
struct Orientation {
  Word lhs, rhs;
  bool forced = false;
  bool conflict = false;
};

inline Orientation orient_pair(
    const Word& z1, const Word& z2,
    const std::unordered_map<Word, std::size_t, WordHash>& sources) {
  Orientation out;
  const bool s1 = sources.count(z1) != 0;
  const bool s2 = sources.count(z2) != 0;
  if (s1 && s2) {
    out.conflict = true;
    return out;
  }
  if (s1) {
    out.lhs = z2;
    out.rhs = z1;
    out.forced = true;
  } else if (s2) {
    out.lhs = z1;
    out.rhs = z2;
    out.forced = true;
  } else if (shortlex_less(z1, z2)) {
    out.lhs = z2;
    out.rhs = z1;
  } else {
    out.lhs = z1;
    out.rhs = z2;
  }
  return out;
}

namespace detail {

struct AmbiguitySite {
  std::string describe;  // deterministic text for the log
  Word source;           // word admitting both reducts
  Word side1, side2;
  CyclicStep step1, step2;  // source -> side1 / side2
  bool trivially_resolved = false;
};

inline CyclicStep make_site_step(const RewritingSystem& rs, const Word& source,
                                 std::size_t rotation, std::size_t rule,
                                 std::size_t pos) {
  CyclicStep step;
  step.source = source;
  step.rotation = rotation;
  const Word rotated = rotate(source, rotation);
  step.target = apply_rule_at(rs, rotated, rule, pos);
  step.reduction = {rotated, step.target, {{rule, pos}}};
  step.kind = StepKind::base;
  return step;
}

inline std::vector<AmbiguitySite> ambiguity_sites(const RewritingSystem& rs,
                                                  const ExploreBudget& budget) {
  std::vector<AmbiguitySite> sites;
  const Alphabet& sigma = rs.alphabet();
  for (const CyclicOverlap& o : find_cyclic_overlaps(rs, budget, false)) {
    AmbiguitySite site;
    site.describe = "cyclic overlap " + rs.rule(o.rule1).id + "/" + rs.rule(o.rule2).id
                    + ": x = " + to_text(sigma, o.split.x) + ", u = "
                    + to_text(sigma, o.split.u) + ", y = " + to_text(sigma, o.split.y)
                    + ", v = " + to_text(sigma, o.split.v);
    site.source = o.source;
    site.side1 = o.side1;
    site.side2 = o.side2;
    site.step1 = make_site_step(rs, o.source, 0, o.rule1, 0);
    site.step2 = make_site_step(rs, o.source, o.split.x.size(), o.rule2,
                                o.split.u.size());
    site.trivially_resolved = o.trivially_resolved;
    sites.push_back(std::move(site));
  }
  for (const CyclicInclusion& c : find_cyclic_inclusions(rs, budget, false)) {
    AmbiguitySite site;
    site.describe = std::string("cyclic inclusion (") + to_string(c.kind) + ") "
                    + rs.rule(c.inner).id + " in " + rs.rule(c.outer).id;
    site.source = c.source;
    site.side1 = c.side1;
    site.side2 = c.side2;
    site.step1 = make_site_step(rs, c.source, 0, c.outer, 0);
    site.step2 = make_site_step(rs, c.source, c.rotation, c.inner, c.prefix.size());
    site.trivially_resolved = c.trivially_resolved;
    sites.push_back(std::move(site));
  }
  return sites;
}

/// Conjugator pair for start ->* (chain) -> closing rotation -> end, base
/// steps only.
inline std::pair<Word, Word> fold_leg(const RewritingSystem& rs, const CyclicStep& first,
                                      const std::vector<CyclicStep>& rest,
                                      const Word& canonical_end) {
  std::vector<CyclicStep> chain;
  chain.push_back(first);
  chain.insert(chain.end(), rest.begin(), rest.end());
  const Word& last = chain.back().target;
  const std::size_t closing = rotation_taking(last, canonical_end).value();
  return fold_chain(rs, chain, closing, first.source, nullptr);
}

}  // namespace detail

/// The cyclical completion procedure: resolve every overlap and inclusion
/// site, orienting unresolved pairs of forms into whole-word cyclic rules
/// until all sites resolve, the orientation constraints contradict, or a
/// budget runs out. Deterministic: identical input yields an identical log,
/// rule list, and outcome.
inline CompletionOutcome cyclical_completion(const RewritingSystem& input,
                                             const CompletionBudget& budget = {}) {
  CompletionOutcome out;
  const Alphabet& sigma = input.alphabet();

  // Base view: ordinary rules only. Forms are always computed against it,
  // and certificates never cross cyclic rules.
  RewritingSystem base(input.alphabet(), input.rules());
  base.set_asserted_complete(input.asserted_complete());
  base.set_semantics(input.semantics());
  base.set_truncated_schemas(input.truncated_schemas());

  std::vector<CyclicRule> cyclic = input.cyclic_rules();
  std::unordered_map<Word, std::size_t, WordHash> sources;
  for (std::size_t i = 0; i < cyclic.size(); ++i) {
    sources.emplace(canonical_rotation(cyclic[i].lhs), i);
  }

  auto rebuild = [&]() {
    RewritingSystem next(base.alphabet(), base.rules());
    next.set_asserted_complete(base.asserted_complete());
    next.set_semantics(base.semantics());
    next.set_truncated_schemas(base.truncated_schemas());
    for (const CyclicRule& cr : cyclic) {
      next.add_cyclic_rule(cr);
    }
    return next;
  };
  RewritingSystem working = rebuild();

  if (base.length_decreasing()) {
    out.log.push_back("termination: established (every rule shortens its word)");
  } else if (base.length_nonincreasing()) {
    out.log.push_back("termination: proceeding modulo mutual-reduction classes "
                      "(length non-increasing rules)");
  } else {
    out.log.push_back("termination: not established; the outcome is conditional");
  }

  const auto sites = detail::ambiguity_sites(base, budget.explore);
  out.log.push_back("sites: " + std::to_string(sites.size()));

  auto renormalize = [&]() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < cyclic.size(); ++i) {
        const Word key = canonical_rotation(cyclic[i].rhs);
        auto it = sources.find(key);
        if (it == sources.end() || it->second == i) {
          continue;
        }
        const CyclicRule& through = cyclic[it->second];
        out.log.push_back("renormalize: " + cyclic[i].id + " now targets "
                          + to_text(sigma, through.rhs) + " via " + through.id);
        cyclic[i].rhs = through.rhs;
        auto self = out.certificates.find(cyclic[i].id);
        auto step = out.certificates.find(through.id);
        if (self != out.certificates.end() && step != out.certificates.end()) {
          self->second.first = concat(self->second.first, step->second.first);
          self->second.second = concat(step->second.second, self->second.second);
        } else if (self != out.certificates.end()) {
          out.certificates.erase(self);
        }
        changed = true;
      }
    }
  };

  bool failed = false;
  for (std::size_t n = 0; n < sites.size() && !failed; ++n) {
    const auto& site = sites[n];
    const std::string head = "site " + std::to_string(n + 1) + ": " + site.describe
                             + "; word " + to_text(sigma, site.source) + "; reducts "
                             + to_text(sigma, site.side1) + " | "
                             + to_text(sigma, site.side2);
    if (site.trivially_resolved) {
      out.log.push_back(head + " => resolves (reducts are conjugate)");
      continue;
    }
    const ResolutionReport res = check_resolution(working, site.side1, site.side2,
                                                  budget.explore);
    if (res.status == Resolution::resolves) {
      out.log.push_back(head + " => resolves at " + to_text(sigma, res.meeting));
      continue;
    }
    if (res.status == Resolution::unknown) {
      out.log.push_back(head + " => unresolved (exploration budget hit)");
      ++out.unresolved;
      continue;
    }

    // The site fails under the current rules: orient its two forms.
    const ExplorationReport e1 = explore_cyclic(base, site.side1, budget.explore);
    const ExplorationReport e2 = explore_cyclic(base, site.side2, budget.explore);
    if (e1.irreducible_forms.empty() || e2.irreducible_forms.empty()) {
      out.failure = "no cyclically irreducible form for reduct "
                    + to_text(sigma, e1.irreducible_forms.empty() ? site.side1
                                                                  : site.side2);
      out.log.push_back(head + " => failed: " + out.failure);
      failed = true;
      break;
    }
    const Word z1 = e1.irreducible_forms.front();
    const Word z2 = e2.irreducible_forms.front();
    if (e1.irreducible_forms.size() > 1 || e2.irreducible_forms.size() > 1) {
      out.log.push_back(head + ": a reduct has several forms; using the least");
    }
    out.log.push_back("  forms: " + to_text(sigma, z1) + " | " + to_text(sigma, z2));
    if (z1 == z2) {
      out.log.push_back(head + " => resolves at " + to_text(sigma, z1));
      continue;
    }
    const Orientation dir = orient_pair(z1, z2, sources);
    if (dir.conflict) {
      out.failure = "both " + to_text(sigma, z1) + " and " + to_text(sigma, z2)
                    + " are already sources of cyclic rules";
      out.log.push_back(head + " => failed: " + out.failure);
      failed = true;
      break;
    }
    if (cyclic.size() >= budget.max_added) {
      out.log.push_back(head + " => unresolved (cyclic rule budget hit)");
      ++out.unresolved;
      continue;
    }

    CyclicRule rule;
    rule.lhs = dir.lhs;
    rule.rhs = dir.rhs;
    rule.id = "c" + std::to_string(cyclic.size() + 1);
    if (!is_cyclically_irreducible(base, rule.lhs)) {
      throw std::logic_error("cyclical_completion: oriented lhs is reducible");
    }

    // Conjugator pair for lhs = rhs through the peak word, base steps only.
    const auto path1 = path_to_class(e1, z1, site.side1);
    const auto path2 = path_to_class(e2, z2, site.side2);
    if (!path1 || !path2) {
      throw std::logic_error("cyclical_completion: discovered form is unreachable");
    }
    const auto leg1 = detail::fold_leg(base, site.step1, path1->steps, z1);
    const auto leg2 = detail::fold_leg(base, site.step2, path2->steps, z2);
    const auto& to_lhs = (dir.lhs == z1) ? leg1 : leg2;
    const auto& to_rhs = (dir.lhs == z1) ? leg2 : leg1;
    const Word cx = concat(to_lhs.second, to_rhs.first);
    const Word cy = concat(to_rhs.second, to_lhs.first);
    bool verified = false;
    try {
      verified = equal_in_monoid(base, concat(rule.lhs, cx), concat(cx, rule.rhs))
                 && equal_in_monoid(base, concat(cy, rule.lhs), concat(rule.rhs, cy));
    } catch (const BudgetExceeded&) {
      verified = false;
    }

    out.log.push_back(head + " => add " + rule.id + ": " + to_text(sigma, rule.lhs)
                      + " ~> " + to_text(sigma, rule.rhs)
                      + (dir.forced ? " (forced)" : " (free choice, shortlex)"));
    if (!verified) {
      // The chains behind the pair are genuine reductions; the normal-form
      // check can only fail if the base system is not complete as asserted.
      out.log.push_back("warning: conjugator pair for " + rule.id
                        + " did not verify; is the base system complete?");
    }
    sources.emplace(rule.lhs, cyclic.size());
    if (verified) {
      out.certificates.emplace(rule.id, std::make_pair(cx, cy));
    }
    out.added.push_back({rule, site.describe,
                         verified ? std::make_optional(std::make_pair(cx, cy))
                                  : std::nullopt});
    cyclic.push_back(rule);
    renormalize();
    working = rebuild();
  }

  // Final scan: every site must resolve under the finished system.
  if (!failed) {
    std::size_t remaining = 0;
    for (const auto& site : sites) {
      if (site.trivially_resolved) {
        continue;
      }
      const ResolutionReport res = check_resolution(working, site.side1, site.side2,
                                                    budget.explore);
      if (res.status != Resolution::resolves) {
        ++remaining;
      }
    }
    out.log.push_back("final scan: " + std::to_string(remaining)
                      + " unresolved site(s)");
    out.unresolved = remaining;
  }

  out.system = working;
  // Keep conjugator pairs for the added rules in sync after renormalizing.
  for (AddedReduction& ar : out.added) {
    for (const CyclicRule& cr : cyclic) {
      if (cr.id == ar.rule.id) {
        ar.rule = cr;
        break;
      }
    }
    auto it = out.certificates.find(ar.rule.id);
    ar.conjugators = it == out.certificates.end()
                         ? std::nullopt
                         : std::make_optional(it->second);
  }
  if (failed) {
    out.status = CompletionStatus::failed;
  } else if (out.unresolved > 0) {
    out.status = CompletionStatus::budget_exhausted;
  } else {
    out.status = CompletionStatus::completed;
  }
  return out;
}

/// Per-class check that a (completed) system gives every word at most one
/// cyclically irreducible form. Words whose class contains no form at all
/// are listed separately: with non-terminating mutual cycles that is an
/// expected outcome, not an ambiguity.
struct CompletenessReport {
  std::size_t classes_checked = 0;
  std::vector<Word> ambiguous;
  std::vector<Word> formless;
  std::vector<Word> undecided;
  bool ok() const { return ambiguous.empty() && undecided.empty(); }
};

inline CompletenessReport verify_cyclically_complete(const RewritingSystem& rs,
                                                     std::size_t max_length,
                                                     const ExploreBudget& budget = {},
                                                     std::size_t max_words = 500'000) {
  double total = 0;
  double power = 1;
  for (std::size_t l = 0; l <= max_length; ++l) {
    total += power;
    power *= static_cast<double>(rs.alphabet().size());
  }
  if (total > static_cast<double>(max_words)) {
    throw std::invalid_argument("verify_cyclically_complete: refusing to enumerate "
                                + std::to_string(static_cast<unsigned long long>(total))
                                + " words (limit " + std::to_string(max_words) + ")");
  }

  CompletenessReport report;
  const std::size_t k = rs.alphabet().size();
  for (std::size_t len = 0; len <= max_length; ++len) {
    if (len > 0 && k == 0) {
      break;
    }
    Word w(len, 0);
    while (true) {
      if (canonical_rotation(w) == w) {
        ++report.classes_checked;
        const ExplorationReport ex = explore_cyclic(rs, w, budget);
        if (ex.irreducible_forms.size() >= 2) {
          report.ambiguous.push_back(w);
        } else if (ex.budget_hit) {
          report.undecided.push_back(w);
        } else if (ex.irreducible_forms.empty()) {
          report.formless.push_back(w);
        }
      }
      if (len == 0) {
        break;
      }
      std::size_t pos = len;
      while (pos > 0 && w[pos - 1] == k - 1) {
        w[pos - 1] = 0;
        --pos;
      }
      if (pos == 0) {
        break;
      }
      ++w[pos - 1];
    }
  }
  return report;
}

/// Recovers conjugator pairs for the cyclic rules of a system loaded from a
/// file by re-running completion on its base rules and matching the results
/// class by class. Rules that the deterministic re-run does not reproduce
/// stay without conjugators.
inline CertificateTable derive_added_certificates(const RewritingSystem& rs,
                                                  const CompletionBudget& budget = {}) {
  CertificateTable table;
  if (rs.cyclic_rules().empty()) {
    return table;
  }
  RewritingSystem base(rs.alphabet(), rs.rules());
  base.set_asserted_complete(rs.asserted_complete());
  base.set_semantics(rs.semantics());
  base.set_truncated_schemas(rs.truncated_schemas());
  const CompletionOutcome outcome = cyclical_completion(base, budget);
  for (const CyclicRule& loaded : rs.cyclic_rules()) {
    const Word lhs_class = canonical_rotation(loaded.lhs);
    const Word rhs_class = canonical_rotation(loaded.rhs);
    for (const AddedReduction& ar : outcome.added) {
      if (!ar.conjugators || ar.rule.lhs != lhs_class || ar.rule.rhs != rhs_class) {
        continue;
      }
      // Align the canonical-form pair onto the loaded spelling.
      Word x = ar.conjugators->first;
      Word y = ar.conjugators->second;
      const std::size_t pre = rotation_taking(loaded.lhs, lhs_class).value();
      if (pre != 0) {
        const Word p(loaded.lhs.begin(), loaded.lhs.begin() + static_cast<std::ptrdiff_t>(pre));
        const Word q(loaded.lhs.begin() + static_cast<std::ptrdiff_t>(pre), loaded.lhs.end());
        x = concat(p, x);
        y = concat(y, q);
      }
      const std::size_t post = rotation_taking(rhs_class, loaded.rhs).value();
      if (post != 0) {
        const Word p(rhs_class.begin(), rhs_class.begin() + static_cast<std::ptrdiff_t>(post));
        const Word q(rhs_class.begin() + static_cast<std::ptrdiff_t>(post), rhs_class.end());
        x = concat(x, p);
        y = concat(q, y);
      }
      if (equal_in_monoid(base, concat(loaded.lhs, x), concat(x, loaded.rhs))
          && equal_in_monoid(base, concat(y, loaded.lhs), concat(loaded.rhs, y))) {
        table.emplace(loaded.id, std::make_pair(x, y));
      }
      break;
    }
  }
  return table;
}

}  // namespace cyrew

#endif  // CYREW_COMPLETION_HPP
