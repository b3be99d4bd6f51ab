#ifndef CYREW_CONJUGACY_HPP
#define CYREW_CONJUGACY_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cyrew/cyclic.hpp"
#include "cyrew/rewrite.hpp"
#include "cyrew/system.hpp"
#include "cyrew/word.hpp"

namespace cyrew {

/// Raised when a certificate fails its own verification; this indicates an
/// internal bug or an unsound cyclic rule, never a property of the query.
class CertificateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when composing a chain that crosses a cyclic rule whose conjugator
/// words are not on record (systems loaded from a file carry none).
class MissingCertificate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A verified conjugacy witness: u x = x v and y u = v y in the monoid.
/// The two chains record how both endpoints reduce to the common word
/// `meet`, so the certificate can be replayed and re-checked independently.
struct Certificate {
  Word u, v;
  Word x, y;
  std::vector<CyclicStep> chain;     // u ->* c, then rotate by chain_rotation
  std::size_t chain_rotation = 0;
  std::vector<CyclicStep> cochain;   // v ->* c', then rotate by cochain_rotation
  std::size_t cochain_rotation = 0;
  Word meet;                         // both rotated ends equal this word
};

/// Conjugator words for cyclic rules, keyed by rule id. Populated by the
/// completion run that created the rules.
using CertificateTable = std::unordered_map<std::string, std::pair<Word, Word>>;

/// The transposition behind one cyclic step u e ũ -> t with rotation i:
/// x is the rotated prefix (first i letters of u) and y the remainder, so
/// u = x y, ũ = y x, and u x = x t, y u = t y in the monoid. A step with
/// rotation 0 is a plain reduction and gets the degenerate witness (1, u).
inline std::pair<Word, Word> transposition_witness(const CyclicStep& step) {
  const std::size_t i = step.rotation;
  const Word x(step.source.begin(), step.source.begin() + static_cast<std::ptrdiff_t>(i));
  if (i == 0) {
    return {Word{}, step.source};
  }
  const Word y(step.source.begin() + static_cast<std::ptrdiff_t>(i), step.source.end());
  return {x, y};
}

namespace detail {

/// Folds a chain plus a final alignment rotation into accumulated conjugator
/// words: returns (x, y) with start . x = x . end and y . start = end . y in
/// the monoid, where end is the word reached after the closing rotation.
inline std::pair<Word, Word> fold_chain(const RewritingSystem& rs,
                                        const std::vector<CyclicStep>& chain,
                                        std::size_t closing_rotation, const Word& start,
                                        const CertificateTable* certs) {
  Word x, y;
  Word cur = start;
  auto absorb = [&](const Word& xs, const Word& ys) {
    x = concat(x, xs);
    y = concat(ys, y);
  };
  for (const CyclicStep& step : chain) {
    if (step.source != cur) {
      throw CertificateError("certificate chain does not start where the previous "
                             "step ended");
    }
    if (step.kind == StepKind::added) {
      // Rotation onto the rule's lhs is a free-monoid transposition; the
      // rule itself contributes its recorded conjugator pair.
      const auto rot = transposition_witness(step);
      if (step.rotation != 0) {
        absorb(rot.first, rot.second);
      }
      if (certs == nullptr || !step.cyclic_rule) {
        throw MissingCertificate("no conjugator words on record for a cyclic rule");
      }
      const std::string& id = rs.cyclic_rules().at(*step.cyclic_rule).id;
      auto it = certs->find(id);
      if (it == certs->end()) {
        throw MissingCertificate("no conjugator words on record for cyclic rule "
                                 + id);
      }
      absorb(it->second.first, it->second.second);
    } else {
      const auto w = transposition_witness(step);
      absorb(w.first, w.second);
    }
    cur = step.target;
  }
  if (closing_rotation != 0) {
    const Word xs(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(closing_rotation));
    const Word ys(cur.begin() + static_cast<std::ptrdiff_t>(closing_rotation), cur.end());
    absorb(xs, ys);
  }
  return {x, y};
}

}  // namespace detail

/// Checks both defining identities of a certificate and replays its chains.
/// Returns false (with a reason) instead of throwing, so it can serve as an
/// independent re-check of untrusted input.
inline bool verify_certificate(const RewritingSystem& rs, const Certificate& cert,
                               std::size_t step_budget = kDefaultStepBudget,
                               std::string* why = nullptr) {
  auto fail = [&](const std::string& reason) {
    if (why != nullptr) {
      *why = reason;
    }
    return false;
  };
  auto replay_chain = [&](const std::vector<CyclicStep>& chain, std::size_t closing,
                          const Word& start, const char* name) -> std::optional<Word> {
    Word cur = start;
    for (const CyclicStep& step : chain) {
      if (step.source != cur) {
        fail(std::string(name) + ": step source does not match the current word");
        return std::nullopt;
      }
      Word rotated;
      try {
        rotated = rotate(cur, step.rotation);
      } catch (const std::out_of_range&) {
        fail(std::string(name) + ": rotation amount out of range");
        return std::nullopt;
      }
      if (rotated != step.reduction.start) {
        fail(std::string(name) + ": rotation does not reach the recorded word");
        return std::nullopt;
      }
      if (step.kind == StepKind::base) {
        if (step.reduction.steps.empty()) {
          fail(std::string(name) + ": base step applies no rule");
          return std::nullopt;
        }
        try {
          if (replay(rs, step.reduction) != step.target) {
            fail(std::string(name) + ": reduction does not reach the recorded target");
            return std::nullopt;
          }
        } catch (const std::exception& e) {
          fail(std::string(name) + ": " + e.what());
          return std::nullopt;
        }
      } else {
        bool known = false;
        for (const CyclicRule& cr : rs.cyclic_rules()) {
          if (cr.lhs == rotated && cr.rhs == step.target) {
            known = true;
            break;
          }
        }
        if (!known) {
          fail(std::string(name) + ": no cyclic rule matches the recorded step");
          return std::nullopt;
        }
      }
      cur = step.target;
    }
    const std::size_t bound = cur.empty() ? 1 : cur.size();
    if (closing >= bound) {
      fail(std::string(name) + ": closing rotation out of range");
      return std::nullopt;
    }
    return rotate(cur, closing);
  };

  const auto end1 = replay_chain(cert.chain, cert.chain_rotation, cert.u, "chain");
  if (!end1) {
    return false;
  }
  const auto end2 = replay_chain(cert.cochain, cert.cochain_rotation, cert.v, "cochain");
  if (!end2) {
    return false;
  }
  if (*end1 != cert.meet || *end2 != cert.meet) {
    return fail("chains do not meet at the recorded word");
  }
  try {
    if (!equal_in_monoid(rs, concat(cert.u, cert.x), concat(cert.x, cert.v),
                         step_budget)) {
      return fail("identity u x = x v fails under normal forms");
    }
    if (!equal_in_monoid(rs, concat(cert.y, cert.u), concat(cert.v, cert.y),
                         step_budget)) {
      return fail("identity y u = v y fails under normal forms");
    }
  } catch (const BudgetExceeded& e) {
    return fail(e.what());
  }
  return true;
}

/// Builds and verifies the certificate for u ->* meet <-* v out of the two
/// realized paths. Throws CertificateError if verification fails.
inline Certificate make_certificate(const RewritingSystem& rs, const Word& u,
                                    const RealizedPath& via_u, const Word& v,
                                    const RealizedPath& via_v,
                                    const CertificateTable* certs = nullptr,
                                    std::size_t step_budget = kDefaultStepBudget) {
  Certificate cert;
  cert.u = u;
  cert.v = v;
  cert.chain = via_u.steps;
  cert.chain_rotation = via_u.closing_rotation;
  cert.cochain = via_v.steps;
  cert.cochain_rotation = via_v.closing_rotation;
  cert.meet = via_u.end;
  const auto uw = detail::fold_chain(rs, cert.chain, cert.chain_rotation, u, certs);
  const auto vw = detail::fold_chain(rs, cert.cochain, cert.cochain_rotation, v, certs);
  // u = meet via (x1, y1); v = meet via (x2, y2); so u = v via (x1 y2, x2 y1).
  cert.x = concat(uw.first, vw.second);
  cert.y = concat(vw.first, uw.second);
  std::string why;
  if (!verify_certificate(rs, cert, step_budget, &why)) {
    throw CertificateError("certificate construction produced an invalid witness: "
                           + why);
  }
  return cert;
}

/// Composes the certificate for a single chain u ->* v (the end of the chain
/// rotated by closing_rotation must equal v exactly).
inline Certificate compose_certificate(const RewritingSystem& rs,
                                       const std::vector<CyclicStep>& chain,
                                       std::size_t closing_rotation, const Word& u,
                                       const Word& v,
                                       const CertificateTable* certs = nullptr,
                                       std::size_t step_budget = kDefaultStepBudget) {
  RealizedPath via_u{chain, closing_rotation, v};
  RealizedPath via_v{{}, 0, v};
  return make_certificate(rs, u, via_u, v, via_v, certs, step_budget);
}

enum class ConjugacyResult { conjugate, transposed_chain, unknown };

inline const char* to_string(ConjugacyResult r) {
  switch (r) {
    case ConjugacyResult::conjugate: return "conjugate";
    case ConjugacyResult::transposed_chain: return "transposed-chain";
    default: return "unknown";
  }
}

enum class UnknownReason {
  none,
  budget,
  forms_differ,
  form_ambiguous,
  form_nonexistent,
  missing_certificate,
};

inline const char* to_string(UnknownReason r) {
  switch (r) {
    case UnknownReason::budget: return "budget exhausted";
    case UnknownReason::forms_differ: return "reachable forms differ";
    case UnknownReason::form_ambiguous: return "cyclically irreducible form ambiguous";
    case UnknownReason::form_nonexistent: return "no cyclically irreducible form found";
    case UnknownReason::missing_certificate:
      return "cyclic rule without conjugator words on the path";
    default: return "";
  }
}

/// Answer to a conjugacy query. `conjugate` and `transposed_chain` always
/// carry a verified certificate; a negative answer is never produced, since
/// distinct cyclically irreducible forms do not imply non-conjugacy.
struct ConjugacyVerdict {
  ConjugacyResult result = ConjugacyResult::unknown;
  std::optional<Certificate> certificate;
  UnknownReason reason = UnknownReason::none;
  Word common;  // canonical class both words reduce to
  std::string semantics_note;
};

inline std::string semantics_note_for(const RewritingSystem& rs) {
  switch (rs.semantics()) {
    case Semantics::special:
      return "special system: transposition, conjugacy and left conjugacy coincide";
    case Semantics::completely_simple:
      return "completely simple semigroup: transposition and conjugacy coincide";
    default:
      return "conjugate means left and right conjugate (u x = x v and y u = v y)";
  }
}

/// Decides conjugacy one-sidedly: a common reachable rotation class yields a
/// verified certificate; otherwise the verdict is unknown with a reason,
/// never "not conjugate".
inline ConjugacyVerdict conjugacy_test(const RewritingSystem& rs, const Word& u,
                                       const Word& v, const ExploreBudget& budget = {},
                                       const CertificateTable* certs = nullptr) {
  ConjugacyVerdict verdict;
  verdict.semantics_note = semantics_note_for(rs);

  try {
    if (u == v) {
      RealizedPath path{{}, 0, u};
      verdict.certificate = make_certificate(rs, u, path, v, path, certs,
                                             budget.step_budget);
      verdict.result = ConjugacyResult::conjugate;
      verdict.common = canonical_rotation(u);
      return verdict;
    }
    if (are_cyclic_conjugates(u, v)) {
      const std::size_t r = *rotation_taking(u, v);
      RealizedPath via_u{{}, r, v};
      RealizedPath via_v{{}, 0, v};
      verdict.certificate = make_certificate(rs, u, via_u, v, via_v, certs,
                                             budget.step_budget);
      verdict.result = ConjugacyResult::transposed_chain;
      verdict.common = canonical_rotation(u);
      return verdict;
    }

    const ExplorationReport a = explore_cyclic(rs, u, budget);
    const ExplorationReport b = explore_cyclic(rs, v, budget);
    std::set<Word> reach_a(a.order.begin(), a.order.end());
    std::optional<Word> common;
    for (const Word& node : b.order) {
      if (reach_a.count(node) && (!common || shortlex_less(node, *common))) {
        common = node;
      }
    }
    if (common) {
      const auto via_u = path_to_class(a, *common, u);
      const auto via_v = path_to_class(b, *common, v);
      if (via_u && via_v) {
        verdict.certificate = make_certificate(rs, u, *via_u, v, *via_v, certs,
                                               budget.step_budget);
        verdict.result = ConjugacyResult::conjugate;
        verdict.common = *common;
        return verdict;
      }
    }

    if (a.budget_hit || b.budget_hit) {
      verdict.reason = UnknownReason::budget;
    } else if (a.irreducible_forms.empty() || b.irreducible_forms.empty()) {
      verdict.reason = UnknownReason::form_nonexistent;
    } else if (a.irreducible_forms.size() > 1 || b.irreducible_forms.size() > 1) {
      verdict.reason = UnknownReason::form_ambiguous;
    } else {
      verdict.reason = UnknownReason::forms_differ;
    }
  } catch (const MissingCertificate&) {
    verdict.result = ConjugacyResult::unknown;
    verdict.reason = UnknownReason::missing_certificate;
    verdict.certificate.reset();
    return verdict;
  } catch (const BudgetExceeded&) {
    verdict.result = ConjugacyResult::unknown;
    verdict.reason = UnknownReason::budget;
    verdict.certificate.reset();
    return verdict;
  }
  return verdict;
}

/// Partition of all rotation classes of a fixed word length into classes of
/// mutual cyclic reducibility (the strongly connected components of the
/// equal-length reduction graph).
struct MutualClasses {
  std::size_t length = 0;
  std::vector<std::vector<Word>> classes;  // canonical members, shortlex-sorted
  std::vector<bool> has_irreducible;       // class contains a word with no steps
  std::vector<bool> genuine;               // class has an internal base reduction
};

/// Requires a length-nonincreasing system: round trips then never leave the
/// length stratum, so the stratum graph decides mutual reducibility exactly.
inline MutualClasses mutual_reduction_classes(const RewritingSystem& rs,
                                              std::size_t length,
                                              std::size_t max_words = 200'000,
                                              const ExploreBudget& budget = {}) {
  (void)budget;
  if (!rs.length_nonincreasing()) {
    throw std::invalid_argument("mutual_reduction_classes: requires a "
                                "length-nonincreasing system");
  }
  double estimate = 1.0;
  for (std::size_t i = 0; i < length; ++i) {
    estimate *= static_cast<double>(rs.alphabet().size());
  }
  if (estimate > static_cast<double>(max_words)) {
    throw std::invalid_argument(
        "mutual_reduction_classes: refusing to enumerate "
        + std::to_string(static_cast<unsigned long long>(estimate)) + " words of length "
        + std::to_string(length) + " (limit " + std::to_string(max_words) + ")");
  }

  MutualClasses out;
  out.length = length;
  std::vector<Word> order;
  std::unordered_map<Word, std::size_t, WordHash> index_of;
  Word w(length, 0);
  const std::size_t k = rs.alphabet().size();
  if (k == 0 && length > 0) {
    return out;
  }
  while (true) {
    if (canonical_rotation(w) == w) {
      index_of.emplace(w, order.size());
      order.push_back(w);
    }
    std::size_t pos = length;
    while (pos > 0 && w[pos - 1] == k - 1) {
      w[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) {
      break;
    }
    ++w[pos - 1];
  }

  std::unordered_map<Word, std::vector<CyclicStep>, WordHash> edges;
  std::unordered_map<Word, std::vector<CyclicStep>, WordHash> stratum_edges;
  for (const Word& node : order) {
    auto steps = cyclic_steps(rs, node);
    std::vector<CyclicStep> kept;
    for (CyclicStep& step : steps) {
      if (step.target.size() == length) {
        kept.push_back(step);
      }
    }
    edges.emplace(node, std::move(steps));
    stratum_edges.emplace(node, std::move(kept));
  }

  const auto scc = detail::strongly_connected_components(order, stratum_edges,
                                                         index_of);
  std::vector<std::vector<Word>> classes(scc.count);
  std::vector<bool> has_irreducible(scc.count, false);
  std::vector<bool> genuine(scc.count, false);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::size_t c = scc.component[i];
    classes[c].push_back(order[i]);
    if (edges.at(order[i]).empty()) {
      has_irreducible[c] = true;
    }
    for (const CyclicStep& step : stratum_edges.at(order[i])) {
      auto t = index_of.find(canonical_rotation(step.target));
      if (t != index_of.end() && scc.component[t->second] == c
          && step.kind == StepKind::base) {
        genuine[c] = true;
      }
    }
  }
  std::vector<std::size_t> by_first(scc.count);
  for (std::size_t c = 0; c < scc.count; ++c) {
    std::sort(classes[c].begin(), classes[c].end(), shortlex_less);
    by_first[c] = c;
  }
  std::sort(by_first.begin(), by_first.end(), [&](std::size_t a, std::size_t b) {
    return shortlex_less(classes[a].front(), classes[b].front());
  });
  for (std::size_t c : by_first) {
    out.classes.push_back(std::move(classes[c]));
    out.has_irreducible.push_back(has_irreducible[c]);
    out.genuine.push_back(genuine[c]);
  }
  return out;
}

/// Commutation pair extracted from a closed cycle of cyclic reductions
/// w ->* w: both x y w = w x y and y x w = w y x hold in the monoid.
struct CommutationWitness {
  Word word;
  Word x, y;
};

inline CommutationWitness commutation_witness(const RewritingSystem& rs,
                                              const CycleWitness& cycle,
                                              const CertificateTable* certs = nullptr,
                                              std::size_t step_budget
                                              = kDefaultStepBudget) {
  if (cycle.steps.empty()) {
    throw std::invalid_argument("commutation_witness: empty cycle");
  }
  const Word& w = cycle.steps.front().source;
  const auto xy = detail::fold_chain(rs, cycle.steps, cycle.closing_rotation, w, certs);
  const Word& x = xy.first;
  const Word& y = xy.second;
  if (!equal_in_monoid(rs, concat(x, y, w), concat(w, x, y), step_budget)
      || !equal_in_monoid(rs, concat(y, x, w), concat(w, y, x), step_budget)) {
    throw CertificateError("commutation identities fail under normal forms");
  }
  return {w, x, y};
}

}  // namespace cyrew

#endif  // CYREW_CONJUGACY_HPP
