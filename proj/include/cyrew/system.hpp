#ifndef CYREW_SYSTEM_HPP
#define CYREW_SYSTEM_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cyrew/word.hpp"

namespace cyrew {

/// Which conjugacy notions coincide for the presented monoid. User-asserted
/// metadata; it only changes how verdicts are worded, never what is checked.
enum class Semantics { generic, special, completely_simple };

inline const char* to_string(Semantics s) {
  switch (s) {
    case Semantics::special: return "special";
    case Semantics::completely_simple: return "completely-simple";
    default: return "generic";
  }
}

/// An ordinary rewrite rule lhs -> rhs, applicable inside any word.
struct Rule {
  Word lhs;
  Word rhs;
  std::string id;
};

/// A whole-word reduction added by cyclical completion. It applies to a word
/// w only when some rotation of w equals lhs, and replaces the whole word by
/// rhs; it is never applied to a proper subword.
struct CyclicRule {
  Word lhs;
  Word rhs;
  std::string id;
};

/// A finite rewriting system: an alphabet, an ordered list of rules, an
/// optional list of whole-word cyclic rules, and user-asserted flags.
class RewritingSystem {
 public:
  RewritingSystem() = default;

  RewritingSystem(Alphabet alphabet, std::vector<Rule> rules)
      : alphabet_(std::move(alphabet)), rules_(std::move(rules)) {
    for (const Rule& r : rules_) {
      if (r.lhs.empty()) {
        throw std::invalid_argument("rule " + r.id + ": left-hand side is empty");
      }
      if (r.lhs == r.rhs) {
        throw std::invalid_argument("rule " + r.id + ": both sides are equal");
      }
      require_over_alphabet(r.lhs, r.id);
      require_over_alphabet(r.rhs, r.id);
    }
  }

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const std::vector<Rule>& rules() const noexcept { return rules_; }
  const std::vector<CyclicRule>& cyclic_rules() const noexcept { return cyclic_rules_; }

  void add_cyclic_rule(CyclicRule rule) {
    if (rule.lhs == rule.rhs) {
      throw std::invalid_argument("cyclic rule " + rule.id + ": both sides are equal");
    }
    require_over_alphabet(rule.lhs, rule.id);
    require_over_alphabet(rule.rhs, rule.id);
    cyclic_rules_.push_back(std::move(rule));
  }

  bool asserted_complete() const noexcept { return asserted_complete_; }
  void set_asserted_complete(bool v) noexcept { asserted_complete_ = v; }

  Semantics semantics() const noexcept { return semantics_; }
  void set_semantics(Semantics s) noexcept { semantics_ = s; }

  /// True when the system was built from rule schemas cut off at a finite
  /// bound; analyses of long words may then be incomplete.
  bool truncated_schemas() const noexcept { return truncated_schemas_; }
  void set_truncated_schemas(bool v) noexcept { truncated_schemas_ = v; }

  bool length_preserving() const noexcept {
    for (const Rule& r : rules_) {
      if (r.lhs.size() != r.rhs.size()) {
        return false;
      }
    }
    return true;
  }

  bool length_nonincreasing() const noexcept {
    for (const Rule& r : rules_) {
      if (r.lhs.size() < r.rhs.size()) {
        return false;
      }
    }
    return true;
  }

  bool length_decreasing() const noexcept {
    for (const Rule& r : rules_) {
      if (r.lhs.size() <= r.rhs.size()) {
        return false;
      }
    }
    return true;
  }

  const Rule& rule(std::size_t index) const { return rules_.at(index); }

  std::size_t rule_index(const std::string& id) const {
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      if (rules_[i].id == id) {
        return i;
      }
    }
    throw std::invalid_argument("no rule with id '" + id + "'");
  }

 private:
  void require_over_alphabet(const Word& w, const std::string& id) const {
    for (Symbol s : w) {
      if (s >= alphabet_.size()) {
        throw std::invalid_argument("rule " + id + ": symbol index out of range");
      }
    }
  }

  Alphabet alphabet_;
  std::vector<Rule> rules_;
  std::vector<CyclicRule> cyclic_rules_;
  bool asserted_complete_ = false;
  Semantics semantics_ = Semantics::generic;
  bool truncated_schemas_ = false;
};

/// Ids of rules that fail the sufficient termination condition "every rule is
/// length-nonincreasing and length-preserving rules decrease in shortlex
/// order". An empty result certifies termination of ordinary reduction; a
/// non-empty one proves nothing either way.
inline std::vector<std::string> shortlex_violations(const RewritingSystem& rs) {
  std::vector<std::string> out;
  for (const Rule& r : rs.rules()) {
    const bool ok = r.lhs.size() > r.rhs.size()
                    || (r.lhs.size() == r.rhs.size() && r.rhs < r.lhs);
    if (!ok) {
      out.push_back(r.id);
    }
  }
  return out;
}

}  // namespace cyrew

#endif  // CYREW_SYSTEM_HPP
