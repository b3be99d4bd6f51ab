#include <gtest/gtest.h>

#include <deque>
#include <map>
#include <set>
#include <string>

#include "cyrew/cyclic.hpp"
#include "cyrew/format.hpp"

namespace {

using namespace cyrew;

const std::string kFixtures = CYREW_FIXTURES_DIR;

RewritingSystem shift() { return load_system(kFixtures + "/shift.rsys"); }
RewritingSystem braid() { return load_system(kFixtures + "/braid.rsys"); }
RewritingSystem braid5() { return load_system(kFixtures + "/braid5.rsys"); }
RewritingSystem trefoil() { return load_system(kFixtures + "/trefoil.rsys"); }

// ---------------------------------------------------------------------------
// Independent oracle: exhaustive rotate-then-single-rewrite closure on plain
// words, with its own rotation and rule application code. Verdicts follow
// from the word-level graph: a cycle means non-termination, sink words are
// the irreducible forms.
struct BruteResult {
  bool exhaustive = true;
  bool has_cycle = false;
  std::set<Word> forms;    // canonical classes of sink words
  std::set<Word> classes;  // canonical classes of every reachable word
};

BruteResult brute_explore(const RewritingSystem& rs, const Word& start,
                          std::size_t cap = 200'000) {
  BruteResult res;
  std::set<Word> seen;
  std::deque<Word> queue;
  std::map<Word, std::vector<Word>> succ;

  auto enqueue = [&](const Word& w) {
    if (seen.insert(w).second) {
      queue.push_back(w);
    }
  };
  const std::size_t n = start.empty() ? 1 : start.size();
  for (std::size_t i = 0; i < n; ++i) {
    Word rotated;
    for (std::size_t k = 0; k < start.size(); ++k) {
      rotated.push_back(start[(i + k) % start.size()]);
    }
    enqueue(rotated);
  }

  while (!queue.empty()) {
    if (seen.size() > cap) {
      res.exhaustive = false;
      break;
    }
    const Word w = queue.front();
    queue.pop_front();
    std::vector<Word> targets;
    const std::size_t rotations = w.empty() ? 1 : w.size();
    for (std::size_t i = 0; i < rotations; ++i) {
      Word rotated;
      for (std::size_t k = 0; k < w.size(); ++k) {
        rotated.push_back(w[(i + k) % w.size()]);
      }
      for (const Rule& rule : rs.rules()) {
        if (rule.lhs.size() > rotated.size()) {
          continue;
        }
        for (std::size_t p = 0; p + rule.lhs.size() <= rotated.size(); ++p) {
          bool match = true;
          for (std::size_t k = 0; k < rule.lhs.size(); ++k) {
            if (rotated[p + k] != rule.lhs[k]) {
              match = false;
              break;
            }
          }
          if (!match) {
            continue;
          }
          Word target(rotated.begin(), rotated.begin() + static_cast<long>(p));
          target.insert(target.end(), rule.rhs.begin(), rule.rhs.end());
          target.insert(target.end(), rotated.begin() + static_cast<long>(p + rule.lhs.size()),
                        rotated.end());
          targets.push_back(target);
          enqueue(target);
        }
      }
      for (const CyclicRule& rule : rs.cyclic_rules()) {
        if (rotated == rule.lhs) {
          targets.push_back(rule.rhs);
          enqueue(rule.rhs);
        }
      }
    }
    succ[w] = std::move(targets);
  }

  // A word without successors admits no rule on any rotation, so its class
  // is a cyclically irreducible form.
  for (const auto& [w, targets] : succ) {
    res.classes.insert(canonical_rotation(w));
    if (targets.empty()) {
      res.forms.insert(canonical_rotation(w));
    }
  }

  // Cycle detection by iterative three-color depth-first search.
  std::map<Word, int> color;
  for (const auto& [w, _] : succ) {
    if (color[w] != 0) {
      continue;
    }
    std::vector<std::pair<Word, std::size_t>> stack{{w, 0}};
    while (!stack.empty()) {
      auto& [cur, next] = stack.back();
      if (next == 0) {
        color[cur] = 1;
      }
      if (next < succ[cur].size()) {
        const Word& t = succ[cur][next++];
        if (color[t] == 1) {
          res.has_cycle = true;
        } else if (color[t] == 0 && succ.count(t)) {
          stack.emplace_back(t, 0);
        }
      } else {
        color[cur] = 2;
        stack.pop_back();
      }
    }
  }
  return res;
}

// Every step of a chain must replay: rotate the source, apply the recorded
// rule, land on the target.
void check_steps(const RewritingSystem& rs, const std::vector<CyclicStep>& steps,
                 const Word& start) {
  Word cur = start;
  for (const CyclicStep& step : steps) {
    ASSERT_EQ(step.source, cur);
    const Word rotated = rotate(step.source, step.rotation);
    ASSERT_EQ(rotated, step.reduction.start);
    if (step.kind == StepKind::base) {
      ASSERT_FALSE(step.reduction.steps.empty());
      ASSERT_EQ(replay(rs, step.reduction), step.target);
    } else {
      ASSERT_TRUE(step.cyclic_rule);
      ASSERT_EQ(rs.cyclic_rules().at(*step.cyclic_rule).lhs, rotated);
      ASSERT_EQ(rs.cyclic_rules().at(*step.cyclic_rule).rhs, step.target);
    }
    cur = step.target;
  }
}

// ---------------------------------------------------------------------------

TEST(CyclicSteps, EnumeratesRotationRulePositionTriples) {
  const RewritingSystem rs = shift();
  const auto steps = cyclic_steps(rs, parse_word(rs.alphabet(), "b c d"));
  ASSERT_EQ(steps.size(), 2u);
  EXPECT_EQ(steps[0].rotation, 0u);
  EXPECT_EQ(to_text(rs.alphabet(), steps[0].target), "b d a");
  EXPECT_EQ(steps[1].rotation, 1u);
  EXPECT_EQ(to_text(rs.alphabet(), steps[1].target), "d a b");
  check_steps(rs, {steps[0]}, parse_word(rs.alphabet(), "b c d"));

  EXPECT_TRUE(cyclic_steps(rs, parse_word(rs.alphabet(), "a d a")).empty());
}

TEST(CyclicSteps, FiveGeneratorExample) {
  const RewritingSystem rs = braid5();
  const auto steps = cyclic_steps(rs, parse_word(rs.alphabet(), "a b"));
  ASSERT_EQ(steps.size(), 2u);
  EXPECT_EQ(to_text(rs.alphabet(), steps[0].target), "ab_");
  EXPECT_EQ(steps[0].rotation, 0u);
  EXPECT_EQ(to_text(rs.alphabet(), steps[1].target), "ba_");
  EXPECT_EQ(steps[1].rotation, 1u);
}

TEST(IsCyclicallyIrreducible, Examples) {
  const RewritingSystem s = shift();
  EXPECT_TRUE(is_cyclically_irreducible(s, parse_word(s.alphabet(), "a d a")));
  EXPECT_FALSE(is_cyclically_irreducible(s, s.rules()[0].lhs));
  EXPECT_TRUE(is_cyclically_irreducible(s, Word{}));

  const RewritingSystem b = braid();
  EXPECT_TRUE(is_cyclically_irreducible(b, parse_word(b.alphabet(), "a a a b a")));
  // b a b is reducible as is; a b b only via the wrapped rotation b a b.
  EXPECT_FALSE(is_cyclically_irreducible(b, parse_word(b.alphabet(), "a b b")));
}

TEST(Explore, ShiftCycleWitnessIsExact) {
  const RewritingSystem rs = shift();
  const Word bcd = parse_word(rs.alphabet(), "b c d");
  const ExplorationReport report = explore_cyclic(rs, bcd);
  EXPECT_EQ(report.terminates, Tristate::no);
  EXPECT_EQ(report.converges, Tristate::no);
  EXPECT_FALSE(report.budget_hit);
  EXPECT_TRUE(report.irreducible_forms.empty());
  ASSERT_TRUE(report.witness);
  const auto& wit = *report.witness;
  ASSERT_EQ(wit.steps.size(), 2u);
  EXPECT_EQ(to_text(rs.alphabet(), wit.steps[0].source), "b c d");
  EXPECT_EQ(wit.steps[0].rotation, 0u);
  EXPECT_EQ(to_text(rs.alphabet(), wit.steps[0].target), "b d a");
  EXPECT_EQ(to_text(rs.alphabet(), wit.steps[1].source), "b d a");
  EXPECT_EQ(wit.steps[1].rotation, 2u);
  EXPECT_EQ(to_text(rs.alphabet(), wit.steps[1].target), "b c d");
  EXPECT_EQ(wit.closing_rotation, 0u);
  check_steps(rs, wit.steps, bcd);
}

TEST(Explore, BraidLoopAndUniqueForm) {
  const RewritingSystem rs = braid();
  const Word w = parse_word(rs.alphabet(), "b a a b a");
  const ExplorationReport report = explore_cyclic(rs, w);
  EXPECT_EQ(report.terminates, Tristate::no);
  EXPECT_EQ(report.converges, Tristate::yes);
  ASSERT_EQ(report.irreducible_forms.size(), 1u);
  EXPECT_TRUE(are_cyclic_conjugates(report.irreducible_forms.front(),
                                    parse_word(rs.alphabet(), "a a a b a")));
  ASSERT_TRUE(report.witness);
  ASSERT_EQ(report.witness->steps.size(), 1u);
  EXPECT_EQ(to_text(rs.alphabet(), report.witness->steps[0].source), "b a a b a");
  EXPECT_EQ(report.witness->steps[0].rotation, 0u);
  EXPECT_EQ(to_text(rs.alphabet(), report.witness->steps[0].target), "a b a a b");
  EXPECT_EQ(report.witness->closing_rotation, 1u);
  check_steps(rs, report.witness->steps, w);
}

TEST(Explore, IrreducibleWordIsItsOwnForm) {
  const RewritingSystem rs = shift();
  const Word ada = parse_word(rs.alphabet(), "a d a");
  const ExplorationReport report = explore_cyclic(rs, ada);
  EXPECT_EQ(report.terminates, Tristate::yes);
  EXPECT_EQ(report.converges, Tristate::yes);
  ASSERT_EQ(report.irreducible_forms.size(), 1u);
  EXPECT_EQ(report.irreducible_forms.front(), canonical_rotation(ada));

  const ExplorationReport empty = explore_cyclic(rs, Word{});
  EXPECT_EQ(empty.terminates, Tristate::yes);
  EXPECT_EQ(empty.converges, Tristate::yes);
  EXPECT_EQ(empty.irreducible_forms, std::vector<Word>{Word{}});
}

TEST(Explore, SeedingWithAnyRotationGivesTheSameReport) {
  const RewritingSystem rs = braid();
  const Word w = parse_word(rs.alphabet(), "b a a b a");
  const ExplorationReport base = explore_cyclic(rs, w);
  for (std::size_t i = 1; i < w.size(); ++i) {
    const ExplorationReport other = explore_cyclic(rs, rotate(w, i));
    EXPECT_EQ(other.root, base.root);
    EXPECT_EQ(other.order, base.order);
    EXPECT_EQ(other.irreducible_forms, base.irreducible_forms);
    EXPECT_EQ(other.terminates, base.terminates);
    EXPECT_EQ(other.converges, base.converges);
  }
}

// Each cyclic step u e~i~> u~ -> v is a transposition: u = x y at the
// rotation point and v equals y x in the monoid. The check compares normal
// forms, which decide equality only where the system is confluent: on a
// bounded rule family that limits seeds to the largest left-hand side.
TEST(Explore, StepsAreTranspositions) {
  for (const auto& rs : {shift(), braid(), trefoil(), braid5()}) {
    std::size_t max_lhs = 0;
    for (const Rule& r : rs.rules()) {
      max_lhs = std::max(max_lhs, r.lhs.size());
    }
    const bool confluent = check_local_confluence(rs).empty();
    std::vector<Word> seeds;
    for (const Rule& r : rs.rules()) {
      seeds.push_back(r.lhs);
      if (confluent || 2 * r.lhs.size() <= max_lhs) {
        seeds.push_back(concat(r.lhs, r.lhs));
      }
    }
    for (const Word& seed : seeds) {
      for (const CyclicStep& step : cyclic_steps(rs, seed)) {
        const Word x(step.source.begin(),
                     step.source.begin() + static_cast<long>(step.rotation));
        const Word y(step.source.begin() + static_cast<long>(step.rotation),
                     step.source.end());
        EXPECT_TRUE(equal_in_monoid(rs, step.target, concat(y, x)));
      }
    }
  }
}

TEST(Explore, BudgetYieldsUnknown) {
  const RewritingSystem rs = braid5();
  const Word w = parse_word(rs.alphabet(), "a b a b a b");
  const ExplorationReport report = explore_cyclic(rs, w, ExploreBudget{2, 10});
  EXPECT_TRUE(report.budget_hit);
  EXPECT_NE(report.terminates, Tristate::yes);
}

TEST(CyclicForm, Examples) {
  const RewritingSystem rs = shift();
  const auto form = cyclic_form(rs, parse_word(rs.alphabet(), "a c d"));
  ASSERT_EQ(form.status, CyclicFormResult::Status::unique);
  EXPECT_EQ(to_text(rs.alphabet(), form.word), "a d a");
  check_steps(rs, form.chain, parse_word(rs.alphabet(), "a c d"));

  const auto none = cyclic_form(rs, parse_word(rs.alphabet(), "b c d"));
  EXPECT_EQ(none.status, CyclicFormResult::Status::none);
  EXPECT_FALSE(none.budget_hit);
}

TEST(CyclicForm, BraidFamilyReachesExpectedForms) {
  const RewritingSystem rs = braid();
  for (int n = 2; n <= 4; ++n) {
    Word w{1};
    for (int i = 0; i < n; ++i) {
      w.push_back(0);
    }
    w.push_back(1);
    w.push_back(0);
    const auto form = cyclic_form(rs, w);
    ASSERT_EQ(form.status, CyclicFormResult::Status::unique) << "n = " << n;
    Word expect{1};  // b a^(n+2)
    for (int i = 0; i < n + 2; ++i) {
      expect.push_back(0);
    }
    EXPECT_TRUE(are_cyclic_conjugates(form.word, expect)) << "n = " << n;
    check_steps(rs, form.chain, w);
  }
}

TEST(CyclicForm, AmbiguousWithoutCompletion) {
  const RewritingSystem rs = braid5();
  const auto form = cyclic_form(rs, parse_word(rs.alphabet(), "a b"));
  ASSERT_EQ(form.status, CyclicFormResult::Status::ambiguous);
  ASSERT_EQ(form.forms.size(), 2u);
  EXPECT_EQ(to_text(rs.alphabet(), form.forms[0]), "ab_");
  EXPECT_EQ(to_text(rs.alphabet(), form.forms[1]), "ba_");
}

TEST(Explore, AddedRulesParticipate) {
  RewritingSystem rs = braid5();
  rs.add_cyclic_rule({parse_word(rs.alphabet(), "ba_"),
                      parse_word(rs.alphabet(), "ab_"), "c1"});
  const auto form = cyclic_form(rs, parse_word(rs.alphabet(), "a b"));
  ASSERT_EQ(form.status, CyclicFormResult::Status::unique);
  EXPECT_EQ(to_text(rs.alphabet(), form.word), "ab_");
  check_steps(rs, form.chain, parse_word(rs.alphabet(), "a b"));
}

TEST(Explore, AgreesWithBruteForceOracle) {
  const RewritingSystem systems[] = {shift(), braid(), trefoil()};
  for (const auto& rs : systems) {
    const std::size_t k = std::min<std::size_t>(rs.alphabet().size(), 3);
    for (std::size_t len = 0; len <= 4; ++len) {
      Word w(len, 0);
      while (true) {
        if (canonical_rotation(w) == w) {
          const BruteResult brute = brute_explore(rs, w);
          ASSERT_TRUE(brute.exhaustive);
          const ExplorationReport report = explore_cyclic(rs, w);
          ASSERT_FALSE(report.budget_hit);
          EXPECT_EQ(report.terminates == Tristate::no, brute.has_cycle)
              << to_text(rs.alphabet(), w);
          const std::set<Word> forms(report.irreducible_forms.begin(),
                                     report.irreducible_forms.end());
          EXPECT_EQ(forms, brute.forms) << to_text(rs.alphabet(), w);
          EXPECT_EQ(report.converges == Tristate::yes, brute.forms.size() == 1)
              << to_text(rs.alphabet(), w);
          const std::set<Word> classes(report.order.begin(), report.order.end());
          EXPECT_EQ(classes, brute.classes) << to_text(rs.alphabet(), w);
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
  }
}

TEST(Dumps, AdjacencyAndDot) {
  const RewritingSystem rs = shift();
  const ExplorationReport report = explore_cyclic(rs, parse_word(rs.alphabet(), "b c d"));
  const std::string adjacency = dump_adjacency(report, rs.alphabet());
  EXPECT_NE(adjacency.find("node 0: b c d"), std::string::npos);
  EXPECT_NE(adjacency.find("-> b d a"), std::string::npos);
  const std::string dot = dump_dot(report, rs.alphabet());
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  EXPECT_NE(dot.find("n0 -> n1"), std::string::npos);
}

}  // namespace
