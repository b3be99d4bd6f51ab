#include <gtest/gtest.h>

#include <string>

#include "cyrew/analysis.hpp"
#include "cyrew/completion.hpp"
#include "cyrew/format.hpp"

namespace {

using namespace cyrew;

const std::string kFixtures = CYREW_FIXTURES_DIR;

RewritingSystem shift() { return load_system(kFixtures + "/shift.rsys"); }
RewritingSystem braid5() { return load_system(kFixtures + "/braid5.rsys"); }

TEST(OrientPair, FreeForcedConflict) {
  const Word p{6}, q{7}, r{8};
  std::unordered_map<Word, std::size_t, WordHash> sources;

  Orientation free = orient_pair(p, q, sources);
  EXPECT_FALSE(free.forced);
  EXPECT_FALSE(free.conflict);
  EXPECT_EQ(free.lhs, q);  // larger side becomes the source
  EXPECT_EQ(free.rhs, p);

  sources.emplace(p, 0);
  Orientation forced = orient_pair(p, q, sources);
  EXPECT_TRUE(forced.forced);
  EXPECT_EQ(forced.lhs, q);
  EXPECT_EQ(forced.rhs, p);

  Orientation forced2 = orient_pair(q, p, sources);
  EXPECT_TRUE(forced2.forced);
  EXPECT_EQ(forced2.lhs, q);

  sources.emplace(q, 1);
  EXPECT_TRUE(orient_pair(p, q, sources).conflict);
  (void)r;
}

TEST(Completion, FiveGeneratorSystemAddsOneRule) {
  const RewritingSystem rs = braid5();
  const CompletionOutcome outcome = cyclical_completion(rs);
  EXPECT_EQ(outcome.status, CompletionStatus::completed);
  ASSERT_EQ(outcome.added.size(), 1u);
  const AddedReduction& added = outcome.added.front();
  EXPECT_EQ(to_text(rs.alphabet(), added.rule.lhs), "ba_");
  EXPECT_EQ(to_text(rs.alphabet(), added.rule.rhs), "ab_");
  EXPECT_EQ(outcome.unresolved, 0u);

  // The conjugator pair certifies lhs = rhs through base rules alone.
  ASSERT_TRUE(added.conjugators);
  const auto& [x, y] = *added.conjugators;
  EXPECT_TRUE(equal_in_monoid(rs, concat(added.rule.lhs, x), concat(x, added.rule.rhs)));
  EXPECT_TRUE(equal_in_monoid(rs, concat(y, added.rule.lhs), concat(added.rule.rhs, y)));

  // Base rules of the completed system are identical to the input's.
  ASSERT_EQ(outcome.system.rules().size(), rs.rules().size());
  for (std::size_t i = 0; i < rs.rules().size(); ++i) {
    EXPECT_EQ(outcome.system.rules()[i].lhs, rs.rules()[i].lhs);
    EXPECT_EQ(outcome.system.rules()[i].rhs, rs.rules()[i].rhs);
  }
  // No added left-hand side is reducible by base rules.
  for (const AddedReduction& a : outcome.added) {
    EXPECT_TRUE(is_cyclically_irreducible(rs, a.rule.lhs));
  }
}

TEST(Completion, NoSitesMeansNoAdditions) {
  const CompletionOutcome outcome = cyclical_completion(shift());
  EXPECT_EQ(outcome.status, CompletionStatus::completed);
  EXPECT_TRUE(outcome.added.empty());
}

TEST(Completion, DetectsOrientationConflict) {
  const RewritingSystem rs = load_system(kFixtures + "/conflict.rsys");
  ASSERT_TRUE(check_local_confluence(rs).empty());
  ASSERT_TRUE(check_reduced(rs).empty());
  const CompletionOutcome outcome = cyclical_completion(rs);
  EXPECT_EQ(outcome.status, CompletionStatus::failed);
  EXPECT_NE(outcome.failure.find("already sources"), std::string::npos);
  EXPECT_EQ(outcome.added.size(), 2u);  // Q ~> P and S ~> R landed first
}

TEST(Completion, ForcedOrientationAndRenormalization) {
  const RewritingSystem rs = load_system(kFixtures + "/forced.rsys");
  ASSERT_TRUE(check_local_confluence(rs).empty());
  const CompletionOutcome outcome = cyclical_completion(rs);
  EXPECT_EQ(outcome.status, CompletionStatus::completed);
  ASSERT_EQ(outcome.added.size(), 2u);
  EXPECT_EQ(to_text(rs.alphabet(), outcome.added[0].rule.lhs), "Q");
  EXPECT_EQ(to_text(rs.alphabet(), outcome.added[0].rule.rhs), "P");
  EXPECT_EQ(to_text(rs.alphabet(), outcome.added[1].rule.lhs), "S");
  // S was forced onto Q, whose own rule then renormalizes the target to P.
  EXPECT_EQ(to_text(rs.alphabet(), outcome.added[1].rule.rhs), "P");

  bool saw_forced = false, saw_renormalize = false;
  for (const std::string& line : outcome.log) {
    saw_forced = saw_forced || line.find("(forced)") != std::string::npos;
    saw_renormalize = saw_renormalize || line.find("renormalize") != std::string::npos;
  }
  EXPECT_TRUE(saw_forced);
  EXPECT_TRUE(saw_renormalize);

  for (const AddedReduction& a : outcome.added) {
    ASSERT_TRUE(a.conjugators);
    EXPECT_TRUE(equal_in_monoid(rs, concat(a.rule.lhs, a.conjugators->first),
                                concat(a.conjugators->first, a.rule.rhs)));
    EXPECT_TRUE(equal_in_monoid(rs, concat(a.conjugators->second, a.rule.lhs),
                                concat(a.rule.rhs, a.conjugators->second)));
  }
}

TEST(Completion, DeterministicLogsAndSystems) {
  for (const char* name : {"/braid5.rsys", "/forced.rsys", "/shift.rsys"}) {
    const RewritingSystem rs = load_system(kFixtures + name);
    const CompletionOutcome a = cyclical_completion(rs);
    const CompletionOutcome b = cyclical_completion(rs);
    EXPECT_EQ(a.log, b.log) << name;
    EXPECT_EQ(serialize_system(a.system), serialize_system(b.system)) << name;
  }
}

TEST(Completion, RoundTripThroughFileResolvesEverything) {
  const CompletionOutcome outcome = cyclical_completion(braid5());
  const std::string text = serialize_system(outcome.system);
  const RewritingSystem reloaded = parse_system(text);
  ASSERT_EQ(reloaded.cyclic_rules().size(), 1u);

  for (const auto& o : find_cyclic_overlaps(reloaded, {}, true)) {
    EXPECT_EQ(o.resolution.status, Resolution::resolves);
  }
  for (const auto& c : find_cyclic_inclusions(reloaded, {}, true)) {
    EXPECT_EQ(c.resolution.status, Resolution::resolves);
  }
  const ConfluenceVerdict verdict = cyclic_confluence_verdict(reloaded, {});
  EXPECT_EQ(verdict.status, Confluence::confluent);
}

TEST(Completion, CompletedSystemGivesUniqueForms) {
  const CompletionOutcome outcome = cyclical_completion(braid5());
  ASSERT_EQ(outcome.status, CompletionStatus::completed);
  const RewritingSystem& rplus = outcome.system;

  // The word a b now reduces to the oriented target only.
  const auto form = cyclic_form(rplus, parse_word(rplus.alphabet(), "a b"));
  ASSERT_EQ(form.status, CyclicFormResult::Status::unique);
  EXPECT_EQ(to_text(rplus.alphabet(), form.word), "ab_");

  // D a lies on a mutual cycle with no form at all; that is reported as
  // "no form", not as an ambiguity.
  const auto da = explore_cyclic(rplus, parse_word(rplus.alphabet(), "D a"));
  EXPECT_EQ(da.terminates, Tristate::no);
  EXPECT_FALSE(da.budget_hit);
  EXPECT_TRUE(da.irreducible_forms.empty());

  const CompletenessReport report = verify_cyclically_complete(rplus, 3);
  EXPECT_TRUE(report.ok());
  EXPECT_TRUE(report.ambiguous.empty());
  bool saw_da = false;
  const Word da_class = canonical_rotation(parse_word(rplus.alphabet(), "D a"));
  for (const Word& w : report.formless) {
    saw_da = saw_da || w == da_class;
  }
  EXPECT_TRUE(saw_da);
}

TEST(Completion, VerifierFlagsAmbiguityWithoutTheAddedRule) {
  const CompletenessReport report = verify_cyclically_complete(braid5(), 2);
  EXPECT_FALSE(report.ok());
  const Word ab_class = canonical_rotation(
      parse_word(braid5().alphabet(), "a b"));
  bool saw = false;
  for (const Word& w : report.ambiguous) {
    saw = saw || w == ab_class;
  }
  EXPECT_TRUE(saw);
}

TEST(Completion, VerifierRefusesOversizedEnumerations) {
  EXPECT_THROW(verify_cyclically_complete(braid5(), 10, {}, 1000),
               std::invalid_argument);
}

TEST(DeriveCertificates, RecoversConjugatorsAfterReload) {
  const CompletionOutcome outcome = cyclical_completion(braid5());
  const RewritingSystem reloaded = parse_system(serialize_system(outcome.system));
  const CertificateTable table = derive_added_certificates(reloaded);
  ASSERT_EQ(table.size(), 1u);
  const auto& entry = *table.begin();
  const CyclicRule& rule = reloaded.cyclic_rules().front();
  EXPECT_EQ(entry.first, rule.id);
  EXPECT_TRUE(equal_in_monoid(reloaded, concat(rule.lhs, entry.second.first),
                              concat(entry.second.first, rule.rhs)));
  EXPECT_TRUE(equal_in_monoid(reloaded, concat(entry.second.second, rule.lhs),
                              concat(rule.rhs, entry.second.second)));
}

TEST(DeriveCertificates, AlignsRotatedSpellings) {
  // Hand-written cyclic rules may spell either side in a rotated form; the
  // recovered pair must still certify the loaded spelling.
  RewritingSystem rs = load_system(kFixtures + "/forced.rsys");
  rs.add_cyclic_rule({parse_word(rs.alphabet(), "Q"),
                      parse_word(rs.alphabet(), "P"), "c1"});
  const CertificateTable table = derive_added_certificates(rs);
  ASSERT_TRUE(table.count("c1"));
}

}  // namespace
