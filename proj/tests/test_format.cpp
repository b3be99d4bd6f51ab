#include <gtest/gtest.h>

#include <string>

#include "cyrew/format.hpp"

namespace {

using namespace cyrew;

const char* kBraid =
    "alphabet: a b\n"
    "option: complete\n"
    "rule: b a b -> a b a\n"
    "schema: b a^n b a -> a b a^2 b^(n-1) ; n=2..N\n";

TEST(ParseSystem, BraidSchemaInstantiation) {
  std::vector<std::string> warnings;
  const RewritingSystem rs = parse_system(kBraid, LoadOptions{4}, &warnings);
  ASSERT_EQ(rs.rules().size(), 4u);
  EXPECT_EQ(rs.rules()[0].id, "r1");
  EXPECT_EQ(rs.rules()[1].id, "r2[n=2]");
  EXPECT_EQ(rs.rules()[3].id, "r2[n=4]");
  EXPECT_EQ(to_text(rs.alphabet(), rs.rules()[1].lhs), "b a a b a");
  EXPECT_EQ(to_text(rs.alphabet(), rs.rules()[1].rhs), "a b a a b");
  EXPECT_EQ(to_text(rs.alphabet(), rs.rules()[3].rhs), "a b a a b b b");
  EXPECT_TRUE(rs.asserted_complete());
  EXPECT_TRUE(rs.length_preserving());
  EXPECT_TRUE(rs.truncated_schemas());
  ASSERT_EQ(warnings.size(), 1u);  // schema truncation note
  EXPECT_NE(warnings[0].find("n=4"), std::string::npos);
}

TEST(ParseSystem, ExplicitRangeAndExponentZero) {
  const RewritingSystem rs = parse_system(
      "alphabet: z x y\n"
      "rule: x y -> z x\n"
      "schema: x z^n x -> z x z y^(n-1) ; n=1..3\n");
  ASSERT_EQ(rs.rules().size(), 4u);
  EXPECT_EQ(to_text(rs.alphabet(), rs.rules()[1].lhs), "x z x");
  EXPECT_EQ(to_text(rs.alphabet(), rs.rules()[1].rhs), "z x z");  // y^0 vanishes
  EXPECT_FALSE(rs.truncated_schemas());
}

TEST(ParseSystem, OptionsAndCyclicRules) {
  const RewritingSystem rs = parse_system(
      "# comment line\n"
      "alphabet: a b ab_ ba_ D\n"
      "option: semantics=special\n"
      "rule: a b -> ab_   # trailing comment\n"
      "\n"
      "cyclic-rule: ba_ ~> ab_\n");
  EXPECT_EQ(rs.semantics(), Semantics::special);
  EXPECT_FALSE(rs.asserted_complete());
  ASSERT_EQ(rs.cyclic_rules().size(), 1u);
  EXPECT_EQ(rs.cyclic_rules()[0].id, "c1");
  EXPECT_EQ(to_text(rs.alphabet(), rs.cyclic_rules()[0].lhs), "ba_");
}

TEST(ParseSystem, EmptyRhsAllowedEmptyLhsRejected) {
  const RewritingSystem rs = parse_system("alphabet: a\nrule: a a -> 1\n");
  EXPECT_TRUE(rs.rules()[0].rhs.empty());
  EXPECT_THROW(parse_system("alphabet: a\nrule: 1 -> a\n"), ParseError);
}

TEST(ParseSystem, ErrorsCarryLineAndColumn) {
  try {
    parse_system("alphabet: a b\nrule: a c -> b\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 2u);
    EXPECT_EQ(e.column, 9u);  // the 'c'
    EXPECT_NE(std::string(e.what()).find("'c'"), std::string::npos);
  }
  EXPECT_THROW(parse_system("rule: a -> b\n"), ParseError);          // no alphabet
  EXPECT_THROW(parse_system("alphabet: a\nrule: a a\n"), ParseError);  // no arrow
  EXPECT_THROW(parse_system("alphabet: a\nfoo: bar\n"), ParseError);
  EXPECT_THROW(parse_system("alphabet: a\nalphabet: b\n"), ParseError);
  EXPECT_THROW(parse_system("alphabet: a\noption: turbo\n"), ParseError);
  EXPECT_THROW(parse_system("alphabet: a a\n"), ParseError);
  EXPECT_THROW(parse_system("alphabet: a\nrule: a -> a\n"), ParseError);
  EXPECT_THROW(parse_system("alphabet: a\nschema: a^n -> a ; n=2\n"), ParseError);
  EXPECT_THROW(parse_system("alphabet: a\nschema: a^n -> a^(n+1) ; n=3..2\n"),
               ParseError);
  EXPECT_THROW(
      parse_system("alphabet: a b\nschema: a^(n-2) b -> b a^(n-2) ; n=1..3\n"),
      ParseError);  // negative exponent at n=1
}

TEST(ParseWord, EmptyWordSpelledAsOne) {
  const Alphabet sigma({"a", "b"});
  EXPECT_EQ(parse_word(sigma, "1"), Word{});
  EXPECT_EQ(parse_word(sigma, "a b a"), (Word{0, 1, 0}));
  EXPECT_THROW(parse_word(sigma, "a c"), ParseError);
  const Alphabet with_one({"1", "a"});
  EXPECT_EQ(parse_word(with_one, "1"), Word{0});
}

TEST(Serialize, RoundTripsContent) {
  std::vector<std::string> warnings;
  RewritingSystem rs = parse_system(kBraid, LoadOptions{3}, &warnings);
  rs.add_cyclic_rule({{1, 0}, {0, 1}, "c1"});
  const std::string text = serialize_system(rs);
  const RewritingSystem back = parse_system(text);
  ASSERT_EQ(back.rules().size(), rs.rules().size());
  for (std::size_t i = 0; i < rs.rules().size(); ++i) {
    EXPECT_EQ(back.rules()[i].lhs, rs.rules()[i].lhs);
    EXPECT_EQ(back.rules()[i].rhs, rs.rules()[i].rhs);
  }
  ASSERT_EQ(back.cyclic_rules().size(), 1u);
  EXPECT_EQ(back.cyclic_rules()[0].lhs, rs.cyclic_rules()[0].lhs);
  EXPECT_TRUE(back.asserted_complete());
  EXPECT_EQ(serialize_system(back), text);
}

TEST(ParseSystem, WarnsOnLengthIncreasingRule) {
  std::vector<std::string> warnings;
  parse_system("alphabet: a b\nrule: a -> b b\n", LoadOptions{}, &warnings);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("increases length"), std::string::npos);
}

TEST(LoadSystem, MissingFile) {
  EXPECT_THROW(load_system("/nonexistent/x.rsys"), std::runtime_error);
}

}  // namespace
