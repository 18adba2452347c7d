// Copyright 2026 The cpabe-enclave Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <set>
#include <string>

#include "cpabe/common/error.hpp"
#include "cpabe/policy/policy.hpp"
#include "cpabe/policy/satisfaction.hpp"
#include "support/errors.hpp"
#include "support/policy_oracle.hpp"

namespace cpabe::policy {
namespace {

constexpr char kProfessorPolicy[] = "designation:professor department:cs file-type:pdf 3of3";

using test_support::error_of;

AttributeSet attrs(std::initializer_list<const char*> names) {
  AttributeSet out;
  for (auto* n : names) out.emplace(n);
  return out;
}

TEST(AttributeTest, NormalizesCase) {
  EXPECT_EQ(Attribute("Department:CS").str(), "department:cs");
  EXPECT_EQ(Attribute("file-type:pdf").str(), "file-type:pdf");
  EXPECT_EQ(Attribute("a_b.c-d:1").str(), "a_b.c-d:1");
}

TEST(AttributeTest, NormalizationIsIdempotent) {
  for (const char* raw : {"ABC", "x:Y", "File-Type:PDF", "v1.2"}) {
    auto once = normalize_attribute(raw);
    EXPECT_EQ(normalize_attribute(once), once);
  }
}

TEST(AttributeTest, RejectsBadTokens) {
  EXPECT_EQ(error_of([] { Attribute(""); }), Errc::kBadToken);
  EXPECT_EQ(error_of([] { Attribute("has space"); }), Errc::kBadToken);
  EXPECT_EQ(error_of([] { Attribute("semi;colon"); }), Errc::kBadToken);
  EXPECT_EQ(error_of([] { Attribute("2of3"); }), Errc::kBadToken);
  EXPECT_EQ(error_of([] { Attribute("AND"); }), Errc::kBadToken);
}

TEST(AttributeTest, ListParsingCollapsesDuplicates) {
  auto set = parse_attribute_list("a, B,b  c");
  EXPECT_EQ(set, attrs({"a", "b", "c"}));
}

TEST(ParsePolicyTest, ThreeAttributeRule) {
  auto tree = parse_policy(kProfessorPolicy);
  const auto& root = tree.root();
  ASSERT_FALSE(root.is_leaf());
  EXPECT_EQ(root.threshold(), 3u);
  ASSERT_EQ(root.children().size(), 3u);
  EXPECT_EQ(root.children()[0].attribute().str(), "designation:professor");
  EXPECT_EQ(root.children()[1].attribute().str(), "department:cs");
  EXPECT_EQ(root.children()[2].attribute().str(), "file-type:pdf");
}

TEST(ParsePolicyTest, MinimalAndGate) {
  auto tree = parse_policy("a b 2of2");
  auto expected = PolicyNode::gate(
      2, {PolicyNode::leaf(Attribute("a")), PolicyNode::leaf(Attribute("b"))});
  EXPECT_EQ(tree.root(), expected);
}

TEST(ParsePolicyTest, NestedGateFollowsStackOrder) {
  // Stack trace: [a] [a b] [G1(a,b)] [G1 c] [G2(G1, c)]
  auto tree = parse_policy("a b 1of2 c 2of2");
  auto expected = PolicyNode::gate(
      2, {PolicyNode::gate(1, {PolicyNode::leaf(Attribute("a")),
                               PolicyNode::leaf(Attribute("b"))}),
          PolicyNode::leaf(Attribute("c"))});
  EXPECT_EQ(tree.root(), expected);
}

TEST(ParsePolicyTest, SugarKeywords) {
  EXPECT_EQ(parse_policy("a b and").text(), "a b 2of2");
  EXPECT_EQ(parse_policy("a b OR c and").text(), "a b 1of2 c 2of2");
}

TEST(ParsePolicyTest, Errors) {
  EXPECT_EQ(error_of([] { parse_policy(""); }), Errc::kEmptyPolicy);
  EXPECT_EQ(error_of([] { parse_policy("   \n\t"); }), Errc::kEmptyPolicy);
  EXPECT_EQ(error_of([] { parse_policy("a 2of2"); }), Errc::kArityError);
  EXPECT_EQ(error_of([] { parse_policy("a b 3of2"); }), Errc::kArityError);
  EXPECT_EQ(error_of([] { parse_policy("a b 0of2"); }), Errc::kArityError);
  EXPECT_EQ(error_of([] { parse_policy("a b"); }), Errc::kArityError);
  EXPECT_EQ(error_of([] { parse_policy("a b! 1of2"); }), Errc::kBadToken);
  EXPECT_EQ(error_of([] { parse_policy("a 99999999999of1"); }), Errc::kBadToken);
}

TEST(ParsePolicyTest, LimitsAreEnforced) {
  std::string deep = "a";
  for (int i = 0; i < 33; ++i) deep += " 1of1";
  EXPECT_EQ(error_of([&] { parse_policy(deep); }), Errc::kLimitExceeded);
  EXPECT_NO_THROW(parse_policy(deep, {.max_depth = 40, .max_leaves = 1024}));

  std::string wide;
  for (int i = 0; i < 1025; ++i) wide += "x" + std::to_string(i) + " ";
  wide += "1of1025";
  EXPECT_EQ(error_of([&] { parse_policy(wide); }), Errc::kLimitExceeded);
  EXPECT_EQ(error_of([&] { parse_policy("a b c 1of3", {.max_depth = 32, .max_leaves = 2}); }),
            Errc::kLimitExceeded);
}

TEST(ParsePolicyTest, DuplicateLeavesAreAllowed) {
  auto tree = parse_policy("a a 2of2");
  EXPECT_EQ(tree.leaf_count(), 2u);
  EXPECT_EQ(tree.vocabulary(), (std::vector<std::string>{"a"}));
}

TEST(FormatPolicyTest, RoundTripsThreeAttributeRule) {
  EXPECT_EQ(format_policy(parse_policy(kProfessorPolicy)), kProfessorPolicy);
  EXPECT_EQ(format_policy(parse_policy("  Designation:Professor   department:cs\tfile-type:pdf 3OF3 ")),
            kProfessorPolicy);
}

TEST(FormatPolicyTest, InverseOfParseAndStable) {
  auto tree = PolicyTree(PolicyNode::gate(
      2, {PolicyNode::leaf(Attribute("a")), PolicyNode::leaf(Attribute("b"))}));
  EXPECT_EQ(format_policy(tree), "a b 2of2");
  EXPECT_EQ(format_policy(tree), format_policy(tree));
}

TEST(FormatPolicyTest, RoundTripOnRandomTrees) {
  test_support::RandomPolicyGenerator gen(7, test_support::universe(6));
  for (int i = 0; i < 1000; ++i) {
    auto tree = gen.next(16, 4);
    auto reparsed = parse_policy(format_policy(tree));
    ASSERT_EQ(reparsed, tree) << tree.text();
    ASSERT_EQ(reparsed.text(), tree.text());
  }
}

TEST(SatisfiesTest, ThreeAttributeRuleNeedsAllThree) {
  auto tree = parse_policy(kProfessorPolicy);
  EXPECT_TRUE(
      satisfies(tree, attrs({"designation:professor", "department:cs", "file-type:pdf"})).satisfied);
  EXPECT_FALSE(satisfies(tree, attrs({"designation:professor", "file-type:pdf"})).satisfied);
  EXPECT_FALSE(satisfies(tree, {}).satisfied);
}

TEST(SatisfiesTest, SelectsLowestIndices) {
  auto tree = parse_policy("a b c d 2of4");
  auto result = satisfies(tree, attrs({"b", "c", "d"}));
  ASSERT_TRUE(result.satisfied);
  EXPECT_EQ(result.root.selected, (std::vector<std::size_t>{1, 2}));

  auto nested = parse_policy("a b 1of2 c 2of2");
  auto r2 = satisfies(nested, attrs({"a", "b", "c"}));
  ASSERT_TRUE(r2.satisfied);
  EXPECT_EQ(r2.root.selected, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(r2.root.children[0].selected, (std::vector<std::size_t>{0}));
}

TEST(SatisfiesTest, MatchesTruthTableOverFourAttributes) {
  auto names = test_support::universe(4);
  test_support::RandomPolicyGenerator gen(11, names);
  for (int t = 0; t < 200; ++t) {
    auto tree = gen.next(8, 3);
    for (unsigned mask = 0; mask < 16; ++mask) {
      std::set<std::string> subset;
      for (unsigned b = 0; b < 4; ++b) {
        if (mask & (1u << b)) subset.insert(names[b]);
      }
      ASSERT_EQ(satisfies(tree, test_support::to_attribute_set(subset)).satisfied,
                test_support::oracle_satisfied(tree.root(), subset))
          << tree.text() << " mask=" << mask;
    }
  }
}

// Checks each satisfied gate reports exactly k satisfied children, recursively.
void check_selection(const PolicyNode& node, const NodeSatisfaction& sat) {
  if (node.is_leaf()) return;
  if (!sat.satisfied) {
    EXPECT_TRUE(sat.selected.empty());
  } else {
    ASSERT_EQ(sat.selected.size(), node.threshold());
    for (std::size_t i = 0; i < sat.selected.size(); ++i) {
      EXPECT_TRUE(sat.children[sat.selected[i]].satisfied);
      if (i > 0) EXPECT_LT(sat.selected[i - 1], sat.selected[i]);
    }
  }
  for (std::size_t i = 0; i < node.children().size(); ++i) {
    check_selection(node.children()[i], sat.children[i]);
  }
}

TEST(SatisfiesTest, OracleEquivalenceMonotonicityAndSelection) {
  auto names = test_support::universe(8);
  test_support::RandomPolicyGenerator gen(23, names);
  for (int t = 0; t < 300; ++t) {
    auto tree = gen.next(8, 3);
    // Every subset of the tree's own leaf universe.
    auto vocab = tree.vocabulary();
    for (unsigned mask = 0; mask < (1u << vocab.size()); ++mask) {
      std::set<std::string> subset;
      for (std::size_t b = 0; b < vocab.size(); ++b) {
        if (mask & (1u << b)) subset.insert(vocab[b]);
      }
      auto result = satisfies(tree, test_support::to_attribute_set(subset));
      ASSERT_EQ(result.satisfied, test_support::oracle_satisfied(tree.root(), subset));
      check_selection(tree.root(), result.root);
      if (result.satisfied) {
        auto bigger = subset;
        bigger.insert(names[t % names.size()]);
        bigger.insert("unrelated");
        EXPECT_TRUE(satisfies(tree, test_support::to_attribute_set(bigger)).satisfied);
      }
    }
  }
}

}  // namespace
}  // namespace cpabe::policy
