#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sidon/difference_set.hpp"
#include "sidon/prefix.hpp"
#include "sidon/recipe.hpp"
#include "sidon/verify.hpp"

namespace sidon {
namespace {

std::set<std::uint64_t> members(const DifferenceSet& d) {
  std::set<std::uint64_t> out;
  d.for_each([&](std::uint64_t v) { out.insert(v); });
  return out;
}

SidonPrefix prefix_of(std::initializer_list<Term> terms) {
  return SidonPrefix::rebuild(std::vector<Term>(terms));
}

// --- DifferenceSet -----------------------------------------------------------

TEST(DifferenceSet, DenseAndSparseTiersAgree) {
  // Tiny dense tier so most values land in the sparse buckets.
  DifferenceSet small(1 << 16);
  DifferenceSet large;
  std::mt19937_64 rng(7);
  std::set<std::uint64_t> truth;
  for (int i = 0; i < 5000; ++i) {
    const std::uint64_t v = 1 + rng() % 5'000'000;
    EXPECT_EQ(small.insert(v), truth.insert(v).second);
    large.insert(v);
  }
  EXPECT_EQ(small.size(), truth.size());
  EXPECT_EQ(members(small), truth);
  EXPECT_TRUE(small == large);
  for (int i = 0; i < 20000; ++i) {
    const std::uint64_t v = 1 + rng() % 5'000'000;
    EXPECT_EQ(small.contains(v), truth.contains(v)) << v;
  }
}

TEST(DifferenceSet, WindowMatchesPointQueries) {
  DifferenceSet d;
  std::mt19937_64 rng(11);
  for (int i = 0; i < 3000; ++i) d.insert(1 + rng() % 20000);
  for (std::uint64_t lo = 1; lo < 20100; lo += 37) {
    const std::uint64_t w = d.window(lo);
    for (unsigned j = 0; j < 64; ++j) {
      ASSERT_EQ(((w >> j) & 1u) != 0, d.contains(lo + j)) << lo << "+" << j;
    }
  }
}

TEST(DifferenceSet, WindowAtTierBoundary) {
  DifferenceSet d(1 << 16);
  d.insert((1 << 16) - 1);
  EXPECT_TRUE(d.window_in_dense((1 << 16) - 64));
  EXPECT_FALSE(d.window_in_dense((1 << 16) - 63));
  EXPECT_EQ(d.window((1 << 16) - 64) >> 63, 1u);
}

TEST(DifferenceSet, HugeValuesFitSparseTier) {
  DifferenceSet d;
  const std::uint64_t big = 130'000'000'000ULL;
  EXPECT_TRUE(d.insert(big));
  EXPECT_FALSE(d.insert(big));
  EXPECT_TRUE(d.contains(big));
  EXPECT_FALSE(d.contains(big + 1));
  EXPECT_FALSE(d.contains(big - 65536));
}

// --- is_admissible / append ------------------------------------------------------

TEST(Admissible, SpecExamples) {
  EXPECT_FALSE(prefix_of({1, 2, 4}).admits(5));
  EXPECT_TRUE(prefix_of({1, 2, 4}).admits(8));
  EXPECT_TRUE(prefix_of({1}).admits(2));
}

TEST(Admissible, RejectsNonIncreasingCandidate) {
  const auto p = prefix_of({1, 2, 4});
  EXPECT_THROW((void)p.admits(4), std::invalid_argument);
  EXPECT_THROW((void)p.admits(3), std::invalid_argument);
}

TEST(Append, ExtendsDifferences) {
  auto p = prefix_of({1, 2, 4});
  p.append(8);
  EXPECT_EQ(std::vector<Term>(p.terms().begin(), p.terms().end()), (std::vector<Term>{1, 2, 4, 8}));
  EXPECT_EQ(members(p.diffs()), (std::set<std::uint64_t>{1, 2, 3, 4, 6, 7}));
  EXPECT_EQ(p.diffs().size(), 6u);

  auto q = prefix_of({1});
  q.append(2);
  EXPECT_EQ(members(q.diffs()), (std::set<std::uint64_t>{1}));
}

TEST(Append, CollisionReportNamesTheTriple) {
  auto p = prefix_of({1, 2, 4});
  try {
    p.append(5);
    FAIL() << "5 should collide";
  } catch (const AdmissibilityError& e) {
    EXPECT_EQ(e.position(), 4u);
    ASSERT_TRUE(e.collision().has_value());
    const Collision& c = *e.collision();
    // 5 + 1 = 2 + 4
    EXPECT_EQ(c.x + c.a_i, c.a_j + c.a_k);
    EXPECT_EQ(std::multiset<Term>({c.x, c.a_i}), std::multiset<Term>({5, 1}));
    EXPECT_EQ(std::multiset<Term>({c.a_j, c.a_k}), std::multiset<Term>({2, 4}));
    EXPECT_NE(std::string(e.what()).find("5+1 = 2+4"), std::string::npos) << e.what();
  }
  // The failed append leaves the prefix untouched.
  EXPECT_EQ(p.size(), 3u);
  EXPECT_EQ(p.diffs().size(), 3u);
}

TEST(Append, NonIncreasingIsRejected) {
  auto p = prefix_of({1, 2, 4});
  EXPECT_THROW(p.append(4), AdmissibilityError);
  EXPECT_THROW(p.append(0), AdmissibilityError);
  SidonPrefix empty;
  EXPECT_THROW(empty.append(0), AdmissibilityError);
}

TEST(Append, CopiesAreIndependent) {
  auto p = prefix_of({1, 2, 4});
  SidonPrefix q = p;
  q.append(8);
  EXPECT_EQ(p.size(), 3u);
  EXPECT_EQ(p.diffs().size(), 3u);
  EXPECT_FALSE(p.diffs().contains(7));
  EXPECT_TRUE(q.diffs().contains(7));
}

// --- next_greedy -----------------------------------------------------------------

TEST(NextGreedy, SpecExamples) {
  EXPECT_EQ(prefix_of({1}).next_greedy(), 2u);
  EXPECT_EQ(prefix_of({1, 2}).next_greedy(), 4u);
  EXPECT_EQ(prefix_of({1, 2, 4}).next_greedy(), 8u);
  EXPECT_EQ(prefix_of({1, 2, 4, 8}).next_greedy(), 13u);

  auto p = prefix_of({1, 2, 4, 8, 13, 21, 31, 45, 66, 81});
  std::vector<Term> next;
  for (int i = 0; i < 4; ++i) {
    next.push_back(p.next_greedy());
    p.append(next.back());
  }
  EXPECT_EQ(next, (std::vector<Term>{97, 123, 148, 182}));
}

TEST(NextGreedy, HPinOverridesSmallerGreedyChoice) {
  const auto h26 = SidonPrefix::rebuild(generate(h_recipe(), 26));
  const Term greedy27 = h26.next_greedy();
  EXPECT_LT(greedy27, 962u);
  EXPECT_EQ(greedy27, oracle::greedy({{1, 1}, {15, 229}}, 27).back());
}

TEST(NextGreedy, MatchesBruteForceOnRandomPrefixes) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    // Random walk over the three smallest admissible values.
    SidonPrefix p;
    p.append(1 + rng() % 5);
    const std::size_t len = 2 + rng() % 60;
    while (p.size() < len) {
      const auto options = p.admissible_values(3);
      p.append(options[rng() % options.size()]);
    }
    Term brute = p.back() + 1;
    while (!p.admits(brute)) ++brute;
    ASSERT_EQ(p.next_greedy(), brute);
  }
}

TEST(NextGreedy, SieveAcrossDenseSparseBoundary) {
  // Small dense tier forces the sparse fallback for most differences.
  SidonPrefix narrow(1 << 16);
  SidonPrefix wide;
  for (int i = 0; i < 400; ++i) {
    const Term a = narrow.empty() ? 1 : narrow.next_greedy();
    const Term b = wide.empty() ? 1 : wide.next_greedy();
    ASSERT_EQ(a, b) << "position " << i + 1;
    narrow.append_unchecked(a);
    wide.append_unchecked(b);
  }
  EXPECT_GT(narrow.back(), Term{1} << 16);
}

TEST(NextGreedy, CountsScannedCandidates) {
  EngineStats stats;
  (void)generate(mian_chowla_recipe(), 50, &stats);
  EXPECT_GT(stats.candidates_scanned, 0u);
}

// --- generate --------------------------------------------------------------------

TEST(Generate, SpecExamples) {
  EXPECT_EQ(generate(mian_chowla_recipe(), 10),
            (std::vector<Term>{1, 2, 4, 8, 13, 21, 31, 45, 66, 81}));
  const auto z = generate(zhang_recipe(), 15);
  const auto g = generate(mian_chowla_recipe(), 14);
  EXPECT_EQ(z.back(), 229u);
  EXPECT_TRUE(std::equal(g.begin(), g.end(), z.begin()));
  const auto h = generate(h_recipe(), 27);
  const auto z26 = generate(zhang_recipe(), 26);
  EXPECT_EQ(h.back(), 962u);
  EXPECT_TRUE(std::equal(z26.begin(), z26.end(), h.begin()));
}

TEST(Generate, MatchesBruteForceGreedyOracle) {
  for (const auto& recipe : builtin_recipes()) {
    EXPECT_EQ(generate(recipe, 300), oracle::greedy(recipe.pins, 300)) << recipe.name;
  }
}

TEST(Generate, CustomPins) {
  const SequenceRecipe custom("custom", {{1, 1}, {3, 7}});
  const auto terms = generate(custom, 5);
  EXPECT_EQ(terms, oracle::greedy(custom.pins, 5));
  EXPECT_EQ((std::vector<Term>(terms.begin(), terms.begin() + 3)), (std::vector<Term>{1, 2, 7}));
}

TEST(Generate, InadmissiblePinNamesPosition) {
  // After 1, 2, 4 the value 5 collides (5 + 1 = 2 + 4).
  const SequenceRecipe bad("bad", {{1, 1}, {4, 5}});
  try {
    (void)generate(bad, 6);
    FAIL();
  } catch (const AdmissibilityError& e) {
    EXPECT_EQ(e.position(), 4u);
    EXPECT_TRUE(e.collision().has_value());
  }
  const SequenceRecipe shrinking("shrinking", {{1, 1}, {3, 2}});
  try {
    (void)generate(shrinking, 4);
    FAIL();
  } catch (const AdmissibilityError& e) {
    EXPECT_EQ(e.position(), 3u);
    EXPECT_FALSE(e.collision().has_value());
  }
}

TEST(Generate, RecipeMustPinFirstTerm) {
  EXPECT_THROW(SequenceRecipe("nofirst", {{2, 5}}), FormatError);
  EXPECT_THROW(SequenceRecipe("zero", {{1, 0}}), FormatError);
  EXPECT_THROW((void)generate(mian_chowla_recipe(), 0), std::invalid_argument);
}

TEST(Generate, FindRecipeByName) {
  EXPECT_EQ(find_recipe("mian-chowla")->pins, mian_chowla_recipe().pins);
  EXPECT_EQ(find_recipe("Mian_Chowla")->pins, mian_chowla_recipe().pins);
  EXPECT_EQ(find_recipe("zhang")->pins, zhang_recipe().pins);
  EXPECT_EQ(find_recipe("H")->pins, h_recipe().pins);
  EXPECT_FALSE(find_recipe("fibonacci").has_value());
}

TEST(Generate, Deterministic) {
  for (const auto& recipe : builtin_recipes()) {
    EXPECT_EQ(generate(recipe, 700), generate(recipe, 700));
  }
}

// --- invariants ------------------------------------------------------------------

TEST(Invariants, GeneratedPrefixesSatisfyStructuralBounds) {
  for (const auto& recipe : builtin_recipes()) {
    SidonPrefix p;
    for (std::size_t n = 1; n <= 2000; ++n) {
      extend(p, recipe, n);
      ASSERT_EQ(p.diffs().size(), n * (n - 1) / 2);
    }
    const auto t = p.terms();
    for (std::size_t i = 1; i <= t.size(); ++i) {
      // a_i > i(i-1)/2
      ASSERT_GT(t[i - 1], i * (i - 1) / 2) << recipe.name << " at " << i;
      // a_i >= a_j + (i - j); consecutive pairs imply all pairs.
      if (i >= 2) {
        ASSERT_GE(t[i - 1], t[i - 2] + 1);
      }
    }
    EXPECT_FALSE(verify_sidon(t).has_value()) << recipe.name;
  }
}

TEST(Invariants, GreedyMinimality) {
  for (const auto& recipe : builtin_recipes()) {
    const auto terms = generate(recipe, 200);
    SidonPrefix p;
    for (std::size_t pos = 1; pos <= terms.size(); ++pos) {
      const Term t = terms[pos - 1];
      if (!recipe.pin_at(pos)) {
        for (Term x = p.back() + 1; x < t; ++x) {
          ASSERT_FALSE(p.admits(x)) << recipe.name << " position " << pos << " skipped " << x;
        }
      }
      p.append(t);
    }
  }
}

TEST(Invariants, AdmissibilityAgreesWithOracle) {
  for (const auto& recipe : builtin_recipes()) {
    const auto terms = generate(recipe, 100);
    for (std::size_t len : {1u, 2u, 5u, 17u, 40u, 100u}) {
      const std::vector<Term> head(terms.begin(), terms.begin() + len);
      const auto p = SidonPrefix::rebuild(head);
      std::vector<Term> extended = head;
      extended.push_back(0);
      for (Term x = head.back() + 1; x <= head.back() + 500; ++x) {
        extended.back() = x;
        ASSERT_EQ(p.admits(x), !verify_sidon(extended).has_value())
            << recipe.name << " len " << len << " x " << x;
      }
    }
  }
}

TEST(Invariants, DifferenceSetMatchesRebuild) {
  const auto terms = generate(h_recipe(), 250);
  const auto rebuilt = SidonPrefix::rebuild(terms);
  EXPECT_EQ(members(rebuilt.diffs()), oracle::differences(terms));
  EXPECT_TRUE(rebuilt.diffs() == generate_prefix(h_recipe(), 250).diffs());
}

// --- verify_sidon ----------------------------------------------------------------

TEST(VerifySidon, SpecExamples) {
  EXPECT_FALSE(verify_sidon(std::vector<Term>{1, 2, 4, 8}).has_value());
  const auto v = verify_sidon(std::vector<Term>{1, 2, 3});
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->kind, ViolationKind::repeated_sum);
  EXPECT_EQ(v->describe().substr(0, 9), "1+3 = 2+2");
  EXPECT_FALSE(
      verify_sidon(std::vector<Term>{1, 2, 4, 8, 13, 21, 31, 45, 66, 81, 97, 123, 148, 182, 229})
          .has_value());
}

TEST(VerifySidon, NonIncreasingIsSeparateKind) {
  auto v = verify_sidon(std::vector<Term>{1, 4, 4, 9});
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->kind, ViolationKind::non_increasing);
  EXPECT_EQ(v->i, 3u);
  v = verify_sidon(std::vector<Term>{0, 1});
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->kind, ViolationKind::non_increasing);
}

TEST(VerifySidon, TrivialLists) {
  EXPECT_FALSE(verify_sidon(std::vector<Term>{}).has_value());
  EXPECT_FALSE(verify_sidon(std::vector<Term>{5}).has_value());
}

TEST(VerifySidon, ReportedQuadrupleIsReal) {
  std::mt19937_64 rng(99);
  int violations = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::set<Term> s;
    while (s.size() < 12) s.insert(1 + rng() % 400);
    const std::vector<Term> terms(s.begin(), s.end());
    const auto v = verify_sidon(terms);
    ASSERT_EQ(v.has_value(), !oracle::sums_distinct(terms));
    if (!v) continue;
    ++violations;
    EXPECT_EQ(v->a_i + v->a_j, v->a_k + v->a_l);
    EXPECT_LE(v->i, v->j);
    EXPECT_LE(v->k, v->l);
    EXPECT_NE(std::make_pair(v->i, v->j), std::make_pair(v->k, v->l));
  }
  EXPECT_GT(violations, 0);
}

TEST(VerifySidon, SlicingDoesNotChangeTheVerdict) {
  auto terms = generate(zhang_recipe(), 400);
  EXPECT_FALSE(verify_sidon(terms, 1000).has_value());
  // Break it: insert a term colliding with an existing sum.
  terms[399] = terms[398] + (terms[1] - terms[0]);
  const auto whole = verify_sidon(terms);
  const auto sliced = verify_sidon(terms, 777);
  ASSERT_TRUE(whole.has_value());
  ASSERT_TRUE(sliced.has_value());
  EXPECT_EQ(whole->describe(), sliced->describe());
}

// --- rebuild ---------------------------------------------------------------------

TEST(Rebuild, Examples) {
  const auto p = prefix_of({1, 2, 4});
  EXPECT_EQ(members(p.diffs()), (std::set<std::uint64_t>{1, 2, 3}));
  for (const auto& recipe : builtin_recipes()) {
    const auto terms = generate(recipe, 120);
    const auto rebuilt = SidonPrefix::rebuild(terms);
    EXPECT_TRUE(std::equal(terms.begin(), terms.end(), rebuilt.terms().begin()));
    EXPECT_EQ(rebuilt.next_greedy(), generate(recipe, 121).back()) << recipe.name;
  }
}

TEST(Rebuild, PropagatesVerificationFailure) {
  EXPECT_THROW((void)SidonPrefix::rebuild(std::vector<Term>{1, 2, 3}), SidonViolationError);
  EXPECT_THROW((void)SidonPrefix::rebuild(std::vector<Term>{2, 1}), SidonViolationError);
}

}  // namespace
}  // namespace sidon
