//
// Project chemsearch - Copyright 2026 The chemsearch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "chemsearch/textindex.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

namespace chemsearch {
namespace {
using Tokens = std::vector<std::string>;

bool contains(const Tokens &ts, const std::string &t) {
  return std::find(ts.begin(), ts.end(), t) != ts.end();
}

TEST(TokenizeTextTest, PlainWords) {
  EXPECT_EQ(tokenize_text("Suzuki coupling at 80"),
            (Tokens { "suzuki", "coupling", "at", "80" }));
  EXPECT_TRUE(tokenize_text("").empty());
  EXPECT_EQ(tokenize_text("cross-coupling, then work-up."),
            (Tokens { "cross", "coupling", "then", "work", "up" }));
}

TEST(TokenizeTextTest, NamesExpandThroughIupac) {
  Tokens ts = tokenize_text(
      "Heating N-((E)-2-bromo-2-phenylvinyl)-cinnamamide gave the lactam.");
  for (const char *t: { "bromo", "phenyl", "vinyl", "cinnamamide", "heating", "lactam" })
    EXPECT_TRUE(contains(ts, t)) << t;
}

TEST(TokenizeTextTest, NameShape) {
  EXPECT_TRUE(is_name_shaped("2-bromopyridine"));
  EXPECT_TRUE(is_name_shaped("(E)-2-butene"));
  EXPECT_FALSE(is_name_shaped("cross-coupling"));
  EXPECT_FALSE(is_name_shaped("4b"));
}

// Hand evaluation: N=2, df=1, tf=1, |d1|=2, avgdl=1.5.
TEST(Bm25Test, TwoDocumentExample) {
  TextIndex idx = TextIndex::build({ { "a", "b" }, { "a" } });
  auto hits = idx.search(Tokens { "b" }, 10);
  ASSERT_EQ(hits.size(), 1);
  EXPECT_EQ(hits[0].ordinal, 0);
  EXPECT_NEAR(hits[0].score, 0.6100, 1e-4);
  double expected = std::log(2.0) * (1 * 2.2) / (1 + 1.2 * (0.25 + 0.75 * (2 / 1.5)));
  EXPECT_DOUBLE_EQ(hits[0].score, expected);
}

TEST(Bm25Test, ShorterDocumentWinsAtEqualTf) {
  TextIndex idx = TextIndex::build({ { "a", "b" }, { "a" } });
  auto hits = idx.search(Tokens { "a" }, 10);
  ASSERT_EQ(hits.size(), 2);
  EXPECT_EQ(hits[0].ordinal, 1);
  EXPECT_EQ(hits[1].ordinal, 0);
  double idf = std::log(1 + (2 - 2 + 0.5) / 2.5);
  EXPECT_DOUBLE_EQ(hits[0].score, idf * 2.2 / (1 + 1.2 * (0.25 + 0.75 / 1.5)));
  EXPECT_DOUBLE_EQ(hits[1].score, idf * 2.2 / (1 + 1.2 * (0.25 + 0.75 * 2 / 1.5)));
}

TEST(Bm25Test, AbsentTermGivesNothing) {
  TextIndex idx = TextIndex::build({ { "a", "b" }, { "a" } });
  EXPECT_TRUE(idx.search(Tokens { "zzz" }, 10).empty());
}

TEST(Bm25Test, RepeatedQueryTermsCountOnce) {
  TextIndex idx = TextIndex::build({ { "a", "b" }, { "a" } });
  EXPECT_EQ(idx.search(Tokens { "b", "b" }, 10), idx.search(Tokens { "b" }, 10));
}

TEST(TextIndexTest, BuildBasics) {
  TextIndex idx = TextIndex::build({ { "a", "b", "a" } });
  ASSERT_NE(idx.find("a"), nullptr);
  EXPECT_EQ(*idx.find("a"), (std::vector<Posting> { { 0, 2 } }));
  EXPECT_THROW(TextIndex::build({}), EmptyIndex);
}

TEST(TextIndexTest, LengthsAndAverage) {
  std::vector<std::string> texts { "Bromobenzene and phenylboronic acid were coupled.",
                                   "Ethanol is a common solvent.",
                                   "Flasks were dried." };
  std::vector<Tokens> docs;
  for (const auto &t: texts) docs.push_back(tokenize_text(t));
  TextIndex idx = TextIndex::build(docs);
  EXPECT_EQ(idx.size(), 3);
  EXPECT_EQ(idx.lengths(), (std::vector<int> { 6, 5, 3 }));
  EXPECT_DOUBLE_EQ(idx.average_length(), 14.0 / 3.0);
}

TEST(TextIndexTest, KLimitsAndOrdering) {
  std::vector<Tokens> docs { { "x", "y" }, { "x" }, { "x", "x" }, { "y" } };
  TextIndex idx = TextIndex::build(docs);
  auto all = idx.search(Tokens { "x", "y" }, 10);
  for (std::size_t i = 1; i < all.size(); ++i) {
    EXPECT_TRUE(all[i - 1].score > all[i].score
                || (all[i - 1].score == all[i].score && all[i - 1].ordinal < all[i].ordinal));
  }
  EXPECT_EQ(idx.search(Tokens { "x", "y" }, 2).size(), 2);
  EXPECT_THROW(idx.search(Tokens { "x" }, 0), std::invalid_argument);
}

TEST(Bm25Test, TfMonotonicOnSyntheticPostings) {
  std::mt19937 rng(20260101);
  std::uniform_int_distribution<int> n_dist(1, 500), tf_dist(1, 40), len_dist(1, 400);
  std::uniform_real_distribution<double> avg_dist(1.0, 300.0);
  for (int i = 0; i < 1000; ++i) {
    int n = n_dist(rng);
    int df = std::uniform_int_distribution<int>(1, n)(rng);
    int tf = tf_dist(rng);
    int len = std::max(len_dist(rng), tf + 1);
    double avg = avg_dist(rng);
    double lo = bm25_term_score(tf, len, avg, df, n);
    double hi = bm25_term_score(tf + 1, len, avg, df, n);
    ASSERT_GE(lo, 0.0);
    ASSERT_GE(hi, lo) << "tf=" << tf << " len=" << len << " avg=" << avg;
  }
}

// Index-level: swap a filler token for a query term, length unchanged.
TEST(Bm25Test, TfMonotonicInsideIndex) {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> word(0, 5), len(2, 12), ndocs(2, 8);
  const Tokens vocab { "q", "r", "s", "t", "u", "v" };
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Tokens> docs(ndocs(rng));
    for (Tokens &d: docs)
      for (int j = len(rng); j > 0; --j) d.push_back(vocab[word(rng)]);
    docs[0].push_back("filler");
    docs[1].push_back("q");
    auto score_of = [](const std::vector<Tokens> &ds) {
      for (const TextHit &h: TextIndex::build(ds).search(Tokens { "q" }, 100))
        if (h.ordinal == 0) return h.score;
      return 0.0;
    };
    double before = score_of(docs);
    docs[0].back() = "q";
    ASSERT_GE(score_of(docs), before);
  }
}

TEST(Bm25Test, SingleTermReturnsExactlyPostings) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> word(0, 9), len(1, 10);
  std::vector<Tokens> docs(30);
  for (Tokens &d: docs)
    for (int j = len(rng); j > 0; --j) d.push_back("w" + std::to_string(word(rng)));
  TextIndex idx = TextIndex::build(docs);
  for (int w = 0; w < 10; ++w) {
    std::string term = "w" + std::to_string(w);
    std::set<int> expected;
    for (std::size_t i = 0; i < docs.size(); ++i)
      if (contains(docs[i], term)) expected.insert(static_cast<int>(i));
    std::set<int> got;
    for (const TextHit &h: idx.search(Tokens { term }, 1000)) got.insert(h.ordinal);
    EXPECT_EQ(got, expected) << term;
  }
}

}  // namespace
}  // namespace chemsearch
