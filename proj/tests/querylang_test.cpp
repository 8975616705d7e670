//
// Project chemsearch - Copyright 2026 The chemsearch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "chemsearch/querylang.h"

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "test_common.h"

namespace chemsearch {
namespace {
using Tokens = std::vector<std::string>;

QueryErrorKind reaction_error(std::string_view s) {
  try {
    parse_reaction_smarts(s);
  } catch (const QueryError &e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for " << s;
  return QueryErrorKind::kEmptyQuery;
}

TEST(ReactionSmartsTest, ThreeSections) {
  ReactionQuery q = parse_reaction_smarts("CC(=O)O.OCC>[H+]>CC(=O)OCC");
  EXPECT_EQ(q.reactants, (Tokens { "CC(=O)O", "OCC" }));
  EXPECT_EQ(q.agents, (Tokens { "[H+]" }));
  EXPECT_EQ(q.products, (Tokens { "CC(=O)OCC" }));
  EXPECT_EQ(q.all_compounds().size(), 4);
}

TEST(ReactionSmartsTest, EmptySections) {
  ReactionQuery q = parse_reaction_smarts(">>C");
  EXPECT_TRUE(q.reactants.empty());
  EXPECT_TRUE(q.agents.empty());
  EXPECT_EQ(q.products, (Tokens { "C" }));

  ReactionQuery none = parse_reaction_smarts(">>");
  EXPECT_TRUE(none.all_compounds().empty());
}

TEST(ReactionSmartsTest, SeparatorCount) {
  EXPECT_EQ(reaction_error("C>C"), QueryErrorKind::kWrongSeparatorCount);
  EXPECT_EQ(reaction_error("CC"), QueryErrorKind::kWrongSeparatorCount);
  EXPECT_EQ(reaction_error("C>>>C"), QueryErrorKind::kWrongSeparatorCount);
}

TEST(ReactionSmartsTest, ComponentErrorsCarryPosition) {
  try {
    parse_reaction_smarts("CC.C1CC>>CC");
    FAIL();
  } catch (const QueryError &e) {
    EXPECT_EQ(e.kind(), QueryErrorKind::kComponentParseError);
    EXPECT_EQ(e.component(), "C1CC");
    EXPECT_EQ(e.position(), 1);
    EXPECT_EQ(e.cause(), SmilesErrorKind::kUnclosedRing);
  }
  EXPECT_EQ(reaction_error("CC..C>>C"), QueryErrorKind::kComponentParseError);
}

TEST(ReactionSmartsTest, RejoinReproducesInput) {
  for (const char *s: { "CC(=O)O.OCC>[H+]>CC(=O)OCC", ">>C", "Brc1ccccc1.OB(O)c1ccccc1>[Pd]>c1ccc(cc1)-c1ccccc1",
                        "C>>" }) {
    EXPECT_EQ(parse_reaction_smarts(s).to_string(), s);
  }
  EXPECT_EQ(parse_reaction_smarts(" CC . O > > C ").to_string(), "CC.O>>C");
}

TEST(ReactionSmartsTest, CompoundCountMatchesComponents) {
  ReactionQuery q = parse_reaction_smarts("C.CC.CCC>O>N.S");
  EXPECT_EQ(q.all_compounds().size(), 6);
}

TEST(IupacTokenizerTest, PrintedExample) {
  EXPECT_EQ(tokenize_iupac("N-((E)-2-bromo-2-phenylvinyl)-cinnamamide"),
            (Tokens { "N", "E", "2", "bromo", "2", "phenyl", "vinyl", "cinnamamide" }));
}

TEST(IupacTokenizerTest, Segmentation) {
  EXPECT_EQ(tokenize_iupac("2,3-dimethylbutane"),
            (Tokens { "2", "3", "di", "methyl", "butane" }));
  EXPECT_EQ(tokenize_iupac("benzene"), (Tokens { "benzene" }));
  EXPECT_EQ(tokenize_iupac("benzo[b]thiophen-2-ylboronic acid"),
            (Tokens { "benzo", "b", "thiophen", "2", "yl", "boronic", "acid" }));
  EXPECT_EQ(tokenize_iupac("4-Bromoanisole"), (Tokens { "4", "bromo", "anisole" }));
}

TEST(IupacTokenizerTest, UnmatchedRemainderKeptWhole) {
  IupacTokenizer tok({ "methyl" });
  EXPECT_EQ(tok.tokenize("methylfoobar"), (Tokens { "methyl", "foobar" }));
  EXPECT_EQ(tok.tokenize("foomethyl"), (Tokens { "foomethyl" }));
}

TEST(IupacTokenizerTest, DeterministicAndNonEmpty) {
  for (const char *name: { "N,N-dimethylformamide", "(2E)-3-phenylprop-2-enoic acid", "--", "",
                           "1H-pyrrole", "tetrakis(triphenylphosphine)palladium(0)" }) {
    Tokens a = tokenize_iupac(name);
    EXPECT_EQ(a, tokenize_iupac(name));
    for (const auto &t: a) EXPECT_FALSE(t.empty()) << name;
  }
}

TEST(IupacTokenizerTest, ShippedVocabularyMatchesDefault) {
  auto path = std::filesystem::path(CHEMSEARCH_SOURCE_DIR) / "data" / "iupac_fragments.txt";
  IupacTokenizer from_file = IupacTokenizer::from_file(path);
  EXPECT_EQ(from_file.vocabulary(), IupacTokenizer::default_instance().vocabulary());
  EXPECT_GE(from_file.vocabulary().size(), 60);
}

TEST(IupacTokenizerTest, VocabularyFileComments) {
  auto path = std::filesystem::temp_directory_path() / "chemsearch_vocab_test.txt";
  {
    std::ofstream out(path);
    out << "# comment\n\nPhenyl  # trailing\nvinyl\n";
  }
  IupacTokenizer tok = IupacTokenizer::from_file(path);
  EXPECT_EQ(tok.vocabulary(), (Tokens { "phenyl", "vinyl" }));
  std::filesystem::remove(path);
}

TEST(ParseQueryTest, Modalities) {
  MultimodalQuery both = parse_query("Burke group", std::nullopt,
                                     "Brc1ccccc1.OB(O)c1ccccc1>>c1ccc(cc1)-c1ccccc1", 10);
  ASSERT_TRUE(both.text.has_value());
  EXPECT_EQ(*both.text, "Burke group");
  ASSERT_TRUE(both.reaction.has_value());
  EXPECT_EQ(both.reaction->reactants.size(), 2);

  MultimodalQuery structure =
      parse_query(std::nullopt, "C1=CC=C2C(=C1)C3=CC=CC=C3S2", std::nullopt);
  EXPECT_FALSE(structure.text.has_value());
  EXPECT_EQ(structure.smiles.size(), 1);
  EXPECT_EQ(structure.k, 10);

  MultimodalQuery csv = parse_query(std::nullopt, " CCO , c1ccccc1 ,", std::nullopt, 3);
  EXPECT_EQ(csv.smiles, (Tokens { "CCO", "c1ccccc1" }));
  EXPECT_EQ(csv.k, 3);
}

TEST(ParseQueryTest, Errors) {
  try {
    parse_query(std::nullopt, std::nullopt, std::nullopt);
    FAIL();
  } catch (const QueryError &e) {
    EXPECT_EQ(e.kind(), QueryErrorKind::kEmptyQuery);
  }
  EXPECT_THROW(parse_query("  ", "", "", 10), QueryError);
  try {
    parse_query(std::nullopt, "CCO,C1CC", std::nullopt);
    FAIL();
  } catch (const QueryError &e) {
    EXPECT_EQ(e.kind(), QueryErrorKind::kInvalidSmiles);
    EXPECT_EQ(e.component(), "C1CC");
    EXPECT_EQ(e.position(), 1);
  }
  try {
    parse_query("x", std::nullopt, "C>C");
    FAIL();
  } catch (const QueryError &e) {
    EXPECT_EQ(e.kind(), QueryErrorKind::kWrongSeparatorCount);
  }
  try {
    parse_query("x", std::nullopt, std::nullopt, 0);
    FAIL();
  } catch (const QueryError &e) {
    EXPECT_EQ(e.kind(), QueryErrorKind::kInvalidK);
  }
}

}  // namespace
}  // namespace chemsearch
