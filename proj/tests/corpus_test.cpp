//
// Project chemsearch - Copyright 2026 The chemsearch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "chemsearch/corpus.h"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "chemsearch/linker.h"
#include "chemsearch/molgraph.h"
#include "test_common.h"

namespace chemsearch {
namespace {
using testing::fixture_corpus_dir;
using testing::read_file;
using testing::TempDir;
using testing::write_file;

const char *const kOneDoc =
    R"({"doc_id": "d1", "title": "T", "num_pages": 2})"
    "\n";
const char *const kOnePassage =
    R"({"passage_id": "p1", "doc_id": "d1", "kind": "general", "text": "some text", "page": 1, "boxes": [], "compound_names": []})"
    "\n";

void write_corpus(const TempDir &dir, const std::string &documents,
                  const std::string &passages, const std::string &reactions = "",
                  const std::string &diagrams = "", const std::string &names = "{}") {
  write_file(dir.path() / kDocumentsFile, documents);
  write_file(dir.path() / kPassagesFile, passages);
  write_file(dir.path() / kReactionsFile, reactions);
  write_file(dir.path() / kDiagramsFile, diagrams);
  write_file(dir.path() / kNamesFile, names);
}

CorpusErrorKind load_error(const TempDir &dir) {
  try {
    load_corpus(dir.path());
  } catch (const CorpusError &e) {
    return e.kind();
  }
  ADD_FAILURE() << "load succeeded";
  return CorpusErrorKind::kEmptyCorpus;
}

TEST(CorpusTest, FixtureCounts) {
  Corpus c = load_corpus(fixture_corpus_dir());
  EXPECT_EQ(c.documents().size(), 3);
  EXPECT_EQ(c.passages().size(), 12);
  EXPECT_EQ(c.reactions().size(), 5);
  EXPECT_EQ(c.diagrams().size(), 6);
}

TEST(CorpusTest, FixtureUniqueCompounds) {
  Corpus c = load_corpus(fixture_corpus_dir());
  // Hand list of the distinct structures authored into the fixture.
  std::vector<std::string> authored { "Brc1ccccc1",
                                      "OB(O)c1ccccc1",
                                      "c1ccccc1-c1ccccc1",
                                      "OB(O)c1cc2ccccc2s1",
                                      "c1ccc2sc(-c3ccccc3)cc2c1",
                                      "CCCCc1cc2ccccc2s1",
                                      "CCCCCc1cc2ccccc2s1",
                                      "CCO",
                                      "[Pd]" };
  std::set<std::string> expected;
  for (const auto &s: authored) expected.insert(canonical_smiles(parse_smiles(s)));
  std::vector<std::string> got = unique_compounds(c);
  EXPECT_EQ(got.size(), 9);
  EXPECT_TRUE(std::is_sorted(got.begin(), got.end()));
  EXPECT_EQ(std::set<std::string>(got.begin(), got.end()), expected);
}

TEST(CorpusTest, CompoundSourcesRecorded) {
  Corpus c = load_corpus(fixture_corpus_dir());
  const CompoundEntry *pd = c.find_compound("[Pd]");
  ASSERT_NE(pd, nullptr);
  for (const CompoundSource &s: pd->sources)
    EXPECT_EQ(s.kind, CompoundSourceKind::kReactionEntity);
  const CompoundEntry *butyl =
      c.find_compound(canonical_smiles(parse_smiles("CCCCc1cc2ccccc2s1")));
  ASSERT_NE(butyl, nullptr);
  ASSERT_EQ(butyl->sources.size(), 1);
  EXPECT_EQ(butyl->sources[0].kind, CompoundSourceKind::kDiagram);
  EXPECT_EQ(butyl->sources[0].id, "dg-06");
}

TEST(CorpusTest, NameOnlyEntitiesResolveThroughDictionary) {
  Corpus c = load_corpus(fixture_corpus_dir());
  const ReactionRecord *rx = c.find_reaction("rx-5");
  ASSERT_NE(rx, nullptr);
  ASSERT_EQ(rx->reactants.size(), 2);
  EXPECT_EQ(rx->reactants[0].canonical,
            canonical_smiles(parse_smiles("OB(O)c1cc2ccccc2s1")));
  // Not in the dictionary.
  EXPECT_FALSE(rx->reactants[1].canonical.has_value());
}

TEST(CorpusTest, EmptyDirectoryIsMissingFile) {
  TempDir dir("empty");
  EXPECT_EQ(load_error(dir), CorpusErrorKind::kMissingFile);
}

TEST(CorpusTest, UnknownDocIdIsDangling) {
  TempDir dir("dangling");
  write_corpus(dir, kOneDoc,
               R"({"passage_id": "p1", "doc_id": "nope", "kind": "general", "text": "x", "page": 1, "boxes": [], "compound_names": []})"
               "\n");
  EXPECT_EQ(load_error(dir), CorpusErrorKind::kDanglingReference);
}

TEST(CorpusTest, UnknownFieldRejectedWithLocation) {
  TempDir dir("unknown");
  write_corpus(dir, std::string(kOneDoc) + R"({"doc_id": "d2", "title": "U", "num_pages": 1, "color": "red"})" "\n",
               kOnePassage);
  try {
    load_corpus(dir.path());
    FAIL() << "load succeeded";
  } catch (const CorpusError &e) {
    EXPECT_EQ(e.kind(), CorpusErrorKind::kSchemaViolation);
    EXPECT_EQ(e.where().file, kDocumentsFile);
    EXPECT_EQ(e.where().line, 2);
    EXPECT_EQ(e.where().field, "color");
  }
}

TEST(CorpusTest, SchemaViolations) {
  const std::vector<std::string> bad {
    // page past the end of the document
    R"({"passage_id": "p1", "doc_id": "d1", "kind": "general", "text": "x", "page": 3, "boxes": [], "compound_names": []})",
    // reaction passage without reaction_id
    R"({"passage_id": "p1", "doc_id": "d1", "kind": "reaction", "text": "x", "page": 1, "boxes": [], "compound_names": []})",
    // inverted box
    R"({"passage_id": "p1", "doc_id": "d1", "kind": "general", "text": "x", "page": 1, "boxes": [{"x0": 5, "y0": 0, "x1": 1, "y1": 2}], "compound_names": []})",
    // empty text
    R"({"passage_id": "p1", "doc_id": "d1", "kind": "general", "text": "", "page": 1, "boxes": [], "compound_names": []})",
    // wrong type
    R"({"passage_id": "p1", "doc_id": "d1", "kind": "general", "text": "x", "page": "1", "boxes": [], "compound_names": []})",
    // missing field
    R"({"passage_id": "p1", "doc_id": "d1", "kind": "general", "text": "x", "page": 1, "boxes": []})",
    // unknown kind
    R"({"passage_id": "p1", "doc_id": "d1", "kind": "table", "text": "x", "page": 1, "boxes": [], "compound_names": []})",
    "not json",
  };
  for (const std::string &p: bad) {
    TempDir dir("schema");
    write_corpus(dir, kOneDoc, p + "\n");
    EXPECT_EQ(load_error(dir), CorpusErrorKind::kSchemaViolation) << p;
  }
}

TEST(CorpusTest, DuplicateIdRejected) {
  TempDir dir("dup");
  write_corpus(dir, std::string(kOneDoc) + kOneDoc, kOnePassage);
  EXPECT_EQ(load_error(dir), CorpusErrorKind::kSchemaViolation);
}

TEST(CorpusTest, BadSmilesCarriesRecordId) {
  TempDir dir("smiles");
  write_corpus(dir, kOneDoc, kOnePassage, "",
               R"({"diagram_id": "g1", "doc_id": "d1", "page": 1, "box": {"x0": 0, "y0": 0, "x1": 1, "y1": 1}, "smiles": "C1CC"})"
               "\n");
  try {
    load_corpus(dir.path());
    FAIL() << "load succeeded";
  } catch (const CorpusError &e) {
    EXPECT_EQ(e.kind(), CorpusErrorKind::kSmilesParseFailure);
    EXPECT_EQ(e.where().record_id, "g1");
  }
}

TEST(CorpusTest, ReactionMustPointBackAtItsPassage) {
  TempDir dir("rxback");
  write_corpus(dir, kOneDoc,
               R"({"passage_id": "p1", "doc_id": "d1", "kind": "reaction", "text": "x", "page": 1, "boxes": [], "compound_names": [], "reaction_id": "r1"})" "\n"
               R"({"passage_id": "p2", "doc_id": "d1", "kind": "reaction", "text": "y", "page": 1, "boxes": [], "compound_names": [], "reaction_id": "r2"})" "\n",
               R"({"reaction_id": "r1", "passage_id": "p2", "reactants": [{"smiles": "C"}], "products": [], "catalysts": [], "solvents": []})" "\n"
               R"({"reaction_id": "r2", "passage_id": "p2", "reactants": [{"smiles": "C"}], "products": [], "catalysts": [], "solvents": []})" "\n");
  EXPECT_EQ(load_error(dir), CorpusErrorKind::kDanglingReference);
}

TEST(CorpusTest, ComputedCanonicalIsNotAnInputField) {
  TempDir dir("canon");
  write_corpus(dir, kOneDoc, kOnePassage, "",
               R"({"diagram_id": "g1", "doc_id": "d1", "page": 1, "box": {"x0": 0, "y0": 0, "x1": 1, "y1": 1}, "smiles": "C", "canonical": "C"})"
               "\n");
  EXPECT_EQ(load_error(dir), CorpusErrorKind::kSchemaViolation);
}

TEST(CorpusTest, EmptyCorpusRejectedAtLoad) {
  TempDir dir("nothing");
  write_corpus(dir, "", "");
  EXPECT_EQ(load_error(dir), CorpusErrorKind::kEmptyCorpus);
}

TEST(CorpusTest, EquivalentDiagramsDeduplicate) {
  CorpusRecords rec;
  rec.documents.push_back({ "d1", "T", std::nullopt, 1 });
  rec.diagrams.push_back({ "g1", "d1", 1, { 0, 0, 1, 1 }, std::nullopt, "CCO", "" });
  rec.diagrams.push_back({ "g2", "d1", 1, { 0, 0, 1, 1 }, std::nullopt, "OCC", "" });
  Corpus c = Corpus::build(rec);
  EXPECT_EQ(unique_compounds(c), std::vector<std::string> { "CCO" });
  EXPECT_EQ(c.compounds()[0].sources.size(), 2);
}

TEST(CorpusTest, EmptyRecordsGiveNoCompounds) {
  EXPECT_TRUE(unique_compounds(Corpus::build({})).empty());
}

TEST(CorpusTest, SaveLoadRoundTrip) {
  Corpus a = load_corpus(fixture_corpus_dir());
  TempDir dir("roundtrip");
  save_corpus(a, dir.path());
  Corpus b = load_corpus(dir.path());
  EXPECT_EQ(a, b);
  TempDir dir2("roundtrip2");
  save_corpus(b, dir2.path());
  for (auto name: { kDocumentsFile, kPassagesFile, kReactionsFile, kDiagramsFile, kNamesFile })
    EXPECT_EQ(read_file(dir.path() / name), read_file(dir2.path() / name)) << name;
}

TEST(CorpusTest, IndexableRule) {
  Corpus c = load_corpus(fixture_corpus_dir());
  // No links: reaction passages and passages with names only.
  std::vector<Passage> bare = indexable_passages(c, {});
  std::set<std::string> ids;
  for (const Passage &p: bare) ids.insert(p.passage_id);
  EXPECT_EQ(ids, (std::set<std::string> { "p02", "p03", "p04", "p06", "p07", "p08",
                                          "p10", "p12" }));

  Mention m;
  m.passage_id = "p05";
  m.label_token = "3";
  CompoundLink link { m, "dg-03", LinkMethod::kText, 1.0 };
  std::vector<Passage> with = indexable_passages(c, std::vector<CompoundLink> { link });
  EXPECT_EQ(with.size(), 9);
}

TEST(CorpusTest, FixtureIndexableAfterLinking) {
  Corpus c = load_corpus(fixture_corpus_dir());
  std::vector<CompoundLink> links = resolve_links(c);
  std::vector<Passage> kept = indexable_passages(c, links);
  EXPECT_EQ(kept.size(), 10);
  for (const Passage &p: kept) {
    EXPECT_NE(p.passage_id, "p01");
    EXPECT_NE(p.passage_id, "p11");
  }
}

}  // namespace
}  // namespace chemsearch
