//
// Project chemsearch - Copyright 2026 The chemsearch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMSEARCH_SEARCH_H_
#define CHEMSEARCH_SEARCH_H_

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "chemsearch/corpus.h"
#include "chemsearch/fingerprint.h"
#include "chemsearch/linker.h"
#include "chemsearch/molgraph.h"
#include "chemsearch/querylang.h"
#include "chemsearch/textindex.h"

namespace chemsearch {

enum class MatchMode { kExact, kSimilarity, kSubstructure };

std::string_view match_mode_name(MatchMode mode) noexcept;

struct StructureHit {
  std::string canonical;
  SimilarityScore score;
  MatchMode mode = MatchMode::kSimilarity;
  std::vector<CompoundSource> sources;

  bool operator==(const StructureHit &) const = default;
};

struct TextSpan {
  std::size_t start = 0;
  std::size_t end = 0;

  auto operator<=>(const TextSpan &) const = default;
};

struct SearchResult {
  std::string passage_id;
  std::string doc_id;
  double text_score = 0;             // raw BM25, 0 when not a text hit
  double text_score_normalized = 0;  // min-max over the candidate set
  std::vector<std::string> matched_smiles;  // query canonicals, sorted
  std::vector<std::string> reactions;
  std::vector<TextSpan> highlights;
  int rank = 0;

  bool operator==(const SearchResult &) const = default;
};

struct ReactionEntry {
  const ReactionRecord *reaction;
  int page;
  std::vector<BoundingBox> boxes;
};

class UnknownDocument: public std::out_of_range {
public:
  explicit UnknownDocument(const std::string &doc_id);
};

struct EngineConfig {
  LinkerConfig linker;
  Bm25Params bm25;
  std::vector<std::string> iupac_vocabulary = IupacTokenizer::default_vocabulary();

  bool operator==(const EngineConfig &) const = default;
};

/// Immutable search state over one corpus: links, the BM25 index over the
/// indexable passages, and compound structures.
class SearchEngine {
public:
  // Links the corpus and indexes its indexable passages. Throws EmptyIndex
  // when nothing qualifies.
  static std::shared_ptr<const SearchEngine> build(Corpus corpus, EngineConfig config = {});

  // Reassembles a stored engine. The index must cover indexable_ids in order.
  static std::shared_ptr<const SearchEngine> from_parts(Corpus corpus, EngineConfig config,
                                                        std::vector<CompoundLink> links,
                                                        TextIndex index);

  const Corpus &corpus() const noexcept { return corpus_; }
  const EngineConfig &config() const noexcept { return config_; }
  const std::vector<CompoundLink> &links() const noexcept { return links_; }
  const TextIndex &text_index() const noexcept { return index_; }
  // passage_id of each index ordinal.
  const std::vector<std::string> &indexed_passages() const noexcept {
    return indexed_ids_;
  }
  const IupacTokenizer &tokenizer() const noexcept { return tokenizer_; }

  std::vector<CompoundLink> links_of_passage(std::string_view passage_id) const;
  // Linked diagram canonicals plus annotated compounds, sorted.
  const std::vector<std::string> &passage_compounds(std::string_view passage_id) const;
  const std::vector<Mention> &mentions_of_passage(std::string_view passage_id) const;

  // Throws QueryError(kInvalidSmiles / kInvalidK).
  std::vector<StructureHit> search_similarity(std::string_view smiles, int k) const;
  std::vector<StructureHit> search_substructure(std::string_view smiles) const;

  std::vector<TextHit> search_text(std::string_view text, int k) const;

  std::vector<SearchResult> search(const MultimodalQuery &q) const;

  // Throws UnknownDocument.
  std::vector<ReactionEntry> list_reactions(std::string_view doc_id) const;

  // Canonical forms of the query's compounds, deduplicated, first seen first.
  static std::vector<std::string> query_compounds(const MultimodalQuery &q);

private:
  SearchEngine(Corpus corpus, EngineConfig config);
  void prepare();
  std::set<std::string> substructure_candidates(const std::string &query_canonical) const;

  Corpus corpus_;
  EngineConfig config_;
  IupacTokenizer tokenizer_;
  std::vector<CompoundLink> links_;
  TextIndex index_;
  std::vector<std::string> indexed_ids_;
  std::set<std::string> indexed_set_;

  std::vector<MolecularGraph> compound_graphs_;  // parallel to corpus_.compounds()
  std::vector<Fingerprint> compound_fps_;
  std::map<std::string, std::vector<std::string>, std::less<>> passage_compounds_;
  std::map<std::string, std::vector<Mention>, std::less<>> passage_mentions_;
};

// Token streams fed to the BM25 index: passage text, plus entity names for
// reaction passages.
std::vector<std::string> passage_tokens(const Corpus &corpus, const Passage &p,
                                        const IupacTokenizer &tokenizer);

}  // namespace chemsearch

#endif  // CHEMSEARCH_SEARCH_H_
