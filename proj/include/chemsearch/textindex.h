//
// Project chemsearch - Copyright 2026 The chemsearch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMSEARCH_TEXTINDEX_H_
#define CHEMSEARCH_TEXTINDEX_H_

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "chemsearch/querylang.h"

namespace chemsearch {

struct Posting {
  int ordinal;
  int tf;

  bool operator==(const Posting &) const = default;
};

struct PostingList {
  std::string term;
  std::vector<Posting> postings;  // sorted by ordinal

  bool operator==(const PostingList &) const = default;
};

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;

  bool operator==(const Bm25Params &) const = default;
};

struct TextHit {
  int ordinal;
  double score;

  bool operator==(const TextHit &) const = default;
};

// Lowercase words split on non-alphanumerics. Words shaped like systematic
// names (a hyphen or bracket plus a letter and a digit) are expanded through
// the IUPAC tokenizer instead.
std::vector<std::string> tokenize_text(std::string_view s,
                                       const IupacTokenizer &iupac =
                                           IupacTokenizer::default_instance());

bool is_name_shaped(std::string_view word);

// Okapi term weight for one query term in one passage.
double bm25_term_score(int tf, int doc_len, double avg_len, int df, int n,
                       const Bm25Params &params = {});

class EmptyIndex: public std::invalid_argument {
public:
  EmptyIndex();
};

class TextIndex {
public:
  TextIndex() = default;

  // One token stream per passage; ordinal = position. Throws EmptyIndex.
  static TextIndex build(const std::vector<std::vector<std::string>> &docs,
                         Bm25Params params = {});

  // Reassembles an index from stored postings and lengths.
  static TextIndex from_parts(std::map<std::string, std::vector<Posting>> postings,
                              std::vector<int> lengths, Bm25Params params = {});

  // Query terms are deduplicated. Score descending, ordinal ascending.
  std::vector<TextHit> search(const std::vector<std::string> &query_terms,
                              int k) const;
  std::vector<TextHit> search(std::string_view query, int k) const;

  int size() const noexcept { return static_cast<int>(lengths_.size()); }
  double average_length() const noexcept { return avg_len_; }
  const std::vector<int> &lengths() const noexcept { return lengths_; }
  const Bm25Params &params() const noexcept { return params_; }
  const std::map<std::string, std::vector<Posting>> &postings() const noexcept {
    return postings_;
  }
  const std::vector<Posting> *find(const std::string &term) const;
  PostingList posting_list(const std::string &term) const;

  bool operator==(const TextIndex &) const = default;

private:
  std::map<std::string, std::vector<Posting>> postings_;
  std::vector<int> lengths_;
  double avg_len_ = 0;
  Bm25Params params_;
};

}  // namespace chemsearch

#endif  // CHEMSEARCH_TEXTINDEX_H_
