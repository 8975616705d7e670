//
// Project chemsearch - Copyright 2026 The chemsearch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "chemsearch/textindex.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

namespace chemsearch {
namespace {
bool is_alnum(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char &c: out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view strip_punct(std::string_view w) {
  constexpr std::string_view kPunct = ",.;:!?\"'";
  while (!w.empty() && kPunct.find(w.front()) != std::string_view::npos) w.remove_prefix(1);
  while (!w.empty() && kPunct.find(w.back()) != std::string_view::npos) w.remove_suffix(1);
  return w;
}

void split_plain(std::string_view w, std::vector<std::string> &out) {
  std::size_t i = 0;
  while (i < w.size()) {
    while (i < w.size() && !is_alnum(w[i])) ++i;
    std::size_t j = i;
    while (j < w.size() && is_alnum(w[j])) ++j;
    if (j > i) out.push_back(lower(w.substr(i, j - i)));
    i = j;
  }
}
}  // namespace

bool is_name_shaped(std::string_view word) {
  bool joiner = false, letter = false, digit = false;
  for (char c: word) {
    if (c == '-' || c == '(' || c == ')' || c == '[' || c == ']') joiner = true;
    else if (std::isalpha(static_cast<unsigned char>(c))) letter = true;
    else if (std::isdigit(static_cast<unsigned char>(c))) digit = true;
  }
  return joiner && letter && digit;
}

std::vector<std::string> tokenize_text(std::string_view s, const IupacTokenizer &iupac) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    std::string_view word = strip_punct(s.substr(i, j - i));
    i = j;
    if (word.empty()) continue;
    if (is_name_shaped(word)) {
      for (const std::string &t: iupac.tokenize(word)) out.push_back(lower(t));
    } else {
      split_plain(word, out);
    }
  }
  return out;
}

double bm25_term_score(int tf, int doc_len, double avg_len, int df, int n,
                       const Bm25Params &params) {
  if (tf <= 0 || df <= 0) return 0;
  double idf = std::log(1.0 + (n - df + 0.5) / (df + 0.5));
  double norm = avg_len > 0 ? doc_len / avg_len : 0;
  double denom = tf + params.k1 * (1.0 - params.b + params.b * norm);
  return idf * tf * (params.k1 + 1.0) / denom;
}

EmptyIndex::EmptyIndex(): std::invalid_argument("EmptyCorpus: no passages to index") { }

TextIndex TextIndex::build(const std::vector<std::vector<std::string>> &docs,
                           Bm25Params params) {
  if (docs.empty()) throw EmptyIndex();
  std::map<std::string, std::vector<Posting>> postings;
  std::vector<int> lengths;
  for (std::size_t ord = 0; ord < docs.size(); ++ord) {
    std::map<std::string, int> tf;
    for (const std::string &t: docs[ord]) ++tf[t];
    for (const auto &[term, count]: tf)
      postings[term].push_back({ static_cast<int>(ord), count });
    lengths.push_back(static_cast<int>(docs[ord].size()));
  }
  return from_parts(std::move(postings), std::move(lengths), params);
}

TextIndex TextIndex::from_parts(std::map<std::string, std::vector<Posting>> postings,
                                std::vector<int> lengths, Bm25Params params) {
  if (lengths.empty()) throw EmptyIndex();
  TextIndex idx;
  idx.postings_ = std::move(postings);
  idx.lengths_ = std::move(lengths);
  idx.params_ = params;
  double total = std::accumulate(idx.lengths_.begin(), idx.lengths_.end(), 0.0);
  idx.avg_len_ = total / static_cast<double>(idx.lengths_.size());
  for (auto &[term, list]: idx.postings_) {
    std::sort(list.begin(), list.end(),
              [](const Posting &a, const Posting &b) { return a.ordinal < b.ordinal; });
    for (const Posting &p: list)
      if (p.tf < 1 || p.ordinal < 0 || p.ordinal >= idx.size())
        throw std::invalid_argument("bad posting for term '" + term + "'");
  }
  return idx;
}

const std::vector<Posting> *TextIndex::find(const std::string &term) const {
  auto it = postings_.find(term);
  return it == postings_.end() ? nullptr : &it->second;
}

PostingList TextIndex::posting_list(const std::string &term) const {
  const auto *p = find(term);
  return { term, p ? *p : std::vector<Posting> {} };
}

std::vector<TextHit> TextIndex::search(const std::vector<std::string> &query_terms,
                                       int k) const {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  std::vector<double> scores(lengths_.size(), 0.0);
  std::vector<bool> hit(lengths_.size(), false);
  std::set<std::string> seen;
  for (const std::string &term: query_terms) {
    if (!seen.insert(term).second) continue;
    const auto *list = find(term);
    if (!list) continue;
    const int df = static_cast<int>(list->size());
    for (const Posting &p: *list) {
      scores[p.ordinal] +=
          bm25_term_score(p.tf, lengths_[p.ordinal], avg_len_, df, size(), params_);
      hit[p.ordinal] = true;
    }
  }
  std::vector<TextHit> out;
  for (std::size_t i = 0; i < scores.size(); ++i)
    if (hit[i]) out.push_back({ static_cast<int>(i), scores[i] });
  std::sort(out.begin(), out.end(), [](const TextHit &a, const TextHit &b) {
    if (a.score != b.score) return a.score > b.score;
    return a.ordinal < b.ordinal;
  });
  if (out.size() > static_cast<std::size_t>(k)) out.resize(k);
  return out;
}

std::vector<TextHit> TextIndex::search(std::string_view query, int k) const {
  return search(tokenize_text(query), k);
}

}  // namespace chemsearch
