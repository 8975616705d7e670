//
// Project chemsearch - Copyright 2026 The chemsearch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "chemsearch/search.h"

#include <algorithm>
#include <cctype>
#include <limits>
#include <tuple>
#include <utility>

#include "chemsearch/substruct.h"

namespace chemsearch {
namespace {
MolecularGraph parse_query_smiles(std::string_view smiles) {
  try {
    return parse_smiles(smiles);
  } catch (const SmilesError &e) {
    throw QueryError(QueryErrorKind::kInvalidSmiles, std::string(smiles), 0, e.kind(),
                     e.what());
  }
}

const std::vector<std::string> kNoCompounds;
const std::vector<Mention> kNoMentions;

bool is_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

// Spans of words whose tokens hit the query terms.
std::vector<TextSpan> term_spans(const std::string &text, const std::set<std::string> &terms,
                                 const IupacTokenizer &tokenizer) {
  constexpr std::string_view kPunct = ",.;:!?\"'";
  std::vector<TextSpan> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    std::size_t s = i, e = j;
    while (s < e && kPunct.find(text[s]) != std::string_view::npos) ++s;
    while (e > s && kPunct.find(text[e - 1]) != std::string_view::npos) --e;
    if (e > s) {
      for (const std::string &t: tokenize_text(std::string_view(text).substr(s, e - s), tokenizer))
        if (terms.count(t)) {
          out.push_back({ s, e });
          break;
        }
    }
    i = j;
  }
  return out;
}
}  // namespace

std::string_view match_mode_name(MatchMode mode) noexcept {
  switch (mode) {
  case MatchMode::kExact:
    return "exact";
  case MatchMode::kSimilarity:
    return "similarity";
  case MatchMode::kSubstructure:
    return "substructure";
  }
  return "unknown";
}

UnknownDocument::UnknownDocument(const std::string &doc_id)
    : std::out_of_range("UnknownDocument: " + doc_id) { }

std::vector<std::string> passage_tokens(const Corpus &corpus, const Passage &p,
                                        const IupacTokenizer &tokenizer) {
  std::vector<std::string> tokens = tokenize_text(p.text, tokenizer);
  for (const ReactionRecord *rx: corpus.reactions_of_passage(p.passage_id))
    for (const auto *role: { &rx->reactants, &rx->products, &rx->catalysts, &rx->solvents })
      for (const ChemEntity &e: *role)
        if (e.name)
          for (std::string &t: tokenize_text(*e.name, tokenizer)) tokens.push_back(std::move(t));
  return tokens;
}

SearchEngine::SearchEngine(Corpus corpus, EngineConfig config)
    : corpus_(std::move(corpus)), config_(std::move(config)),
      tokenizer_(config_.iupac_vocabulary) { }

std::shared_ptr<const SearchEngine> SearchEngine::build(Corpus corpus, EngineConfig config) {
  std::shared_ptr<SearchEngine> e(new SearchEngine(std::move(corpus), std::move(config)));
  e->links_ = resolve_links(e->corpus_, e->config_.linker);
  std::vector<std::vector<std::string>> docs;
  for (const Passage &p: indexable_passages(e->corpus_, e->links_))
    docs.push_back(passage_tokens(e->corpus_, p, e->tokenizer_));
  e->index_ = TextIndex::build(docs, e->config_.bm25);
  e->prepare();
  return e;
}

std::shared_ptr<const SearchEngine> SearchEngine::from_parts(Corpus corpus, EngineConfig config,
                                                             std::vector<CompoundLink> links,
                                                             TextIndex index) {
  std::shared_ptr<SearchEngine> e(new SearchEngine(std::move(corpus), std::move(config)));
  e->links_ = std::move(links);
  e->index_ = std::move(index);
  e->prepare();
  return e;
}

void SearchEngine::prepare() {
  indexed_ids_.clear();
  for (const Passage &p: indexable_passages(corpus_, links_))
    indexed_ids_.push_back(p.passage_id);
  if (static_cast<int>(indexed_ids_.size()) != index_.size())
    throw std::invalid_argument("text index does not match the indexable passages");
  indexed_set_ = { indexed_ids_.begin(), indexed_ids_.end() };

  compound_graphs_.clear();
  compound_fps_.clear();
  for (const CompoundEntry &c: corpus_.compounds()) {
    compound_graphs_.push_back(parse_smiles(c.canonical));
    compound_fps_.push_back(morgan_fingerprint(compound_graphs_.back(),
                                               config_.linker.fingerprint_radius,
                                               config_.linker.fingerprint_width));
  }

  const MentionDetector detector(config_.linker.patterns);
  passage_compounds_.clear();
  passage_mentions_.clear();
  for (const Passage &p: corpus_.passages()) {
    std::set<std::string> compounds;
    for (const std::string &c: corpus_.annotated_compounds(p)) compounds.insert(c);
    passage_compounds_[p.passage_id] = {};
    passage_mentions_[p.passage_id] = detect_mentions(corpus_, p, detector);
    for (const std::string &c: compounds) passage_compounds_[p.passage_id].push_back(c);
  }
  for (const CompoundLink &l: links_) {
    const Diagram *d = corpus_.find_diagram(l.diagram_id);
    if (!d) throw std::invalid_argument("link to unknown diagram " + l.diagram_id);
    auto &list = passage_compounds_[l.mention.passage_id];
    if (std::find(list.begin(), list.end(), d->canonical) == list.end()) {
      list.push_back(d->canonical);
      std::sort(list.begin(), list.end());
    }
  }
}

std::vector<CompoundLink> SearchEngine::links_of_passage(std::string_view passage_id) const {
  std::vector<CompoundLink> out;
  for (const CompoundLink &l: links_)
    if (l.mention.passage_id == passage_id) out.push_back(l);
  return out;
}

const std::vector<std::string> &SearchEngine::passage_compounds(
    std::string_view passage_id) const {
  auto it = passage_compounds_.find(passage_id);
  return it == passage_compounds_.end() ? kNoCompounds : it->second;
}

const std::vector<Mention> &SearchEngine::mentions_of_passage(
    std::string_view passage_id) const {
  auto it = passage_mentions_.find(passage_id);
  return it == passage_mentions_.end() ? kNoMentions : it->second;
}

std::vector<StructureHit> SearchEngine::search_similarity(std::string_view smiles,
                                                          int k) const {
  if (k < 1) throw QueryError(QueryErrorKind::kInvalidK, "k must be at least 1");
  MolecularGraph g = parse_query_smiles(smiles);
  const std::string canon = canonical_smiles(g);
  Fingerprint fp = morgan_fingerprint(g, config_.linker.fingerprint_radius,
                                      config_.linker.fingerprint_width);
  std::vector<StructureHit> hits;
  const auto &compounds = corpus_.compounds();
  for (std::size_t i = 0; i < compounds.size(); ++i) {
    bool exact = compounds[i].canonical == canon;
    hits.push_back({ compounds[i].canonical,
                     exact ? SimilarityScore(1.0) : tanimoto(fp, compound_fps_[i]),
                     exact ? MatchMode::kExact : MatchMode::kSimilarity, compounds[i].sources });
  }
  std::stable_sort(hits.begin(), hits.end(), [](const StructureHit &a, const StructureHit &b) {
    if (a.score != b.score) return a.score > b.score;
    return a.canonical < b.canonical;
  });
  if (hits.size() > static_cast<std::size_t>(k)) hits.resize(k);
  return hits;
}

std::vector<StructureHit> SearchEngine::search_substructure(std::string_view smiles) const {
  MolecularGraph q = parse_query_smiles(smiles);
  std::vector<StructureHit> hits;
  const auto &compounds = corpus_.compounds();
  for (std::size_t i = 0; i < compounds.size(); ++i)
    if (has_substructure(q, compound_graphs_[i]))
      hits.push_back({ compounds[i].canonical, SimilarityScore(1.0), MatchMode::kSubstructure,
                       compounds[i].sources });
  return hits;
}

std::set<std::string> SearchEngine::substructure_candidates(
    const std::string &query_canonical) const {
  std::set<std::string> out;
  for (const StructureHit &h: search_substructure(query_canonical)) out.insert(h.canonical);
  return out;
}

std::vector<TextHit> SearchEngine::search_text(std::string_view text, int k) const {
  return index_.search(tokenize_text(text, tokenizer_), k);
}

std::vector<std::string> SearchEngine::query_compounds(const MultimodalQuery &q) {
  std::vector<std::string> raw = q.smiles;
  if (q.reaction)
    for (const std::string &s: q.reaction->all_compounds()) raw.push_back(s);
  std::vector<std::string> out;
  for (const std::string &s: raw) {
    std::string canon = canonical_smiles(parse_query_smiles(s));
    if (std::find(out.begin(), out.end(), canon) == out.end()) out.push_back(canon);
  }
  return out;
}

std::vector<SearchResult> SearchEngine::search(const MultimodalQuery &q) const {
  if (q.k < 1) throw QueryError(QueryErrorKind::kInvalidK, "k must be at least 1");
  const std::vector<std::string> qcs = query_compounds(q);
  std::vector<std::set<std::string>> cands;
  for (const std::string &qc: qcs) cands.push_back(substructure_candidates(qc));

  std::vector<std::string> terms;
  std::set<std::string> term_set;
  std::map<std::string, double> text_scores;
  if (q.text) {
    terms = tokenize_text(*q.text, tokenizer_);
    term_set = { terms.begin(), terms.end() };
    for (const TextHit &h: index_.search(terms, std::max(1, index_.size())))
      text_scores[indexed_ids_[h.ordinal]] = h.score;
  }

  std::vector<SearchResult> results;
  for (const std::string &pid: indexed_ids_) {
    const auto &compounds = passage_compounds(pid);
    SearchResult r;
    r.passage_id = pid;
    for (std::size_t i = 0; i < qcs.size(); ++i)
      if (std::any_of(compounds.begin(), compounds.end(),
                      [&](const std::string &c) { return cands[i].count(c) > 0; }))
        r.matched_smiles.push_back(qcs[i]);
    auto ts = text_scores.find(pid);
    if (ts == text_scores.end() && r.matched_smiles.empty()) continue;
    if (ts != text_scores.end()) r.text_score = ts->second;
    std::sort(r.matched_smiles.begin(), r.matched_smiles.end());
    results.push_back(std::move(r));
  }

  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const SearchResult &r: results) {
    lo = std::min(lo, r.text_score);
    hi = std::max(hi, r.text_score);
  }
  for (SearchResult &r: results)
    r.text_score_normalized = hi > lo ? (r.text_score - lo) / (hi - lo) : (r.text_score > 0 ? 1.0 : 0.0);

  std::sort(results.begin(), results.end(), [](const SearchResult &a, const SearchResult &b) {
    if (a.matched_smiles.size() != b.matched_smiles.size())
      return a.matched_smiles.size() > b.matched_smiles.size();
    if (a.text_score != b.text_score) return a.text_score > b.text_score;
    return a.passage_id < b.passage_id;
  });
  if (results.size() > static_cast<std::size_t>(q.k)) results.resize(q.k);

  std::set<std::string> all_cands;
  for (const auto &c: cands) all_cands.insert(c.begin(), c.end());
  for (std::size_t i = 0; i < results.size(); ++i) {
    SearchResult &r = results[i];
    r.rank = static_cast<int>(i) + 1;
    const Passage *p = corpus_.find_passage(r.passage_id);
    r.doc_id = p->doc_id;
    for (const ReactionRecord *rx: corpus_.reactions_of_passage(r.passage_id))
      r.reactions.push_back(rx->reaction_id);

    std::set<TextSpan> spans;
    if (!all_cands.empty()) {
      std::map<std::pair<std::size_t, std::size_t>, std::string> linked;
      for (const CompoundLink &l: links_of_passage(r.passage_id))
        linked[{ l.mention.start, l.mention.end }] = corpus_.find_diagram(l.diagram_id)->canonical;
      for (const Mention &m: mentions_of_passage(r.passage_id)) {
        bool hit = m.resolved_smiles && all_cands.count(*m.resolved_smiles);
        auto lit = linked.find({ m.start, m.end });
        if (lit != linked.end() && all_cands.count(lit->second)) hit = true;
        if (hit) spans.insert({ m.start, m.end });
      }
    }
    if (!term_set.empty())
      for (const TextSpan &s: term_spans(p->text, term_set, tokenizer_)) spans.insert(s);
    r.highlights = { spans.begin(), spans.end() };
  }
  return results;
}

std::vector<ReactionEntry> SearchEngine::list_reactions(std::string_view doc_id) const {
  if (!corpus_.find_document(doc_id)) throw UnknownDocument(std::string(doc_id));
  std::vector<ReactionEntry> out;
  for (const ReactionRecord &rx: corpus_.reactions()) {
    const Passage *p = corpus_.find_passage(rx.passage_id);
    if (p->doc_id == doc_id) out.push_back({ &rx, p->page, p->boxes });
  }
  auto top = [](const ReactionEntry &e) { return e.boxes.empty() ? 0.0 : e.boxes.front().y0; };
  std::sort(out.begin(), out.end(), [&](const ReactionEntry &a, const ReactionEntry &b) {
    return std::make_tuple(a.page, top(a), a.reaction->reaction_id)
           < std::make_tuple(b.page, top(b), b.reaction->reaction_id);
  });
  return out;
}

}  // namespace chemsearch
