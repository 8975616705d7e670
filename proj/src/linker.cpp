//
// Project chemsearch - Copyright 2026 The chemsearch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "chemsearch/linker.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "chemsearch/molgraph.h"

namespace chemsearch {
namespace {
const std::regex &label_token_re() {
  static const std::regex re(R"(\d+[A-Za-z]?)");
  return re;
}

// "(5)" or " 5" right after a name.
const std::regex &trailing_label_re() {
  static const std::regex re(R"(^\s*\(\s*(\d+[A-Za-z]?)\s*\)|^\s+(\d+[A-Za-z]?)\b)");
  return re;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char &c: out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

bool overlaps(std::size_t s1, std::size_t e1, std::size_t s2, std::size_t e2) {
  return s1 < e2 && s2 < e1;
}

// First whole-word, case-insensitive occurrence.
std::optional<std::size_t> find_name(const std::string &text_lower,
                                     const std::string &name_lower) {
  if (name_lower.empty()) return std::nullopt;
  std::size_t pos = text_lower.find(name_lower);
  while (pos != std::string::npos) {
    std::size_t end = pos + name_lower.size();
    bool left_ok = pos == 0 || !is_word_char(text_lower[pos - 1])
                   || !is_word_char(name_lower.front());
    bool right_ok = end == text_lower.size() || !is_word_char(text_lower[end])
                    || !is_word_char(name_lower.back());
    if (left_ok && right_ok) return pos;
    pos = text_lower.find(name_lower, pos + 1);
  }
  return std::nullopt;
}

double distance_to_passage(const Diagram &d, const Passage &p) {
  if (p.boxes.empty()) return 0;
  const BoundingBox &b = p.boxes.front();
  return std::hypot(d.box.center_x() - b.center_x(), d.box.center_y() - b.center_y());
}
}  // namespace

std::string_view link_method_name(LinkMethod method) noexcept {
  return method == LinkMethod::kText ? "text" : "structure";
}

std::vector<std::string> LinkerConfig::load_patterns(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open mention pattern file " + path.string());
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back(line.substr(first));
  }
  return out;
}

MentionDetector::MentionDetector(const std::vector<std::string> &patterns) {
  for (const auto &p: patterns) {
    try {
      patterns_.emplace_back(p, std::regex::ECMAScript | std::regex::icase);
    } catch (const std::regex_error &e) {
      throw std::invalid_argument("bad mention pattern '" + p + "': " + e.what());
    }
  }
}

std::vector<Mention> MentionDetector::detect(const Passage &p) const {
  std::vector<Mention> found;
  for (const std::regex &re: patterns_) {
    for (auto it = std::sregex_iterator(p.text.begin(), p.text.end(), re);
         it != std::sregex_iterator(); ++it) {
      const std::smatch &m = *it;
      std::size_t base;
      std::string group;
      if (m.size() > 1 && m[1].matched) {
        base = static_cast<std::size_t>(m.position(1));
        group = m[1].str();
      } else {
        base = static_cast<std::size_t>(m.position(0));
        group = m[0].str();
      }
      for (auto lt = std::sregex_iterator(group.begin(), group.end(), label_token_re());
           lt != std::sregex_iterator(); ++lt) {
        Mention mention;
        mention.passage_id = p.passage_id;
        mention.start = base + static_cast<std::size_t>(lt->position(0));
        mention.end = mention.start + static_cast<std::size_t>(lt->length(0));
        mention.surface = lt->str();
        mention.label_token = lt->str();
        found.push_back(std::move(mention));
      }
    }
  }
  std::sort(found.begin(), found.end(), [](const Mention &a, const Mention &b) {
    return std::tie(a.start, b.end) < std::tie(b.start, a.end);
  });
  std::vector<Mention> out;
  for (auto &m: found)
    if (out.empty() || out.back().end <= m.start) out.push_back(std::move(m));
  return out;
}

std::vector<Mention> detect_label_mentions(const Passage &p) {
  static const MentionDetector detector(LinkerConfig {}.patterns);
  return detector.detect(p);
}

std::vector<Mention> detect_mentions(const Corpus &corpus, const Passage &p,
                                     const MentionDetector &detector) {
  // (name, resolved canonical)
  std::vector<std::pair<std::string, std::optional<std::string>>> names;
  if (p.kind == PassageKind::kReaction) {
    for (const ReactionRecord *rx: corpus.reactions_of_passage(p.passage_id))
      for (const auto *role: { &rx->reactants, &rx->products })
        for (const ChemEntity &e: *role)
          if (e.name) names.emplace_back(*e.name, e.canonical);
  } else {
    for (const std::string &name: p.compound_names)
      names.emplace_back(name, corpus.resolve_name(name));
  }
  std::stable_sort(names.begin(), names.end(), [](const auto &a, const auto &b) {
    return a.first.size() > b.first.size();
  });

  const std::string text_lower = lower(p.text);
  std::vector<Mention> out;
  // Spans claimed by names, including any trailing label.
  std::vector<std::pair<std::size_t, std::size_t>> claimed;
  auto is_free = [&](std::size_t s, std::size_t e) {
    return std::none_of(claimed.begin(), claimed.end(), [&](const auto &c) {
      return overlaps(s, e, c.first, c.second);
    });
  };

  for (const auto &[name, canonical]: names) {
    auto pos = find_name(text_lower, lower(name));
    if (!pos) continue;
    std::size_t end = *pos + name.size();
    if (!is_free(*pos, end)) continue;
    Mention m;
    m.passage_id = p.passage_id;
    m.start = *pos;
    m.end = end;
    m.surface = p.text.substr(m.start, m.end - m.start);
    m.resolved_smiles = canonical;
    std::size_t claim_end = end;
    std::smatch tail;
    auto rest_begin = p.text.begin() + static_cast<std::ptrdiff_t>(end);
    if (std::regex_search(rest_begin, p.text.end(), tail, trailing_label_re(),
                          std::regex_constants::match_continuous)) {
      m.label_token = tail[1].matched ? tail[1].str() : tail[2].str();
      claim_end = end + static_cast<std::size_t>(tail.length(0));
    }
    claimed.emplace_back(m.start, claim_end);
    out.push_back(std::move(m));
  }

  for (Mention &m: detector.detect(p))
    if (is_free(m.start, m.end)) out.push_back(std::move(m));

  std::sort(out.begin(), out.end(), [](const Mention &a, const Mention &b) {
    return std::tie(a.start, a.end) < std::tie(b.start, b.end);
  });
  return out;
}

double levenshtein_ratio(std::string_view a, std::string_view b) {
  const std::size_t total = a.size() + b.size();
  if (total == 0) return 1.0;
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 2);
      cur[j] = std::min({ prev[j] + 1, cur[j - 1] + 1, sub });
    }
    std::swap(prev, cur);
  }
  return static_cast<double>(total - prev[b.size()]) / static_cast<double>(total);
}

std::optional<CompoundLink> link_by_label(const Mention &m,
                                          std::span<const Diagram> diagrams,
                                          const Passage &passage, double threshold) {
  if (!m.label_token) return std::nullopt;
  const std::string token = lower(*m.label_token);
  const Diagram *best = nullptr;
  std::tuple<double, int, double> best_key;
  for (const Diagram &d: diagrams) {
    if (!d.label || d.doc_id != passage.doc_id) continue;
    double ratio = levenshtein_ratio(token, lower(*d.label));
    // Smaller is better on every component.
    std::tuple<double, int, double> key { -ratio, d.page == passage.page ? 0 : 1,
                                          distance_to_passage(d, passage) };
    if (!best || key < best_key || (key == best_key && d.diagram_id < best->diagram_id)) {
      best = &d;
      best_key = key;
    }
  }
  if (!best || -std::get<0>(best_key) < threshold) return std::nullopt;
  return CompoundLink { m, best->diagram_id, LinkMethod::kText, -std::get<0>(best_key) };
}

std::vector<DiagramFingerprint> diagram_fingerprints(std::span<const Diagram> diagrams,
                                                     int radius, int width) {
  std::vector<DiagramFingerprint> out;
  out.reserve(diagrams.size());
  for (const Diagram &d: diagrams) {
    const std::string &smiles = d.canonical.empty() ? d.smiles : d.canonical;
    out.push_back({ &d, morgan_fingerprint(parse_smiles(smiles), radius, width) });
  }
  return out;
}

std::optional<CompoundLink> link_by_structure(const Mention &m,
                                              std::span<const DiagramFingerprint> diagrams,
                                              double threshold, int radius, int width) {
  if (!m.resolved_smiles) return std::nullopt;
  Fingerprint query = morgan_fingerprint(parse_smiles(*m.resolved_smiles), radius, width);
  const Diagram *best = nullptr;
  double best_score = -1;
  for (const DiagramFingerprint &df: diagrams) {
    double s = tanimoto(query, df.fingerprint).value();
    if (s > best_score || (s == best_score && df.diagram->diagram_id < best->diagram_id)) {
      best = df.diagram;
      best_score = s;
    }
  }
  if (!best || best_score < threshold) return std::nullopt;
  return CompoundLink { m, best->diagram_id, LinkMethod::kStructure, best_score };
}

std::optional<CompoundLink> link_by_structure(const Mention &m,
                                              std::span<const Diagram> diagrams,
                                              double threshold) {
  auto fps = diagram_fingerprints(diagrams);
  return link_by_structure(m, fps, threshold);
}

std::optional<CompoundLink> choose_link(std::optional<CompoundLink> text,
                                        std::optional<CompoundLink> structure) {
  if (text && structure) return structure->score > text->score ? structure : text;
  return text ? text : structure;
}

std::vector<CompoundLink> resolve_links(const Corpus &corpus, const LinkerConfig &config) {
  const MentionDetector detector(config.patterns);

  std::map<std::string, std::vector<Diagram>> by_doc;
  for (const Diagram &d: corpus.diagrams()) by_doc[d.doc_id].push_back(d);
  std::map<std::string, std::vector<DiagramFingerprint>> fps_by_doc;
  for (const auto &[doc, ds]: by_doc)
    fps_by_doc[doc] = diagram_fingerprints(ds, config.fingerprint_radius,
                                           config.fingerprint_width);

  std::vector<CompoundLink> out;
  for (const Passage &p: corpus.passages()) {
    auto dit = by_doc.find(p.doc_id);
    if (dit == by_doc.end()) continue;
    const auto &fps = fps_by_doc[p.doc_id];
    for (const Mention &m: detect_mentions(corpus, p, detector)) {
      auto text = link_by_label(m, dit->second, p, config.text_threshold);
      auto structure = link_by_structure(m, fps, config.structure_threshold,
                                         config.fingerprint_radius,
                                         config.fingerprint_width);
      if (auto link = choose_link(std::move(text), std::move(structure)))
        out.push_back(std::move(*link));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const CompoundLink &a, const CompoundLink &b) {
    return std::tie(a.mention.passage_id, a.mention.start, a.mention.end)
           < std::tie(b.mention.passage_id, b.mention.start, b.mention.end);
  });
  return out;
}

}  // namespace chemsearch
