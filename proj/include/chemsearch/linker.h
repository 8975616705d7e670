//
// Project chemsearch - Copyright 2026 The chemsearch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMSEARCH_LINKER_H_
#define CHEMSEARCH_LINKER_H_

#include <compare>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <regex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chemsearch/corpus.h"
#include "chemsearch/fingerprint.h"

namespace chemsearch {

struct Mention {
  std::string passage_id;
  // Byte offsets into the passage text, [start, end).
  std::size_t start = 0;
  std::size_t end = 0;
  std::string surface;
  std::optional<std::string> label_token;
  std::optional<std::string> resolved_smiles;

  auto operator<=>(const Mention &) const = default;
};

enum class LinkMethod { kText, kStructure };

std::string_view link_method_name(LinkMethod method) noexcept;

struct CompoundLink {
  Mention mention;
  std::string diagram_id;
  LinkMethod method = LinkMethod::kText;
  double score = 0;

  bool operator==(const CompoundLink &) const = default;
};

inline constexpr double kTextLinkThreshold = 0.5;
inline constexpr double kStructureLinkThreshold = 0.5;

// Default label pattern. Group 1 holds one label or a list of labels.
inline constexpr std::string_view kDefaultMentionPattern =
    R"(\b(?:compound|molecule|product|intermediate)s?\s+(\d+[a-z]?(?:(?:\s*,\s*|\s+and\s+|\s+or\s+)\d+[a-z]?)*)\b)";

struct LinkerConfig {
  std::vector<std::string> patterns { std::string(kDefaultMentionPattern) };
  double text_threshold = kTextLinkThreshold;
  double structure_threshold = kStructureLinkThreshold;
  int fingerprint_radius = kMorganRadius;
  int fingerprint_width = kFingerprintWidth;

  // One ECMAScript regex per line, matched case-insensitively; '#' starts a
  // comment line. Group 1, when present, is scanned for labels.
  static std::vector<std::string> load_patterns(const std::filesystem::path &path);

  bool operator==(const LinkerConfig &) const = default;
};

class MentionDetector {
public:
  explicit MentionDetector(const std::vector<std::string> &patterns);

  // Label mentions, left to right, non-overlapping.
  std::vector<Mention> detect(const Passage &p) const;

private:
  std::vector<std::regex> patterns_;
};

std::vector<Mention> detect_label_mentions(const Passage &p);

// Name mentions plus label mentions for one passage. General passages use
// compound_names; reaction passages use reactant and product names. A name
// directly followed by a label, as in "bromobenzene (1)", carries both.
std::vector<Mention> detect_mentions(const Corpus &corpus, const Passage &p,
                                     const MentionDetector &detector);

// Indel ratio: substitution costs 2.
double levenshtein_ratio(std::string_view a, std::string_view b);

std::optional<CompoundLink> link_by_label(const Mention &m,
                                          std::span<const Diagram> diagrams,
                                          const Passage &passage,
                                          double threshold = kTextLinkThreshold);

struct DiagramFingerprint {
  const Diagram *diagram;
  Fingerprint fingerprint;
};

std::vector<DiagramFingerprint> diagram_fingerprints(
    std::span<const Diagram> diagrams, int radius = kMorganRadius,
    int width = kFingerprintWidth);

std::optional<CompoundLink> link_by_structure(
    const Mention &m, std::span<const DiagramFingerprint> diagrams,
    double threshold = kStructureLinkThreshold, int radius = kMorganRadius,
    int width = kFingerprintWidth);

std::optional<CompoundLink> link_by_structure(
    const Mention &m, std::span<const Diagram> diagrams,
    double threshold = kStructureLinkThreshold);

// Higher score wins; exact ties keep the text link.
std::optional<CompoundLink> choose_link(std::optional<CompoundLink> text,
                                        std::optional<CompoundLink> structure);

// Sorted by (passage_id, start, end). At most one link per mention.
std::vector<CompoundLink> resolve_links(const Corpus &corpus,
                                        const LinkerConfig &config = {});

}  // namespace chemsearch

#endif  // CHEMSEARCH_LINKER_H_
