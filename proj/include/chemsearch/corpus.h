//
// Project chemsearch - Copyright 2026 The chemsearch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMSEARCH_CORPUS_H_
#define CHEMSEARCH_CORPUS_H_

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace chemsearch {

struct CompoundLink;

// PDF points, origin at the top-left of the page.
struct BoundingBox {
  double x0 = 0;
  double y0 = 0;
  double x1 = 0;
  double y1 = 0;

  bool valid() const noexcept {
    return x0 >= 0 && y0 >= 0 && x0 < x1 && y0 < y1;
  }
  double center_x() const noexcept { return (x0 + x1) / 2; }
  double center_y() const noexcept { return (y0 + y1) / 2; }
  bool operator==(const BoundingBox &) const = default;
};

struct Document {
  std::string doc_id;
  std::string title;
  std::optional<std::string> source_path;
  int num_pages = 1;

  bool operator==(const Document &) const = default;
};

enum class PassageKind { kReaction, kGeneral };

std::string_view passage_kind_name(PassageKind kind) noexcept;

struct Passage {
  std::string passage_id;
  std::string doc_id;
  PassageKind kind = PassageKind::kGeneral;
  std::string text;
  int page = 1;
  std::vector<BoundingBox> boxes;
  std::vector<std::string> compound_names;
  std::optional<std::string> reaction_id;

  bool operator==(const Passage &) const = default;
};

struct ChemEntity {
  std::optional<std::string> name;
  std::optional<std::string> smiles;
  // Filled at load from smiles, or from the name dictionary for name-only
  // entities.
  std::optional<std::string> canonical;

  bool operator==(const ChemEntity &) const = default;
};

struct ReactionRecord {
  std::string reaction_id;
  std::string passage_id;
  std::vector<ChemEntity> reactants;
  std::vector<ChemEntity> products;
  std::vector<ChemEntity> catalysts;
  std::vector<ChemEntity> solvents;
  std::optional<std::string> temperature;
  std::optional<double> yield_pct;

  bool operator==(const ReactionRecord &) const = default;
};

struct Diagram {
  std::string diagram_id;
  std::string doc_id;
  int page = 1;
  BoundingBox box;
  std::optional<std::string> label;
  std::string smiles;
  std::string canonical;

  bool operator==(const Diagram &) const = default;
};

enum class CompoundSourceKind { kDiagram, kReactionEntity, kName };

std::string_view compound_source_name(CompoundSourceKind kind) noexcept;

// id is the diagram_id, reaction_id, or (for names) the passage_id.
struct CompoundSource {
  CompoundSourceKind kind;
  std::string id;

  auto operator<=>(const CompoundSource &) const = default;
};

struct CompoundEntry {
  std::string canonical;
  std::vector<CompoundSource> sources;

  bool operator==(const CompoundEntry &) const = default;
};

// Raw ingestion records, before validation.
struct CorpusRecords {
  std::vector<Document> documents;
  std::vector<Passage> passages;
  std::vector<ReactionRecord> reactions;
  std::vector<Diagram> diagrams;
  std::map<std::string, std::string> names;
};

enum class CorpusErrorKind {
  kMissingFile,
  kSchemaViolation,
  kDanglingReference,
  kSmilesParseFailure,
  kEmptyCorpus,
};

std::string_view corpus_error_name(CorpusErrorKind kind) noexcept;

class CorpusError: public std::runtime_error {
public:
  struct Where {
    std::string file;
    int line = 0;
    std::string field;
    std::string record_id;
  };

  CorpusError(CorpusErrorKind kind, Where where, const std::string &message);

  CorpusErrorKind kind() const noexcept { return kind_; }
  const Where &where() const noexcept { return where_; }

private:
  CorpusErrorKind kind_;
  Where where_;
};

/// Validated, immutable corpus. Every collection is sorted by id, every
/// SMILES is canonicalized, and every foreign key resolves.
class Corpus {
public:
  Corpus() = default;

  // Throws CorpusError. Accepts an empty record set.
  static Corpus build(CorpusRecords records);

  const std::vector<Document> &documents() const noexcept { return documents_; }
  const std::vector<Passage> &passages() const noexcept { return passages_; }
  const std::vector<ReactionRecord> &reactions() const noexcept {
    return reactions_;
  }
  const std::vector<Diagram> &diagrams() const noexcept { return diagrams_; }
  const std::map<std::string, std::string> &name_dictionary() const noexcept {
    return names_;
  }
  // Unique canonical SMILES with their provenance, sorted by canonical.
  const std::vector<CompoundEntry> &compounds() const noexcept {
    return compounds_;
  }

  const Document *find_document(std::string_view id) const;
  const Passage *find_passage(std::string_view id) const;
  const ReactionRecord *find_reaction(std::string_view id) const;
  const Diagram *find_diagram(std::string_view id) const;
  const CompoundEntry *find_compound(std::string_view canonical) const;

  // Canonical SMILES for a dictionary name, if present.
  std::optional<std::string> resolve_name(std::string_view name) const;

  std::vector<const ReactionRecord *> reactions_of_passage(
      std::string_view passage_id) const;
  std::vector<const Diagram *> diagrams_of_document(std::string_view doc_id) const;

  // Canonical SMILES annotated on a passage: its reaction entities and its
  // dictionary-resolved compound names. Links are not included.
  std::vector<std::string> annotated_compounds(const Passage &p) const;

  bool operator==(const Corpus &other) const;

private:
  void index();

  std::vector<Document> documents_;
  std::vector<Passage> passages_;
  std::vector<ReactionRecord> reactions_;
  std::vector<Diagram> diagrams_;
  std::map<std::string, std::string> names_;
  std::map<std::string, std::string> name_canonical_;
  std::vector<CompoundEntry> compounds_;

  std::unordered_map<std::string, std::size_t> doc_index_;
  std::unordered_map<std::string, std::size_t> passage_index_;
  std::unordered_map<std::string, std::size_t> reaction_index_;
  std::unordered_map<std::string, std::size_t> diagram_index_;
  std::unordered_map<std::string, std::size_t> compound_index_;
  std::unordered_map<std::string, std::vector<std::size_t>> passage_reactions_;
};

inline constexpr std::string_view kDocumentsFile = "documents.jsonl";
inline constexpr std::string_view kPassagesFile = "passages.jsonl";
inline constexpr std::string_view kReactionsFile = "reactions.jsonl";
inline constexpr std::string_view kDiagramsFile = "diagrams.jsonl";
inline constexpr std::string_view kNamesFile = "names.json";

// All-or-nothing. Rejects unknown fields and empty corpora.
Corpus load_corpus(const std::filesystem::path &dir);
void save_corpus(const Corpus &corpus, const std::filesystem::path &dir);

// Parses the five ingestion files' contents. Used by load_corpus and by
// snapshot loading.
CorpusRecords parse_corpus_records(const std::string &documents,
                                   const std::string &passages,
                                   const std::string &reactions,
                                   const std::string &diagrams,
                                   const std::string &names);

struct SerializedCorpus {
  std::string documents;
  std::string passages;
  std::string reactions;
  std::string diagrams;
  std::string names;
};

SerializedCorpus serialize_corpus(const Corpus &corpus);

std::vector<std::string> unique_compounds(const Corpus &corpus);

// Passages with a reaction, a compound name, or at least one link.
std::vector<Passage> indexable_passages(const Corpus &corpus,
                                        std::span<const CompoundLink> links);

}  // namespace chemsearch

#endif  // CHEMSEARCH_CORPUS_H_
