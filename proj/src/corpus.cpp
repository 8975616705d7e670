//
// Project chemsearch - Copyright 2026 The chemsearch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "chemsearch/corpus.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "chemsearch/linker.h"
#include "chemsearch/molgraph.h"

namespace chemsearch {
namespace {
using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

class RecordReader {
public:
  RecordReader(const json &obj, std::string_view file, int line,
               std::string_view prefix = {})
      : obj_(obj), file_(file), line_(line), prefix_(prefix) {
    if (!obj.is_object()) fail("", "record must be a JSON object");
  }

  [[noreturn]] void fail(std::string_view field, const std::string &msg) const {
    std::string full = prefix_.empty() ? std::string(field)
                                       : prefix_ + (field.empty() ? "" : ".")
                                             + std::string(field);
    throw CorpusError(CorpusErrorKind::kSchemaViolation,
                      { file_, line_, full, record_id_ },
                      file_ + ":" + std::to_string(line_) + ": field '" + full
                          + "': " + msg);
  }

  void set_record_id(std::string id) { record_id_ = std::move(id); }

  const json *get(const char *key, bool required) {
    seen_.insert(key);
    auto it = obj_.find(key);
    if (it == obj_.end() || it->is_null()) {
      if (required) fail(key, "missing required field");
      return nullptr;
    }
    return &*it;
  }

  std::string req_string(const char *key) {
    const json *v = get(key, true);
    if (!v->is_string()) fail(key, "expected string");
    return v->get<std::string>();
  }

  std::optional<std::string> opt_string(const char *key) {
    const json *v = get(key, false);
    if (!v) return std::nullopt;
    if (!v->is_string()) fail(key, "expected string");
    return v->get<std::string>();
  }

  int req_int(const char *key) {
    const json *v = get(key, true);
    if (!v->is_number_integer()) fail(key, "expected integer");
    return v->get<int>();
  }

  double req_number(const char *key) {
    const json *v = get(key, true);
    if (!v->is_number()) fail(key, "expected number");
    return v->get<double>();
  }

  std::optional<double> opt_number(const char *key) {
    const json *v = get(key, false);
    if (!v) return std::nullopt;
    if (!v->is_number()) fail(key, "expected number");
    return v->get<double>();
  }

  const json &req_array(const char *key) {
    const json *v = get(key, true);
    if (!v->is_array()) fail(key, "expected array");
    return *v;
  }

  std::vector<std::string> req_string_array(const char *key) {
    std::vector<std::string> out;
    for (const auto &item: req_array(key)) {
      if (!item.is_string()) fail(key, "expected array of strings");
      out.push_back(item.get<std::string>());
    }
    return out;
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it)
      if (!seen_.count(it.key())) fail(it.key(), "unknown field");
  }

  std::string_view file() const { return file_; }
  int line() const { return line_; }

private:
  const json &obj_;
  std::string file_;
  int line_;
  std::string prefix_;
  std::string record_id_;
  std::set<std::string> seen_;
};

template <class Fn>
void for_each_jsonl(const std::string &content, std::string_view file, Fn &&fn) {
  std::istringstream in(content);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error &e) {
      throw CorpusError(CorpusErrorKind::kSchemaViolation,
                        { std::string(file), lineno, "", "" },
                        std::string(file) + ":" + std::to_string(lineno)
                            + ": invalid JSON: " + e.what());
    }
    fn(obj, lineno);
  }
}

BoundingBox read_box(const json &obj, std::string_view file, int line,
                     const std::string &field) {
  RecordReader r(obj, file, line, field);
  BoundingBox box { r.req_number("x0"), r.req_number("y0"), r.req_number("x1"),
                    r.req_number("y1") };
  r.finish();
  if (!box.valid()) r.fail("", "box needs 0 <= x0 < x1 and 0 <= y0 < y1");
  return box;
}

std::vector<ChemEntity> read_entities(RecordReader &parent, const char *key) {
  std::vector<ChemEntity> out;
  const json &arr = parent.req_array(key);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    RecordReader r(arr[i], parent.file(), parent.line(),
                   std::string(key) + "[" + std::to_string(i) + "]");
    ChemEntity e;
    e.name = r.opt_string("name");
    e.smiles = r.opt_string("smiles");
    r.finish();
    out.push_back(std::move(e));
  }
  return out;
}

[[noreturn]] void schema_error(std::string_view file, std::string_view record,
                               std::string_view field, const std::string &msg) {
  throw CorpusError(CorpusErrorKind::kSchemaViolation,
                    { std::string(file), 0, std::string(field), std::string(record) },
                    std::string(file) + ": record '" + std::string(record)
                        + "' field '" + std::string(field) + "': " + msg);
}

[[noreturn]] void dangling(std::string_view file, std::string_view record,
                           std::string_view field, const std::string &msg) {
  throw CorpusError(CorpusErrorKind::kDanglingReference,
                    { std::string(file), 0, std::string(field), std::string(record) },
                    std::string(file) + ": record '" + std::string(record) + "': "
                        + msg);
}

std::string canonicalize_or_throw(const std::string &smiles, std::string_view file,
                                  std::string_view record, std::string_view field) {
  try {
    return canonical_smiles(parse_smiles(smiles));
  } catch (const SmilesError &e) {
    throw CorpusError(CorpusErrorKind::kSmilesParseFailure,
                      { std::string(file), 0, std::string(field), std::string(record) },
                      std::string(file) + ": record '" + std::string(record)
                          + "': cannot parse SMILES '" + smiles + "': " + e.what());
  }
}

template <class T, class Key>
void sort_and_check_unique(std::vector<T> &items, Key key, std::string_view file,
                           std::string_view field) {
  std::stable_sort(items.begin(), items.end(),
                   [&](const T &a, const T &b) { return key(a) < key(b); });
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (key(items[i]).empty()) schema_error(file, "", field, "empty id");
    if (i > 0 && key(items[i]) == key(items[i - 1]))
      schema_error(file, key(items[i]), field, "duplicate id");
  }
}

std::string read_text_file(const std::filesystem::path &p) {
  std::ifstream in(p, std::ios::binary);
  if (!in)
    throw CorpusError(CorpusErrorKind::kMissingFile,
                      { p.filename().string(), 0, "", "" },
                      "missing ingestion file " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ordered_json box_json(const BoundingBox &b) {
  return { { "x0", b.x0 }, { "y0", b.y0 }, { "x1", b.x1 }, { "y1", b.y1 } };
}

ordered_json entity_json(const ChemEntity &e) {
  ordered_json j = ordered_json::object();
  if (e.name) j["name"] = *e.name;
  if (e.smiles) j["smiles"] = *e.smiles;
  return j;
}

ordered_json entities_json(const std::vector<ChemEntity> &es) {
  ordered_json arr = ordered_json::array();
  for (const auto &e: es) arr.push_back(entity_json(e));
  return arr;
}
}  // namespace

std::string_view passage_kind_name(PassageKind kind) noexcept {
  return kind == PassageKind::kReaction ? "reaction" : "general";
}

std::string_view compound_source_name(CompoundSourceKind kind) noexcept {
  switch (kind) {
  case CompoundSourceKind::kDiagram:
    return "diagram";
  case CompoundSourceKind::kReactionEntity:
    return "reaction_entity";
  case CompoundSourceKind::kName:
    return "name";
  }
  return "unknown";
}

std::string_view corpus_error_name(CorpusErrorKind kind) noexcept {
  switch (kind) {
  case CorpusErrorKind::kMissingFile:
    return "MissingFile";
  case CorpusErrorKind::kSchemaViolation:
    return "SchemaViolation";
  case CorpusErrorKind::kDanglingReference:
    return "DanglingReference";
  case CorpusErrorKind::kSmilesParseFailure:
    return "SmilesParseFailure";
  case CorpusErrorKind::kEmptyCorpus:
    return "EmptyCorpus";
  }
  return "Unknown";
}

CorpusError::CorpusError(CorpusErrorKind kind, Where where,
                         const std::string &message)
    : std::runtime_error(std::string(corpus_error_name(kind)) + ": " + message),
      kind_(kind), where_(std::move(where)) { }

CorpusRecords parse_corpus_records(const std::string &documents,
                                   const std::string &passages,
                                   const std::string &reactions,
                                   const std::string &diagrams,
                                   const std::string &names) {
  CorpusRecords rec;

  for_each_jsonl(documents, kDocumentsFile, [&](const json &obj, int line) {
    RecordReader r(obj, kDocumentsFile, line);
    Document d;
    d.doc_id = r.req_string("doc_id");
    r.set_record_id(d.doc_id);
    d.title = r.req_string("title");
    d.source_path = r.opt_string("source_path");
    d.num_pages = r.req_int("num_pages");
    r.finish();
    if (d.num_pages < 1) r.fail("num_pages", "must be positive");
    rec.documents.push_back(std::move(d));
  });

  for_each_jsonl(passages, kPassagesFile, [&](const json &obj, int line) {
    RecordReader r(obj, kPassagesFile, line);
    Passage p;
    p.passage_id = r.req_string("passage_id");
    r.set_record_id(p.passage_id);
    p.doc_id = r.req_string("doc_id");
    std::string kind = r.req_string("kind");
    if (kind == "reaction")
      p.kind = PassageKind::kReaction;
    else if (kind == "general")
      p.kind = PassageKind::kGeneral;
    else
      r.fail("kind", "expected \"reaction\" or \"general\"");
    p.text = r.req_string("text");
    p.page = r.req_int("page");
    const json &boxes = r.req_array("boxes");
    for (std::size_t i = 0; i < boxes.size(); ++i)
      p.boxes.push_back(read_box(boxes[i], kPassagesFile, line,
                                 "boxes[" + std::to_string(i) + "]"));
    p.compound_names = r.req_string_array("compound_names");
    p.reaction_id = r.opt_string("reaction_id");
    r.finish();
    rec.passages.push_back(std::move(p));
  });

  for_each_jsonl(reactions, kReactionsFile, [&](const json &obj, int line) {
    RecordReader r(obj, kReactionsFile, line);
    ReactionRecord rx;
    rx.reaction_id = r.req_string("reaction_id");
    r.set_record_id(rx.reaction_id);
    rx.passage_id = r.req_string("passage_id");
    rx.reactants = read_entities(r, "reactants");
    rx.products = read_entities(r, "products");
    rx.catalysts = read_entities(r, "catalysts");
    rx.solvents = read_entities(r, "solvents");
    rx.temperature = r.opt_string("temperature");
    rx.yield_pct = r.opt_number("yield_pct");
    r.finish();
    rec.reactions.push_back(std::move(rx));
  });

  for_each_jsonl(diagrams, kDiagramsFile, [&](const json &obj, int line) {
    RecordReader r(obj, kDiagramsFile, line);
    Diagram d;
    d.diagram_id = r.req_string("diagram_id");
    r.set_record_id(d.diagram_id);
    d.doc_id = r.req_string("doc_id");
    d.page = r.req_int("page");
    const json *box = r.get("box", true);
    d.box = read_box(*box, kDiagramsFile, line, "box");
    d.label = r.opt_string("label");
    d.smiles = r.req_string("smiles");
    r.finish();
    rec.diagrams.push_back(std::move(d));
  });

  json dict;
  try {
    dict = json::parse(names);
  } catch (const json::parse_error &e) {
    throw CorpusError(CorpusErrorKind::kSchemaViolation,
                      { std::string(kNamesFile), 0, "", "" },
                      std::string(kNamesFile) + ": invalid JSON: " + e.what());
  }
  if (!dict.is_object())
    throw CorpusError(CorpusErrorKind::kSchemaViolation,
                      { std::string(kNamesFile), 0, "", "" },
                      std::string(kNamesFile) + ": expected a flat JSON object");
  for (auto it = dict.begin(); it != dict.end(); ++it) {
    if (!it.value().is_string())
      throw CorpusError(CorpusErrorKind::kSchemaViolation,
                        { std::string(kNamesFile), 0, it.key(), it.key() },
                        std::string(kNamesFile) + ": value of '" + it.key()
                            + "' must be a SMILES string");
    rec.names.emplace(it.key(), it.value().get<std::string>());
  }
  return rec;
}

Corpus Corpus::build(CorpusRecords rec) {
  Corpus c;
  c.documents_ = std::move(rec.documents);
  c.passages_ = std::move(rec.passages);
  c.reactions_ = std::move(rec.reactions);
  c.diagrams_ = std::move(rec.diagrams);
  c.names_ = std::move(rec.names);

  sort_and_check_unique(c.documents_, [](const Document &d) -> const std::string & {
    return d.doc_id;
  }, kDocumentsFile, "doc_id");
  sort_and_check_unique(c.passages_, [](const Passage &p) -> const std::string & {
    return p.passage_id;
  }, kPassagesFile, "passage_id");
  sort_and_check_unique(c.reactions_, [](const ReactionRecord &r) -> const std::string & {
    return r.reaction_id;
  }, kReactionsFile, "reaction_id");
  sort_and_check_unique(c.diagrams_, [](const Diagram &d) -> const std::string & {
    return d.diagram_id;
  }, kDiagramsFile, "diagram_id");
  c.index();

  for (const Document &d: c.documents_)
    if (d.num_pages < 1) schema_error(kDocumentsFile, d.doc_id, "num_pages", "must be positive");

  for (const Passage &p: c.passages_) {
    const Document *doc = c.find_document(p.doc_id);
    if (!doc) dangling(kPassagesFile, p.passage_id, "doc_id", "unknown doc_id '" + p.doc_id + "'");
    if (p.page < 1 || p.page > doc->num_pages)
      schema_error(kPassagesFile, p.passage_id, "page", "page outside document");
    if (p.text.empty()) schema_error(kPassagesFile, p.passage_id, "text", "empty text");
    for (const BoundingBox &b: p.boxes)
      if (!b.valid()) schema_error(kPassagesFile, p.passage_id, "boxes", "invalid box");
    if (p.kind == PassageKind::kReaction && !p.reaction_id)
      schema_error(kPassagesFile, p.passage_id, "reaction_id",
                   "reaction passages need a reaction_id");
    if (p.reaction_id) {
      const ReactionRecord *rx = c.find_reaction(*p.reaction_id);
      if (!rx)
        dangling(kPassagesFile, p.passage_id, "reaction_id",
                 "unknown reaction_id '" + *p.reaction_id + "'");
      if (rx->passage_id != p.passage_id)
        dangling(kPassagesFile, p.passage_id, "reaction_id",
                 "reaction '" + rx->reaction_id + "' belongs to passage '"
                     + rx->passage_id + "'");
    }
  }

  for (const auto &[name, smiles]: c.names_)
    c.name_canonical_[name] = canonicalize_or_throw(smiles, kNamesFile, name, name);

  for (ReactionRecord &rx: c.reactions_) {
    const Passage *p = c.find_passage(rx.passage_id);
    if (!p)
      dangling(kReactionsFile, rx.reaction_id, "passage_id",
               "unknown passage_id '" + rx.passage_id + "'");
    if (!p->reaction_id)
      dangling(kReactionsFile, rx.reaction_id, "passage_id",
               "passage '" + rx.passage_id + "' is not a reaction passage");
    if (rx.reactants.empty() && rx.products.empty())
      schema_error(kReactionsFile, rx.reaction_id, "reactants",
                   "reactants or products must be non-empty");
    if (rx.yield_pct && !(*rx.yield_pct >= 0 && *rx.yield_pct <= 100))
      schema_error(kReactionsFile, rx.reaction_id, "yield_pct", "must lie in [0, 100]");
    for (auto *role: { &rx.reactants, &rx.products, &rx.catalysts, &rx.solvents }) {
      for (ChemEntity &e: *role) {
        if (!e.name && !e.smiles)
          schema_error(kReactionsFile, rx.reaction_id, "entity", "needs name or smiles");
        e.canonical.reset();
        if (e.smiles)
          e.canonical = canonicalize_or_throw(*e.smiles, kReactionsFile, rx.reaction_id,
                                              "smiles");
        else
          e.canonical = c.resolve_name(*e.name);
      }
    }
  }

  for (Diagram &d: c.diagrams_) {
    const Document *doc = c.find_document(d.doc_id);
    if (!doc)
      dangling(kDiagramsFile, d.diagram_id, "doc_id", "unknown doc_id '" + d.doc_id + "'");
    if (d.page < 1 || d.page > doc->num_pages)
      schema_error(kDiagramsFile, d.diagram_id, "page", "page outside document");
    if (!d.box.valid()) schema_error(kDiagramsFile, d.diagram_id, "box", "invalid box");
    if (d.label && d.label->empty())
      schema_error(kDiagramsFile, d.diagram_id, "label", "empty label");
    d.canonical = canonicalize_or_throw(d.smiles, kDiagramsFile, d.diagram_id, "smiles");
  }

  std::map<std::string, std::set<CompoundSource>> table;
  for (const Diagram &d: c.diagrams_)
    table[d.canonical].insert({ CompoundSourceKind::kDiagram, d.diagram_id });
  for (const ReactionRecord &rx: c.reactions_)
    for (const auto *role: { &rx.reactants, &rx.products, &rx.catalysts, &rx.solvents })
      for (const ChemEntity &e: *role)
        if (e.canonical)
          table[*e.canonical].insert({ CompoundSourceKind::kReactionEntity, rx.reaction_id });
  for (const Passage &p: c.passages_)
    for (const std::string &name: p.compound_names)
      if (auto canon = c.resolve_name(name))
        table[*canon].insert({ CompoundSourceKind::kName, p.passage_id });
  for (auto &[canon, sources]: table)
    c.compounds_.push_back({ canon, { sources.begin(), sources.end() } });
  c.index();
  return c;
}

void Corpus::index() {
  doc_index_.clear();
  passage_index_.clear();
  reaction_index_.clear();
  diagram_index_.clear();
  compound_index_.clear();
  passage_reactions_.clear();
  for (std::size_t i = 0; i < documents_.size(); ++i) doc_index_[documents_[i].doc_id] = i;
  for (std::size_t i = 0; i < passages_.size(); ++i)
    passage_index_[passages_[i].passage_id] = i;
  for (std::size_t i = 0; i < reactions_.size(); ++i) {
    reaction_index_[reactions_[i].reaction_id] = i;
    passage_reactions_[reactions_[i].passage_id].push_back(i);
  }
  for (std::size_t i = 0; i < diagrams_.size(); ++i)
    diagram_index_[diagrams_[i].diagram_id] = i;
  for (std::size_t i = 0; i < compounds_.size(); ++i)
    compound_index_[compounds_[i].canonical] = i;
}

namespace {
template <class T>
const T *lookup(const std::unordered_map<std::string, std::size_t> &index,
                const std::vector<T> &items, std::string_view id) {
  auto it = index.find(std::string(id));
  return it == index.end() ? nullptr : &items[it->second];
}
}  // namespace

const Document *Corpus::find_document(std::string_view id) const {
  return lookup(doc_index_, documents_, id);
}
const Passage *Corpus::find_passage(std::string_view id) const {
  return lookup(passage_index_, passages_, id);
}
const ReactionRecord *Corpus::find_reaction(std::string_view id) const {
  return lookup(reaction_index_, reactions_, id);
}
const Diagram *Corpus::find_diagram(std::string_view id) const {
  return lookup(diagram_index_, diagrams_, id);
}
const CompoundEntry *Corpus::find_compound(std::string_view canonical) const {
  return lookup(compound_index_, compounds_, canonical);
}

std::optional<std::string> Corpus::resolve_name(std::string_view name) const {
  auto it = name_canonical_.find(std::string(name));
  if (it == name_canonical_.end()) return std::nullopt;
  return it->second;
}

std::vector<const ReactionRecord *> Corpus::reactions_of_passage(
    std::string_view passage_id) const {
  std::vector<const ReactionRecord *> out;
  auto it = passage_reactions_.find(std::string(passage_id));
  if (it == passage_reactions_.end()) return out;
  for (std::size_t i: it->second) out.push_back(&reactions_[i]);
  return out;
}

std::vector<const Diagram *> Corpus::diagrams_of_document(std::string_view doc_id) const {
  std::vector<const Diagram *> out;
  for (const Diagram &d: diagrams_)
    if (d.doc_id == doc_id) out.push_back(&d);
  return out;
}

std::vector<std::string> Corpus::annotated_compounds(const Passage &p) const {
  std::set<std::string> out;
  for (const ReactionRecord *rx: reactions_of_passage(p.passage_id))
    for (const auto *role: { &rx->reactants, &rx->products, &rx->catalysts, &rx->solvents })
      for (const ChemEntity &e: *role)
        if (e.canonical) out.insert(*e.canonical);
  for (const std::string &name: p.compound_names)
    if (auto canon = resolve_name(name)) out.insert(*canon);
  return { out.begin(), out.end() };
}

bool Corpus::operator==(const Corpus &other) const {
  return documents_ == other.documents_ && passages_ == other.passages_
         && reactions_ == other.reactions_ && diagrams_ == other.diagrams_
         && names_ == other.names_ && compounds_ == other.compounds_;
}

Corpus load_corpus(const std::filesystem::path &dir) {
  std::string documents = read_text_file(dir / kDocumentsFile);
  std::string passages = read_text_file(dir / kPassagesFile);
  std::string reactions = read_text_file(dir / kReactionsFile);
  std::string diagrams = read_text_file(dir / kDiagramsFile);
  std::string names = read_text_file(dir / kNamesFile);
  Corpus c = Corpus::build(
      parse_corpus_records(documents, passages, reactions, diagrams, names));
  if (c.documents().empty() || c.passages().empty())
    throw CorpusError(CorpusErrorKind::kEmptyCorpus, { "", 0, "", "" },
                      "corpus in " + dir.string() + " has no documents or passages");
  return c;
}

SerializedCorpus serialize_corpus(const Corpus &corpus) {
  SerializedCorpus out;
  for (const Document &d: corpus.documents()) {
    ordered_json j;
    j["doc_id"] = d.doc_id;
    j["title"] = d.title;
    if (d.source_path) j["source_path"] = *d.source_path;
    j["num_pages"] = d.num_pages;
    out.documents += j.dump() + "\n";
  }
  for (const Passage &p: corpus.passages()) {
    ordered_json j;
    j["passage_id"] = p.passage_id;
    j["doc_id"] = p.doc_id;
    j["kind"] = passage_kind_name(p.kind);
    j["text"] = p.text;
    j["page"] = p.page;
    j["boxes"] = ordered_json::array();
    for (const auto &b: p.boxes) j["boxes"].push_back(box_json(b));
    j["compound_names"] = p.compound_names;
    if (p.reaction_id) j["reaction_id"] = *p.reaction_id;
    out.passages += j.dump() + "\n";
  }
  for (const ReactionRecord &rx: corpus.reactions()) {
    ordered_json j;
    j["reaction_id"] = rx.reaction_id;
    j["passage_id"] = rx.passage_id;
    j["reactants"] = entities_json(rx.reactants);
    j["products"] = entities_json(rx.products);
    j["catalysts"] = entities_json(rx.catalysts);
    j["solvents"] = entities_json(rx.solvents);
    if (rx.temperature) j["temperature"] = *rx.temperature;
    if (rx.yield_pct) j["yield_pct"] = *rx.yield_pct;
    out.reactions += j.dump() + "\n";
  }
  for (const Diagram &d: corpus.diagrams()) {
    ordered_json j;
    j["diagram_id"] = d.diagram_id;
    j["doc_id"] = d.doc_id;
    j["page"] = d.page;
    j["box"] = box_json(d.box);
    if (d.label) j["label"] = *d.label;
    j["smiles"] = d.smiles;
    out.diagrams += j.dump() + "\n";
  }
  ordered_json names = ordered_json::object();
  for (const auto &[name, smiles]: corpus.name_dictionary()) names[name] = smiles;
  out.names = names.dump(2) + "\n";
  return out;
}

void save_corpus(const Corpus &corpus, const std::filesystem::path &dir) {
  std::filesystem::create_directories(dir);
  SerializedCorpus s = serialize_corpus(corpus);
  auto write = [&](std::string_view name, const std::string &content) {
    std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    out << content;
  };
  write(kDocumentsFile, s.documents);
  write(kPassagesFile, s.passages);
  write(kReactionsFile, s.reactions);
  write(kDiagramsFile, s.diagrams);
  write(kNamesFile, s.names);
}

std::vector<std::string> unique_compounds(const Corpus &corpus) {
  std::vector<std::string> out;
  out.reserve(corpus.compounds().size());
  for (const CompoundEntry &e: corpus.compounds()) out.push_back(e.canonical);
  return out;
}

std::vector<Passage> indexable_passages(const Corpus &corpus,
                                        std::span<const CompoundLink> links) {
  std::set<std::string> linked;
  for (const CompoundLink &l: links) linked.insert(l.mention.passage_id);
  std::vector<Passage> out;
  for (const Passage &p: corpus.passages())
    if (p.reaction_id || !p.compound_names.empty() || linked.count(p.passage_id))
      out.push_back(p);
  return out;
}

}  // namespace chemsearch
