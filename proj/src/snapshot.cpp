//
// Project chemsearch - Copyright 2026 The chemsearch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "chemsearch/snapshot.h"

#include <fstream>
#include <iterator>
#include <map>
#include <utility>

#include <json.hpp>

namespace chemsearch {
namespace {
using json = nlohmann::json;

constexpr const char *kFormatName = "chemsearch-snapshot";

json encode_config(const EngineConfig &c) {
  return { { "mention_patterns", c.linker.patterns },
           { "text_threshold", c.linker.text_threshold },
           { "structure_threshold", c.linker.structure_threshold },
           { "fingerprint_radius", c.linker.fingerprint_radius },
           { "fingerprint_width", c.linker.fingerprint_width },
           { "bm25", { { "k1", c.bm25.k1 }, { "b", c.bm25.b } } },
           { "iupac_vocabulary", c.iupac_vocabulary } };
}

EngineConfig decode_config(const json &j) {
  EngineConfig c;
  c.linker.patterns = j.at("mention_patterns").get<std::vector<std::string>>();
  c.linker.text_threshold = j.at("text_threshold").get<double>();
  c.linker.structure_threshold = j.at("structure_threshold").get<double>();
  c.linker.fingerprint_radius = j.at("fingerprint_radius").get<int>();
  c.linker.fingerprint_width = j.at("fingerprint_width").get<int>();
  c.bm25.k1 = j.at("bm25").at("k1").get<double>();
  c.bm25.b = j.at("bm25").at("b").get<double>();
  c.iupac_vocabulary = j.at("iupac_vocabulary").get<std::vector<std::string>>();
  return c;
}

json encode_link(const CompoundLink &l) {
  json j = { { "passage_id", l.mention.passage_id },
             { "start", l.mention.start },
             { "end", l.mention.end },
             { "surface", l.mention.surface },
             { "diagram_id", l.diagram_id },
             { "method", link_method_name(l.method) },
             { "score", l.score } };
  if (l.mention.label_token) j["label_token"] = *l.mention.label_token;
  if (l.mention.resolved_smiles) j["resolved_smiles"] = *l.mention.resolved_smiles;
  return j;
}

CompoundLink decode_link(const json &j) {
  CompoundLink l;
  l.mention.passage_id = j.at("passage_id").get<std::string>();
  l.mention.start = j.at("start").get<std::size_t>();
  l.mention.end = j.at("end").get<std::size_t>();
  l.mention.surface = j.at("surface").get<std::string>();
  if (j.contains("label_token")) l.mention.label_token = j["label_token"].get<std::string>();
  if (j.contains("resolved_smiles"))
    l.mention.resolved_smiles = j["resolved_smiles"].get<std::string>();
  l.diagram_id = j.at("diagram_id").get<std::string>();
  const std::string method = j.at("method").get<std::string>();
  if (method == "text")
    l.method = LinkMethod::kText;
  else if (method == "structure")
    l.method = LinkMethod::kStructure;
  else
    throw SnapshotError("unknown link method '" + method + "'");
  l.score = j.at("score").get<double>();
  return l;
}

json encode_index(const TextIndex &idx) {
  json postings = json::object();
  for (const auto &[term, list]: idx.postings()) {
    json arr = json::array();
    for (const Posting &p: list) arr.push_back({ p.ordinal, p.tf });
    postings[term] = std::move(arr);
  }
  return { { "lengths", idx.lengths() }, { "postings", std::move(postings) } };
}

TextIndex decode_index(const json &j, const Bm25Params &params) {
  std::map<std::string, std::vector<Posting>> postings;
  for (auto it = j.at("postings").begin(); it != j.at("postings").end(); ++it) {
    auto &list = postings[it.key()];
    for (const json &p: it.value()) list.push_back({ p.at(0).get<int>(), p.at(1).get<int>() });
  }
  auto lengths = j.at("lengths").get<std::vector<int>>();
  if (lengths.empty()) return TextIndex {};
  return TextIndex::from_parts(std::move(postings), std::move(lengths), params);
}
}  // namespace

std::vector<std::uint8_t> encode_snapshot(const SearchEngine &engine) {
  SerializedCorpus sc = serialize_corpus(engine.corpus());
  json links = json::array();
  for (const CompoundLink &l: engine.links()) links.push_back(encode_link(l));
  json root = { { "format", kFormatName },
                { "corpus",
                  { { "documents", sc.documents },
                    { "passages", sc.passages },
                    { "reactions", sc.reactions },
                    { "diagrams", sc.diagrams },
                    { "names", sc.names } } },
                { "config", encode_config(engine.config()) },
                { "links", std::move(links) },
                { "text_index", encode_index(engine.text_index()) } };
  std::vector<std::uint8_t> out { kSnapshotVersion };
  json::to_cbor(root, out);
  return out;
}

std::shared_ptr<const SearchEngine> decode_snapshot(std::span<const std::uint8_t> bytes) {
  if (bytes.empty()) throw SnapshotError("empty snapshot");
  if (bytes[0] != kSnapshotVersion)
    throw SnapshotError("unsupported snapshot version " + std::to_string(bytes[0])
                        + " (expected " + std::to_string(kSnapshotVersion) + ")");
  json root;
  try {
    root = json::from_cbor(bytes.begin() + 1, bytes.end());
  } catch (const json::exception &e) {
    throw SnapshotError(std::string("corrupt snapshot: ") + e.what());
  }
  try {
    if (root.at("format") != kFormatName) throw SnapshotError("not a chemsearch snapshot");
    const json &c = root.at("corpus");
    Corpus corpus = Corpus::build(parse_corpus_records(
        c.at("documents").get<std::string>(), c.at("passages").get<std::string>(),
        c.at("reactions").get<std::string>(), c.at("diagrams").get<std::string>(),
        c.at("names").get<std::string>()));
    EngineConfig config = decode_config(root.at("config"));
    std::vector<CompoundLink> links;
    for (const json &l: root.at("links")) links.push_back(decode_link(l));
    TextIndex index = decode_index(root.at("text_index"), config.bm25);
    return SearchEngine::from_parts(std::move(corpus), std::move(config), std::move(links),
                                    std::move(index));
  } catch (const json::exception &e) {
    throw SnapshotError(std::string("malformed snapshot: ") + e.what());
  } catch (const std::invalid_argument &e) {
    throw SnapshotError(std::string("inconsistent snapshot: ") + e.what());
  }
}

void save_snapshot(const SearchEngine &engine, const std::filesystem::path &path) {
  std::vector<std::uint8_t> bytes = encode_snapshot(engine);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SnapshotError("cannot write " + path.string());
  out.write(reinterpret_cast<const char *>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw SnapshotError("short write to " + path.string());
}

std::shared_ptr<const SearchEngine> load_snapshot(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SnapshotError("cannot open snapshot " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_snapshot(bytes);
}

}  // namespace chemsearch
