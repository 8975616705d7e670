//
// Project chemsearch - Copyright 2026 The chemsearch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <httplib.h>

#include "chemsearch/corpus.h"
#include "chemsearch/search.h"
#include "chemsearch/service.h"
#include "chemsearch/snapshot.h"

namespace {
using namespace chemsearch;

constexpr int kExitOk = 0;
constexpr int kExitQuery = 1;
constexpr int kExitCorpus = 2;

std::atomic<bool> g_stop { false };
std::atomic<bool> g_reload { false };

extern "C" void on_signal(int sig) {
  if (sig == SIGHUP)
    g_reload = true;
  else
    g_stop = true;
}

struct BuildArgs {
  std::string corpus;
  std::string out;
  std::string patterns;
  std::string vocabulary;
  double text_threshold = kTextLinkThreshold;
  double structure_threshold = kStructureLinkThreshold;
  int radius = kMorganRadius;
  int width = kFingerprintWidth;
  double k1 = Bm25Params {}.k1;
  double b = Bm25Params {}.b;
};

struct SearchArgs {
  std::string snapshot;
  std::optional<std::string> text;
  std::optional<std::string> smiles;
  std::optional<std::string> reaction;
  int k = kDefaultResultCount;
  std::string format = "json";
};

struct ServeArgs {
  std::string snapshot;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string ui;
  std::string pdfs;
};

int run_build(const BuildArgs &a) {
  EngineConfig config;
  if (!a.patterns.empty()) config.linker.patterns = LinkerConfig::load_patterns(a.patterns);
  if (!a.vocabulary.empty())
    config.iupac_vocabulary = IupacTokenizer::from_file(a.vocabulary).vocabulary();
  config.linker.text_threshold = a.text_threshold;
  config.linker.structure_threshold = a.structure_threshold;
  config.linker.fingerprint_radius = a.radius;
  config.linker.fingerprint_width = a.width;
  config.bm25 = { a.k1, a.b };
  auto engine = SearchEngine::build(load_corpus(a.corpus), config);
  save_snapshot(*engine, a.out);
  auto stats = stats_json(*engine);
  std::cerr << "indexed " << stats["passages_indexed"] << " of " << stats["passages_extracted"]
            << " passages, " << stats["unique_compounds"] << " compounds, "
            << engine->links().size() << " links -> " << a.out << "\n";
  return kExitOk;
}

std::string shorten(const std::string &s, std::size_t n) {
  return s.size() <= n ? s : s.substr(0, n - 3) + "...";
}

int run_search(const SearchArgs &a) {
  auto engine = load_snapshot(a.snapshot);
  MultimodalQuery q = parse_query(a.text, a.smiles, a.reaction, a.k);
  auto results = engine->search(q);
  if (a.format == "table") {
    std::cout << std::left << std::setw(5) << "rank" << std::setw(10) << "passage" << std::setw(16)
              << "document" << std::setw(8) << "smiles" << std::setw(10) << "bm25" << "text\n";
    for (const SearchResult &r: results) {
      std::ostringstream score;
      score << std::fixed << std::setprecision(4) << r.text_score;
      std::cout << std::setw(5) << r.rank << std::setw(10) << r.passage_id << std::setw(16)
                << r.doc_id << std::setw(8) << r.matched_smiles.size() << std::setw(10)
                << score.str() << shorten(engine->corpus().find_passage(r.passage_id)->text, 60)
                << "\n";
    }
  } else {
    std::cout << search_response_json(*engine, q, results).dump(2) << "\n";
  }
  return kExitOk;
}

int run_similar(const std::string &snapshot, const std::string &smiles, int k) {
  auto engine = load_snapshot(snapshot);
  std::cout << similarity_response_json(smiles, k, engine->search_similarity(smiles, k)).dump(2)
            << "\n";
  return kExitOk;
}

int run_stats(const std::string &snapshot) {
  auto engine = load_snapshot(snapshot);
  std::cout << stats_json(*engine).dump(2) << "\n";
  return kExitOk;
}

int run_serve(const ServeArgs &a) {
  ServiceOptions options;
  if (!a.ui.empty()) options.ui_dir = a.ui;
  if (!a.pdfs.empty()) options.pdf_dir = a.pdfs;
  Service service(load_snapshot(a.snapshot), options);
  httplib::Server server;
  service.mount(server);
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::signal(SIGHUP, on_signal);

  std::thread watcher([&] {
    while (!g_stop) {
      std::this_thread::sleep_for(std::chrono::milliseconds(200));
      if (g_reload.exchange(false)) {
        try {
          service.reload(load_snapshot(a.snapshot));
          std::cerr << "reloaded " << a.snapshot << "\n";
        } catch (const std::exception &e) {
          std::cerr << "reload failed, keeping the current snapshot: " << e.what() << "\n";
        }
      }
    }
    server.stop();
  });
  std::cerr << "serving on http://" << a.host << ":" << a.port << "\n";
  bool ok = server.listen(a.host, a.port);
  g_stop = true;
  watcher.join();
  if (!ok) {
    std::cerr << "error: cannot listen on " << a.host << ":" << a.port << "\n";
    return kExitQuery;
  }
  return kExitOk;
}
}  // namespace

int main(int argc, char **argv) {
  CLI::App app { "Multimodal chemistry passage search" };
  app.require_subcommand(1);

  BuildArgs build;
  auto *index = app.add_subcommand("index", "Index management");
  index->require_subcommand(1);
  auto *index_build = index->add_subcommand("build", "Link and index a corpus directory");
  index_build->add_option("--corpus", build.corpus, "Ingestion directory")->required();
  index_build->add_option("--out", build.out, "Snapshot file to write")->required();
  index_build->add_option("--patterns", build.patterns, "Mention pattern file");
  index_build->add_option("--vocabulary", build.vocabulary, "IUPAC fragment vocabulary file");
  index_build->add_option("--text-threshold", build.text_threshold)->capture_default_str();
  index_build->add_option("--structure-threshold", build.structure_threshold)->capture_default_str();
  index_build->add_option("--radius", build.radius, "Morgan radius")->capture_default_str();
  index_build->add_option("--width", build.width, "Fingerprint bits")->capture_default_str();
  index_build->add_option("--k1", build.k1)->capture_default_str();
  index_build->add_option("--b", build.b)->capture_default_str();

  SearchArgs search;
  auto *search_cmd = app.add_subcommand("search", "Query a snapshot");
  search_cmd->add_option("--snapshot", search.snapshot)->required();
  search_cmd->add_option("--text", search.text, "Free-text query");
  search_cmd->add_option("--smiles", search.smiles, "Comma-separated SMILES");
  search_cmd->add_option("--reaction", search.reaction, "Reaction SMARTS");
  search_cmd->add_option("-k", search.k, "Result count")->capture_default_str();
  search_cmd->add_option("--format", search.format)
      ->check(CLI::IsMember({ "json", "table" }))
      ->capture_default_str();

  std::string similar_snapshot, similar_smiles;
  int similar_k = kDefaultResultCount;
  auto *similar = app.add_subcommand("similar", "Rank corpus compounds by Tanimoto similarity");
  similar->add_option("--snapshot", similar_snapshot)->required();
  similar->add_option("--smiles", similar_smiles, "Query SMILES")->required();
  similar->add_option("-k", similar_k, "Result count")->capture_default_str();

  std::string stats_snapshot;
  auto *stats = app.add_subcommand("stats", "Corpus counters");
  stats->add_option("--snapshot", stats_snapshot)->required();

  ServeArgs serve;
  auto *serve_cmd = app.add_subcommand("serve", "Run the HTTP API");
  serve_cmd->add_option("--snapshot", serve.snapshot)->required();
  serve_cmd->add_option("--port", serve.port)->capture_default_str();
  serve_cmd->add_option("--host", serve.host)->capture_default_str();
  serve_cmd->add_option("--ui", serve.ui, "Built UI bundle served under /assets");
  serve_cmd->add_option("--pdfs", serve.pdfs, "Source PDFs served under /assets/pdfs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitQuery;
  }

  try {
    if (*index_build) return run_build(build);
    if (*search_cmd) return run_search(search);
    if (*similar) return run_similar(similar_snapshot, similar_smiles, similar_k);
    if (*stats) return run_stats(stats_snapshot);
    if (*serve_cmd) return run_serve(serve);
  } catch (const QueryError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitQuery;
  } catch (const CorpusError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCorpus;
  } catch (const SnapshotError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCorpus;
  } catch (const EmptyIndex &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCorpus;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitQuery;
  }
  return kExitOk;
}
