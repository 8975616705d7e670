//
// Project chemsearch - Copyright 2026 The chemsearch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMSEARCH_SERVICE_H_
#define CHEMSEARCH_SERVICE_H_

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "chemsearch/search.h"

namespace httplib {
class Server;
}

namespace chemsearch {

inline constexpr int kApiVersion = 1;

struct ApiResponse {
  int status = 200;
  nlohmann::ordered_json body;
};

// Error body: {"api_version", "status", "code", "message", ...}.
ApiResponse api_error(int status, std::string_view code, const std::string &message);

using QueryParams = std::map<std::string, std::string>;

// Response builders, shared by the HTTP handlers and the CLI.
nlohmann::ordered_json stats_json(const SearchEngine &engine);
nlohmann::ordered_json search_response_json(const SearchEngine &engine,
                                            const MultimodalQuery &query,
                                            const std::vector<SearchResult> &results);
nlohmann::ordered_json similarity_response_json(const std::string &query_smiles, int k,
                                                const std::vector<StructureHit> &hits);
nlohmann::ordered_json reaction_json(const SearchEngine &engine, const ReactionRecord &rx);
nlohmann::ordered_json passage_json(const SearchEngine &engine, const Passage &p);

struct ServiceOptions {
  std::optional<std::filesystem::path> ui_dir;   // served under /assets/
  std::optional<std::filesystem::path> pdf_dir;  // served under /assets/pdfs/
};

/// Request handlers over one shared engine snapshot. Handlers never throw;
/// failures come back as error responses.
class Service {
public:
  explicit Service(std::shared_ptr<const SearchEngine> engine, ServiceOptions options = {});

  std::shared_ptr<const SearchEngine> engine() const;
  // Swaps the snapshot; requests already running keep the old one.
  void reload(std::shared_ptr<const SearchEngine> engine);

  ApiResponse search(const QueryParams &params) const;
  ApiResponse document(std::string_view doc_id) const;
  ApiResponse document_reactions(std::string_view doc_id) const;
  ApiResponse passage(std::string_view passage_id) const;
  ApiResponse stats() const;

  // Registers the /api routes and static mounts.
  void mount(httplib::Server &server) const;

private:
  mutable std::mutex mu_;
  std::shared_ptr<const SearchEngine> engine_;
  ServiceOptions options_;
};

}  // namespace chemsearch

#endif  // CHEMSEARCH_SERVICE_H_
