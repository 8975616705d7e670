//
// Project chemsearch - Copyright 2026 The chemsearch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "chemsearch/service.h"

#include <algorithm>
#include <charconv>
#include <set>
#include <utility>
#include <vector>

#include <httplib.h>

namespace chemsearch {
namespace {
using ojson = nlohmann::ordered_json;

ojson box_json(const BoundingBox &b) {
  return { { "x0", b.x0 }, { "y0", b.y0 }, { "x1", b.x1 }, { "y1", b.y1 } };
}

ojson boxes_json(const std::vector<BoundingBox> &boxes) {
  ojson arr = ojson::array();
  for (const auto &b: boxes) arr.push_back(box_json(b));
  return arr;
}

ojson entity_json(const ChemEntity &e) {
  ojson j = ojson::object();
  j["name"] = e.name ? ojson(*e.name) : ojson(nullptr);
  j["smiles"] = e.smiles ? ojson(*e.smiles) : ojson(nullptr);
  j["canonical"] = e.canonical ? ojson(*e.canonical) : ojson(nullptr);
  return j;
}

ojson entities_json(const std::vector<ChemEntity> &es) {
  ojson arr = ojson::array();
  for (const auto &e: es) arr.push_back(entity_json(e));
  return arr;
}

ojson diagram_json(const Diagram &d) {
  return { { "diagram_id", d.diagram_id }, { "doc_id", d.doc_id },
           { "page", d.page },             { "box", box_json(d.box) },
           { "label", d.label ? ojson(*d.label) : ojson(nullptr) },
           { "smiles", d.smiles },         { "canonical", d.canonical } };
}

ojson link_json(const SearchEngine &engine, const CompoundLink &l) {
  ojson j = { { "start", l.mention.start },
              { "end", l.mention.end },
              { "surface", l.mention.surface },
              { "label_token", l.mention.label_token ? ojson(*l.mention.label_token) : ojson(nullptr) },
              { "resolved_smiles",
                l.mention.resolved_smiles ? ojson(*l.mention.resolved_smiles) : ojson(nullptr) },
              { "diagram_id", l.diagram_id },
              { "method", link_method_name(l.method) },
              { "score", l.score } };
  if (const Diagram *d = engine.corpus().find_diagram(l.diagram_id)) j["diagram"] = diagram_json(*d);
  return j;
}

ojson query_json(const MultimodalQuery &q) {
  return { { "text", q.text ? ojson(*q.text) : ojson(nullptr) },
           { "smiles", q.smiles },
           { "reaction_smarts", q.reaction ? ojson(q.reaction->to_string()) : ojson(nullptr) },
           { "k", q.k },
           { "compounds", SearchEngine::query_compounds(q) } };
}

std::optional<std::string> param(const QueryParams &params, const char *key) {
  auto it = params.find(key);
  if (it == params.end()) return std::nullopt;
  return it->second;
}

template <class Fn>
ApiResponse guarded(Fn &&fn) {
  try {
    return fn();
  } catch (const QueryError &e) {
    ApiResponse r = api_error(400, query_error_name(e.kind()), e.what());
    if (!e.component().empty()) r.body["component"] = e.component();
    if (e.position() >= 0) r.body["position"] = e.position();
    if (e.cause()) r.body["cause"] = smiles_error_name(*e.cause());
    return r;
  } catch (const UnknownDocument &e) {
    return api_error(404, "UnknownDocument", e.what());
  } catch (const std::exception &e) {
    return api_error(500, "InternalError", e.what());
  }
}

void send(httplib::Response &res, const ApiResponse &r) {
  res.status = r.status;
  res.set_content(r.body.dump(), "application/json; charset=utf-8");
}
}  // namespace

ApiResponse api_error(int status, std::string_view code, const std::string &message) {
  ApiResponse r;
  r.status = status;
  r.body = { { "api_version", kApiVersion },
             { "status", status },
             { "code", code },
             { "message", message } };
  return r;
}

ojson stats_json(const SearchEngine &engine) {
  const Corpus &c = engine.corpus();
  return { { "api_version", kApiVersion },
           { "documents", c.documents().size() },
           { "passages_extracted", c.passages().size() },
           { "passages_indexed", engine.indexed_passages().size() },
           { "unique_compounds", c.compounds().size() },
           { "reactions", c.reactions().size() } };
}

ojson similarity_response_json(const std::string &query_smiles, int k,
                               const std::vector<StructureHit> &hits) {
  ojson list = ojson::array();
  for (const StructureHit &h: hits) {
    ojson sources = ojson::array();
    for (const CompoundSource &s: h.sources)
      sources.push_back({ { "kind", compound_source_name(s.kind) }, { "id", s.id } });
    list.push_back({ { "canonical", h.canonical },
                     { "score", h.score.value() },
                     { "mode", match_mode_name(h.mode) },
                     { "sources", std::move(sources) } });
  }
  return { { "api_version", kApiVersion },
           { "query", { { "smiles", query_smiles }, { "k", k } } },
           { "hits", std::move(list) } };
}

ojson reaction_json(const SearchEngine &engine, const ReactionRecord &rx) {
  const Passage *p = engine.corpus().find_passage(rx.passage_id);
  return { { "reaction_id", rx.reaction_id },
           { "passage_id", rx.passage_id },
           { "doc_id", p ? ojson(p->doc_id) : ojson(nullptr) },
           { "page", p ? ojson(p->page) : ojson(nullptr) },
           { "boxes", p ? boxes_json(p->boxes) : ojson::array() },
           { "reactants", entities_json(rx.reactants) },
           { "products", entities_json(rx.products) },
           { "catalysts", entities_json(rx.catalysts) },
           { "solvents", entities_json(rx.solvents) },
           { "temperature", rx.temperature ? ojson(*rx.temperature) : ojson(nullptr) },
           { "yield_pct", rx.yield_pct ? ojson(*rx.yield_pct) : ojson(nullptr) } };
}

ojson passage_json(const SearchEngine &engine, const Passage &p) {
  const auto &indexed = engine.indexed_passages();
  ojson links = ojson::array();
  for (const CompoundLink &l: engine.links_of_passage(p.passage_id))
    links.push_back(link_json(engine, l));
  ojson j = { { "api_version", kApiVersion },
              { "passage_id", p.passage_id },
              { "doc_id", p.doc_id },
              { "kind", passage_kind_name(p.kind) },
              { "text", p.text },
              { "page", p.page },
              { "boxes", boxes_json(p.boxes) },
              { "compound_names", p.compound_names },
              { "compounds", engine.passage_compounds(p.passage_id) },
              { "indexed", std::binary_search(indexed.begin(), indexed.end(), p.passage_id) },
              { "links", std::move(links) } };
  if (p.reaction_id)
    if (const ReactionRecord *rx = engine.corpus().find_reaction(*p.reaction_id))
      j["reaction"] = reaction_json(engine, *rx);
  return j;
}

ojson search_response_json(const SearchEngine &engine, const MultimodalQuery &query,
                           const std::vector<SearchResult> &results) {
  const Corpus &c = engine.corpus();
  // Documents in order of their best-ranked passage.
  std::vector<std::string> doc_order;
  for (const SearchResult &r: results)
    if (std::find(doc_order.begin(), doc_order.end(), r.doc_id) == doc_order.end())
      doc_order.push_back(r.doc_id);

  std::vector<std::set<std::string>> candidate_sets;
  std::vector<std::string> qcs = SearchEngine::query_compounds(query);
  for (const std::string &qc: qcs) {
    std::set<std::string> s;
    for (const StructureHit &h: engine.search_substructure(qc)) s.insert(h.canonical);
    candidate_sets.push_back(std::move(s));
  }

  ojson groups = ojson::array();
  for (const std::string &doc_id: doc_order) {
    const Document *doc = c.find_document(doc_id);
    ojson items = ojson::array();
    for (const SearchResult &r: results) {
      if (r.doc_id != doc_id) continue;
      const Passage *p = c.find_passage(r.passage_id);
      std::vector<CompoundLink> links = engine.links_of_passage(r.passage_id);

      ojson matched = ojson::array();
      for (const std::string &compound: engine.passage_compounds(r.passage_id)) {
        ojson queries = ojson::array();
        for (std::size_t i = 0; i < qcs.size(); ++i)
          if (candidate_sets[i].count(compound)) queries.push_back(qcs[i]);
        if (queries.empty()) continue;
        std::set<std::string> diagram_ids;
        for (const CompoundLink &l: links) {
          const Diagram *d = c.find_diagram(l.diagram_id);
          if (d && d->canonical == compound) diagram_ids.insert(d->diagram_id);
        }
        matched.push_back({ { "canonical", compound },
                            { "query_smiles", std::move(queries) },
                            { "diagram_ids", std::vector<std::string>(diagram_ids.begin(),
                                                                      diagram_ids.end()) } });
      }

      ojson highlights = ojson::array();
      for (const TextSpan &s: r.highlights) highlights.push_back({ { "start", s.start }, { "end", s.end } });
      ojson reactions = ojson::array();
      for (const std::string &rid: r.reactions)
        if (const ReactionRecord *rx = c.find_reaction(rid)) reactions.push_back(reaction_json(engine, *rx));

      items.push_back({ { "rank", r.rank },
                        { "passage_id", r.passage_id },
                        { "kind", passage_kind_name(p->kind) },
                        { "page", p->page },
                        { "boxes", boxes_json(p->boxes) },
                        { "text", p->text },
                        { "text_score", r.text_score },
                        { "text_score_normalized", r.text_score_normalized },
                        { "matched_smiles", r.matched_smiles },
                        { "matched_compounds", std::move(matched) },
                        { "highlights", std::move(highlights) },
                        { "reactions", std::move(reactions) } });
    }
    groups.push_back({ { "doc_id", doc_id },
                       { "title", doc ? ojson(doc->title) : ojson(nullptr) },
                       { "results", std::move(items) } });
  }
  return { { "api_version", kApiVersion },
           { "query", query_json(query) },
           { "total", results.size() },
           { "groups", std::move(groups) } };
}

Service::Service(std::shared_ptr<const SearchEngine> engine, ServiceOptions options)
    : engine_(std::move(engine)), options_(std::move(options)) { }

std::shared_ptr<const SearchEngine> Service::engine() const {
  std::lock_guard lock(mu_);
  return engine_;
}

void Service::reload(std::shared_ptr<const SearchEngine> engine) {
  std::lock_guard lock(mu_);
  engine_ = std::move(engine);
}

ApiResponse Service::search(const QueryParams &params) const {
  return guarded([&] {
    auto engine = this->engine();
    int k = kDefaultResultCount;
    if (auto ks = param(params, "k")) {
      const char *first = ks->data(), *last = ks->data() + ks->size();
      auto [ptr, ec] = std::from_chars(first, last, k);
      if (ec != std::errc() || ptr != last || k < 1)
        return api_error(400, "InvalidK", "k must be a positive integer, got '" + *ks + "'");
    }
    MultimodalQuery q = parse_query(param(params, "text"), param(params, "smiles"),
                                    param(params, "reaction_smarts"), k);
    return ApiResponse { 200, search_response_json(*engine, q, engine->search(q)) };
  });
}

ApiResponse Service::document(std::string_view doc_id) const {
  return guarded([&] {
    auto engine = this->engine();
    const Corpus &c = engine->corpus();
    const Document *d = c.find_document(doc_id);
    if (!d) throw UnknownDocument(std::string(doc_id));
    ojson passages = ojson::array();
    for (const Passage &p: c.passages())
      if (p.doc_id == doc_id)
        passages.push_back({ { "passage_id", p.passage_id },
                             { "kind", passage_kind_name(p.kind) },
                             { "page", p.page },
                             { "boxes", boxes_json(p.boxes) } });
    ojson diagrams = ojson::array();
    for (const Diagram *g: c.diagrams_of_document(doc_id)) diagrams.push_back(diagram_json(*g));
    ojson body = { { "api_version", kApiVersion },
                   { "doc_id", d->doc_id },
                   { "title", d->title },
                   { "source_path", d->source_path ? ojson(*d->source_path) : ojson(nullptr) },
                   { "num_pages", d->num_pages },
                   { "passages", std::move(passages) },
                   { "diagrams", std::move(diagrams) } };
    return ApiResponse { 200, std::move(body) };
  });
}

ApiResponse Service::document_reactions(std::string_view doc_id) const {
  return guarded([&] {
    auto engine = this->engine();
    ojson list = ojson::array();
    for (const ReactionEntry &e: engine->list_reactions(doc_id))
      list.push_back(reaction_json(*engine, *e.reaction));
    ojson body = { { "api_version", kApiVersion },
                   { "doc_id", doc_id },
                   { "reactions", std::move(list) } };
    return ApiResponse { 200, std::move(body) };
  });
}

ApiResponse Service::passage(std::string_view passage_id) const {
  return guarded([&] {
    auto engine = this->engine();
    const Passage *p = engine->corpus().find_passage(passage_id);
    if (!p) return api_error(404, "UnknownPassage", "no passage '" + std::string(passage_id) + "'");
    return ApiResponse { 200, passage_json(*engine, *p) };
  });
}

ApiResponse Service::stats() const {
  return guarded([&] { return ApiResponse { 200, stats_json(*engine()) }; });
}

void Service::mount(httplib::Server &server) const {
  server.Get("/api/search", [this](const httplib::Request &req, httplib::Response &res) {
    QueryParams params;
    for (const auto &[key, value]: req.params) params.emplace(key, value);
    send(res, search(params));
  });
  server.Get(R"(/api/documents/([^/]+)/reactions)",
             [this](const httplib::Request &req, httplib::Response &res) {
               send(res, document_reactions(req.matches[1].str()));
             });
  server.Get(R"(/api/documents/([^/]+))", [this](const httplib::Request &req, httplib::Response &res) {
    send(res, document(req.matches[1].str()));
  });
  server.Get(R"(/api/passages/([^/]+))", [this](const httplib::Request &req, httplib::Response &res) {
    send(res, passage(req.matches[1].str()));
  });
  server.Get("/api/stats", [this](const httplib::Request &, httplib::Response &res) {
    send(res, stats());
  });
  if (options_.pdf_dir) server.set_mount_point("/assets/pdfs", options_.pdf_dir->string());
  if (options_.ui_dir) {
    server.set_mount_point("/assets", options_.ui_dir->string());
    server.Get("/", [](const httplib::Request &, httplib::Response &res) {
      res.set_redirect("/assets/index.html");
    });
  }
  server.set_error_handler([](const httplib::Request &req, httplib::Response &res) {
    if (req.path.rfind("/api/", 0) == 0 && res.body.empty())
      send(res, api_error(404, "NotFound", "no route for " + req.path));
  });
}

}  // namespace chemsearch
