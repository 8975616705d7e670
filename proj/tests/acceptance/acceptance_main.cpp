//
// Project chemsearch - Copyright 2026 The chemsearch Authors.
// SPDX-License-Identifier: Apache-2.0
//

// Acceptance gate: one [PASS]/[FAIL] line per criterion. Exit status is the
// number of failed criteria (capped at 1).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "chemsearch/corpus.h"
#include "chemsearch/fingerprint.h"
#include "chemsearch/linker.h"
#include "chemsearch/molgraph.h"
#include "chemsearch/querylang.h"
#include "chemsearch/search.h"
#include "chemsearch/service.h"
#include "chemsearch/snapshot.h"
#include "chemsearch/substruct.h"
#include "chemsearch/textindex.h"
#include "cli_runner.h"
#include "oracles.h"
#include "test_common.h"

namespace chemsearch {
namespace {
using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failures; the first few messages end up in the detail line.
class Check {
public:
  void expect(bool ok, const std::string &what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) msgs_ += (msgs_.empty() ? "" : "; ") + what;
  }
  Outcome outcome(const std::string &summary) const {
    std::string d = summary + ", " + std::to_string(checks_) + " checks, "
                    + std::to_string(failures_) + " failures";
    if (!msgs_.empty()) d += " (" + msgs_ + ")";
    return { failures_ == 0, d };
  }

private:
  int checks_ = 0;
  int failures_ = 0;
  std::string msgs_;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int prec = 4) {
  std::ostringstream ss;
  ss.precision(prec);
  ss << std::fixed << v;
  return ss.str();
}

std::vector<MolecularGraph> fixture_graphs() {
  std::vector<MolecularGraph> out;
  for (const auto &m: testing::fixture_molecules()) out.push_back(parse_smiles(m.smiles));
  return out;
}

int heavy_atoms(const MolecularGraph &g) {
  int n = 0;
  for (int i = 0; i < g.num_atoms(); ++i) n += g.atom(i).element != "H";
  return n;
}

// Same atom and bond counts plus mutual embedding means isomorphic.
bool isomorphic(const MolecularGraph &a, const MolecularGraph &b) {
  return a.num_atoms() == b.num_atoms() && a.num_bonds() == b.num_bonds()
         && has_substructure(a, b) && has_substructure(b, a);
}

Outcome smiles_round_trip() {
  Check c;
  auto mols = testing::fixture_molecules();
  for (const auto &m: mols) {
    MolecularGraph g = parse_smiles(m.smiles);
    std::string canon = canonical_smiles(g);
    MolecularGraph back = parse_smiles(canon);
    c.expect(isomorphic(g, back), m.name + " not isomorphic after round trip");
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      std::string r = randomized_smiles(g, seed);
      c.expect(canonical_smiles(parse_smiles(r)) == canon, m.name + " rendering " + r);
    }
  }
  return c.outcome(std::to_string(mols.size()) + " molecules x 50 renderings");
}

Outcome fingerprint_suite() {
  auto t0 = Clock::now();
  Check c;
  auto mols = fixture_graphs();
  std::vector<Fingerprint> fps;
  for (const auto &g: mols) fps.push_back(morgan_fingerprint(g));
  for (std::size_t i = 0; i < mols.size(); ++i) {
    c.expect(tanimoto(fps[i], fps[i]).value() == 1.0, "self similarity");
    for (int seed = 0; seed < 10; ++seed)
      c.expect(morgan_fingerprint(parse_smiles(randomized_smiles(mols[i], seed))) == fps[i],
               "order dependence");
    for (std::size_t j = 0; j < mols.size(); ++j) {
      double ab = tanimoto(fps[i], fps[j]).value();
      double ba = tanimoto(fps[j], fps[i]).value();
      c.expect(ab == ba, "asymmetric");
      c.expect(ab >= 0.0 && ab <= 1.0, "out of range");
    }
  }
  double secs = seconds_since(t0);
  c.expect(secs < 5.0, "runtime " + fmt(secs, 2) + " s");
  return c.outcome(std::to_string(mols.size() * mols.size()) + " pairs in " + fmt(secs, 2)
                   + " s");
}

Outcome substructure_oracle() {
  Check c;
  auto mols = fixture_graphs();
  int pairs = 0;
  for (const auto &target: mols) {
    if (heavy_atoms(target) > 8) continue;
    for (const auto &pattern: mols) {
      bool expected = testing::BruteForce(pattern, target).count() > 0;
      c.expect(has_substructure(pattern, target) == expected,
               canonical_smiles(pattern) + " in " + canonical_smiles(target));
      ++pairs;
    }
  }
  MolecularGraph benzene = parse_smiles("c1ccccc1"), toluene = parse_smiles("Cc1ccccc1");
  c.expect(has_substructure(benzene, toluene), "benzene in toluene");
  c.expect(!has_substructure(toluene, benzene), "toluene not in benzene");
  return c.outcome(std::to_string(pairs) + " pairs");
}

Outcome bm25_exactness() {
  Check c;
  TextIndex idx = TextIndex::build({ { "a", "b" }, { "a" } });
  auto hits = idx.search(std::vector<std::string> { "b" }, 10);
  double score = hits.empty() ? -1 : hits[0].score;
  c.expect(hits.size() == 1 && hits[0].ordinal == 0, "hit set");
  c.expect(std::abs(score - 0.6100) <= 1e-4, "score " + fmt(score, 6));
  std::mt19937 rng(20260101);
  for (int i = 0; i < 1000; ++i) {
    int n = std::uniform_int_distribution<int>(1, 500)(rng);
    int df = std::uniform_int_distribution<int>(1, n)(rng);
    int tf = std::uniform_int_distribution<int>(1, 40)(rng);
    int len = std::max(std::uniform_int_distribution<int>(1, 400)(rng), tf + 1);
    double avg = std::uniform_real_distribution<double>(1.0, 300.0)(rng);
    c.expect(bm25_term_score(tf + 1, len, avg, df, n) >= bm25_term_score(tf, len, avg, df, n),
             "tf monotonicity");
  }
  return c.outcome("example " + fmt(score, 4) + ", 1000 postings");
}

Outcome iupac_example() {
  Check c;
  auto tokens = tokenize_iupac("N-((E)-2-bromo-2-phenylvinyl)-cinnamamide");
  std::string joined;
  for (const auto &t: tokens) joined += (joined.empty() ? "" : " ") + t;
  c.expect(joined == "N E 2 bromo 2 phenyl vinyl cinnamamide", joined);
  return c.outcome("\"" + joined + "\"");
}

Outcome reaction_smarts() {
  Check c;
  ReactionQuery q = parse_reaction_smarts("CC(=O)O.OCC>[H+]>CC(=O)OCC");
  c.expect(q.reactants == std::vector<std::string> { "CC(=O)O", "OCC" }, "reactants");
  c.expect(q.agents == std::vector<std::string> { "[H+]" }, "agents");
  c.expect(q.products == std::vector<std::string> { "CC(=O)OCC" }, "products");
  ReactionQuery p = parse_reaction_smarts(">>C");
  c.expect(p.reactants.empty() && p.agents.empty()
               && p.products == std::vector<std::string> { "C" },
           ">>C");
  for (const char *bad: { "C>C", "CC", "C>>>C" }) {
    bool right = false;
    try {
      parse_reaction_smarts(bad);
    } catch (const QueryError &e) {
      right = e.kind() == QueryErrorKind::kWrongSeparatorCount;
    }
    c.expect(right, std::string("no WrongSeparatorCount for ") + bad);
  }
  return c.outcome("split and separator examples");
}

Outcome linking_gold() {
  Check c;
  Corpus corpus = load_corpus(testing::fixture_corpus_dir());
  auto links = resolve_links(corpus);
  json gold = json::parse(testing::read_file(testing::data_dir() / "fixture_gold_links.json"));
  c.expect(links.size() == gold.size(), "link count " + std::to_string(links.size()));
  for (std::size_t i = 0; i < std::min(links.size(), gold.size()); ++i) {
    const auto &l = links[i];
    const auto &g = gold[i];
    bool same = l.mention.passage_id == g["passage_id"] && l.mention.start == g["start"]
                && l.mention.end == g["end"] && l.mention.surface == g["surface"]
                && l.diagram_id == g["diagram_id"]
                && std::string(link_method_name(l.method)) == g["method"]
                && std::abs(l.score - g["score"].get<double>()) < 1e-9;
    c.expect(same, "link " + std::to_string(i));
  }
  bool structure_case = false, text_exact = false;
  for (const auto &l: links) {
    if (l.method == LinkMethod::kStructure && l.score == 0.9 && l.mention.label_token) {
      auto text = link_by_label(l.mention, corpus.diagrams(),
                                *corpus.find_passage(l.mention.passage_id));
      structure_case = text && std::abs(text->score - 2.0 / 3.0) < 1e-12
                       && text->diagram_id != l.diagram_id;
    }
    text_exact = text_exact || (l.method == LinkMethod::kText && l.score == 1.0);
  }
  c.expect(structure_case, "structure-over-text case");
  c.expect(text_exact, "exact text case");
  return c.outcome(std::to_string(links.size()) + " links");
}

// Random single-document corpus plus an independent match count.
Outcome fusion_dominance() {
  Check c;
  const std::vector<std::pair<std::string, std::string>> pool {
    { "benzene", "c1ccccc1" },  { "toluene", "Cc1ccccc1" }, { "phenol", "Oc1ccccc1" },
    { "ethanol", "CCO" },       { "propanol", "CCCO" },     { "anisole", "COc1ccccc1" },
    { "thiophene", "c1ccsc1" }, { "pyridine", "c1ccncc1" }, { "acetone", "CC(C)=O" },
  };
  const std::vector<std::string> words { "alpha", "beta", "gamma", "delta", "heat", "stir" };
  std::map<std::string, std::string> dict(pool.begin(), pool.end());
  std::mt19937 rng(777);
  for (int trial = 0; trial < 100; ++trial) {
    CorpusRecords rec;
    rec.documents.push_back({ "d", "Doc", std::nullopt, 1 });
    rec.names = dict;
    int n = std::uniform_int_distribution<int>(3, 12)(rng);
    for (int i = 0; i < n; ++i) {
      Passage p;
      char id[16];
      std::snprintf(id, sizeof id, "p%02d", i);
      p.passage_id = id;
      p.doc_id = "d";
      for (int w = std::uniform_int_distribution<int>(1, 8)(rng); w > 0; --w)
        p.text += words[rng() % words.size()] + " ";
      for (int k = std::uniform_int_distribution<int>(0, 3)(rng); k > 0; --k)
        p.compound_names.push_back(pool[rng() % pool.size()].first);
      rec.passages.push_back(p);
    }
    auto engine = SearchEngine::build(Corpus::build(std::move(rec)));

    MultimodalQuery q;
    q.k = 100;
    for (int k = std::uniform_int_distribution<int>(1, 3)(rng); k > 0; --k)
      q.smiles.push_back(pool[rng() % pool.size()].second);
    if (rng() % 2) q.text = words[rng() % words.size()];
    auto results = engine->search(q);

    std::vector<std::size_t> counts;
    for (const auto &r: results) {
      const Passage *p = engine->corpus().find_passage(r.passage_id);
      std::set<std::string> hit;
      for (const auto &s: q.smiles)
        for (const auto &name: p->compound_names)
          if (has_substructure(parse_smiles(s), parse_smiles(dict[name])))
            hit.insert(canonical_smiles(parse_smiles(s)));
      counts.push_back(hit.size());
      c.expect(hit.size() == r.matched_smiles.size(), "match count in trial "
                                                          + std::to_string(trial));
    }
    for (std::size_t i = 1; i < counts.size(); ++i)
      c.expect(counts[i - 1] >= counts[i], "inversion in trial " + std::to_string(trial));

    // Text-only: same order and identical scores as plain BM25.
    MultimodalQuery t;
    t.k = 100;
    t.text = words[rng() % words.size()] + " " + words[rng() % words.size()];
    auto text_results = engine->search(t);
    auto hits = engine->search_text(*t.text, 100);
    bool same = text_results.size() == hits.size();
    for (std::size_t i = 0; same && i < hits.size(); ++i)
      same = text_results[i].passage_id == engine->indexed_passages()[hits[i].ordinal]
             && text_results[i].text_score == hits[i].score;
    c.expect(same, "text-only order in trial " + std::to_string(trial));
  }
  return c.outcome("100 random corpora");
}

Outcome end_to_end(Clock::time_point suite_start) {
  Check c;
  testing::TempDir dir("acceptance");
  std::string snap = (dir.path() / "fixture.snap").string();
  auto built = testing::run_cli(CHEMSEARCH_CLI, { "index", "build", "--corpus",
                                                  testing::fixture_corpus_dir().string(),
                                                  "--out", snap });
  c.expect(built.exit_code == 0, "index build exit " + std::to_string(built.exit_code));

  json queries = json::parse(testing::read_file(testing::data_dir() / "golden/queries.json"));
  for (const auto &q: queries) {
    auto args = q["args"].get<std::vector<std::string>>();
    args.insert(args.begin() + 1, { "--snapshot", snap });
    auto r = testing::run_cli(CHEMSEARCH_CLI, args);
    std::string golden = testing::read_file(testing::data_dir() / "golden"
                                            / (q["name"].get<std::string>() + ".json"));
    c.expect(r.exit_code == 0 && r.out == golden, "golden " + q["name"].get<std::string>());
  }

  Service service(load_snapshot(snap));
  httplib::Server server;
  service.mount(server);
  int port = server.bind_to_any_port("127.0.0.1");
  std::thread thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();
  httplib::Client client("127.0.0.1", port);
  auto res = client.Get("/api/stats");
  server.stop();
  thread.join();
  bool stats_ok = false;
  if (res && res->status == 200) {
    json s = json::parse(res->body);
    stats_ok = s["documents"] == 3 && s["passages_extracted"] == 12
               && s["passages_indexed"] == 10 && s["unique_compounds"] == 9
               && s["reactions"] == 5;
  }
  c.expect(stats_ok, "/api/stats counters");

  double secs = seconds_since(suite_start);
  c.expect(secs < 60.0, "suite time " + fmt(secs, 2) + " s");
  return c.outcome(std::to_string(queries.size()) + " goldens, suite " + fmt(secs, 2) + " s");
}

int run() {
  auto suite_start = Clock::now();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria {
    { "SMILES round trip", smiles_round_trip },
    { "Fingerprint/Tanimoto suite", fingerprint_suite },
    { "Substructure oracle", substructure_oracle },
    { "BM25 exactness and tf monotonicity", bm25_exactness },
    { "IUPAC tokenizer example", iupac_example },
    { "Reaction SMARTS", reaction_smarts },
    { "Linking gold set", linking_gold },
    { "Fusion dominance and text-only order", fusion_dominance },
    { "End-to-end goldens and /api/stats", [&] { return end_to_end(suite_start); } },
  };
  int failed = 0;
  for (const auto &[name, fn]: criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception &e) {
      o = { false, std::string("exception: ") + e.what() };
    }
    failed += !o.pass;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << ": " << o.detail << std::endl;
  }
  std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace chemsearch

int main() {
  return chemsearch::run();
}
