//
// Project chemsearch - Copyright 2026 The chemsearch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "chemsearch/querylang.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

namespace chemsearch {
namespace {
std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char &c: out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> parse_section(std::string_view section,
                                       std::string_view name) {
  std::vector<std::string> out;
  if (trim(section).empty()) return out;
  auto parts = split(section, '.');
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::string component(trim(parts[i]));
    try {
      parse_smiles(component);
    } catch (const SmilesError &e) {
      throw QueryError(QueryErrorKind::kComponentParseError, component,
                       static_cast<int>(i), e.kind(),
                       std::string(name) + " component " + std::to_string(i)
                           + ": " + e.what());
    }
    out.push_back(std::move(component));
  }
  return out;
}

// Name fragments shipped as data/iupac_fragments.txt.
constexpr std::string_view kDefaultFragments[] = {
  // multipliers
  "di", "tri", "tetra", "penta", "hexa", "bis", "tris",
  // halogens
  "fluoro", "chloro", "bromo", "iodo",
  // substituents
  "methyl", "ethyl", "propyl", "butyl", "pentyl", "hexyl", "vinyl", "allyl",
  "phenyl", "benzyl", "aryl", "yl", "tert", "iso", "sec", "cyclo",
  "methoxy", "ethoxy", "phenoxy", "hydroxy", "oxy", "amino", "nitro", "cyano",
  "oxo", "carboxy", "formyl", "acetyl", "carbonyl", "sulfonyl", "sulfanyl",
  "amido", "imino", "hydro",
  // parents and classes
  "methane", "ethane", "propane", "butane", "pentane", "hexane", "benzene",
  "benzo", "thiophene", "thiophen", "furan", "pyridine", "pyridin", "pyrrole",
  "naphthalene", "biphenyl", "boronic", "borane", "pinacol", "ester",
  "amide", "amine", "acid", "ol", "one", "al", "oate", "ate",
};
}  // namespace

std::string_view query_error_name(QueryErrorKind kind) noexcept {
  switch (kind) {
  case QueryErrorKind::kEmptyQuery:
    return "EmptyQuery";
  case QueryErrorKind::kWrongSeparatorCount:
    return "WrongSeparatorCount";
  case QueryErrorKind::kComponentParseError:
    return "ComponentParseError";
  case QueryErrorKind::kInvalidSmiles:
    return "InvalidSmiles";
  case QueryErrorKind::kInvalidK:
    return "InvalidK";
  }
  return "Unknown";
}

QueryError::QueryError(QueryErrorKind kind, std::string message)
    : std::runtime_error(std::move(message)), kind_(kind) { }

QueryError::QueryError(QueryErrorKind kind, std::string component, int position,
                       SmilesErrorKind cause, const std::string &detail)
    : std::runtime_error(detail), kind_(kind), component_(std::move(component)),
      position_(position), cause_(cause) { }

std::vector<std::string> ReactionQuery::all_compounds() const {
  std::vector<std::string> out(reactants);
  out.insert(out.end(), agents.begin(), agents.end());
  out.insert(out.end(), products.begin(), products.end());
  return out;
}

std::string ReactionQuery::to_string() const {
  auto join = [](const std::vector<std::string> &v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i > 0) s += '.';
      s += v[i];
    }
    return s;
  };
  return join(reactants) + ">" + join(agents) + ">" + join(products);
}

ReactionQuery parse_reaction_smarts(std::string_view s) {
  if (trim(s).empty())
    throw QueryError(QueryErrorKind::kEmptyQuery, "empty reaction query");
  auto sections = split(s, '>');
  if (sections.size() != 3)
    throw QueryError(QueryErrorKind::kWrongSeparatorCount,
                     "reaction query needs exactly two '>' separators, found "
                         + std::to_string(sections.size() - 1));
  ReactionQuery q;
  q.reactants = parse_section(sections[0], "reactants");
  q.agents = parse_section(sections[1], "agents");
  q.products = parse_section(sections[2], "products");
  return q;
}

MultimodalQuery parse_query(const std::optional<std::string> &text,
                            const std::optional<std::string> &smiles_csv,
                            const std::optional<std::string> &reaction, int k) {
  MultimodalQuery q;
  if (k < 1) throw QueryError(QueryErrorKind::kInvalidK, "k must be at least 1");
  q.k = k;

  if (text && !trim(*text).empty()) q.text = std::string(trim(*text));

  if (smiles_csv && !trim(*smiles_csv).empty()) {
    auto parts = split(*smiles_csv, ',');
    for (std::size_t i = 0; i < parts.size(); ++i) {
      std::string component(trim(parts[i]));
      if (component.empty()) continue;
      try {
        parse_smiles(component);
      } catch (const SmilesError &e) {
        throw QueryError(QueryErrorKind::kInvalidSmiles, component,
                         static_cast<int>(i), e.kind(),
                         "smiles " + std::to_string(i) + ": " + e.what());
      }
      q.smiles.push_back(std::move(component));
    }
  }

  if (reaction && !trim(*reaction).empty())
    q.reaction = parse_reaction_smarts(*reaction);

  if (!q.text && q.smiles.empty() && !q.reaction)
    throw QueryError(QueryErrorKind::kEmptyQuery,
                     "query needs text, smiles, or a reaction");
  return q;
}

IupacTokenizer::IupacTokenizer(std::vector<std::string> vocabulary) {
  for (auto &frag: vocabulary) {
    std::string f = lower(trim(frag));
    if (f.empty() || lookup_.count(f)) continue;
    longest_ = std::max(longest_, f.size());
    lookup_.insert(f);
    vocabulary_.push_back(std::move(f));
  }
}

IupacTokenizer IupacTokenizer::from_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read fragment vocabulary " + path.string());
  std::vector<std::string> vocab;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view body = line;
    if (auto hash = body.find('#'); hash != std::string_view::npos)
      body = body.substr(0, hash);
    body = trim(body);
    if (!body.empty()) vocab.emplace_back(body);
  }
  return IupacTokenizer(std::move(vocab));
}

std::vector<std::string> IupacTokenizer::default_vocabulary() {
  return { std::begin(kDefaultFragments), std::end(kDefaultFragments) };
}

const IupacTokenizer &IupacTokenizer::default_instance() {
  static const IupacTokenizer instance(default_vocabulary());
  return instance;
}

void IupacTokenizer::segment(const std::string &run,
                             std::vector<std::string> &out) const {
  std::size_t pos = 0;
  while (pos < run.size()) {
    std::size_t len = std::min(longest_, run.size() - pos);
    for (; len > 0; --len)
      if (lookup_.count(run.substr(pos, len))) break;
    if (len == 0) {
      out.push_back(run.substr(pos));
      return;
    }
    out.push_back(run.substr(pos, len));
    pos += len;
  }
}

std::vector<std::string> IupacTokenizer::tokenize(std::string_view name) const {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < name.size()) {
    unsigned char c = name[i];
    if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < name.size() && std::isdigit(static_cast<unsigned char>(name[j]))) ++j;
      out.emplace_back(name.substr(i, j - i));
      i = j;
    } else if (std::isalpha(c)) {
      std::size_t j = i;
      while (j < name.size() && std::isalpha(static_cast<unsigned char>(name[j]))) ++j;
      std::string_view run = name.substr(i, j - i);
      if (run.size() == 1)
        out.emplace_back(run);
      else
        segment(lower(run), out);
      i = j;
    } else {
      ++i;
    }
  }
  return out;
}

std::vector<std::string> tokenize_iupac(std::string_view name) {
  return IupacTokenizer::default_instance().tokenize(name);
}

}  // namespace chemsearch
