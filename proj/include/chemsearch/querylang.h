//
// Project chemsearch - Copyright 2026 The chemsearch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMSEARCH_QUERYLANG_H_
#define CHEMSEARCH_QUERYLANG_H_

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "chemsearch/molgraph.h"

namespace chemsearch {

enum class QueryErrorKind {
  kEmptyQuery,
  kWrongSeparatorCount,
  kComponentParseError,
  kInvalidSmiles,
  kInvalidK,
};

std::string_view query_error_name(QueryErrorKind kind) noexcept;

class QueryError: public std::runtime_error {
public:
  QueryError(QueryErrorKind kind, std::string message);
  // For per-component SMILES failures.
  QueryError(QueryErrorKind kind, std::string component, int position,
             SmilesErrorKind cause, const std::string &detail);

  QueryErrorKind kind() const noexcept { return kind_; }
  const std::string &component() const noexcept { return component_; }
  // Zero-based component index within its section or list; -1 if none.
  int position() const noexcept { return position_; }
  std::optional<SmilesErrorKind> cause() const noexcept { return cause_; }

private:
  QueryErrorKind kind_;
  std::string component_;
  int position_ = -1;
  std::optional<SmilesErrorKind> cause_;
};

struct ReactionQuery {
  std::vector<std::string> reactants;
  std::vector<std::string> agents;
  std::vector<std::string> products;

  // reactants, then agents, then products.
  std::vector<std::string> all_compounds() const;
  std::string to_string() const;
  bool operator==(const ReactionQuery &) const = default;
};

// reactants>agents>products, components separated by '.'.
ReactionQuery parse_reaction_smarts(std::string_view s);

constexpr int kDefaultResultCount = 10;

struct MultimodalQuery {
  std::optional<std::string> text;
  std::vector<std::string> smiles;
  std::optional<ReactionQuery> reaction;
  int k = kDefaultResultCount;
};

// Blank optional strings count as absent.
MultimodalQuery parse_query(const std::optional<std::string> &text,
                            const std::optional<std::string> &smiles_csv,
                            const std::optional<std::string> &reaction,
                            int k = kDefaultResultCount);

/// Splits systematic chemical names into locants and morphemes.
///
/// Punctuation becomes a separator, digit runs are split from letter runs,
/// and every letter run longer than one character is lowercased and cut
/// greedily into the longest vocabulary fragments from the left. When no
/// fragment matches at some offset the remainder of that run is emitted
/// whole. Single letters ("N", "E") pass through unchanged.
class IupacTokenizer {
public:
  explicit IupacTokenizer(std::vector<std::string> vocabulary);

  // One fragment per line; '#' starts a comment.
  static IupacTokenizer from_file(const std::filesystem::path &path);
  static const IupacTokenizer &default_instance();
  static std::vector<std::string> default_vocabulary();

  std::vector<std::string> tokenize(std::string_view name) const;
  const std::vector<std::string> &vocabulary() const noexcept {
    return vocabulary_;
  }

private:
  void segment(const std::string &run, std::vector<std::string> &out) const;

  std::vector<std::string> vocabulary_;
  std::unordered_set<std::string> lookup_;
  std::size_t longest_ = 0;
};

std::vector<std::string> tokenize_iupac(std::string_view name);

}  // namespace chemsearch

#endif  // CHEMSEARCH_QUERYLANG_H_
