//
// Project chemsearch - Copyright 2026 The chemsearch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMSEARCH_SNAPSHOT_H_
#define CHEMSEARCH_SNAPSHOT_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "chemsearch/search.h"

namespace chemsearch {

// First byte of every snapshot. The rest is one CBOR map; see
// docs/snapshot_format.md.
inline constexpr std::uint8_t kSnapshotVersion = 1;

class SnapshotError: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::vector<std::uint8_t> encode_snapshot(const SearchEngine &engine);

// Throws SnapshotError on a version or layout problem; CorpusError if the
// embedded corpus fails validation.
std::shared_ptr<const SearchEngine> decode_snapshot(std::span<const std::uint8_t> bytes);

void save_snapshot(const SearchEngine &engine, const std::filesystem::path &path);
std::shared_ptr<const SearchEngine> load_snapshot(const std::filesystem::path &path);

}  // namespace chemsearch

#endif  // CHEMSEARCH_SNAPSHOT_H_
