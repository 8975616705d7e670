//
// Project chemsearch - Copyright 2026 The chemsearch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMSEARCH_FINGERPRINT_H_
#define CHEMSEARCH_FINGERPRINT_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "chemsearch/molgraph.h"

namespace chemsearch {

constexpr int kFingerprintWidth = 2048;
constexpr int kMorganRadius = 2;

class Fingerprint {
public:
  explicit Fingerprint(int width = kFingerprintWidth);

  static Fingerprint from_bits(std::span<const int> bits,
                               int width = kFingerprintWidth);

  void set(int bit);
  bool test(int bit) const;

  int width() const noexcept { return width_; }
  int set_count() const noexcept { return set_count_; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::vector<int> on_bits() const;

  bool operator==(const Fingerprint &) const = default;

private:
  int width_;
  int set_count_ = 0;
  std::vector<std::uint64_t> words_;
};

class WidthMismatch: public std::invalid_argument {
public:
  WidthMismatch(int a, int b);
};

// A real number in [0, 1].
class SimilarityScore {
public:
  constexpr SimilarityScore() = default;
  explicit SimilarityScore(double value);

  constexpr double value() const noexcept { return value_; }
  auto operator<=>(const SimilarityScore &) const = default;

private:
  double value_ = 0.0;
};

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes,
                      std::uint64_t seed = 0xcbf29ce484222325ULL) noexcept;

// Per-atom environment identifiers, indexed [round][atom], rounds 0..radius.
// Round 0 hashes (element, heavy degree, implicit H, charge, aromatic);
// round r hashes (r, previous id, sorted (bond order, neighbor previous id)).
std::vector<std::vector<std::uint64_t>>
morgan_environment_ids(const MolecularGraph &g, int radius = kMorganRadius);

// Every environment id of every round, folded by id mod width.
Fingerprint morgan_fingerprint(const MolecularGraph &g,
                               int radius = kMorganRadius,
                               int width = kFingerprintWidth);

// |a AND b| / |a OR b|; 0 when both are empty. Throws WidthMismatch.
SimilarityScore tanimoto(const Fingerprint &a, const Fingerprint &b);

}  // namespace chemsearch

#endif  // CHEMSEARCH_FINGERPRINT_H_
