//
// Project chemsearch - Copyright 2026 The chemsearch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "chemsearch/fingerprint.h"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace chemsearch {
namespace {
class ByteEncoder {
public:
  void put_u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }

  void put_i32(std::int32_t v) {
    auto u = static_cast<std::uint32_t>(v);
    for (int i = 0; i < 4; ++i) bytes_.push_back(static_cast<std::uint8_t>(u >> (8 * i)));
  }

  void put_string(std::string_view s) {
    put_i32(static_cast<std::int32_t>(s.size()));
    bytes_.insert(bytes_.end(), s.begin(), s.end());
  }

  std::uint64_t hash() const { return fnv1a64(bytes_); }

private:
  std::vector<std::uint8_t> bytes_;
};

bool is_power_of_two(int w) {
  return w > 0 && std::has_single_bit(static_cast<unsigned>(w));
}
}  // namespace

Fingerprint::Fingerprint(int width)
    : width_(width), words_((width + 63) / 64, 0) {
  if (!is_power_of_two(width))
    throw std::invalid_argument("fingerprint width must be a positive power of two");
}

Fingerprint Fingerprint::from_bits(std::span<const int> bits, int width) {
  Fingerprint fp(width);
  for (int b: bits) fp.set(b);
  return fp;
}

void Fingerprint::set(int bit) {
  if (bit < 0 || bit >= width_) throw std::out_of_range("fingerprint bit out of range");
  std::uint64_t mask = std::uint64_t { 1 } << (bit % 64);
  std::uint64_t &word = words_[bit / 64];
  if ((word & mask) == 0) {
    word |= mask;
    ++set_count_;
  }
}

bool Fingerprint::test(int bit) const {
  if (bit < 0 || bit >= width_) return false;
  return (words_[bit / 64] >> (bit % 64)) & 1U;
}

std::vector<int> Fingerprint::on_bits() const {
  std::vector<int> out;
  out.reserve(set_count_);
  for (int i = 0; i < width_; ++i)
    if (test(i)) out.push_back(i);
  return out;
}

WidthMismatch::WidthMismatch(int a, int b)
    : std::invalid_argument("fingerprint widths differ: " + std::to_string(a)
                            + " vs " + std::to_string(b)) { }

SimilarityScore::SimilarityScore(double value): value_(value) {
  if (!(value >= 0.0 && value <= 1.0))
    throw std::out_of_range("similarity score outside [0, 1]");
}

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes,
                      std::uint64_t seed) noexcept {
  std::uint64_t h = seed;
  for (std::uint8_t b: bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<std::vector<std::uint64_t>>
morgan_environment_ids(const MolecularGraph &g, int radius) {
  if (radius < 0) throw std::invalid_argument("radius must be non-negative");
  const int n = g.num_atoms();
  std::vector<std::vector<std::uint64_t>> ids(radius + 1,
                                              std::vector<std::uint64_t>(n));
  for (int i = 0; i < n; ++i) {
    const Atom &a = g.atom(i);
    ByteEncoder enc;
    enc.put_i32(0);
    enc.put_string(a.element);
    enc.put_i32(g.degree(i));
    enc.put_i32(a.implicit_h);
    enc.put_i32(a.formal_charge);
    enc.put_i32(a.aromatic ? 1 : 0);
    ids[0][i] = enc.hash();
  }

  for (int r = 1; r <= radius; ++r) {
    for (int i = 0; i < n; ++i) {
      std::vector<std::pair<int, std::uint64_t>> env;
      for (const auto &nb: g.neighbors(i))
        env.emplace_back(static_cast<int>(g.bond(nb.bond).order), ids[r - 1][nb.atom]);
      std::sort(env.begin(), env.end());

      ByteEncoder enc;
      enc.put_i32(r);
      enc.put_u64(ids[r - 1][i]);
      enc.put_i32(static_cast<std::int32_t>(env.size()));
      for (const auto &[order, id]: env) {
        enc.put_i32(order);
        enc.put_u64(id);
      }
      ids[r][i] = enc.hash();
    }
  }
  return ids;
}

Fingerprint morgan_fingerprint(const MolecularGraph &g, int radius, int width) {
  Fingerprint fp(width);
  for (const auto &round: morgan_environment_ids(g, radius))
    for (std::uint64_t id: round)
      fp.set(static_cast<int>(id % static_cast<std::uint64_t>(width)));
  return fp;
}

SimilarityScore tanimoto(const Fingerprint &a, const Fingerprint &b) {
  if (a.width() != b.width()) throw WidthMismatch(a.width(), b.width());
  int both = 0, either = 0;
  auto wa = a.words(), wb = b.words();
  for (std::size_t i = 0; i < wa.size(); ++i) {
    both += std::popcount(wa[i] & wb[i]);
    either += std::popcount(wa[i] | wb[i]);
  }
  if (either == 0) return SimilarityScore(0.0);
  return SimilarityScore(static_cast<double>(both) / either);
}

}  // namespace chemsearch
