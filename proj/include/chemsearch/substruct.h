//
// Project chemsearch - Copyright 2026 The chemsearch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMSEARCH_SUBSTRUCT_H_
#define CHEMSEARCH_SUBSTRUCT_H_

#include <vector>

#include "chemsearch/molgraph.h"

namespace chemsearch {

// Injective mapping: target_of[pattern atom] = target atom.
struct MatchMap {
  std::vector<int> target_of;

  auto operator<=>(const MatchMap &) const = default;
};

// Equal element and aromatic flag; charge must agree only when the pattern
// atom is charged. Pattern hydrogens are not constraints.
bool atoms_compatible(const Atom &pattern, const Atom &target) noexcept;
// Exact order match (aromatic only matches aromatic).
bool bonds_compatible(BondOrder pattern, BondOrder target) noexcept;

bool has_substructure(const MolecularGraph &pattern,
                      const MolecularGraph &target);

// Up to `limit` distinct matches, in deterministic search order.
std::vector<MatchMap> find_matches(const MolecularGraph &pattern,
                                   const MolecularGraph &target, int limit);

}  // namespace chemsearch

#endif  // CHEMSEARCH_SUBSTRUCT_H_
