//
// Project chemsearch - Copyright 2026 The chemsearch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMSEARCH_MOLGRAPH_H_
#define CHEMSEARCH_MOLGRAPH_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chemsearch {

enum class BondOrder : std::uint8_t {
  kSingle = 1,
  kDouble = 2,
  kTriple = 3,
  kAromatic = 4,
};

// Valence contribution in half-units (aromatic = 3, i.e. 1.5).
int bond_half_units(BondOrder order) noexcept;
char bond_symbol(BondOrder order) noexcept;

struct Atom {
  std::string element;
  bool aromatic = false;
  int formal_charge = 0;
  int implicit_h = 0;
  int index = 0;
  // Written inside brackets in the source SMILES.
  bool bracket = false;

  bool operator==(const Atom &) const = default;
};

struct Bond {
  int a = 0;
  int b = 0;
  BondOrder order = BondOrder::kSingle;

  int other(int atom) const noexcept { return atom == a ? b : a; }
  bool operator==(const Bond &) const = default;
};

/// A single connected molecule. Atoms carry their implicit hydrogen count;
/// hydrogens are never expanded into explicit vertices unless written as
/// bracket atoms (e.g. "[H+]").
class MolecularGraph {
public:
  struct Neighbor {
    int atom;
    int bond;
  };

  MolecularGraph() = default;

  int add_atom(Atom atom);
  // Returns the bond index. Throws std::invalid_argument on self loops,
  // out-of-range endpoints, or a duplicate atom pair.
  int add_bond(int a, int b, BondOrder order);

  const std::vector<Atom> &atoms() const noexcept { return atoms_; }
  const std::vector<Bond> &bonds() const noexcept { return bonds_; }
  const Atom &atom(int i) const { return atoms_[i]; }
  const Bond &bond(int i) const { return bonds_[i]; }
  Atom &mutable_atom(int i) { return atoms_[i]; }

  int num_atoms() const noexcept { return static_cast<int>(atoms_.size()); }
  int num_bonds() const noexcept { return static_cast<int>(bonds_.size()); }
  bool empty() const noexcept { return atoms_.empty(); }

  const std::vector<Neighbor> &neighbors(int atom) const {
    return adjacency_[atom];
  }
  int degree(int atom) const {
    return static_cast<int>(adjacency_[atom].size());
  }
  // Bond index between a and b, or -1.
  int find_bond(int a, int b) const;

  // Sum of bond orders around an atom, in half-units.
  int valence_half_units(int atom) const;

  // Number of independent rings (bonds - atoms + components).
  int ring_count() const;
  bool is_connected() const;

private:
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

enum class SmilesErrorKind {
  kEmptyInput,
  kUnclosedRing,
  kUnknownElement,
  kBadBracketAtom,
  kUnbalancedParenthesis,
  kUnexpectedCharacter,
  kMultipleFragments,
  kBadRingBond,
};

std::string_view smiles_error_name(SmilesErrorKind kind) noexcept;

class SmilesError: public std::runtime_error {
public:
  SmilesError(SmilesErrorKind kind, std::size_t position, std::string message);

  SmilesErrorKind kind() const noexcept { return kind_; }
  std::size_t position() const noexcept { return position_; }

private:
  SmilesErrorKind kind_;
  std::size_t position_;
};

struct SmilesParseResult {
  MolecularGraph graph;
  // Stereo markers and atom classes are accepted but dropped; each drop is
  // recorded here.
  std::vector<std::string> warnings;
};

SmilesParseResult parse_smiles_detailed(std::string_view smiles);
MolecularGraph parse_smiles(std::string_view smiles);

// Implicit hydrogens an unbracketed organic-subset atom would receive given
// its current bonds. Returns nullopt for elements outside the organic subset.
std::optional<int> default_implicit_h(const MolecularGraph &g, int atom);

bool is_organic_subset(std::string_view element) noexcept;
bool is_known_element(std::string_view element) noexcept;

// Canonical atom ranking: one distinct rank per atom (0-based), invariant
// under input atom order.
std::vector<int> canonical_ranks(const MolecularGraph &g);

std::string canonical_smiles(const MolecularGraph &g);

// Writes g with DFS starting at a seeded random atom and randomly ordered
// branches. Test support for order-invariance checks.
std::string randomized_smiles(const MolecularGraph &g, std::uint64_t seed);

// Writes g using the given per-atom priorities (lower first). Priorities
// must be a permutation of 0..n-1.
std::string write_smiles(const MolecularGraph &g,
                         const std::vector<int> &priority);

}  // namespace chemsearch

#endif  // CHEMSEARCH_MOLGRAPH_H_
