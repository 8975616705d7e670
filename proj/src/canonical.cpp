//
// Project chemsearch - Copyright 2026 The chemsearch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <numeric>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "chemsearch/molgraph.h"

namespace chemsearch {
namespace {
// Upper bound on tie-break leaves explored per molecule. Only highly
// symmetric cage-like graphs come near it.
constexpr int kMaxCanonLeaves = 20000;

template <class Key>
int dense_rank(const std::vector<Key> &keys, std::vector<int> &ranks) {
  const int n = static_cast<int>(keys.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return keys[x] < keys[y]; });
  ranks.assign(n, 0);
  int r = 0;
  for (int i = 0; i < n; ++i) {
    if (i > 0 && keys[order[i - 1]] < keys[order[i]]) ++r;
    ranks[order[i]] = r;
  }
  return n == 0 ? 0 : r + 1;
}

int count_classes(const std::vector<int> &ranks) {
  if (ranks.empty()) return 0;
  return *std::max_element(ranks.begin(), ranks.end()) + 1;
}

void refine(const MolecularGraph &g, std::vector<int> &ranks) {
  using Signature = std::pair<int, std::vector<std::pair<int, int>>>;
  int classes = count_classes(ranks);
  while (classes < g.num_atoms()) {
    std::vector<Signature> sig(g.num_atoms());
    for (int i = 0; i < g.num_atoms(); ++i) {
      sig[i].first = ranks[i];
      for (const auto &nb: g.neighbors(i))
        sig[i].second.emplace_back(static_cast<int>(g.bond(nb.bond).order),
                                   ranks[nb.atom]);
      std::sort(sig[i].second.begin(), sig[i].second.end());
    }
    int next = dense_rank(sig, ranks);
    if (next == classes) break;
    classes = next;
  }
}

std::vector<int> initial_ranks(const MolecularGraph &g) {
  using Invariant = std::tuple<std::string, int, int, bool, int>;
  std::vector<Invariant> inv;
  inv.reserve(g.num_atoms());
  for (const Atom &a: g.atoms())
    inv.emplace_back(a.element, g.degree(a.index), a.formal_charge, a.aromatic,
                     a.implicit_h);
  std::vector<int> ranks;
  dense_rank(inv, ranks);
  return ranks;
}

class CanonicalSearch {
public:
  explicit CanonicalSearch(const MolecularGraph &g): g_(g) { }

  void run() {
    std::vector<int> ranks = initial_ranks(g_);
    visit(std::move(ranks));
  }

  const std::string &smiles() const { return best_smiles_; }
  const std::vector<int> &ranks() const { return best_ranks_; }

private:
  void visit(std::vector<int> ranks) {
    refine(g_, ranks);
    const int n = g_.num_atoms();
    if (count_classes(ranks) == n) {
      ++leaves_;
      std::string s = write_smiles(g_, ranks);
      if (best_ranks_.empty() || s < best_smiles_) {
        best_smiles_ = std::move(s);
        best_ranks_ = std::move(ranks);
      }
      return;
    }

    // Lowest tied class.
    std::vector<int> size(n, 0);
    for (int r: ranks) ++size[r];
    int tied = 0;
    while (size[tied] < 2) ++tied;

    std::vector<int> members;
    for (int i = 0; i < n; ++i)
      if (ranks[i] == tied && !interchangeable_with_earlier(i, members))
        members.push_back(i);

    for (int m: members) {
      if (leaves_ >= kMaxCanonLeaves && !best_ranks_.empty()) return;
      std::vector<int> keys(n);
      for (int i = 0; i < n; ++i)
        keys[i] = 2 * ranks[i] + (ranks[i] == tied && i != m ? 1 : 0);
      std::vector<int> promoted;
      dense_rank(keys, promoted);
      visit(std::move(promoted));
    }
  }

  // Terminal atoms of one class hanging off the same neighbor through the
  // same bond order are related by an automorphism; branching on one of
  // them covers all.
  bool interchangeable_with_earlier(int atom,
                                    const std::vector<int> &members) const {
    if (g_.degree(atom) != 1) return false;
    const auto &nb = g_.neighbors(atom).front();
    for (int other: members) {
      if (g_.degree(other) != 1) continue;
      const auto &onb = g_.neighbors(other).front();
      if (onb.atom == nb.atom
          && g_.bond(onb.bond).order == g_.bond(nb.bond).order)
        return true;
    }
    return false;
  }

  const MolecularGraph &g_;
  int leaves_ = 0;
  std::string best_smiles_;
  std::vector<int> best_ranks_;
};

std::string atom_text(const MolecularGraph &g, int idx) {
  const Atom &a = g.atom(idx);
  std::string symbol = a.element;
  if (a.aromatic)
    for (char &c: symbol) c = static_cast<char>(std::tolower(c));

  if (a.formal_charge == 0 && is_organic_subset(a.element)) {
    auto h = default_implicit_h(g, idx);
    if (h && *h == a.implicit_h) return symbol;
  }

  std::string out = "[" + symbol;
  if (a.implicit_h > 0) {
    out += 'H';
    if (a.implicit_h > 1) out += std::to_string(a.implicit_h);
  }
  if (a.formal_charge != 0) {
    out += a.formal_charge > 0 ? '+' : '-';
    int mag = std::abs(a.formal_charge);
    if (mag > 1) out += std::to_string(mag);
  }
  out += ']';
  return out;
}

std::string bond_text(const MolecularGraph &g, const Bond &b) {
  bool both_aromatic = g.atom(b.a).aromatic && g.atom(b.b).aromatic;
  switch (b.order) {
  case BondOrder::kSingle:
    return both_aromatic ? "-" : "";
  case BondOrder::kAromatic:
    return both_aromatic ? "" : ":";
  case BondOrder::kDouble:
    return "=";
  case BondOrder::kTriple:
    return "#";
  }
  return "";
}

std::string ring_label(int digit) {
  if (digit < 10) return std::to_string(digit);
  return "%" + std::to_string(digit);
}

class SmilesWriter {
public:
  SmilesWriter(const MolecularGraph &g, const std::vector<int> &priority)
      : g_(g), priority_(priority), visit_order_(g.num_atoms(), -1),
        parent_bond_(g.num_atoms(), -1), children_(g.num_atoms()),
        ring_open_(g.num_atoms()), ring_close_(g.num_atoms()),
        ring_digit_(g.num_bonds(), -1) { }

  std::string write() {
    if (g_.empty()) return {};
    int start = static_cast<int>(
        std::min_element(priority_.begin(), priority_.end()) - priority_.begin());
    std::vector<bool> bond_seen(g_.num_bonds(), false);
    plan(start, bond_seen);
    emit(start);
    return out_;
  }

private:
  std::vector<MolecularGraph::Neighbor> sorted_neighbors(int atom) const {
    auto nbs = g_.neighbors(atom);
    std::sort(nbs.begin(), nbs.end(), [&](const auto &x, const auto &y) {
      return priority_[x.atom] < priority_[y.atom];
    });
    return nbs;
  }

  void plan(int atom, std::vector<bool> &bond_seen) {
    visit_order_[atom] = counter_++;
    for (const auto &nb: sorted_neighbors(atom)) {
      if (bond_seen[nb.bond]) continue;
      bond_seen[nb.bond] = true;
      if (visit_order_[nb.atom] < 0) {
        parent_bond_[nb.atom] = nb.bond;
        children_[atom].push_back(nb.atom);
        plan(nb.atom, bond_seen);
      } else {
        // Back edge: nb.atom was visited first and opens the ring.
        ring_open_[nb.atom].push_back(nb.bond);
        ring_close_[atom].push_back(nb.bond);
      }
    }
  }

  int take_digit() {
    int d = 1;
    while (std::find(used_digits_.begin(), used_digits_.end(), d)
           != used_digits_.end())
      ++d;
    used_digits_.push_back(d);
    return d;
  }

  void release_digit(int d) {
    used_digits_.erase(std::find(used_digits_.begin(), used_digits_.end(), d));
  }

  void emit(int atom) {
    out_ += atom_text(g_, atom);

    // Closures are numbered by when their partner opened them.
    auto closes = ring_close_[atom];
    std::sort(closes.begin(), closes.end(), [&](int x, int y) {
      return visit_order_[g_.bond(x).other(atom)]
             < visit_order_[g_.bond(y).other(atom)];
    });
    for (int b: closes) {
      out_ += ring_label(ring_digit_[b]);
      release_digit(ring_digit_[b]);
    }

    auto opens = ring_open_[atom];
    std::sort(opens.begin(), opens.end(), [&](int x, int y) {
      return priority_[g_.bond(x).other(atom)] < priority_[g_.bond(y).other(atom)];
    });
    for (int b: opens) {
      ring_digit_[b] = take_digit();
      out_ += bond_text(g_, g_.bond(b));
      out_ += ring_label(ring_digit_[b]);
    }

    const auto &kids = children_[atom];
    for (std::size_t i = 0; i < kids.size(); ++i) {
      bool branch = i + 1 < kids.size();
      if (branch) out_ += '(';
      out_ += bond_text(g_, g_.bond(parent_bond_[kids[i]]));
      emit(kids[i]);
      if (branch) out_ += ')';
    }
  }

  const MolecularGraph &g_;
  const std::vector<int> &priority_;
  std::vector<int> visit_order_;
  std::vector<int> parent_bond_;
  std::vector<std::vector<int>> children_;
  std::vector<std::vector<int>> ring_open_;
  std::vector<std::vector<int>> ring_close_;
  std::vector<int> ring_digit_;
  std::vector<int> used_digits_;
  int counter_ = 0;
  std::string out_;
};
}  // namespace

std::string write_smiles(const MolecularGraph &g,
                         const std::vector<int> &priority) {
  return SmilesWriter(g, priority).write();
}

std::vector<int> canonical_ranks(const MolecularGraph &g) {
  CanonicalSearch search(g);
  search.run();
  return search.ranks();
}

std::string canonical_smiles(const MolecularGraph &g) {
  if (g.empty()) return {};
  CanonicalSearch search(g);
  search.run();
  return search.smiles();
}

std::string randomized_smiles(const MolecularGraph &g, std::uint64_t seed) {
  std::vector<int> priority(g.num_atoms());
  std::iota(priority.begin(), priority.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(priority.begin(), priority.end(), rng);
  return write_smiles(g, priority);
}

}  // namespace chemsearch
