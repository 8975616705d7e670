//
// Project chemsearch - Copyright 2026 The chemsearch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "chemsearch/substruct.h"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <vector>

namespace chemsearch {
namespace {
class Matcher {
public:
  Matcher(const MolecularGraph &pattern, const MolecularGraph &target, int limit)
      : p_(pattern), t_(target), limit_(limit), map_(pattern.num_atoms(), -1),
        used_(target.num_atoms(), false) {
    plan();
  }

  std::vector<MatchMap> run() {
    if (p_.num_atoms() > t_.num_atoms() || p_.num_bonds() > t_.num_bonds())
      return {};
    extend(0);
    return std::move(found_);
  }

private:
  // Connectivity-first order: each atom after the first of its component has
  // an earlier neighbor to anchor candidate generation.
  void plan() {
    const int n = p_.num_atoms();
    std::vector<bool> placed(n, false);
    anchor_.assign(n, -1);
    while (static_cast<int>(order_.size()) < n) {
      int root = -1;
      for (int i = 0; i < n; ++i) {
        if (placed[i]) continue;
        if (root < 0 || p_.degree(i) > p_.degree(root)) root = i;
      }
      std::deque<int> queue { root };
      placed[root] = true;
      while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        order_.push_back(u);
        for (const auto &nb: p_.neighbors(u)) {
          if (placed[nb.atom]) continue;
          placed[nb.atom] = true;
          anchor_[nb.atom] = u;
          queue.push_back(nb.atom);
        }
      }
    }
  }

  bool feasible(int pa, int ta) const {
    if (used_[ta]) return false;
    if (!atoms_compatible(p_.atom(pa), t_.atom(ta))) return false;
    if (t_.degree(ta) < p_.degree(pa)) return false;
    for (const auto &nb: p_.neighbors(pa)) {
      int mapped = map_[nb.atom];
      if (mapped < 0) continue;
      int tb = t_.find_bond(ta, mapped);
      if (tb < 0) return false;
      if (!bonds_compatible(p_.bond(nb.bond).order, t_.bond(tb).order)) return false;
    }
    return true;
  }

  bool extend(std::size_t depth) {
    if (depth == order_.size()) {
      found_.push_back({ map_ });
      return static_cast<int>(found_.size()) >= limit_;
    }
    int pa = order_[depth];
    auto try_target = [&](int ta) {
      if (!feasible(pa, ta)) return false;
      map_[pa] = ta;
      used_[ta] = true;
      bool done = extend(depth + 1);
      used_[ta] = false;
      map_[pa] = -1;
      return done;
    };

    if (anchor_[pa] >= 0) {
      for (const auto &nb: t_.neighbors(map_[anchor_[pa]]))
        if (try_target(nb.atom)) return true;
    } else {
      for (int ta = 0; ta < t_.num_atoms(); ++ta)
        if (try_target(ta)) return true;
    }
    return false;
  }

  const MolecularGraph &p_;
  const MolecularGraph &t_;
  int limit_;
  std::vector<int> order_;
  std::vector<int> anchor_;
  std::vector<int> map_;
  std::vector<bool> used_;
  std::vector<MatchMap> found_;
};
}  // namespace

bool atoms_compatible(const Atom &pattern, const Atom &target) noexcept {
  if (pattern.element != target.element) return false;
  if (pattern.aromatic != target.aromatic) return false;
  if (pattern.formal_charge != 0 && pattern.formal_charge != target.formal_charge)
    return false;
  return true;
}

bool bonds_compatible(BondOrder pattern, BondOrder target) noexcept {
  return pattern == target;
}

bool has_substructure(const MolecularGraph &pattern,
                      const MolecularGraph &target) {
  return !find_matches(pattern, target, 1).empty();
}

std::vector<MatchMap> find_matches(const MolecularGraph &pattern,
                                   const MolecularGraph &target, int limit) {
  if (limit < 1) throw std::invalid_argument("limit must be at least 1");
  return Matcher(pattern, target, limit).run();
}

}  // namespace chemsearch
