//
// Project chemsearch - Copyright 2026 The chemsearch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "chemsearch/molgraph.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace chemsearch {
namespace {
constexpr std::array<std::string_view, 118> kElements = {
  "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na", "Mg",
  "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",  "Cr",
  "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br", "Kr",
  "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag", "Cd",
  "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr", "Nd",
  "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu", "Hf",
  "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi", "Po",
  "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am", "Cm",
  "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh", "Hs",
  "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og",
};

constexpr std::array<std::string_view, 10> kOrganicSubset = {
  "B", "C", "N", "O", "P", "S", "F", "Cl", "Br", "I",
};

// Elements that may be written in lowercase (aromatic) form.
constexpr std::array<std::string_view, 9> kAromaticCapable = {
  "B", "C", "N", "O", "P", "S", "Se", "As", "Te",
};

// Allowed valences for the organic subset, ascending.
std::vector<int> organic_valences(std::string_view element) {
  if (element == "B") return { 3 };
  if (element == "C") return { 4 };
  if (element == "N") return { 3, 5 };
  if (element == "O") return { 2 };
  if (element == "P") return { 3, 5 };
  if (element == "S") return { 2, 4, 6 };
  if (element == "F" || element == "Cl" || element == "Br" || element == "I")
    return { 1 };
  return {};
}

bool aromatic_capable(std::string_view element) {
  return std::find(kAromaticCapable.begin(), kAromaticCapable.end(), element)
         != kAromaticCapable.end();
}

std::string capitalize(std::string_view lower) {
  std::string out(lower);
  if (!out.empty())
    out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

class SmilesParser {
public:
  explicit SmilesParser(std::string_view s): s_(s) { }

  SmilesParseResult parse() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '(') {
        open_branch();
      } else if (c == ')') {
        close_branch();
      } else if (c == '-' || c == '=' || c == '#' || c == ':' || c == '/'
                 || c == '\\') {
        read_bond(c);
      } else if (c == '.') {
        fail(SmilesErrorKind::kMultipleFragments,
             "'.' separated fragments are not accepted in a single compound");
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '%') {
        read_ring_bond();
      } else if (c == '[') {
        read_bracket_atom();
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '*') {
        read_organic_atom();
      } else {
        fail(SmilesErrorKind::kUnexpectedCharacter,
             std::string("unexpected character '") + c + "'");
      }
    }

    if (pending_bond_)
      fail(SmilesErrorKind::kUnexpectedCharacter, "bond symbol at end of input",
           pending_bond_pos_);
    if (!branches_.empty())
      fail(SmilesErrorKind::kUnbalancedParenthesis, "unclosed '('",
           branches_.back().second);
    if (!rings_.empty()) {
      const auto &[digit, open] = *rings_.begin();
      fail(SmilesErrorKind::kUnclosedRing,
           "ring bond " + std::to_string(digit) + " is never closed",
           open.position);
    }
    if (graph_.empty()) fail(SmilesErrorKind::kEmptyInput, "no atoms", 0);

    for (int i = 0; i < graph_.num_atoms(); ++i) {
      if (graph_.atom(i).bracket) continue;
      graph_.mutable_atom(i).implicit_h = *default_implicit_h(graph_, i);
    }
    return { std::move(graph_), std::move(warnings_) };
  }

private:
  struct RingOpen {
    int atom;
    std::optional<BondOrder> order;
    std::size_t position;
  };

  [[noreturn]] void fail(SmilesErrorKind kind, const std::string &msg) const {
    fail(kind, msg, pos_);
  }

  [[noreturn]] void fail(SmilesErrorKind kind, const std::string &msg,
                         std::size_t pos) const {
    throw SmilesError(kind, pos, msg);
  }

  void open_branch() {
    if (prev_ < 0 || pending_bond_)
      fail(SmilesErrorKind::kUnexpectedCharacter, "branch without a parent atom");
    branches_.emplace_back(prev_, pos_);
    ++pos_;
    if (pos_ < s_.size() && s_[pos_] == ')')
      fail(SmilesErrorKind::kUnexpectedCharacter, "empty branch");
  }

  void close_branch() {
    if (branches_.empty())
      fail(SmilesErrorKind::kUnbalancedParenthesis, "unmatched ')'");
    if (pending_bond_)
      fail(SmilesErrorKind::kUnexpectedCharacter, "bond symbol before ')'");
    prev_ = branches_.back().first;
    branches_.pop_back();
    ++pos_;
  }

  void read_bond(char c) {
    if (pending_bond_ || prev_ < 0)
      fail(SmilesErrorKind::kUnexpectedCharacter,
           std::string("misplaced bond symbol '") + c + "'");
    switch (c) {
    case '-':
      pending_bond_ = BondOrder::kSingle;
      break;
    case '=':
      pending_bond_ = BondOrder::kDouble;
      break;
    case '#':
      pending_bond_ = BondOrder::kTriple;
      break;
    case ':':
      pending_bond_ = BondOrder::kAromatic;
      break;
    default:
      pending_bond_ = BondOrder::kSingle;
      warnings_.push_back("directional bond '" + std::string(1, c)
                          + "' at position " + std::to_string(pos_)
                          + " read as single bond; stereo dropped");
      break;
    }
    pending_bond_pos_ = pos_;
    ++pos_;
  }

  BondOrder implied_order(int a, int b) const {
    return graph_.atom(a).aromatic && graph_.atom(b).aromatic
               ? BondOrder::kAromatic
               : BondOrder::kSingle;
  }

  void read_ring_bond() {
    std::size_t start = pos_;
    if (prev_ < 0)
      fail(SmilesErrorKind::kUnexpectedCharacter, "ring bond before any atom");
    int digit;
    if (s_[pos_] == '%') {
      if (pos_ + 2 >= s_.size()
          || !std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))
          || !std::isdigit(static_cast<unsigned char>(s_[pos_ + 2])))
        fail(SmilesErrorKind::kUnexpectedCharacter,
             "'%' must be followed by two digits");
      digit = (s_[pos_ + 1] - '0') * 10 + (s_[pos_ + 2] - '0');
      pos_ += 3;
    } else {
      digit = s_[pos_] - '0';
      ++pos_;
    }

    auto it = rings_.find(digit);
    if (it == rings_.end()) {
      rings_.emplace(digit, RingOpen { prev_, pending_bond_, start });
      pending_bond_.reset();
      return;
    }

    RingOpen open = it->second;
    rings_.erase(it);
    if (open.atom == prev_)
      fail(SmilesErrorKind::kBadRingBond, "ring bond closes on its own atom",
           start);
    if (open.order && pending_bond_ && *open.order != *pending_bond_)
      fail(SmilesErrorKind::kBadRingBond, "conflicting ring bond orders", start);
    if (graph_.find_bond(open.atom, prev_) >= 0)
      fail(SmilesErrorKind::kBadRingBond, "ring bond duplicates an existing bond",
           start);
    BondOrder order = open.order      ? *open.order
                      : pending_bond_ ? *pending_bond_
                                      : implied_order(open.atom, prev_);
    graph_.add_bond(open.atom, prev_, order);
    pending_bond_.reset();
  }

  void add_atom(Atom atom) {
    int idx = graph_.add_atom(std::move(atom));
    if (prev_ >= 0) {
      BondOrder order = pending_bond_ ? *pending_bond_ : implied_order(prev_, idx);
      graph_.add_bond(prev_, idx, order);
    } else if (pending_bond_) {
      fail(SmilesErrorKind::kUnexpectedCharacter, "bond symbol before first atom",
           pending_bond_pos_);
    }
    pending_bond_.reset();
    prev_ = idx;
  }

  void read_organic_atom() {
    std::size_t start = pos_;
    std::string_view rest = s_.substr(pos_);
    Atom atom;
    if (rest.starts_with("Cl") || rest.starts_with("Br")) {
      atom.element = std::string(rest.substr(0, 2));
      pos_ += 2;
    } else {
      char c = rest[0];
      std::string one(1, c);
      if (is_organic_subset(one)) {
        atom.element = one;
      } else if (c == 'b' || c == 'c' || c == 'n' || c == 'o' || c == 'p'
                 || c == 's') {
        atom.element = capitalize(one);
        atom.aromatic = true;
      } else {
        std::size_t len = 1;
        if (rest.size() > 1 && std::islower(static_cast<unsigned char>(rest[1])))
          len = 2;
        fail(SmilesErrorKind::kUnknownElement,
             "'" + std::string(rest.substr(0, len))
                 + "' is not an organic-subset atom; use brackets",
             start);
      }
      ++pos_;
    }
    add_atom(std::move(atom));
  }

  int read_number() {
    int value = 0;
    bool any = false;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      value = value * 10 + (s_[pos_] - '0');
      ++pos_;
      any = true;
      if (value > 1000)
        fail(SmilesErrorKind::kBadBracketAtom, "number out of range");
    }
    return any ? value : -1;
  }

  void read_bracket_atom() {
    std::size_t start = pos_;
    std::size_t close = s_.find(']', pos_);
    if (close == std::string_view::npos)
      fail(SmilesErrorKind::kBadBracketAtom, "'[' without matching ']'");
    ++pos_;

    if (pos_ < close && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      fail(SmilesErrorKind::kBadBracketAtom, "isotope labels are not supported");

    Atom atom;
    atom.bracket = true;
    if (pos_ >= close)
      fail(SmilesErrorKind::kBadBracketAtom, "empty bracket atom", start);
    char c = s_[pos_];
    if (c == '*')
      fail(SmilesErrorKind::kUnknownElement, "wildcard atoms are not supported");
    if (std::isupper(static_cast<unsigned char>(c))) {
      std::string two;
      if (pos_ + 1 < close && std::islower(static_cast<unsigned char>(s_[pos_ + 1])))
        two = std::string(s_.substr(pos_, 2));
      if (!two.empty() && is_known_element(two)) {
        atom.element = two;
        pos_ += 2;
      } else if (is_known_element(std::string(1, c))) {
        atom.element = std::string(1, c);
        ++pos_;
      } else {
        fail(SmilesErrorKind::kUnknownElement,
             "unknown element '" + (two.empty() ? std::string(1, c) : two) + "'");
      }
    } else if (std::islower(static_cast<unsigned char>(c))) {
      std::string two;
      if (pos_ + 1 < close && std::islower(static_cast<unsigned char>(s_[pos_ + 1])))
        two = capitalize(s_.substr(pos_, 2));
      if (!two.empty() && aromatic_capable(two)) {
        atom.element = two;
        pos_ += 2;
      } else if (aromatic_capable(capitalize(s_.substr(pos_, 1)))) {
        atom.element = capitalize(s_.substr(pos_, 1));
        ++pos_;
      } else {
        fail(SmilesErrorKind::kUnknownElement,
             "'" + std::string(s_.substr(pos_, two.empty() ? 1 : 2))
                 + "' cannot be aromatic");
      }
      atom.aromatic = true;
    } else {
      fail(SmilesErrorKind::kBadBracketAtom, "expected element symbol");
    }

    if (pos_ < close && s_[pos_] == '@') {
      while (pos_ < close && s_[pos_] == '@') ++pos_;
      // Extended chirality classes (@TH1, @SP2, ...).
      if (pos_ + 1 < close && std::isupper(static_cast<unsigned char>(s_[pos_]))
          && std::isupper(static_cast<unsigned char>(s_[pos_ + 1]))) {
        pos_ += 2;
        read_number();
      }
      warnings_.push_back("chirality on atom at position " + std::to_string(start)
                          + " dropped");
    }

    if (pos_ < close && s_[pos_] == 'H') {
      ++pos_;
      int n = read_number();
      atom.implicit_h = n < 0 ? 1 : n;
    }

    if (pos_ < close && (s_[pos_] == '+' || s_[pos_] == '-')) {
      char sign = s_[pos_];
      int mag = 1;
      ++pos_;
      if (pos_ < close && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        mag = read_number();
      } else {
        while (pos_ < close && s_[pos_] == sign) {
          ++mag;
          ++pos_;
        }
      }
      atom.formal_charge = sign == '+' ? mag : -mag;
    }

    if (pos_ < close && s_[pos_] == ':') {
      ++pos_;
      if (read_number() < 0)
        fail(SmilesErrorKind::kBadBracketAtom, "atom class needs a number");
      warnings_.push_back("atom class at position " + std::to_string(start)
                          + " dropped");
    }

    if (pos_ != close)
      fail(SmilesErrorKind::kBadBracketAtom,
           "malformed bracket atom '" + std::string(s_.substr(start, close - start + 1))
               + "'",
           start);
    pos_ = close + 1;
    add_atom(std::move(atom));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  MolecularGraph graph_;
  std::vector<std::string> warnings_;
  int prev_ = -1;
  std::optional<BondOrder> pending_bond_;
  std::size_t pending_bond_pos_ = 0;
  std::vector<std::pair<int, std::size_t>> branches_;
  std::map<int, RingOpen> rings_;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}
}  // namespace

int bond_half_units(BondOrder order) noexcept {
  switch (order) {
  case BondOrder::kSingle:
    return 2;
  case BondOrder::kDouble:
    return 4;
  case BondOrder::kTriple:
    return 6;
  case BondOrder::kAromatic:
    return 3;
  }
  return 2;
}

char bond_symbol(BondOrder order) noexcept {
  switch (order) {
  case BondOrder::kSingle:
    return '-';
  case BondOrder::kDouble:
    return '=';
  case BondOrder::kTriple:
    return '#';
  case BondOrder::kAromatic:
    return ':';
  }
  return '-';
}

int MolecularGraph::add_atom(Atom atom) {
  atom.index = num_atoms();
  atoms_.push_back(std::move(atom));
  adjacency_.emplace_back();
  return atoms_.back().index;
}

int MolecularGraph::add_bond(int a, int b, BondOrder order) {
  if (a == b) throw std::invalid_argument("bond endpoints must differ");
  if (a < 0 || b < 0 || a >= num_atoms() || b >= num_atoms())
    throw std::invalid_argument("bond endpoint out of range");
  if (find_bond(a, b) >= 0)
    throw std::invalid_argument("duplicate bond between atoms");
  int idx = num_bonds();
  bonds_.push_back({ a, b, order });
  adjacency_[a].push_back({ b, idx });
  adjacency_[b].push_back({ a, idx });
  return idx;
}

int MolecularGraph::find_bond(int a, int b) const {
  for (const Neighbor &nb: adjacency_[a])
    if (nb.atom == b) return nb.bond;
  return -1;
}

int MolecularGraph::valence_half_units(int atom) const {
  int sum = 0;
  for (const Neighbor &nb: adjacency_[atom])
    sum += bond_half_units(bonds_[nb.bond].order);
  return sum;
}

bool MolecularGraph::is_connected() const {
  if (atoms_.empty()) return true;
  std::vector<bool> seen(atoms_.size(), false);
  std::vector<int> stack { 0 };
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (const Neighbor &nb: adjacency_[u]) {
      if (!seen[nb.atom]) {
        seen[nb.atom] = true;
        ++count;
        stack.push_back(nb.atom);
      }
    }
  }
  return count == num_atoms();
}

int MolecularGraph::ring_count() const {
  std::vector<int> component(atoms_.size(), -1);
  int components = 0;
  for (int s = 0; s < num_atoms(); ++s) {
    if (component[s] >= 0) continue;
    std::vector<int> stack { s };
    component[s] = components;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (const Neighbor &nb: adjacency_[u]) {
        if (component[nb.atom] < 0) {
          component[nb.atom] = components;
          stack.push_back(nb.atom);
        }
      }
    }
    ++components;
  }
  return num_bonds() - num_atoms() + components;
}

std::string_view smiles_error_name(SmilesErrorKind kind) noexcept {
  switch (kind) {
  case SmilesErrorKind::kEmptyInput:
    return "EmptyInput";
  case SmilesErrorKind::kUnclosedRing:
    return "UnclosedRing";
  case SmilesErrorKind::kUnknownElement:
    return "UnknownElement";
  case SmilesErrorKind::kBadBracketAtom:
    return "BadBracketAtom";
  case SmilesErrorKind::kUnbalancedParenthesis:
    return "UnbalancedParenthesis";
  case SmilesErrorKind::kUnexpectedCharacter:
    return "UnexpectedCharacter";
  case SmilesErrorKind::kMultipleFragments:
    return "MultipleFragments";
  case SmilesErrorKind::kBadRingBond:
    return "BadRingBond";
  }
  return "Unknown";
}

SmilesError::SmilesError(SmilesErrorKind kind, std::size_t position,
                         std::string message)
    : std::runtime_error(std::string(smiles_error_name(kind)) + " at position "
                         + std::to_string(position) + ": " + message),
      kind_(kind), position_(position) { }

bool is_organic_subset(std::string_view element) noexcept {
  return std::find(kOrganicSubset.begin(), kOrganicSubset.end(), element)
         != kOrganicSubset.end();
}

bool is_known_element(std::string_view element) noexcept {
  return std::find(kElements.begin(), kElements.end(), element)
         != kElements.end();
}

std::optional<int> default_implicit_h(const MolecularGraph &g, int atom) {
  const Atom &a = g.atom(atom);
  std::vector<int> valences = organic_valences(a.element);
  if (valences.empty()) return std::nullopt;

  // Aromatic bonds count 1.5; the sum is rounded down.
  int used = g.valence_half_units(atom) / 2;
  if (a.aromatic) return std::max(0, valences.front() - used);
  for (int v: valences)
    if (v >= used) return v - used;
  return 0;
}

SmilesParseResult parse_smiles_detailed(std::string_view smiles) {
  std::string_view body = trim(smiles);
  if (body.empty()) throw SmilesError(SmilesErrorKind::kEmptyInput, 0, "empty SMILES");
  return SmilesParser(body).parse();
}

MolecularGraph parse_smiles(std::string_view smiles) {
  return parse_smiles_detailed(smiles).graph;
}

}  // namespace chemsearch
