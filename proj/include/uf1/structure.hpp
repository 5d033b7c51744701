#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "uf1/vocab.hpp"

namespace uf1 {

// A finite relational structure with domain {0, ..., size-1}.
class Structure {
public:
  Vocabulary vocab;
  int size = 1;
  std::map<std::string, std::set<std::vector<int>>> rels;

  Structure() = default;
  Structure(Vocabulary v, int n) : vocab(std::move(v)), size(n) {}

  // Relations missing from `rels` (or even from the vocabulary) are empty;
  // a structure is implicitly a structure over any larger vocabulary.
  bool holds(const std::string& rel, const std::vector<int>& tup) const {
    auto it = rels.find(rel);
    return it != rels.end() && it->second.count(tup) > 0;
  }

  void add(const std::string& rel, std::vector<int> tup);

  // Checks arities and element bounds of every stored tuple.
  void validate() const;

  bool operator==(const Structure& o) const {
    return size == o.size && vocab == o.vocab && rels == o.rels;
  }
};

// Line-oriented structure format ('#' comments, ';' treated as whitespace):
//   domain = N
//   rel NAME/ARITY = { (e1 e2 ...) (...) ... }
// The leading "rel" keyword is optional on declarations.
Structure parse_structure(const std::string& text);

std::string write_structure(const Structure& a);

// Maximal literal set over one variable: one polarity per relation symbol
// (the only atom over a single variable is R(v,...,v)).
struct OneType {
  std::map<std::string, bool> diag;

  bool operator==(const OneType&) const = default;
  auto operator<=>(const OneType&) const = default;
};

std::string to_string(const OneType& t);

// Maximal literal set over the atoms that use exactly the variables
// v1..vk: for each symbol of arity m >= k, one polarity per onto pattern
// in [0,k)^m. Contains no equality literals.
struct KTable {
  int k = 1;
  std::map<std::pair<std::string, std::vector<int>>, bool> lit;

  bool operator==(const KTable&) const = default;
  auto operator<=>(const KTable&) const = default;
};

// All patterns in [0,k)^m that use every index in [0,k), lexicographic.
std::vector<std::vector<int>> onto_patterns(int m, int k);

// The unique 1-type realized by a.
OneType one_type(const Structure& a, int elem);

// The unique k-table realized by a tuple of pairwise distinct elements.
KTable k_table(const Structure& a, const std::vector<int>& tuple);

// View of a OneType as the (trivial) 1-table over the given vocabulary.
KTable as_ktable(const OneType& t, const Vocabulary& vocab);

// Reindexes a table's variables: position i of the old enumeration becomes
// position perm[i] of the new one.
KTable permute_ktable(const KTable& t, const std::vector<int>& perm);

// Enumerates all 1-types over a vocabulary, in canonical order.
std::vector<OneType> all_one_types(const Vocabulary& vocab);

// All k-tables over a vocabulary (for small vocabularies only).
std::vector<KTable> all_k_tables(const Vocabulary& vocab, int k);

using Assignment = std::map<std::string, int>;

} // namespace uf1
