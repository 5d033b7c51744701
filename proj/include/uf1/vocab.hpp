#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uf1/errors.hpp"

namespace uf1 {

// A finite relational vocabulary: relation name -> arity (>= 1).
// Equality is built in and never appears here.
class Vocabulary {
public:
  Vocabulary() = default;

  void add(const std::string& name, int arity) {
    if (arity < 1) throw InputError("arity of " + name + " must be positive");
    auto it = map_.find(name);
    if (it != map_.end()) {
      if (it->second != arity)
        throw InputError("relation " + name + " redeclared with arity " +
                         std::to_string(arity) + " (was " +
                         std::to_string(it->second) + ")");
      return;
    }
    map_.emplace(name, arity);
  }

  bool contains(const std::string& name) const { return map_.count(name) > 0; }

  std::optional<int> arity(const std::string& name) const {
    auto it = map_.find(name);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  int arity_or_throw(const std::string& name) const {
    auto a = arity(name);
    if (!a) throw InputError("unknown relation name: " + name);
    return *a;
  }

  // Symbols in sorted name order; deterministic everywhere.
  std::vector<std::string> symbols() const {
    std::vector<std::string> out;
    out.reserve(map_.size());
    for (auto& [k, v] : map_) out.push_back(k);
    return out;
  }

  int max_arity() const {
    int m = 0;
    for (auto& [k, v] : map_) m = std::max(m, v);
    return m;
  }

  std::size_t size() const { return map_.size(); }
  bool empty() const { return map_.empty(); }

  // true if every symbol of `other` appears here with the same arity.
  bool includes(const Vocabulary& other) const {
    for (auto& [k, v] : other.map_) {
      auto a = arity(k);
      if (!a || *a != v) return false;
    }
    return true;
  }

  static Vocabulary merged(const Vocabulary& a, const Vocabulary& b) {
    Vocabulary v = a;
    for (auto& [k, ar] : b.map_) v.add(k, ar);
    return v;
  }

  bool operator==(const Vocabulary& o) const { return map_ == o.map_; }

private:
  std::map<std::string, int> map_;
};

} // namespace uf1
