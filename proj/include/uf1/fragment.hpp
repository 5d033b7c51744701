#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "uf1/formula.hpp"

namespace uf1 {

// Which membership rule a rejected node breaks.
enum class RuleViolated : unsigned char { OneDimensionality, Uniformity, Other };

const char* rule_name(RuleViolated r);

struct Violation {
  const Formula* node;    // offending subformula
  std::string where;      // path from the root, for diagnostics
  RuleViolated rule;
  std::string detail;
};

enum class Fragment : unsigned char { UF1, UFC1 };

struct FragmentReport {
  bool member = false;
  Fragment fragment = Fragment::UF1;  // UFC1 iff a counting quantifier occurs
  std::vector<Violation> violations;
  // Live-variable set V of every quantifier block (empty set when the block's
  // matrix level has no atoms with >= 2 distinct variables).
  std::map<const Formula*, std::set<std::string>> live_sets;

  std::set<std::string> live_set_of(const Formula* block) const {
    auto it = live_sets.find(block);
    return it == live_sets.end() ? std::set<std::string>{} : it->second;
  }
};

// Syntactic membership test for the uniform one-dimensional fragment; with
// allow_counting also admits counting quantifier blocks. Rejection is a
// verdict, not an error.
FragmentReport validate_fragment(const Fptr& phi, bool allow_counting);

// The shared variable set V of all atoms with >= 2 distinct variables in a
// quantifier-free matrix (equality atoms exempt); empty set if there are
// none. Throws InputError when two such atoms disagree (uniformity) or when
// the matrix is not quantifier-free or mentions variables outside block_vars.
std::set<std::string> live_variables(const Fptr& matrix,
                                     const std::vector<std::string>& block_vars);

} // namespace uf1
