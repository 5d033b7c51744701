#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "uf1/vocab.hpp"

namespace uf1 {

// First-order formulas with counting quantifiers, after desugaring:
// only ~, &, | remain as connectives ("->" and "<->" are parser sugar).
// And/Or are n-ary and kept flat; builders normalize nesting so that
// structurally equal formulas compare equal.
enum class Kind : unsigned char { True, False, Atom, Eq, Not, And, Or, Block };

// Quantifier of a block. Counting quantifiers bind exactly one variable;
// Exists/Forall blocks may bind several.
enum class Quant : unsigned char { Exists, Forall, AtLeast, AtMost, Exactly };

class Formula;
using Fptr = std::shared_ptr<const Formula>;

class Formula {
public:
  Kind kind;
  std::string rel;                // Atom: relation name
  std::vector<std::string> vars;  // Atom: argument tuple; Eq: {lhs,rhs}; Block: bound variables
  std::vector<Fptr> kids;         // Not: 1; And/Or: >= 2; Block: 1 (the body)
  Quant q = Quant::Exists;        // Block only
  int count = 0;                  // Block only, for counting quantifiers

  static Fptr truth(bool b);
  static Fptr atom(std::string rel, std::vector<std::string> args);
  static Fptr eq(std::string a, std::string b);
  static Fptr neg(Fptr f);
  // n-ary, flattening; conj({}) == true, disj({}) == false, singletons collapse.
  static Fptr conj(std::vector<Fptr> kids);
  static Fptr disj(std::vector<Fptr> kids);
  static Fptr conj2(Fptr a, Fptr b) { return conj({std::move(a), std::move(b)}); }
  static Fptr disj2(Fptr a, Fptr b) { return disj({std::move(a), std::move(b)}); }
  static Fptr block(Quant q, int count, std::vector<std::string> bound, Fptr body);
  static Fptr exists(std::vector<std::string> bound, Fptr body) {
    return block(Quant::Exists, 0, std::move(bound), std::move(body));
  }
  static Fptr forall(std::vector<std::string> bound, Fptr body) {
    return block(Quant::Forall, 0, std::move(bound), std::move(body));
  }

  bool is_counting() const {
    return kind == Kind::Block &&
           (q == Quant::AtLeast || q == Quant::AtMost || q == Quant::Exactly);
  }
  const Fptr& body() const { return kids[0]; }
};

bool same(const Formula& a, const Formula& b);
inline bool same(const Fptr& a, const Fptr& b) { return same(*a, *b); }

std::string print(const Formula& f);
inline std::string print(const Fptr& f) { return print(*f); }

std::set<std::string> free_variables(const Formula& f);
inline std::set<std::string> free_variables(const Fptr& f) { return free_variables(*f); }

int node_count(const Formula& f);
inline int node_count(const Fptr& f) { return node_count(*f); }

// Number of lexical tokens in print(f); the size measure used for the
// small-model bound.
int token_count(const Formula& f);

// true iff f contains a counting quantifier anywhere.
bool has_counting(const Formula& f);

// true iff f contains no quantifier block at all.
bool quantifier_free(const Formula& f);

// Top-level conjuncts (flattened view; a non-And formula is one conjunct).
std::vector<Fptr> conjuncts(const Fptr& f);

// The vocabulary spanned by the atoms of f. Throws on inconsistent arities.
Vocabulary infer_vocabulary(const Formula& f);

// Renames free variable occurrences per `ren`; alpha-renames bound
// variables when needed to avoid capture.
Fptr substitute_free(const Fptr& f, const std::map<std::string, std::string>& ren);

// Replaces every atom `name(z)` (name unary) by `def` with its single free
// variable `defVar` renamed to z. Capture-avoiding.
Fptr substitute_unary_atom(const Fptr& f, const std::string& name,
                           const std::string& defVar, const Fptr& def);

// Negation normal form: pushes ~ down to atoms/equalities, flipping
// quantifier blocks on the way (~E == A~, ~E[>=k] == E[<=k-1], ...).
// A negated E[=k] block stays as a negated block.
Fptr to_nnf(const Fptr& f);

// Parses the formula grammar:
//   formula := "true" | "false" | name "(" var ("," var)* ")" | var "=" var
//            | "~" formula | formula ("&"|"|"|"->"|"<->") formula
//            | quant var+ "." formula
//   quant   := "A" | "E" | "E[>=" int "]" | "E[<=" int "]" | "E[=" int "]"
// Precedence ~ > & > | > -> > <->; a quantifier body extends maximally to
// the right; "#" starts a comment.
Fptr parse_formula(const std::string& text);
// Same, but also checks every atom against `vocab`.
Fptr parse_formula(const std::string& text, const Vocabulary& vocab);

} // namespace uf1
