#include "uf1/fragment.hpp"

#include <algorithm>

#include "uf1/errors.hpp"

namespace uf1 {

const char* rule_name(RuleViolated r) {
  switch (r) {
    case RuleViolated::OneDimensionality: return "one-dimensionality";
    case RuleViolated::Uniformity: return "uniformity";
    case RuleViolated::Other: return "other";
  }
  return "?";
}

namespace {

std::set<std::string> distinct_vars(const Formula& atom) {
  return {atom.vars.begin(), atom.vars.end()};
}

std::string join(const std::set<std::string>& s) {
  std::string out = "{";
  bool first = true;
  for (auto& v : s) {
    if (!first) out += ",";
    out += v;
    first = false;
  }
  return out + "}";
}

struct Checker {
  bool allow_counting;
  FragmentReport rep;

  void violate(const Formula* node, const std::string& where, RuleViolated rule,
               std::string detail) {
    rep.violations.push_back({node, where, rule, std::move(detail)});
  }

  // A formula position closed under rules 1-3: truth constants, unary
  // atoms, equalities, Boolean combinations, and quantifier blocks.
  void formula(const Fptr& f, const std::string& where) {
    switch (f->kind) {
      case Kind::True:
      case Kind::False:
      case Kind::Eq: return;
      case Kind::Atom:
        if (distinct_vars(*f).size() > 1)
          violate(f.get(), where, RuleViolated::Other,
                  "atom " + print(f) + " with two or more variables outside a quantifier block");
        return;
      case Kind::Not: formula(f->kids[0], where + "/~"); return;
      case Kind::And:
      case Kind::Or: {
        const char* tag = f->kind == Kind::And ? "/&" : "/|";
        for (std::size_t i = 0; i < f->kids.size(); ++i)
          formula(f->kids[i], where + tag + std::to_string(i));
        return;
      }
      case Kind::Block: block(f, where); return;
    }
  }

  // Rule 4. The block's matrix is a Boolean combination of U (member
  // formulas with at most one free variable, over X) and F (a V-uniform
  // atom set); equality atoms always live in U.
  void block(const Fptr& b, const std::string& where) {
    if (b->is_counting()) {
      rep.fragment = Fragment::UFC1;
      if (!allow_counting)
        violate(b.get(), where, RuleViolated::Other,
                "counting quantifier not allowed here");
      if (b->vars.size() != 1)
        violate(b.get(), where, RuleViolated::Other,
                "counting quantifier binding more than one variable");
    }
    auto free = free_variables(*b);
    if (free.size() > 1)
      violate(b.get(), where, RuleViolated::OneDimensionality,
              "block leaves " + join(free) + " free");

    std::set<std::string> live;
    bool have_live = false;
    skeleton(b->kids[0], where + "/body", live, have_live);
    rep.live_sets[b.get()] = live;
  }

  // Walks the Boolean skeleton of a block body, collecting the uniform set.
  void skeleton(const Fptr& f, const std::string& where, std::set<std::string>& live,
                bool& have_live) {
    switch (f->kind) {
      case Kind::True:
      case Kind::False:
      case Kind::Eq: return;
      case Kind::Atom: {
        auto dv = distinct_vars(*f);
        if (dv.size() <= 1) return; // unary atom, rule 1
        if (!have_live) {
          live = dv;
          have_live = true;
        } else if (dv != live) {
          violate(f.get(), where, RuleViolated::Uniformity,
                  "atom " + print(f) + " over " + join(dv) +
                      " in a block whose other atoms use " + join(live));
        }
        return;
      }
      case Kind::Not: skeleton(f->kids[0], where + "/~", live, have_live); return;
      case Kind::And:
      case Kind::Or: {
        const char* tag = f->kind == Kind::And ? "/&" : "/|";
        for (std::size_t i = 0; i < f->kids.size(); ++i)
          skeleton(f->kids[i], where + tag + std::to_string(i), live, have_live);
        return;
      }
      case Kind::Block: block(f, where); return; // member of U
    }
  }
};

} // namespace

FragmentReport validate_fragment(const Fptr& phi, bool allow_counting) {
  Checker c{allow_counting, {}};
  c.formula(phi, "");
  c.rep.member = c.rep.violations.empty();
  return c.rep;
}

std::set<std::string> live_variables(const Fptr& matrix,
                                     const std::vector<std::string>& block_vars) {
  if (!quantifier_free(*matrix))
    throw InputError("live_variables: matrix is not quantifier-free");
  std::set<std::string> allowed(block_vars.begin(), block_vars.end());
  for (auto& v : free_variables(*matrix))
    if (!allowed.count(v))
      throw InputError("live_variables: variable " + v + " not among the block variables");

  std::set<std::string> live;
  bool have = false;
  struct Walk {
    std::set<std::string>& live;
    bool& have;
    void operator()(const Formula& f) {
      if (f.kind == Kind::Atom) {
        std::set<std::string> dv(f.vars.begin(), f.vars.end());
        if (dv.size() >= 2) {
          if (!have) {
            live = dv;
            have = true;
          } else if (dv != live) {
            throw InputError("uniformity violation: atom " + print(f) + " uses " +
                             join(dv) + ", expected " + join(live));
          }
        }
      }
      for (auto& k : f.kids) (*this)(*k);
    }
  } walk{live, have};
  walk(*matrix);
  return live;
}

} // namespace uf1
