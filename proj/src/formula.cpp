#include "uf1/formula.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "uf1/errors.hpp"

namespace uf1 {

// ---------------------------------------------------------------------------
// Builders

Fptr Formula::truth(bool b) {
  auto f = std::make_shared<Formula>();
  f->kind = b ? Kind::True : Kind::False;
  return f;
}

Fptr Formula::atom(std::string rel, std::vector<std::string> args) {
  if (args.empty()) throw InputError("atom " + rel + " needs at least one argument");
  auto f = std::make_shared<Formula>();
  f->kind = Kind::Atom;
  f->rel = std::move(rel);
  f->vars = std::move(args);
  return f;
}

Fptr Formula::eq(std::string a, std::string b) {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::Eq;
  f->vars = {std::move(a), std::move(b)};
  return f;
}

Fptr Formula::neg(Fptr g) {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::Not;
  f->kids = {std::move(g)};
  return f;
}

static Fptr nary(Kind k, std::vector<Fptr> kids) {
  std::vector<Fptr> flat;
  for (auto& c : kids) {
    if (c->kind == k)
      flat.insert(flat.end(), c->kids.begin(), c->kids.end());
    else
      flat.push_back(std::move(c));
  }
  if (flat.empty()) return Formula::truth(k == Kind::And);
  if (flat.size() == 1) return flat[0];
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->kids = std::move(flat);
  return f;
}

Fptr Formula::conj(std::vector<Fptr> kids) { return nary(Kind::And, std::move(kids)); }
Fptr Formula::disj(std::vector<Fptr> kids) { return nary(Kind::Or, std::move(kids)); }

Fptr Formula::block(Quant q, int count, std::vector<std::string> bound, Fptr body) {
  if (bound.empty()) throw InputError("quantifier block needs at least one variable");
  std::set<std::string> seen;
  for (auto& v : bound)
    if (!seen.insert(v).second)
      throw InputError("duplicate bound variable " + v + " in one block");
  bool counting = (q == Quant::AtLeast || q == Quant::AtMost || q == Quant::Exactly);
  if (counting && bound.size() != 1)
    throw InputError("a counting quantifier binds exactly one variable");
  if (counting && count < 0) throw InputError("counting quantifier needs k >= 0");
  auto f = std::make_shared<Formula>();
  f->kind = Kind::Block;
  f->q = q;
  f->count = counting ? count : 0;
  f->vars = std::move(bound);
  f->kids = {std::move(body)};
  return f;
}

// ---------------------------------------------------------------------------
// Structural equality and simple walks

bool same(const Formula& a, const Formula& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Kind::True:
    case Kind::False: return true;
    case Kind::Atom: return a.rel == b.rel && a.vars == b.vars;
    case Kind::Eq: return a.vars == b.vars;
    case Kind::Not: return same(*a.kids[0], *b.kids[0]);
    case Kind::And:
    case Kind::Or: {
      if (a.kids.size() != b.kids.size()) return false;
      for (std::size_t i = 0; i < a.kids.size(); ++i)
        if (!same(*a.kids[i], *b.kids[i])) return false;
      return true;
    }
    case Kind::Block:
      return a.q == b.q && a.count == b.count && a.vars == b.vars &&
             same(*a.kids[0], *b.kids[0]);
  }
  return false;
}

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> out;
  switch (f.kind) {
    case Kind::True:
    case Kind::False: break;
    case Kind::Atom:
    case Kind::Eq: out.insert(f.vars.begin(), f.vars.end()); break;
    case Kind::Not:
    case Kind::And:
    case Kind::Or:
      for (auto& k : f.kids) {
        auto s = free_variables(*k);
        out.insert(s.begin(), s.end());
      }
      break;
    case Kind::Block: {
      out = free_variables(*f.kids[0]);
      for (auto& v : f.vars) out.erase(v);
      break;
    }
  }
  return out;
}

int node_count(const Formula& f) {
  int n = 1;
  for (auto& k : f.kids) n += node_count(*k);
  return n;
}

bool has_counting(const Formula& f) {
  if (f.is_counting()) return true;
  for (auto& k : f.kids)
    if (has_counting(*k)) return true;
  return false;
}

bool quantifier_free(const Formula& f) {
  if (f.kind == Kind::Block) return false;
  for (auto& k : f.kids)
    if (!quantifier_free(*k)) return false;
  return true;
}

std::vector<Fptr> conjuncts(const Fptr& f) {
  if (f->kind == Kind::And) return f->kids;
  return {f};
}

Vocabulary infer_vocabulary(const Formula& f) {
  Vocabulary v;
  struct Walk {
    Vocabulary& v;
    void operator()(const Formula& g) {
      if (g.kind == Kind::Atom) v.add(g.rel, (int)g.vars.size());
      for (auto& k : g.kids) (*this)(*k);
    }
  } walk{v};
  walk(f);
  return v;
}

// ---------------------------------------------------------------------------
// Substitution

static std::string fresh_name(const std::set<std::string>& avoid, const std::string& base) {
  for (int i = 1;; ++i) {
    std::string cand = base + "_" + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

Fptr substitute_free(const Fptr& f, const std::map<std::string, std::string>& ren) {
  if (ren.empty()) return f;
  switch (f->kind) {
    case Kind::True:
    case Kind::False: return f;
    case Kind::Atom:
    case Kind::Eq: {
      auto g = std::make_shared<Formula>(*f);
      for (auto& v : g->vars) {
        auto it = ren.find(v);
        if (it != ren.end()) v = it->second;
      }
      return g;
    }
    case Kind::Not:
    case Kind::And:
    case Kind::Or: {
      auto g = std::make_shared<Formula>(*f);
      for (auto& k : g->kids) k = substitute_free(k, ren);
      return g;
    }
    case Kind::Block: {
      // Drop entries shadowed by the binder; alpha-rename bound variables
      // that collide with the substitution's targets.
      std::map<std::string, std::string> inner = ren;
      for (auto& v : f->vars) inner.erase(v);
      if (inner.empty()) return f;
      std::set<std::string> targets;
      for (auto& [from, to] : inner) targets.insert(to);
      std::vector<std::string> bound = f->vars;
      Fptr body = f->kids[0];
      std::map<std::string, std::string> alpha;
      std::set<std::string> avoid = targets;
      for (auto& [from, to] : inner) avoid.insert(from);
      auto bodyFree = free_variables(*body);
      avoid.insert(bodyFree.begin(), bodyFree.end());
      for (auto& b : bound) avoid.insert(b);
      for (auto& b : bound) {
        if (targets.count(b)) {
          std::string nb = fresh_name(avoid, b);
          avoid.insert(nb);
          alpha[b] = nb;
          b = nb;
        }
      }
      if (!alpha.empty()) body = substitute_free(body, alpha);
      body = substitute_free(body, inner);
      return Formula::block(f->q, f->count, std::move(bound), std::move(body));
    }
  }
  return f;
}

Fptr substitute_unary_atom(const Fptr& f, const std::string& name,
                           const std::string& defVar, const Fptr& def) {
  switch (f->kind) {
    case Kind::True:
    case Kind::False:
    case Kind::Eq: return f;
    case Kind::Atom: {
      if (f->rel != name) return f;
      if (f->vars.size() != 1)
        throw InternalError("substitute_unary_atom: " + name + " is not unary");
      if (f->vars[0] == defVar) return def;
      return substitute_free(def, {{defVar, f->vars[0]}});
    }
    case Kind::Not:
    case Kind::And:
    case Kind::Or: {
      auto g = std::make_shared<Formula>(*f);
      for (auto& k : g->kids) k = substitute_unary_atom(k, name, defVar, def);
      return g;
    }
    case Kind::Block: {
      auto body = substitute_unary_atom(f->kids[0], name, defVar, def);
      if (body == f->kids[0]) return f;
      return Formula::block(f->q, f->count, f->vars, std::move(body));
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// NNF

Fptr to_nnf(const Fptr& f) {
  switch (f->kind) {
    case Kind::True:
    case Kind::False:
    case Kind::Atom:
    case Kind::Eq: return f;
    case Kind::And:
    case Kind::Or: {
      std::vector<Fptr> kids;
      kids.reserve(f->kids.size());
      for (auto& k : f->kids) kids.push_back(to_nnf(k));
      return f->kind == Kind::And ? Formula::conj(std::move(kids))
                                  : Formula::disj(std::move(kids));
    }
    case Kind::Block:
      return Formula::block(f->q, f->count, f->vars, to_nnf(f->kids[0]));
    case Kind::Not: {
      const Fptr& g = f->kids[0];
      switch (g->kind) {
        case Kind::True: return Formula::truth(false);
        case Kind::False: return Formula::truth(true);
        case Kind::Atom:
        case Kind::Eq: return f;
        case Kind::Not: return to_nnf(g->kids[0]);
        case Kind::And:
        case Kind::Or: {
          std::vector<Fptr> kids;
          kids.reserve(g->kids.size());
          for (auto& k : g->kids) kids.push_back(to_nnf(Formula::neg(k)));
          return g->kind == Kind::And ? Formula::disj(std::move(kids))
                                      : Formula::conj(std::move(kids));
        }
        case Kind::Block: {
          Fptr nbody = to_nnf(Formula::neg(g->kids[0]));
          switch (g->q) {
            case Quant::Exists:
              return Formula::block(Quant::Forall, 0, g->vars, std::move(nbody));
            case Quant::Forall:
              return Formula::block(Quant::Exists, 0, g->vars, std::move(nbody));
            case Quant::AtLeast:
              // not "at least k" == "at most k-1"; k == 0 is constant false
              if (g->count == 0) return Formula::truth(false);
              return Formula::block(Quant::AtMost, g->count - 1, g->vars,
                                    to_nnf(g->kids[0]));
            case Quant::AtMost:
              return Formula::block(Quant::AtLeast, g->count + 1, g->vars,
                                    to_nnf(g->kids[0]));
            case Quant::Exactly:
              // no single dual counting quantifier; keep the negation
              return Formula::neg(Formula::block(g->q, g->count, g->vars,
                                                 to_nnf(g->kids[0])));
          }
        }
      }
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Printer

namespace {
// precedence: Or 1, And 2, Not 3, leaves 4. Blocks print with the lowest
// precedence so that they are parenthesized inside any connective, while a
// quantifier body extends maximally right.
int prec_of(const Formula& f) {
  switch (f.kind) {
    case Kind::Or: return 1;
    case Kind::And: return 2;
    case Kind::Not: return 3;
    case Kind::Block: return 0;
    default: return 4;
  }
}

std::string quant_token(Quant q, int count) {
  switch (q) {
    case Quant::Exists: return "E";
    case Quant::Forall: return "A";
    case Quant::AtLeast: return "E[>=" + std::to_string(count) + "]";
    case Quant::AtMost: return "E[<=" + std::to_string(count) + "]";
    case Quant::Exactly: return "E[=" + std::to_string(count) + "]";
  }
  return "?";
}

void print_rec(const Formula& f, int parent, std::string& out) {
  int self = prec_of(f);
  bool paren = self < parent;
  if (paren) out += "(";
  switch (f.kind) {
    case Kind::True: out += "true"; break;
    case Kind::False: out += "false"; break;
    case Kind::Atom: {
      out += f.rel;
      out += "(";
      for (std::size_t i = 0; i < f.vars.size(); ++i) {
        if (i) out += ",";
        out += f.vars[i];
      }
      out += ")";
      break;
    }
    case Kind::Eq:
      out += f.vars[0];
      out += " = ";
      out += f.vars[1];
      break;
    case Kind::Not:
      out += "~";
      print_rec(*f.kids[0], 3, out);
      break;
    case Kind::And:
    case Kind::Or: {
      const char* sep = f.kind == Kind::And ? " & " : " | ";
      for (std::size_t i = 0; i < f.kids.size(); ++i) {
        if (i) out += sep;
        print_rec(*f.kids[i], self, out);
      }
      break;
    }
    case Kind::Block: {
      out += quant_token(f.q, f.count);
      for (auto& v : f.vars) {
        out += " ";
        out += v;
      }
      out += ". ";
      print_rec(*f.kids[0], 0, out);
      break;
    }
  }
  if (paren) out += ")";
}
} // namespace

std::string print(const Formula& f) {
  std::string out;
  print_rec(f, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Lexer (shared shape with the structure/tile parsers, local to formulas)

namespace {

enum class Tok : unsigned char {
  Ident, Int, LParen, RParen, Comma, Dot, EqSign, Tilde, Amp, Pipe,
  Arrow, Iff, LBrack, RBrack, Ge, Le, End
};

struct Token {
  Tok t;
  std::string text;
  long value = 0;
  int line = 1, col = 1;
};

struct Lexer {
  const std::string& src;
  std::size_t pos = 0;
  int line = 1, col = 1;

  explicit Lexer(const std::string& s) : src(s) {}

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line, col, msg); }

  void bump(char c) {
    ++pos;
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }

  void skip_ws() {
    while (pos < src.size()) {
      char c = src[pos];
      if (c == '#') {
        while (pos < src.size() && src[pos] != '\n') bump(src[pos]);
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        bump(c);
      } else {
        break;
      }
    }
  }

  Token next() {
    skip_ws();
    Token tok;
    tok.line = line;
    tok.col = col;
    if (pos >= src.size()) {
      tok.t = Tok::End;
      return tok;
    }
    char c = src[pos];
    auto one = [&](Tok t) {
      bump(c);
      tok.t = t;
      return tok;
    };
    if (std::isalpha((unsigned char)c) || c == '_') {
      std::string s;
      while (pos < src.size() &&
             (std::isalnum((unsigned char)src[pos]) || src[pos] == '_' || src[pos] == '\'')) {
        s += src[pos];
        bump(src[pos]);
      }
      tok.t = Tok::Ident;
      tok.text = std::move(s);
      return tok;
    }
    if (std::isdigit((unsigned char)c)) {
      long v = 0;
      while (pos < src.size() && std::isdigit((unsigned char)src[pos])) {
        v = v * 10 + (src[pos] - '0');
        bump(src[pos]);
      }
      tok.t = Tok::Int;
      tok.value = v;
      return tok;
    }
    switch (c) {
      case '(': return one(Tok::LParen);
      case ')': return one(Tok::RParen);
      case ',': return one(Tok::Comma);
      case '.': return one(Tok::Dot);
      case '~': return one(Tok::Tilde);
      case '&': return one(Tok::Amp);
      case '|': return one(Tok::Pipe);
      case '[': return one(Tok::LBrack);
      case ']': return one(Tok::RBrack);
      case '=': return one(Tok::EqSign);
      case '<': {
        bump(c);
        if (pos < src.size() && src[pos] == '-') {
          bump('-');
          if (pos < src.size() && src[pos] == '>') {
            bump('>');
            tok.t = Tok::Iff;
            return tok;
          }
          fail("expected '>' after '<-'");
        }
        if (pos < src.size() && src[pos] == '=') {
          bump('=');
          tok.t = Tok::Le;
          return tok;
        }
        fail("stray '<'");
      }
      case '>': {
        bump(c);
        if (pos < src.size() && src[pos] == '=') {
          bump('=');
          tok.t = Tok::Ge;
          return tok;
        }
        fail("stray '>'");
      }
      case '-': {
        bump(c);
        if (pos < src.size() && src[pos] == '>') {
          bump('>');
          tok.t = Tok::Arrow;
          return tok;
        }
        fail("expected '>' after '-'");
      }
      default: fail(std::string("unexpected character '") + c + "'");
    }
  }
};

struct Parser {
  std::vector<Token> toks;
  std::size_t at = 0;

  explicit Parser(const std::string& text) {
    Lexer lex(text);
    for (;;) {
      Token t = lex.next();
      toks.push_back(t);
      if (t.t == Tok::End) break;
    }
  }

  const Token& peek(int k = 0) const {
    std::size_t i = at + k;
    return i < toks.size() ? toks[i] : toks.back();
  }
  Token take() { return toks[at < toks.size() - 1 ? at++ : at]; }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw ParseError(t.line, t.col, msg);
  }

  bool accept(Tok t) {
    if (peek().t == t) {
      ++at;
      return true;
    }
    return false;
  }
  Token expect(Tok t, const char* what) {
    if (peek().t != t) fail(peek(), std::string("expected ") + what);
    return take();
  }

  Fptr parse() {
    Fptr f = iff();
    if (peek().t != Tok::End) fail(peek(), "trailing input");
    return f;
  }

  Fptr iff() {
    Fptr l = impl();
    while (peek().t == Tok::Iff) {
      take();
      Fptr r = impl();
      // a <-> b  ==  (~a | b) & (~b | a)
      l = Formula::conj2(Formula::disj2(Formula::neg(l), r),
                         Formula::disj2(Formula::neg(r), l));
    }
    return l;
  }

  Fptr impl() {
    Fptr l = or_level();
    if (peek().t == Tok::Arrow) {
      take();
      Fptr r = impl(); // right associative
      return Formula::disj2(Formula::neg(l), r);
    }
    return l;
  }

  Fptr or_level() {
    std::vector<Fptr> kids{and_level()};
    while (peek().t == Tok::Pipe) {
      take();
      kids.push_back(and_level());
    }
    return kids.size() == 1 ? kids[0] : Formula::disj(std::move(kids));
  }

  Fptr and_level() {
    std::vector<Fptr> kids{unary()};
    while (peek().t == Tok::Amp) {
      take();
      kids.push_back(unary());
    }
    return kids.size() == 1 ? kids[0] : Formula::conj(std::move(kids));
  }

  Fptr unary() {
    if (accept(Tok::Tilde)) return Formula::neg(unary());
    return primary();
  }

  bool at_quantifier() const {
    const Token& t = peek();
    if (t.t != Tok::Ident) return false;
    if (t.text == "A") return peek(1).t == Tok::Ident;
    if (t.text == "E") return peek(1).t == Tok::Ident || peek(1).t == Tok::LBrack;
    return false;
  }

  Fptr primary() {
    const Token& t = peek();
    if (t.t == Tok::LParen) {
      take();
      Fptr f = iff();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (at_quantifier()) return quantified();
    if (t.t == Tok::Ident) {
      if (t.text == "true") {
        take();
        return Formula::truth(true);
      }
      if (t.text == "false") {
        take();
        return Formula::truth(false);
      }
      Token name = take();
      if (accept(Tok::LParen)) {
        std::vector<std::string> args;
        args.push_back(expect(Tok::Ident, "variable").text);
        while (accept(Tok::Comma)) args.push_back(expect(Tok::Ident, "variable").text);
        expect(Tok::RParen, "')'");
        return Formula::atom(name.text, std::move(args));
      }
      if (accept(Tok::EqSign)) {
        Token rhs = expect(Tok::Ident, "variable");
        return Formula::eq(name.text, rhs.text);
      }
      fail(peek(), "expected '(' or '=' after identifier " + name.text);
    }
    fail(t, "expected a formula");
  }

  Fptr quantified() {
    Token kw = take(); // A or E
    Quant q = Quant::Exists;
    int count = 0;
    if (kw.text == "A") {
      q = Quant::Forall;
    } else if (peek().t == Tok::LBrack) {
      take();
      switch (peek().t) {
        case Tok::Ge: take(); q = Quant::AtLeast; break;
        case Tok::Le: take(); q = Quant::AtMost; break;
        case Tok::EqSign: take(); q = Quant::Exactly; break;
        default: fail(peek(), "expected '>=', '<=' or '=' in counting quantifier");
      }
      count = (int)expect(Tok::Int, "integer").value;
      expect(Tok::RBrack, "']'");
    }
    std::vector<std::string> bound;
    while (peek().t == Tok::Ident) bound.push_back(take().text);
    if (bound.empty()) fail(peek(), "quantifier needs at least one variable");
    Token dot = expect(Tok::Dot, "'.' after quantified variables");
    bool counting = (q == Quant::AtLeast || q == Quant::AtMost || q == Quant::Exactly);
    if (counting && bound.size() != 1)
      fail(dot, "a counting quantifier binds exactly one variable");
    Fptr body = iff();
    try {
      return Formula::block(q, count, std::move(bound), std::move(body));
    } catch (const InputError& e) {
      fail(kw, e.what());
    }
  }
};

void check_vocab(const Formula& f, const Vocabulary& vocab) {
  if (f.kind == Kind::Atom) {
    auto a = vocab.arity(f.rel);
    if (!a) throw InputError("unknown relation name: " + f.rel);
    if (*a != (int)f.vars.size())
      throw InputError("arity mismatch: " + f.rel + " used with " +
                       std::to_string(f.vars.size()) + " arguments, declared " +
                       std::to_string(*a));
  }
  for (auto& k : f.kids) check_vocab(*k, vocab);
}

} // namespace

Fptr parse_formula(const std::string& text) {
  Parser p(text);
  Fptr f = p.parse();
  infer_vocabulary(*f); // rejects internally inconsistent arities
  return f;
}

Fptr parse_formula(const std::string& text, const Vocabulary& vocab) {
  Parser p(text);
  Fptr f = p.parse();
  check_vocab(*f, vocab);
  return f;
}

int token_count(const Formula& f) {
  std::string s = print(f);
  Lexer lex(s);
  int n = 0;
  for (;;) {
    Token t = lex.next();
    if (t.t == Tok::End) break;
    ++n;
  }
  return n;
}

} // namespace uf1
