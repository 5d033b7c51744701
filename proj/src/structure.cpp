#include "uf1/structure.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "uf1/errors.hpp"

namespace uf1 {

void Structure::add(const std::string& rel, std::vector<int> tup) {
  int ar = vocab.arity_or_throw(rel);
  if ((int)tup.size() != ar)
    throw InputError("tuple of length " + std::to_string(tup.size()) + " for " +
                     rel + "/" + std::to_string(ar));
  for (int e : tup)
    if (e < 0 || e >= size)
      throw InputError("element " + std::to_string(e) + " out of bounds for domain " +
                       std::to_string(size));
  rels[rel].insert(std::move(tup));
}

void Structure::validate() const {
  if (size < 1) throw InputError("domain must be non-empty");
  for (auto& [rel, tuples] : rels) {
    int ar = vocab.arity_or_throw(rel);
    for (auto& t : tuples) {
      if ((int)t.size() != ar)
        throw InputError("tuple of length " + std::to_string(t.size()) + " for " +
                         rel + "/" + std::to_string(ar));
      for (int e : t)
        if (e < 0 || e >= size)
          throw InputError("element " + std::to_string(e) +
                           " out of bounds for domain " + std::to_string(size));
    }
  }
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct STok {
  enum T { Ident, Int, Slash, EqSign, LBrace, RBrace, LParen, RParen, End } t;
  std::string text;
  long value = 0;
  int line = 1, col = 1;
};

struct SLexer {
  const std::string& src;
  std::size_t pos = 0;
  int line = 1, col = 1;

  explicit SLexer(const std::string& s) : src(s) {}

  void bump(char c) {
    ++pos;
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }

  STok next() {
    while (pos < src.size()) {
      char c = src[pos];
      if (c == '#') {
        while (pos < src.size() && src[pos] != '\n') bump(src[pos]);
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == ';' || c == ',') {
        bump(c);
      } else {
        break;
      }
    }
    STok tok;
    tok.line = line;
    tok.col = col;
    if (pos >= src.size()) {
      tok.t = STok::End;
      return tok;
    }
    char c = src[pos];
    if (std::isalpha((unsigned char)c) || c == '_') {
      std::string s;
      while (pos < src.size() &&
             (std::isalnum((unsigned char)src[pos]) || src[pos] == '_')) {
        s += src[pos];
        bump(src[pos]);
      }
      tok.t = STok::Ident;
      tok.text = std::move(s);
      return tok;
    }
    if (std::isdigit((unsigned char)c)) {
      long v = 0;
      while (pos < src.size() && std::isdigit((unsigned char)src[pos])) {
        v = v * 10 + (src[pos] - '0');
        bump(src[pos]);
      }
      tok.t = STok::Int;
      tok.value = v;
      return tok;
    }
    auto one = [&](STok::T t) {
      bump(c);
      tok.t = t;
      return tok;
    };
    switch (c) {
      case '/': return one(STok::Slash);
      case '=': return one(STok::EqSign);
      case '{': return one(STok::LBrace);
      case '}': return one(STok::RBrace);
      case '(': return one(STok::LParen);
      case ')': return one(STok::RParen);
      default: throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }
  }
};

} // namespace

Structure parse_structure(const std::string& text) {
  SLexer lex(text);
  auto fail = [](const STok& t, const std::string& msg) -> void {
    throw ParseError(t.line, t.col, msg);
  };
  auto expect = [&](STok::T t, const char* what) {
    STok tok = lex.next();
    if (tok.t != t) fail(tok, std::string("expected ") + what);
    return tok;
  };

  STok t = lex.next();
  if (t.t != STok::Ident || t.text != "domain") fail(t, "expected 'domain = N'");
  expect(STok::EqSign, "'='");
  STok n = expect(STok::Int, "domain size");
  if (n.value < 1) fail(n, "domain must be non-empty");

  Structure a;
  a.size = (int)n.value;

  for (;;) {
    STok head = lex.next();
    if (head.t == STok::End) break;
    if (head.t != STok::Ident) fail(head, "expected relation declaration");
    std::string name = head.text;
    if (name == "rel") name = expect(STok::Ident, "relation name").text;
    expect(STok::Slash, "'/'");
    STok ar = expect(STok::Int, "arity");
    if (ar.value < 1) fail(ar, "arity must be positive");
    if (a.vocab.contains(name)) fail(head, "relation " + name + " declared twice");
    a.vocab.add(name, (int)ar.value);
    expect(STok::EqSign, "'='");
    expect(STok::LBrace, "'{'");
    for (;;) {
      STok tk = lex.next();
      if (tk.t == STok::RBrace) break;
      if (tk.t != STok::LParen) fail(tk, "expected '(' or '}'");
      std::vector<int> tup;
      for (;;) {
        STok e = lex.next();
        if (e.t == STok::RParen) break;
        if (e.t != STok::Int) fail(e, "expected element index");
        tup.push_back((int)e.value);
      }
      if ((int)tup.size() != ar.value)
        fail(tk, "tuple of length " + std::to_string(tup.size()) + " for " + name +
                     "/" + std::to_string(ar.value));
      for (int e : tup)
        if (e < 0 || e >= a.size)
          fail(tk, "element " + std::to_string(e) + " out of bounds for domain " +
                       std::to_string(a.size));
      a.rels[name].insert(std::move(tup));
    }
  }
  return a;
}

std::string write_structure(const Structure& a) {
  std::ostringstream out;
  out << "domain = " << a.size << "\n";
  for (auto& name : a.vocab.symbols()) {
    out << "rel " << name << "/" << *a.vocab.arity(name) << " = {";
    auto it = a.rels.find(name);
    if (it != a.rels.end()) {
      for (auto& tup : it->second) {
        out << " (";
        for (std::size_t i = 0; i < tup.size(); ++i) {
          if (i) out << " ";
          out << tup[i];
        }
        out << ")";
      }
    }
    out << " }\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Types and tables

std::string to_string(const OneType& t) {
  std::string out = "{";
  bool first = true;
  for (auto& [r, pos] : t.diag) {
    if (!first) out += " ";
    if (!pos) out += "~";
    out += r;
    first = false;
  }
  return out + "}";
}

std::vector<std::vector<int>> onto_patterns(int m, int k) {
  std::vector<std::vector<int>> out;
  if (m < k) return out;
  std::vector<int> cur(m, 0);
  for (;;) {
    std::vector<bool> used(k, false);
    for (int x : cur) used[x] = true;
    if (std::all_of(used.begin(), used.end(), [](bool b) { return b; }))
      out.push_back(cur);
    int i = m - 1;
    while (i >= 0 && cur[i] == k - 1) cur[i--] = 0;
    if (i < 0) break;
    ++cur[i];
  }
  return out;
}

OneType one_type(const Structure& a, int elem) {
  if (elem < 0 || elem >= a.size)
    throw InputError("element " + std::to_string(elem) + " out of bounds");
  OneType t;
  for (auto& name : a.vocab.symbols()) {
    std::vector<int> tup(*a.vocab.arity(name), elem);
    t.diag[name] = a.holds(name, tup);
  }
  return t;
}

KTable k_table(const Structure& a, const std::vector<int>& tuple) {
  int k = (int)tuple.size();
  if (k < 1) throw InputError("k_table needs a non-empty tuple");
  std::set<int> distinct(tuple.begin(), tuple.end());
  if ((int)distinct.size() != k)
    throw InputError("k_table requires pairwise distinct elements");
  for (int e : tuple)
    if (e < 0 || e >= a.size)
      throw InputError("element " + std::to_string(e) + " out of bounds");

  KTable t;
  t.k = k;
  for (auto& name : a.vocab.symbols()) {
    int m = *a.vocab.arity(name);
    for (auto& pat : onto_patterns(m, k)) {
      std::vector<int> tup(m);
      for (int i = 0; i < m; ++i) tup[i] = tuple[pat[i]];
      t.lit[{name, pat}] = a.holds(name, tup);
    }
  }
  return t;
}

KTable as_ktable(const OneType& t) {
  KTable k;
  k.k = 1;
  for (auto& [name, pol] : t.diag) {
    // arity unknown here; a 1-table's only pattern per symbol is all-zero,
    // but its length is the symbol's arity, so this helper keys by name with
    // an empty pattern. Use only for comparisons against other as_ktable
    // results or via one_type-aware code.
    k.lit[{name, {}}] = pol;
  }
  return k;
}

KTable permute_ktable(const KTable& t, const std::vector<int>& perm) {
  if ((int)perm.size() != t.k) throw InputError("permute_ktable: bad permutation size");
  KTable out;
  out.k = t.k;
  for (auto& [key, pol] : t.lit) {
    std::vector<int> pat = key.second;
    for (auto& x : pat) x = perm[x];
    out.lit[{key.first, pat}] = pol;
  }
  return out;
}

std::vector<OneType> all_one_types(const Vocabulary& vocab) {
  auto syms = vocab.symbols();
  std::vector<OneType> out;
  std::size_t n = syms.size();
  if (n > 20) throw InputError("vocabulary too large to enumerate 1-types");
  for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
    OneType t;
    for (std::size_t i = 0; i < n; ++i) t.diag[syms[i]] = (mask >> i) & 1;
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<KTable> all_k_tables(const Vocabulary& vocab, int k) {
  std::vector<std::pair<std::string, std::vector<int>>> keys;
  for (auto& name : vocab.symbols())
    for (auto& pat : onto_patterns(*vocab.arity(name), k)) keys.push_back({name, pat});
  if (keys.size() > 24) throw InputError("vocabulary too large to enumerate k-tables");
  std::vector<KTable> out;
  for (std::size_t mask = 0; mask < (std::size_t(1) << keys.size()); ++mask) {
    KTable t;
    t.k = k;
    for (std::size_t i = 0; i < keys.size(); ++i) t.lit[keys[i]] = (mask >> i) & 1;
    out.push_back(std::move(t));
  }
  return out;
}

} // namespace uf1
