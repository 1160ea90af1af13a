#include "binhk/parser.hpp"

#include <algorithm>
#include <cctype>

namespace binhk {

namespace {

struct Token {
  enum Kind { Ident, Number, Punct, End } kind;
  std::string text;
  long long value = 0;
  int line = 0, col = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string &src) : src_(src) { advance(); }

  const Token &peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string &msg) const {
    throw ParseError(msg, tok_.line, tok_.col);
  }

  Token expect_punct(char c) {
    if (tok_.kind != Token::Punct || tok_.text[0] != c)
      fail(std::string("expected '") + c + "'");
    return next();
  }

  std::string expect_ident(const char *what) {
    if (tok_.kind != Token::Ident) fail(std::string("expected ") + what);
    return next().text;
  }

  long long expect_number(const char *what) {
    if (tok_.kind != Token::Number) fail(std::string("expected ") + what);
    return next().value;
  }

  bool at_keyword(const char *kw) const {
    return tok_.kind == Token::Ident && tok_.text == kw;
  }

  bool at_punct(char c) const {
    return tok_.kind == Token::Punct && tok_.text[0] == c;
  }

 private:
  void advance() {
    skip_space();
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= src_.size()) {
      tok_.kind = Token::End;
      tok_.text.clear();
      return;
    }
    char c = src_[pos_];
    if (std::isalpha((unsigned char)c) || c == '_') {
      std::string s;
      while (pos_ < src_.size() &&
             (std::isalnum((unsigned char)src_[pos_]) || src_[pos_] == '_' ||
              src_[pos_] == '\''))
        s += take();
      tok_.kind = Token::Ident;
      tok_.text = std::move(s);
      return;
    }
    if (std::isdigit((unsigned char)c) ||
        (c == '-' && pos_ + 1 < src_.size() &&
         std::isdigit((unsigned char)src_[pos_ + 1]))) {
      std::string s;
      if (c == '-') s += take();
      while (pos_ < src_.size() && std::isdigit((unsigned char)src_[pos_]))
        s += take();
      tok_.kind = Token::Number;
      tok_.text = s;
      tok_.value = std::stoll(s);
      return;
    }
    tok_.kind = Token::Punct;
    tok_.text = std::string(1, take());
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') take();
      } else if (std::isspace((unsigned char)c)) {
        take();
      } else {
        break;
      }
    }
  }

  char take() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  const std::string &src_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

// <lincomb> := term ('+' term)* ; term := [number] ident
PVec parse_lincomb(Lexer &lx, const Presentation &p) {
  PVec v(p.r, 0);
  for (;;) {
    long long coeff = 1;
    if (lx.peek().kind == Token::Number) {
      coeff = lx.expect_number("coefficient");
      if (coeff < 0) lx.fail("negative coefficient");
    }
    std::string id = lx.expect_ident("generator name");
    auto it = std::find(p.gen_names.begin(), p.gen_names.end(), id);
    if (it == p.gen_names.end()) lx.fail("unknown generator '" + id + "'");
    v[it - p.gen_names.begin()] += coeff;
    if (lx.at_punct('+')) {
      lx.next();
      continue;
    }
    break;
  }
  return v;
}

Presentation parse_binoid_block(Lexer &lx) {
  Presentation p;
  p.name = lx.expect_ident("binoid name");
  lx.expect_punct('{');
  while (!lx.at_punct('}')) {
    std::string kw = lx.expect_ident("'gens' or 'rel'");
    lx.expect_punct(':');
    if (kw == "gens") {
      while (lx.peek().kind == Token::Ident) {
        std::string id = lx.next().text;
        if (std::find(p.gen_names.begin(), p.gen_names.end(), id) !=
            p.gen_names.end())
          lx.fail("duplicate generator name '" + id + "'");
        p.gen_names.push_back(id);
      }
      p.r = (int)p.gen_names.size();
    } else if (kw == "rel") {
      Relation rel;
      rel.lhs = parse_lincomb(lx, p);
      lx.expect_punct('=');
      if (lx.at_keyword("inf")) {
        lx.next();
        rel.monomial = true;
      } else {
        rel.rhs = parse_lincomb(lx, p);
      }
      p.relations.push_back(std::move(rel));
    } else {
      lx.fail("unknown key '" + kw + "' in binoid block");
    }
    lx.expect_punct(';');
  }
  lx.expect_punct('}');
  try {
    validate(p);
  } catch (const ValidationError &e) {
    lx.fail(e.what());
  }
  return p;
}

IdealSpec parse_ideal_block(Lexer &lx, const Document &doc) {
  IdealSpec id;
  id.name = lx.expect_ident("ideal name");
  if (!lx.at_keyword("of")) lx.fail("expected 'of'");
  lx.next();
  id.owner = lx.expect_ident("binoid name");
  auto it = doc.binoids.find(id.owner);
  if (it == doc.binoids.end())
    lx.fail("ideal refers to unknown binoid '" + id.owner + "'");
  const Presentation &p = it->second;
  lx.expect_punct('{');
  while (!lx.at_punct('}')) {
    std::string kw = lx.expect_ident("'gen'");
    if (kw != "gen") lx.fail("unknown key '" + kw + "' in ideal block");
    lx.expect_punct(':');
    id.generators.push_back(parse_lincomb(lx, p));
    lx.expect_punct(';');
  }
  lx.expect_punct('}');
  try {
    validate(p, id);
  } catch (const ValidationError &e) {
    lx.fail(e.what());
  }
  return id;
}

SimplicialComplexInput parse_simplicial_block(Lexer &lx) {
  SimplicialComplexInput sc;
  sc.name = lx.expect_ident("complex name");
  lx.expect_punct('{');
  while (!lx.at_punct('}')) {
    std::string kw = lx.expect_ident("'vertices' or 'facet'");
    lx.expect_punct(':');
    if (kw == "vertices") {
      while (lx.peek().kind == Token::Ident) {
        std::string id = lx.next().text;
        if (std::find(sc.vertices.begin(), sc.vertices.end(), id) !=
            sc.vertices.end())
          lx.fail("duplicate vertex '" + id + "'");
        sc.vertices.push_back(id);
      }
    } else if (kw == "facet") {
      std::vector<int> f;
      while (lx.peek().kind == Token::Ident) {
        std::string id = lx.next().text;
        auto it = std::find(sc.vertices.begin(), sc.vertices.end(), id);
        if (it == sc.vertices.end()) lx.fail("unknown vertex '" + id + "'");
        int ix = (int)(it - sc.vertices.begin());
        if (std::find(f.begin(), f.end(), ix) != f.end())
          lx.fail("repeated vertex in facet");
        f.push_back(ix);
      }
      if (f.empty()) lx.fail("empty facet");
      std::sort(f.begin(), f.end());
      sc.facets.push_back(std::move(f));
    } else {
      lx.fail("unknown key '" + kw + "' in simplicial block");
    }
    lx.expect_punct(';');
  }
  lx.expect_punct('}');
  // Facets must form an antichain and cover every vertex.
  for (std::size_t i = 0; i < sc.facets.size(); ++i)
    for (std::size_t j = 0; j < sc.facets.size(); ++j)
      if (i != j && std::includes(sc.facets[i].begin(), sc.facets[i].end(),
                                  sc.facets[j].begin(), sc.facets[j].end()))
        lx.fail("facet contained in another facet");
  std::vector<char> seen(sc.vertices.size(), 0);
  for (const auto &f : sc.facets)
    for (int v : f) seen[v] = 1;
  for (std::size_t v = 0; v < seen.size(); ++v)
    if (!seen[v]) lx.fail("vertex '" + sc.vertices[v] + "' not in any facet");
  return sc;
}

AffineInput parse_affine_block(Lexer &lx) {
  AffineInput af;
  af.name = lx.expect_ident("affine monoid name");
  lx.expect_punct('{');
  while (!lx.at_punct('}')) {
    std::string kw = lx.expect_ident("'dim', 'torsion' or 'gen'");
    lx.expect_punct(':');
    if (kw == "dim") {
      af.d = (int)lx.expect_number("dimension");
      if (af.d < 1) lx.fail("dim must be positive");
    } else if (kw == "torsion") {
      while (lx.peek().kind == Token::Number) {
        long long k = lx.next().value;
        if (k < 2) lx.fail("torsion modulus must be at least 2");
        af.torsion.push_back(k);
      }
    } else if (kw == "gen") {
      std::vector<long long> free_part, tors_part;
      while (lx.peek().kind == Token::Number) free_part.push_back(lx.next().value);
      if ((int)free_part.size() != af.d)
        lx.fail("generator free part must have 'dim' entries");
      if (lx.at_punct('|')) {
        lx.next();
        while (lx.peek().kind == Token::Number)
          tors_part.push_back(lx.next().value);
      }
      if (tors_part.size() != af.torsion.size())
        lx.fail("generator torsion part must match the torsion moduli");
      for (std::size_t i = 0; i < tors_part.size(); ++i) {
        tors_part[i] %= af.torsion[i];
        if (tors_part[i] < 0) tors_part[i] += af.torsion[i];
      }
      af.gens.emplace_back(std::move(free_part), std::move(tors_part));
    } else {
      lx.fail("unknown key '" + kw + "' in affine block");
    }
    lx.expect_punct(';');
  }
  lx.expect_punct('}');
  if (af.gens.empty()) lx.fail("affine monoid without generators");
  for (std::size_t i = 0; i < af.gens.size(); ++i)
    for (std::size_t j = i + 1; j < af.gens.size(); ++j)
      if (af.gens[i] == af.gens[j]) lx.fail("duplicate affine generator");
  return af;
}

}  // namespace

Document parse_document(const std::string &text) {
  Document doc;
  Lexer lx(text);
  while (lx.peek().kind != Token::End) {
    std::string kw = lx.expect_ident("block keyword");
    if (kw == "binoid") {
      Presentation p = parse_binoid_block(lx);
      if (doc.binoids.count(p.name))
        lx.fail("duplicate binoid name '" + p.name + "'");
      doc.binoids.emplace(p.name, std::move(p));
    } else if (kw == "ideal") {
      IdealSpec id = parse_ideal_block(lx, doc);
      if (doc.ideals.count(id.name))
        lx.fail("duplicate ideal name '" + id.name + "'");
      doc.ideals.emplace(id.name, std::move(id));
    } else if (kw == "simplicial") {
      SimplicialComplexInput sc = parse_simplicial_block(lx);
      if (doc.simplicial.count(sc.name))
        lx.fail("duplicate simplicial name '" + sc.name + "'");
      doc.simplicial.emplace(sc.name, std::move(sc));
    } else if (kw == "affine") {
      AffineInput af = parse_affine_block(lx);
      if (doc.affine.count(af.name))
        lx.fail("duplicate affine name '" + af.name + "'");
      doc.affine.emplace(af.name, std::move(af));
    } else {
      lx.fail("unknown block keyword '" + kw + "'");
    }
  }
  return doc;
}

Presentation parse_presentation(const std::string &text) {
  // Accept either a full document or a bare block body like
  // "gens: x y ; rel: x+y = 2y ;".
  {
    Lexer probe(text);
    if (probe.peek().kind == Token::Ident &&
        (probe.at_keyword("gens") || probe.at_keyword("rel"))) {
      std::string wrapped = "M { " + text + " }";
      Lexer lx(wrapped);
      return parse_binoid_block(lx);
    }
  }
  Document doc = parse_document(text);
  if (doc.binoids.empty())
    throw ParseError("no binoid block in input", 1, 1);
  return doc.binoids.begin()->second;
}

}  // namespace binhk
