#include "sparql/parser.hpp"

#include <cctype>
#include <set>

#include "support/error.hpp"

namespace pheno::sparql {

namespace {

struct Token {
  enum class Kind {
    Eof,
    Keyword,     // upper-cased in `value`
    Var,         // value without '?'
    IriRef,
    PName,
    StringLit,
    LangTag,
    HatHat,
    A,
    Dot,
    LBrace,
    RBrace,
    Invalid,
  };
  Kind kind = Kind::Eof;
  std::string value;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_ws();
    Token t;
    t.line = line_;
    t.column = col_;
    if (pos_ >= text_.size()) return t;

    char c = text_[pos_];
    if (c == '{') { get(); t.kind = Token::Kind::LBrace; return t; }
    if (c == '}') { get(); t.kind = Token::Kind::RBrace; return t; }
    if (c == '.') { get(); t.kind = Token::Kind::Dot; return t; }
    if (c == '?' || c == '$') {
      get();
      std::string name;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '_'))
        name.push_back(get());
      if (name.empty()) { t.kind = Token::Kind::Invalid; t.value = "empty variable name"; return t; }
      t.kind = Token::Kind::Var;
      t.value = std::move(name);
      return t;
    }
    if (c == '<') {
      get();
      std::string iri;
      while (pos_ < text_.size() && text_[pos_] != '>') iri.push_back(get());
      if (pos_ >= text_.size()) { t.kind = Token::Kind::Invalid; t.value = "unterminated IRI"; return t; }
      get();
      t.kind = Token::Kind::IriRef;
      t.value = std::move(iri);
      return t;
    }
    if (c == '"') {
      get();
      std::string s;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        char d = get();
        if (d == '\\' && pos_ < text_.size()) {
          char e = get();
          switch (e) {
            case 't': s.push_back('\t'); break;
            case 'n': s.push_back('\n'); break;
            case 'r': s.push_back('\r'); break;
            case '"': s.push_back('"'); break;
            case '\\': s.push_back('\\'); break;
            default: s.push_back(e);
          }
        } else {
          s.push_back(d);
        }
      }
      if (pos_ >= text_.size()) { t.kind = Token::Kind::Invalid; t.value = "unterminated string"; return t; }
      get();
      t.kind = Token::Kind::StringLit;
      t.value = std::move(s);
      return t;
    }
    if (c == '@') {
      get();
      std::string tag;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '-'))
        tag.push_back(get());
      t.kind = Token::Kind::LangTag;
      t.value = std::move(tag);
      return t;
    }
    if (c == '^') {
      get();
      if (pos_ < text_.size() && text_[pos_] == '^') {
        get();
        t.kind = Token::Kind::HatHat;
        return t;
      }
      t.kind = Token::Kind::Invalid;
      t.value = "stray '^'";
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':') {
      std::string word;
      while (pos_ < text_.size()) {
        char d = text_[pos_];
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '-' || d == '.' ||
            d == ':')
          word.push_back(get());
        else
          break;
      }
      size_t put_back = 0;
      while (!word.empty() && word.back() == '.') { word.pop_back(); ++put_back; }
      pos_ -= put_back;
      col_ -= static_cast<int>(put_back);

      if (word == "a") { t.kind = Token::Kind::A; return t; }
      if (word.find(':') != std::string::npos) {
        t.kind = Token::Kind::PName;
        t.value = std::move(word);
        return t;
      }
      std::string upper;
      for (char ch : word) upper.push_back(static_cast<char>(std::toupper(ch)));
      t.kind = Token::Kind::Keyword;
      t.value = std::move(upper);
      return t;
    }
    t.kind = Token::Kind::Invalid;
    t.value = std::string("unexpected character '") + c + "'";
    get();
    return t;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        get();
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') get();
      } else {
        break;
      }
    }
  }

  char get() {
    char c = text_[pos_++];
    if (c == '\n') { ++line_; col_ = 1; } else { ++col_; }
    return c;
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class QueryParser {
 public:
  explicit QueryParser(std::string_view text) : lexer_(text) { advance(); }

  Query parse() {
    Query q;
    while (cur_.kind == Token::Kind::Keyword && cur_.value == "PREFIX") {
      advance();
      if (cur_.kind != Token::Kind::PName || cur_.value.back() != ':')
        fail("expected prefix name ending in ':'");
      std::string prefix = cur_.value.substr(0, cur_.value.size() - 1);
      advance();
      if (cur_.kind != Token::Kind::IriRef) fail("expected namespace IRI");
      q.prefixes[prefix] = cur_.value;
      advance();
    }

    if (cur_.kind != Token::Kind::Keyword || cur_.value != "SELECT") fail("expected SELECT");
    advance();
    if (cur_.kind == Token::Kind::Keyword && cur_.value == "DISTINCT") {
      q.distinct = true;
      advance();
    }
    while (cur_.kind == Token::Kind::Var) {
      q.projected.push_back(cur_.value);
      advance();
    }
    if (q.projected.empty()) fail("expected at least one projected variable");

    if (cur_.kind != Token::Kind::Keyword || cur_.value != "WHERE") fail("expected WHERE");
    advance();
    expect(Token::Kind::LBrace, "'{'");

    while (cur_.kind != Token::Kind::RBrace) {
      if (cur_.kind == Token::Kind::Eof) fail("missing closing '}'");
      if (cur_.kind == Token::Kind::Keyword && cur_.value == "FILTER") {
        advance();
        if (cur_.kind != Token::Kind::Keyword || cur_.value != "NOT") fail("expected NOT EXISTS");
        advance();
        if (cur_.kind != Token::Kind::Keyword || cur_.value != "EXISTS") fail("expected EXISTS");
        advance();
        expect(Token::Kind::LBrace, "'{'");
        Bgp block;
        while (cur_.kind != Token::Kind::RBrace) {
          if (cur_.kind == Token::Kind::Eof) fail("missing closing '}'");
          block.patterns.push_back(parse_pattern());
          if (cur_.kind == Token::Kind::Dot) advance();
        }
        advance();  // '}'
        if (block.patterns.empty()) fail("empty NOT EXISTS block");
        q.negations.push_back(std::move(block));
        continue;
      }
      q.where.patterns.push_back(parse_pattern());
      if (cur_.kind == Token::Kind::Dot) advance();
    }
    advance();  // '}'
    if (cur_.kind != Token::Kind::Eof) fail("unexpected trailing input");

    if (q.where.patterns.empty()) fail("empty WHERE block");
    validate(q);
    return q;
  }

 private:
  [[noreturn]] void fail(const std::string& message) {
    throw Error(ErrorKind::Parse, std::to_string(cur_.line) + ":" + std::to_string(cur_.column) +
                                      ": " + message);
  }

  void advance() { cur_ = lexer_.next(); }

  void expect(Token::Kind kind, const char* what) {
    if (cur_.kind != kind) fail(std::string("expected ") + what);
    advance();
  }

  TriplePattern parse_pattern() {
    TriplePattern p;
    p.s = parse_term(false);
    p.p = parse_term(true);
    p.o = parse_term(false);
    return p;
  }

  PatternTerm parse_term(bool predicate_position) {
    switch (cur_.kind) {
      case Token::Kind::Var: {
        Variable v{cur_.value};
        advance();
        return v;
      }
      case Token::Kind::A: {
        advance();
        return rdf::Term::iri(rdf::vocab::kRdfType);
      }
      case Token::Kind::IriRef: {
        if (!rdf::is_absolute_iri(cur_.value)) fail("relative IRI: <" + cur_.value + ">");
        auto t = rdf::Term::iri(cur_.value);
        advance();
        return t;
      }
      case Token::Kind::PName: {
        PrefixedName n{cur_.value};
        advance();
        return n;
      }
      case Token::Kind::StringLit: {
        if (predicate_position) fail("literal cannot be a predicate");
        std::string lex = cur_.value;
        advance();
        if (cur_.kind == Token::Kind::LangTag) {
          auto t = rdf::Term::lang_literal(lex, cur_.value);
          advance();
          return t;
        }
        if (cur_.kind == Token::Kind::HatHat) {
          advance();
          if (cur_.kind == Token::Kind::IriRef) {
            auto t = rdf::Term::literal(lex, cur_.value);
            advance();
            return t;
          }
          if (cur_.kind == Token::Kind::PName) {
            // datatype by prefixed name: defer resolution by storing the raw
            // pname; evaluation resolves it
            fail("prefixed datatype names are not supported; use <IRI>");
          }
          fail("expected datatype IRI");
        }
        return rdf::Term::literal(lex);
      }
      default:
        fail("expected triple pattern term");
    }
  }

  void validate(const Query& q) {
    auto where_vars = [&] {
      std::set<std::string> vars;
      for (const auto& p : q.where.patterns)
        for (const auto* t : {&p.s, &p.p, &p.o})
          if (const auto* v = std::get_if<Variable>(t)) vars.insert(v->name);
      return vars;
    }();
    for (const auto& v : q.projected)
      if (!where_vars.contains(v))
        throw Error(ErrorKind::Parse,
                    "projected variable ?" + v + " does not occur in WHERE");
  }

  Lexer lexer_;
  Token cur_;
};

}  // namespace

Query parse_query(std::string_view text) { return QueryParser(text).parse(); }

}  // namespace pheno::sparql
