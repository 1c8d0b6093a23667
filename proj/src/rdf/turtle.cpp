#include "rdf/turtle.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "support/error.hpp"
#include "support/strings.hpp"

namespace pheno::rdf {

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok {
  Eof,
  Dot,
  Semicolon,
  Comma,
  LBracket,
  RBracket,
  LParen,
  RParen,
  HatHat,
  A,
  PrefixDirective,
  IriRef,       // value = IRI text
  PName,        // value = "prefix:local" (prefix may be empty)
  BlankLabel,   // value = label without "_:"
  StringLit,    // value = unescaped text
  LangTag,      // value = tag without '@'
  Invalid,
};

struct Token {
  Tok kind = Tok::Eof;
  std::string value;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_ws_and_comments();
    Token t;
    t.line = line_;
    t.column = col_;
    if (eof()) return t;

    char c = peek();
    switch (c) {
      case '.': get(); t.kind = Tok::Dot; return t;
      case ';': get(); t.kind = Tok::Semicolon; return t;
      case ',': get(); t.kind = Tok::Comma; return t;
      case '[': get(); t.kind = Tok::LBracket; return t;
      case ']': get(); t.kind = Tok::RBracket; return t;
      case '(': get(); t.kind = Tok::LParen; return t;
      case ')': get(); t.kind = Tok::RParen; return t;
      case '<': return lex_iriref(t);
      case '"': return lex_string(t);
      case '@': return lex_at(t);
      case '^':
        get();
        if (peek() == '^') {
          get();
          t.kind = Tok::HatHat;
        } else {
          t.kind = Tok::Invalid;
          t.value = "stray '^'";
        }
        return t;
      default: break;
    }
    if (c == '_' && pos_ + 1 < text_.size() && text_[pos_ + 1] == ':')
      return lex_blank(t);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == ':' || c == '_')
      return lex_pname_or_keyword(t);
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-') {
      t.kind = Tok::Invalid;
      t.value = "numeric literals are outside the supported Turtle subset";
      // consume the run so the parser can resync
      while (!eof() && !std::isspace(static_cast<unsigned char>(peek())) && peek() != '.' &&
             peek() != ';' && peek() != ',')
        get();
      return t;
    }
    t.kind = Tok::Invalid;
    t.value = std::string("unexpected character '") + c + "'";
    get();
    return t;
  }

 private:
  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  char get() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_ws_and_comments() {
    while (!eof()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        get();
      } else if (c == '#') {
        while (!eof() && peek() != '\n') get();
      } else {
        break;
      }
    }
  }

  Token& lex_iriref(Token& t) {
    get();  // '<'
    std::string value;
    while (!eof() && peek() != '>') {
      char c = get();
      if (c == '\n') {
        t.kind = Tok::Invalid;
        t.value = "unterminated IRI";
        return t;
      }
      value.push_back(c);
    }
    if (eof()) {
      t.kind = Tok::Invalid;
      t.value = "unterminated IRI";
      return t;
    }
    get();  // '>'
    t.kind = Tok::IriRef;
    t.value = std::move(value);
    return t;
  }

  Token& lex_string(Token& t) {
    get();  // opening quote
    std::string value;
    while (true) {
      if (eof()) {
        t.kind = Tok::Invalid;
        t.value = "unterminated string literal";
        return t;
      }
      char c = get();
      if (c == '"') break;
      if (c == '\n') {
        t.kind = Tok::Invalid;
        t.value = "newline in string literal";
        return t;
      }
      if (c == '\\') {
        if (eof()) {
          t.kind = Tok::Invalid;
          t.value = "unterminated escape";
          return t;
        }
        char e = get();
        switch (e) {
          case 't': value.push_back('\t'); break;
          case 'n': value.push_back('\n'); break;
          case 'r': value.push_back('\r'); break;
          case '"': value.push_back('"'); break;
          case '\\': value.push_back('\\'); break;
          case 'u': if (!append_unicode(value, 4, t)) return t; break;
          case 'U': if (!append_unicode(value, 8, t)) return t; break;
          default:
            t.kind = Tok::Invalid;
            t.value = std::string("invalid escape '\\") + e + "'";
            return t;
        }
      } else {
        value.push_back(c);
      }
    }
    t.kind = Tok::StringLit;
    t.value = std::move(value);
    return t;
  }

  bool append_unicode(std::string& out, int len, Token& t) {
    unsigned code = 0;
    for (int i = 0; i < len; ++i) {
      if (eof() || !std::isxdigit(static_cast<unsigned char>(peek()))) {
        t.kind = Tok::Invalid;
        t.value = "invalid unicode escape";
        return false;
      }
      char c = get();
      unsigned v = c <= '9' ? unsigned(c - '0') : unsigned(std::tolower(c) - 'a' + 10);
      code = (code << 4) | v;
    }
    // UTF-8 encode
    if (code < 0x80) {
      out.push_back(static_cast<char>(code));
    } else if (code < 0x800) {
      out.push_back(static_cast<char>(0xc0 | (code >> 6)));
      out.push_back(static_cast<char>(0x80 | (code & 0x3f)));
    } else if (code < 0x10000) {
      out.push_back(static_cast<char>(0xe0 | (code >> 12)));
      out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | (code & 0x3f)));
    } else {
      out.push_back(static_cast<char>(0xf0 | (code >> 18)));
      out.push_back(static_cast<char>(0x80 | ((code >> 12) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | (code & 0x3f)));
    }
    return true;
  }

  Token& lex_at(Token& t) {
    get();  // '@'
    std::string word;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-'))
      word.push_back(get());
    if (word == "prefix") {
      t.kind = Tok::PrefixDirective;
    } else {
      t.kind = Tok::LangTag;
      t.value = std::move(word);
    }
    return t;
  }

  Token& lex_blank(Token& t) {
    get();  // '_'
    get();  // ':'
    std::string label;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' ||
                      peek() == '-'))
      label.push_back(get());
    if (label.empty()) {
      t.kind = Tok::Invalid;
      t.value = "empty blank node label";
      return t;
    }
    t.kind = Tok::BlankLabel;
    t.value = std::move(label);
    return t;
  }

  Token& lex_pname_or_keyword(Token& t) {
    std::string word;
    while (!eof()) {
      char c = peek();
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' ||
          c == ':') {
        word.push_back(get());
      } else {
        break;
      }
    }
    // A trailing '.' terminates the statement, not the name.
    size_t put_back = 0;
    while (!word.empty() && word.back() == '.') {
      word.pop_back();
      ++put_back;
    }
    pos_ -= put_back;
    col_ -= static_cast<int>(put_back);

    if (word == "a" ) {
      t.kind = Tok::A;
      return t;
    }
    if (word.find(':') == std::string::npos) {
      t.kind = Tok::Invalid;
      t.value = "expected prefixed name, got '" + word + "'";
      return t;
    }
    t.kind = Tok::PName;
    t.value = std::move(word);
    return t;
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// ---------------------------------------------------------------------------
// Parser

class TurtleParser {
 public:
  TurtleParser(std::string_view text, Dataset& ds, const std::string& graph_iri)
      : lexer_(text), ds_(ds), graph_(graph_iri) {
    advance();
  }

  std::vector<ParseDiagnostic> run() {
    while (cur_.kind != Tok::Eof) {
      try {
        statement();
      } catch (const SyntaxError&) {
        resync();
        pending_.clear();
      }
    }
    return std::move(diags_);
  }

 private:
  struct SyntaxError {};

  [[noreturn]] void fail(const Token& at, const std::string& message) {
    diags_.push_back({at.line, at.column, message, ParseDiagnostic::Severity::Error});
    throw SyntaxError{};
  }

  void advance() { cur_ = lexer_.next(); }

  void expect(Tok kind, const char* what) {
    if (cur_.kind != kind) fail(cur_, std::string("expected ") + what);
    advance();
  }

  // Skip to the next top-level '.' so parsing can continue.
  void resync() {
    int depth = 0;
    while (cur_.kind != Tok::Eof) {
      if (cur_.kind == Tok::LBracket || cur_.kind == Tok::LParen) ++depth;
      if (cur_.kind == Tok::RBracket || cur_.kind == Tok::RParen) --depth;
      if (cur_.kind == Tok::Dot && depth <= 0) {
        advance();
        return;
      }
      advance();
    }
  }

  void statement() {
    if (cur_.kind == Tok::PrefixDirective) {
      advance();
      if (cur_.kind != Tok::PName || cur_.value.back() != ':')
        fail(cur_, "expected prefix name ending in ':'");
      std::string prefix = cur_.value.substr(0, cur_.value.size() - 1);
      advance();
      if (cur_.kind != Tok::IriRef) fail(cur_, "expected namespace IRI");
      std::string ns = cur_.value;
      if (!is_absolute_iri(ns)) fail(cur_, "namespace IRI must be absolute: <" + ns + ">");
      advance();
      expect(Tok::Dot, "'.' after @prefix");
      ds_.register_prefix(prefix, ns);
      return;
    }

    Term subject = parse_subject();
    predicate_object_list(subject);
    expect(Tok::Dot, "'.' at end of statement");
    flush();
  }

  Term parse_subject() {
    switch (cur_.kind) {
      case Tok::IriRef:
      case Tok::PName:
        return parse_iri();
      case Tok::BlankLabel: {
        Term b = session_blank(cur_.value);
        advance();
        return b;
      }
      case Tok::LBracket:
        return parse_blank_property_list();
      case Tok::LParen:
        return parse_collection();
      default:
        fail(cur_, "expected subject");
    }
  }

  Term parse_iri() {
    if (cur_.kind == Tok::IriRef) {
      if (!is_absolute_iri(cur_.value)) fail(cur_, "relative IRI not allowed: <" + cur_.value + ">");
      Term t = Term::iri(cur_.value);
      advance();
      return t;
    }
    if (cur_.kind == Tok::PName) {
      Term t = resolve(cur_);
      advance();
      return t;
    }
    fail(cur_, "expected IRI");
  }

  Term resolve(const Token& tok) {
    try {
      return ds_.resolve_prefixed(tok.value);
    } catch (const Error& e) {
      fail(tok, e.what());
    }
  }

  void predicate_object_list(const Term& subject) {
    while (true) {
      Term predicate = parse_predicate();
      object_list(subject, predicate);
      if (cur_.kind == Tok::Semicolon) {
        advance();
        // allow trailing ';' before '.'
        if (cur_.kind == Tok::Dot || cur_.kind == Tok::RBracket) return;
        continue;
      }
      return;
    }
  }

  Term parse_predicate() {
    if (cur_.kind == Tok::A) {
      advance();
      return Term::iri(vocab::kRdfType);
    }
    return parse_iri();
  }

  void object_list(const Term& subject, const Term& predicate) {
    while (true) {
      Term object = parse_object();
      pending_.push_back({subject, predicate, object});
      if (cur_.kind == Tok::Comma) {
        advance();
        continue;
      }
      return;
    }
  }

  Term parse_object() {
    switch (cur_.kind) {
      case Tok::IriRef:
      case Tok::PName:
        return parse_iri();
      case Tok::BlankLabel: {
        Term b = session_blank(cur_.value);
        advance();
        return b;
      }
      case Tok::LBracket:
        return parse_blank_property_list();
      case Tok::LParen:
        return parse_collection();
      case Tok::StringLit: {
        std::string lexical = cur_.value;
        advance();
        if (cur_.kind == Tok::LangTag) {
          Term t = Term::lang_literal(lexical, cur_.value);
          advance();
          return t;
        }
        if (cur_.kind == Tok::HatHat) {
          advance();
          Term dt = parse_iri();
          return Term::literal(lexical, dt.value());
        }
        return Term::literal(lexical);
      }
      case Tok::Invalid:
        fail(cur_, cur_.value);
      default:
        fail(cur_, "expected object");
    }
  }

  Term parse_blank_property_list() {
    advance();  // '['
    Term node = fresh_blank();
    if (cur_.kind != Tok::RBracket) predicate_object_list(node);
    expect(Tok::RBracket, "']'");
    return node;
  }

  // `( a b c )` expands to an rdf:first/rdf:rest chain ending in rdf:nil.
  Term parse_collection() {
    advance();  // '('
    std::vector<Term> items;
    while (cur_.kind != Tok::RParen) {
      if (cur_.kind == Tok::Eof) fail(cur_, "unterminated collection");
      items.push_back(parse_object());
    }
    advance();  // ')'
    Term tail = Term::iri(vocab::kRdfNil);
    Term first_pred = Term::iri(vocab::kRdfFirst);
    Term rest_pred = Term::iri(vocab::kRdfRest);
    for (auto it = items.rbegin(); it != items.rend(); ++it) {
      Term node = fresh_blank();
      pending_.push_back({node, first_pred, *it});
      pending_.push_back({node, rest_pred, tail});
      tail = node;
    }
    return tail;
  }

  Term session_blank(const std::string& source_label) {
    auto it = blank_map_.find(source_label);
    if (it == blank_map_.end())
      it = blank_map_.emplace(source_label, ds_.pool().fresh_blank_label()).first;
    return Term::blank(it->second);
  }

  Term fresh_blank() { return Term::blank(ds_.pool().fresh_blank_label()); }

  // Statements are buffered and only land in the graph once their '.' parsed.
  void flush() {
    for (const Triple& t : pending_) ds_.insert(graph_, t);
    pending_.clear();
  }

  Lexer lexer_;
  Dataset& ds_;
  std::string graph_;
  Token cur_;
  std::vector<Triple> pending_;
  std::map<std::string, std::string> blank_map_;
  std::vector<ParseDiagnostic> diags_;
};

// ---------------------------------------------------------------------------
// Serializer

std::string escape_literal(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

bool local_name_safe(std::string_view local) {
  if (local.empty()) return false;
  auto word_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  };
  if (!word_char(local.front())) return false;
  if (local.back() == '.') return false;
  for (char c : local)
    if (!word_char(c) && c != '-' && c != '.') return false;
  return true;
}

class Serializer {
 public:
  Serializer(const Dataset& ds, const std::string& graph_iri) : ds_(ds) {
    const Graph* g = ds.find_graph(graph_iri);
    if (g)
      for (const auto& t : g->triples()) triples_.push_back(ds.decode(t));
    for (size_t i = 0; i < triples_.size(); ++i)
      if (triples_[i].s.is_blank()) blank_out_[triples_[i].s.value()].push_back(i);
  }

  std::string turtle() {
    compute_blank_signatures();
    sort_triples();
    assign_labels();

    std::ostringstream out;
    for (const auto& [prefix, ns] : ds_.prefixes())
      out << "@prefix " << prefix << ": <" << ns << "> .\n";
    if (!triples_.empty()) out << "\n";

    size_t i = 0;
    while (i < triples_.size()) {
      size_t j = i;
      while (j < triples_.size() && triples_[j].s == triples_[i].s) ++j;
      write_subject_group(out, i, j);
      i = j;
    }
    return out.str();
  }

  std::string ntriples() {
    compute_blank_signatures();
    sort_triples();
    assign_labels();

    std::ostringstream out;
    for (const Triple& t : triples_) {
      out << render_nt(t.s) << " " << render_nt(t.p) << " " << render_nt(t.o) << " .\n";
    }
    return out.str();
  }

 private:
  // Structural signature of a blank node: the sorted serialization of its
  // outgoing subtree. Label-independent for acyclic blank structures, so
  // isomorphic graphs serialize identically; cycles fall back to the
  // original label.
  const std::string& signature(const Term& b) {
    auto it = sigs_.find(b.value());
    if (it != sigs_.end()) return it->second;
    if (visiting_.contains(b.value())) {
      return sigs_.emplace(b.value(), "CYC|" + b.value()).first->second;
    }
    visiting_.insert(b.value());
    std::vector<std::string> parts;
    if (auto out = blank_out_.find(b.value()); out != blank_out_.end()) {
      for (size_t i : out->second) {
        const Triple& t = triples_[i];
        parts.push_back(t.p.value() + " " + term_key(t.o));
      }
    }
    std::sort(parts.begin(), parts.end());
    std::string sig = "B[";
    for (const auto& p : parts) {
      sig += p;
      sig += ';';
    }
    sig += ']';
    visiting_.erase(b.value());
    return sigs_.emplace(b.value(), std::move(sig)).first->second;
  }

  std::string term_key(const Term& t) {
    switch (t.kind()) {
      case TermKind::Iri:
        return "0" + t.value();
      case TermKind::Blank:
        return "1" + signature(t);
      case TermKind::Literal:
        return "2" + t.datatype() + "|" + t.lang() + "|" + t.value();
    }
    return {};
  }

  void compute_blank_signatures() {
    for (const Triple& t : triples_) {
      if (t.s.is_blank()) signature(t.s);
      if (t.o.is_blank()) signature(t.o);
    }
  }

  // Blank nodes with identical signatures are interchangeable; the original
  // label only breaks ties among structurally identical nodes, which cannot
  // change the rendered bytes.
  std::string sort_key(const Term& t) const {
    switch (t.kind()) {
      case TermKind::Iri:
        return "0" + t.value();
      case TermKind::Blank:
        return "1" + sigs_.at(t.value()) + "|" + t.value();
      case TermKind::Literal:
        return "2" + t.datatype() + "|" + t.lang() + "|" + t.value();
    }
    return {};
  }

  void sort_triples() {
    std::vector<std::pair<std::string, size_t>> keyed;
    keyed.reserve(triples_.size());
    for (size_t i = 0; i < triples_.size(); ++i) {
      const Triple& t = triples_[i];
      keyed.emplace_back(sort_key(t.s) + "\x01" + sort_key(t.p) + "\x01" + sort_key(t.o), i);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<Triple> sorted;
    sorted.reserve(triples_.size());
    for (const auto& [_, i] : keyed) sorted.push_back(std::move(triples_[i]));
    triples_ = std::move(sorted);
  }

  void assign_labels() {
    size_t n = 0;
    auto assign = [&](const Term& t) {
      if (t.is_blank() && !labels_.contains(t.value()))
        labels_[t.value()] = "b" + std::to_string(n++);
    };
    for (const Triple& t : triples_) {
      assign(t.s);
      assign(t.o);
    }
  }

  std::string render(const Term& t) const {
    switch (t.kind()) {
      case TermKind::Iri: {
        if (t.value() == vocab::kRdfType) return "a";
        return render_iri(t.value());
      }
      case TermKind::Blank:
        return "_:" + labels_.at(t.value());
      case TermKind::Literal:
        return render_literal(t);
    }
    return {};
  }

  std::string render_iri(const std::string& iri) const {
    // longest registered namespace wins; ties prefer the shortest prefix
    const std::string* best_ns = nullptr;
    const std::string* best_prefix = nullptr;
    for (const auto& [prefix, ns] : ds_.prefixes()) {
      if (iri.starts_with(ns) && !ns.empty()) {
        if (!best_ns || ns.size() > best_ns->size() ||
            (ns.size() == best_ns->size() && prefix < *best_prefix)) {
          best_ns = &ns;
          best_prefix = &prefix;
        }
      }
    }
    if (best_ns) {
      std::string local = iri.substr(best_ns->size());
      if (local_name_safe(local) || local.empty())
        return *best_prefix + ":" + local;
    }
    return "<" + iri + ">";
  }

  std::string render_literal(const Term& t) const {
    std::string out = "\"" + escape_literal(t.value()) + "\"";
    if (!t.lang().empty()) return out + "@" + t.lang();
    if (t.datatype() != vocab::kXsdString) out += "^^" + render_iri(t.datatype());
    return out;
  }

  std::string render_nt(const Term& t) const {
    switch (t.kind()) {
      case TermKind::Iri:
        return "<" + t.value() + ">";
      case TermKind::Blank:
        return "_:" + labels_.at(t.value());
      case TermKind::Literal: {
        std::string out = "\"" + escape_literal(t.value()) + "\"";
        if (!t.lang().empty()) return out + "@" + t.lang();
        if (t.datatype() != vocab::kXsdString) out += "^^<" + t.datatype() + ">";
        return out;
      }
    }
    return {};
  }

  void write_subject_group(std::ostringstream& out, size_t begin, size_t end) {
    out << render(triples_[begin].s) << " ";
    size_t i = begin;
    bool first_predicate = true;
    while (i < end) {
      size_t j = i;
      while (j < end && triples_[j].p == triples_[i].p) ++j;
      if (!first_predicate) out << " ;\n    ";
      first_predicate = false;
      out << render(triples_[i].p) << " ";
      for (size_t k = i; k < j; ++k) {
        if (k > i) out << " , ";
        out << render(triples_[k].o);
      }
      i = j;
    }
    out << " .\n";
  }

  const Dataset& ds_;
  std::vector<Triple> triples_;
  std::map<std::string, std::vector<size_t>> blank_out_;
  std::map<std::string, std::string> sigs_;
  std::set<std::string> visiting_;
  std::map<std::string, std::string> labels_;
};

}  // namespace

std::vector<ParseDiagnostic> parse_turtle(std::string_view text, Dataset& ds,
                                          const std::string& graph_iri) {
  ds.graph(graph_iri);  // materialize even if text is empty
  TurtleParser parser(text, ds, graph_iri);
  return parser.run();
}

std::string serialize_turtle(const Dataset& ds, const std::string& graph_iri) {
  return Serializer(ds, graph_iri).turtle();
}

std::string serialize_ntriples(const Dataset& ds, const std::string& graph_iri) {
  return Serializer(ds, graph_iri).ntriples();
}

void load_turtle_file(const std::string& path, Dataset& ds, const std::string& graph_iri) {
  std::string text = util::read_file(path);
  auto diags = parse_turtle(text, ds, graph_iri);
  for (const auto& d : diags) {
    if (d.severity == ParseDiagnostic::Severity::Error) {
      throw Error(ErrorKind::Parse, path + ":" + std::to_string(d.line) + ":" +
                                        std::to_string(d.column) + ": " + d.message);
    }
  }
}

}  // namespace pheno::rdf
