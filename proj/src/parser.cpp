#include "cwm/parser.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <map>
#include <sstream>

namespace cwm {

namespace {

enum class Tok {
  name,
  integer,
  kw_concept,
  kw_role,
  kw_individual,
  kw_top,
  kw_bot,
  kw_and,
  kw_exists,
  kw_typ,  // "T"
  le,      // "<="
  lparen,
  rparen,
  lbrace,
  rbrace,
  dot,
  comma,
  at,
  end
};

struct Token {
  Tok tok = Tok::end;
  std::string text;
  std::int64_t value = 0;
  SourceSpan span;
};

const std::map<std::string, Tok, std::less<>>& keywords() {
  static const std::map<std::string, Tok, std::less<>> kw = {
      {"concept", Tok::kw_concept}, {"role", Tok::kw_role},
      {"individual", Tok::kw_individual}, {"Top", Tok::kw_top},
      {"Bot", Tok::kw_bot}, {"and", Tok::kw_and},
      {"exists", Tok::kw_exists}, {"T", Tok::kw_typ}};
  return kw;
}

bool is_name_start(char c) { return std::isalpha((unsigned char)c) || c == '_'; }
bool is_name_char(char c) { return std::isalnum((unsigned char)c) || c == '_'; }

// Lexes one line; returns false on a lexical error (reported in diag).
bool lex_line(std::string_view line, int line_no, std::vector<Token>& out,
              Diagnostic& diag) {
  std::size_t i = 0;
  auto span_at = [&](std::size_t col) {
    return SourceSpan{line_no, (int)col + 1};
  };
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;  // comment to end of line
    if (std::isspace((unsigned char)c)) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (is_name_start(c)) {
      while (i < line.size() && is_name_char(line[i])) ++i;
      std::string word(line.substr(start, i - start));
      auto it = keywords().find(word);
      Token t;
      t.tok = it != keywords().end() ? it->second : Tok::name;
      t.text = std::move(word);
      t.span = span_at(start);
      out.push_back(std::move(t));
      continue;
    }
    if (std::isdigit((unsigned char)c) ||
        (c == '-' && i + 1 < line.size() &&
         std::isdigit((unsigned char)line[i + 1]))) {
      ++i;
      while (i < line.size() && std::isdigit((unsigned char)line[i])) ++i;
      std::string digits(line.substr(start, i - start));
      errno = 0;
      char* endp = nullptr;
      long long v = std::strtoll(digits.c_str(), &endp, 10);
      if (errno == ERANGE || endp != digits.c_str() + digits.size()) {
        diag.span = span_at(start);
        diag.message = "integer '" + digits + "' out of range";
        return false;
      }
      Token t;
      t.tok = Tok::integer;
      t.value = v;
      t.text = std::move(digits);
      t.span = span_at(start);
      out.push_back(std::move(t));
      continue;
    }
    Tok tok;
    std::size_t len = 1;
    switch (c) {
      case '<':
        if (i + 1 < line.size() && line[i + 1] == '=') {
          tok = Tok::le;
          len = 2;
          break;
        }
        diag.span = span_at(i);
        diag.message = "unexpected character '<' (did you mean '<=' ?)";
        return false;
      case '(': tok = Tok::lparen; break;
      case ')': tok = Tok::rparen; break;
      case '{': tok = Tok::lbrace; break;
      case '}': tok = Tok::rbrace; break;
      case '.': tok = Tok::dot; break;
      case ',': tok = Tok::comma; break;
      case '@': tok = Tok::at; break;
      default:
        diag.span = span_at(i);
        diag.message = std::string("unexpected character '") + c + "'";
        return false;
    }
    Token t;
    t.tok = tok;
    t.text = std::string(line.substr(i, len));
    t.span = span_at(i);
    out.push_back(std::move(t));
    i += len;
  }
  Token e;
  e.tok = Tok::end;
  e.span = span_at(line.size());
  out.push_back(std::move(e));
  return true;
}

class TokenCursor {
public:
  explicit TokenCursor(const std::vector<Token>& toks) : toks_(toks) {}

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size()) ++pos_;
    return t;
  }
  bool at(Tok t) const { return peek().tok == t; }
  bool accept(Tok t) {
    if (!at(t)) return false;
    next();
    return true;
  }
  bool contains(Tok t) const {
    for (std::size_t i = pos_; i < toks_.size(); ++i)
      if (toks_[i].tok == t) return true;
    return false;
  }

private:
  const std::vector<Token>& toks_;
  std::size_t pos_ = 0;
};

struct ParseFailure {
  Diagnostic diag;
};

[[noreturn]] void fail(const Token& t, const std::string& message) {
  throw ParseFailure{{t.span, message}};
}

std::string expect_name(TokenCursor& cur, const char* what) {
  const Token& t = cur.peek();
  if (t.tok != Tok::name) {
    if (t.tok == Tok::end) fail(t, std::string("expected ") + what);
    fail(t, std::string("expected ") + what + ", got '" + t.text + "'");
  }
  return cur.next().text;
}

void expect(TokenCursor& cur, Tok tok, const char* what) {
  if (!cur.accept(tok)) {
    const Token& t = cur.peek();
    fail(t, std::string("expected ") + what +
                (t.tok == Tok::end ? "" : ", got '" + t.text + "'"));
  }
}

ConceptExpr parse_concept_expr(TokenCursor& cur);

// primary := Top | Bot | NAME | "{" NAME "}" | "(" concept ")"
//          | "exists" NAME "." primary
ConceptExpr parse_primary(TokenCursor& cur) {
  const Token& t = cur.peek();
  switch (t.tok) {
    case Tok::kw_top:
      cur.next();
      return ConceptExpr::top();
    case Tok::kw_bot:
      cur.next();
      return ConceptExpr::bot();
    case Tok::name:
      return ConceptExpr::atomic(cur.next().text);
    case Tok::lbrace: {
      cur.next();
      std::string ind = expect_name(cur, "individual name inside '{...}'");
      expect(cur, Tok::rbrace, "'}'");
      return ConceptExpr::nominal(std::move(ind));
    }
    case Tok::lparen: {
      cur.next();
      ConceptExpr inner = parse_concept_expr(cur);
      expect(cur, Tok::rparen, "')'");
      return inner;
    }
    case Tok::kw_exists: {
      cur.next();
      std::string role = expect_name(cur, "role name after 'exists'");
      expect(cur, Tok::dot, "'.' after role name");
      ConceptExpr filler = parse_primary(cur);
      return ConceptExpr::exists(std::move(role), std::move(filler));
    }
    default:
      fail(t, t.tok == Tok::end ? "expected a concept"
                                : "expected a concept, got '" + t.text + "'");
  }
}

// concept := primary ("and" primary)*, right-associated.
ConceptExpr parse_concept_expr(TokenCursor& cur) {
  std::vector<ConceptExpr> parts;
  parts.push_back(parse_primary(cur));
  while (cur.accept(Tok::kw_and)) parts.push_back(parse_primary(cur));
  ConceptExpr out = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;)
    out = ConceptExpr::conj(parts[i], out);
  return out;
}

struct DeclSink {
  Signature* sig;
  std::vector<Diagnostic>* diags;

  void declare(std::set<std::string>& into, const std::string& kind,
               const Token& name) {
    bool dup = sig->concepts.count(name.text) || sig->roles.count(name.text) ||
               sig->individuals.count(name.text);
    if (dup) {
      diags->push_back(
          {name.span, "duplicate declaration of '" + name.text + "'"});
      return;
    }
    (void)kind;
    into.insert(name.text);
  }
};

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '\n') {
      std::string_view line = text.substr(start, i - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      lines.push_back(line);
      start = i + 1;
    }
  }
  return lines;
}

}  // namespace

ParseResult parse_kb(std::string_view text) {
  ParseResult result;
  KnowledgeBase kb;
  std::vector<Diagnostic>& diags = result.diagnostics;

  auto lines = split_lines(text);
  std::vector<std::vector<Token>> token_lines(lines.size());
  std::vector<bool> line_ok(lines.size(), true);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    Diagnostic d;
    if (!lex_line(lines[li], (int)li + 1, token_lines[li], d)) {
      diags.push_back(d);
      line_ok[li] = false;
    }
  }

  // Pass 1: declarations, so later statements can use names declared anywhere.
  DeclSink sink{&kb.signature, &diags};
  for (std::size_t li = 0; li < lines.size(); ++li) {
    if (!line_ok[li]) continue;
    TokenCursor cur(token_lines[li]);
    Tok head = cur.peek().tok;
    if (head != Tok::kw_concept && head != Tok::kw_role &&
        head != Tok::kw_individual)
      continue;
    cur.next();
    if (cur.at(Tok::end)) {
      diags.push_back({cur.peek().span, "declaration lists no names"});
      continue;
    }
    while (!cur.at(Tok::end)) {
      const Token& t = cur.peek();
      if (t.tok != Tok::name) {
        diags.push_back({t.span, "expected a name in declaration, got '" +
                                     t.text + "'"});
        break;
      }
      cur.next();
      switch (head) {
        case Tok::kw_concept:
          sink.declare(kb.signature.concepts, "concept", t);
          break;
        case Tok::kw_role:
          sink.declare(kb.signature.roles, "role", t);
          break;
        default:
          sink.declare(kb.signature.individuals, "individual", t);
          break;
      }
    }
  }

  // Pass 2: statements.
  for (std::size_t li = 0; li < lines.size(); ++li) {
    if (!line_ok[li]) continue;
    TokenCursor cur(token_lines[li]);
    Tok head = cur.peek().tok;
    if (head == Tok::end || head == Tok::kw_concept || head == Tok::kw_role ||
        head == Tok::kw_individual)
      continue;
    SourceSpan span = cur.peek().span;
    try {
      if (head == Tok::kw_typ && cur.peek(1).tok == Tok::lparen) {
        // defeasible := "T(" NAME ")" "<=" concept "@" INT
        cur.next();
        cur.next();
        std::string subject = expect_name(cur, "concept name inside 'T(...)'");
        expect(cur, Tok::rparen, "')'");
        expect(cur, Tok::le, "'<='");
        ConceptExpr concept_head = parse_concept_expr(cur);
        expect(cur, Tok::at, "'@' before the weight");
        if (!cur.at(Tok::integer))
          fail(cur.peek(), "expected an integer weight after '@'");
        std::int64_t w = cur.next().value;
        expect(cur, Tok::end, "end of line");
        kb.defeasible.push_back(
            {std::move(subject), std::move(concept_head), w, span});
      } else if (!cur.contains(Tok::le)) {
        // assertion := concept "(" NAME ")" | NAME "(" NAME "," NAME ")"
        if (head == Tok::name && cur.peek(1).tok == Tok::lparen &&
            cur.peek(2).tok == Tok::name && cur.peek(3).tok == Tok::comma) {
          std::string role = cur.next().text;
          cur.next();
          std::string a = expect_name(cur, "individual name");
          expect(cur, Tok::comma, "','");
          std::string b = expect_name(cur, "individual name");
          expect(cur, Tok::rparen, "')'");
          expect(cur, Tok::end, "end of line");
          kb.abox.push_back(
              RoleAssertion{std::move(role), std::move(a), std::move(b), span});
        } else {
          ConceptExpr c = parse_concept_expr(cur);
          expect(cur, Tok::lparen, "'('");
          std::string ind = expect_name(cur, "individual name");
          expect(cur, Tok::rparen, "')'");
          expect(cur, Tok::end, "end of line");
          kb.abox.push_back(
              ConceptAssertion{std::move(c), std::move(ind), span});
        }
      } else {
        // strict := concept "<=" concept
        ConceptExpr lhs = parse_concept_expr(cur);
        expect(cur, Tok::le, "'<='");
        ConceptExpr rhs = parse_concept_expr(cur);
        expect(cur, Tok::end, "end of line");
        kb.strict.push_back({std::move(lhs), std::move(rhs), span});
      }
    } catch (const ParseFailure& f) {
      diags.push_back(f.diag);
    }
  }

  kb.distinguished = distinguished_of(kb.defeasible);
  for (const auto& d : validate_kb(kb)) diags.push_back(d);
  if (diags.empty()) result.kb = std::move(kb);
  return result;
}

QueryParseResult parse_query(std::string_view text) {
  QueryParseResult result;
  std::vector<Token> toks;
  Diagnostic d;
  if (!lex_line(text, 1, toks, d)) {
    result.diagnostics.push_back(d);
    return result;
  }
  TokenCursor cur(toks);
  try {
    Query q;
    if (cur.peek().tok == Tok::kw_typ && cur.peek(1).tok == Tok::lparen) {
      cur.next();
      cur.next();
      q.typicality = true;
      q.subject = parse_concept_expr(cur);
      expect(cur, Tok::rparen, "')'");
    } else {
      q.typicality = false;
      q.subject = parse_concept_expr(cur);
    }
    expect(cur, Tok::le, "'<='");
    q.object = parse_concept_expr(cur);
    expect(cur, Tok::end, "end of query");
    result.query = std::move(q);
  } catch (const ParseFailure& f) {
    result.diagnostics.push_back(f.diag);
  }
  return result;
}

ConceptParseResult parse_concept(std::string_view text) {
  ConceptParseResult result;
  std::vector<Token> toks;
  Diagnostic d;
  if (!lex_line(text, 1, toks, d)) {
    result.diagnostics.push_back(d);
    return result;
  }
  TokenCursor cur(toks);
  try {
    ConceptExpr c = parse_concept_expr(cur);
    expect(cur, Tok::end, "end of input");
    result.concept_expr = std::move(c);
  } catch (const ParseFailure& f) {
    result.diagnostics.push_back(f.diag);
  }
  return result;
}

std::string render_kb(const KnowledgeBase& kb) {
  std::ostringstream out;
  auto decl_line = [&](const char* kw, const std::set<std::string>& names) {
    if (names.empty()) return;
    out << kw;
    for (const auto& n : names) out << ' ' << n;
    out << '\n';
  };
  decl_line("concept", kb.signature.concepts);
  decl_line("role", kb.signature.roles);
  decl_line("individual", kb.signature.individuals);
  for (const auto& ax : kb.strict)
    out << ax.lhs.to_string() << " <= " << ax.rhs.to_string() << '\n';
  // Declaration order; re-parsing then recovers the same flat list and the
  // same first-occurrence distinguished order.
  for (const auto& d : kb.defeasible)
    out << "T(" << d.subject << ") <= " << d.head.to_string() << " @ "
        << d.weight << '\n';
  for (const auto& a : kb.abox) {
    if (const auto* ca = std::get_if<ConceptAssertion>(&a))
      out << ca->concept_expr.to_string() << "(" << ca->individual << ")\n";
    else {
      const auto& ra = std::get<RoleAssertion>(a);
      out << ra.role << "(" << ra.subject << ", " << ra.object << ")\n";
    }
  }
  return out.str();
}

}  // namespace cwm
