#include "adp/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace adp {

namespace {

struct Token {
  enum Kind { lparen, rparen, lbrace, rbrace, comma, colon, arrow, slash, ident, end } kind;
  std::string text;
  int line;
  int col;
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '!';
}

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_ws();
    int line = line_, col = col_;
    if (pos_ >= text_.size()) return {Token::end, "", line, col};
    char c = text_[pos_];
    switch (c) {
      case '(': advance(); return {Token::lparen, "(", line, col};
      case ')': advance(); return {Token::rparen, ")", line, col};
      case '{': advance(); return {Token::lbrace, "{", line, col};
      case '}': advance(); return {Token::rbrace, "}", line, col};
      case ',': advance(); return {Token::comma, ",", line, col};
      case ':': advance(); return {Token::colon, ":", line, col};
      case '/': advance(); return {Token::slash, "/", line, col};
      default: break;
    }
    if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
      advance();
      advance();
      return {Token::arrow, "->", line, col};
    }
    if (ident_char(c)) {
      std::string s;
      while (pos_ < text_.size() && ident_char(text_[pos_])) {
        s += text_[pos_];
        advance();
      }
      return {Token::ident, s, line, col};
    }
    throw ParseError(line, col, std::string("unexpected character '") + c + "'");
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(const std::string& text) {
    Lexer lex(text);
    for (;;) {
      Token t = lex.next();
      tokens_.push_back(t);
      if (t.kind == Token::end) break;
    }
  }

  PTRS run() {
    // First pass: collect VAR declarations so variables are known wherever
    // the blocks appear in the file.
    for (std::size_t i = 0; i + 1 < tokens_.size(); ++i) {
      if (tokens_[i].kind == Token::lparen && tokens_[i + 1].kind == Token::ident &&
          tokens_[i + 1].text == "VAR") {
        std::size_t j = i + 2;
        while (j < tokens_.size() && tokens_[j].kind == Token::ident) {
          if (!vars_.insert(tokens_[j].text).second)
            throw ParseError(tokens_[j].line, tokens_[j].col,
                             "duplicate VAR declaration " + tokens_[j].text);
          ++j;
        }
      }
    }

    std::vector<PRule> rules;
    std::optional<Term> start;
    int rules_blocks = 0;
    while (peek().kind != Token::end) {
      expect(Token::lparen, "(");
      Token head = expect(Token::ident, "block name");
      if (head.text == "VAR") {
        while (peek().kind == Token::ident) get();
      } else if (head.text == "RULES") {
        ++rules_blocks;
        while (peek().kind != Token::rparen) rules.push_back(parse_rule());
      } else if (head.text == "START") {
        if (start) throw ParseError(head.line, head.col, "duplicate START block");
        start = parse_term();
      } else {
        throw ParseError(head.line, head.col, "unknown block " + head.text);
      }
      expect(Token::rparen, ")");
    }
    if (rules_blocks != 1)
      throw ParseError(1, 1, "expected exactly one RULES block, found " +
                                 std::to_string(rules_blocks));
    try {
      return make_ptrs(std::move(rules), std::move(start));
    } catch (const std::invalid_argument& e) {
      throw ParseError(1, 1, e.what());
    }
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  Token get() { return tokens_[pos_++]; }
  Token expect(Token::Kind k, const std::string& what) {
    Token t = get();
    if (t.kind != k)
      throw ParseError(t.line, t.col, "expected " + what + ", got '" + t.text + "'");
    return t;
  }

  Term parse_term() {
    Token id = expect(Token::ident, "identifier");
    if (vars_.count(id.text)) return Term::var(id.text);
    if (peek().kind != Token::lparen) {
      note_arity(id, 0);
      return Term::app(id.text);
    }
    get();  // '('
    std::vector<Term> args;
    args.push_back(parse_term());
    while (peek().kind == Token::comma) {
      get();
      args.push_back(parse_term());
    }
    expect(Token::rparen, ")");
    note_arity(id, static_cast<int>(args.size()));
    return Term::app(id.text, std::move(args));
  }

  void note_arity(const Token& id, int arity) {
    auto [it, inserted] = arity_.emplace(id.text, arity);
    if (!inserted && it->second != arity)
      throw ParseError(id.line, id.col,
                       "symbol " + id.text + " used with arities " +
                           std::to_string(it->second) + " and " + std::to_string(arity));
  }

  Rational parse_rational() {
    Token n = expect(Token::ident, "number");
    auto as_int = [](const Token& t) -> std::int64_t {
      for (char c : t.text)
        if (!std::isdigit(static_cast<unsigned char>(c)))
          throw ParseError(t.line, t.col, "expected a number, got '" + t.text + "'");
      try {
        return std::stoll(t.text);
      } catch (const std::exception&) {
        throw ParseError(t.line, t.col, "number out of range: " + t.text);
      }
    };
    std::int64_t num = as_int(n);
    if (peek().kind == Token::slash) {
      get();
      Token d = expect(Token::ident, "denominator");
      std::int64_t den = as_int(d);
      if (den == 0) throw ParseError(d.line, d.col, "zero denominator");
      return Rational(num, den);
    }
    return Rational(num);
  }

  PRule parse_rule() {
    Token at = peek();
    Term lhs = parse_term();
    expect(Token::arrow, "->");
    expect(Token::lbrace, "{");
    MultiDistribution mu;
    for (;;) {
      Rational p = parse_rational();
      expect(Token::colon, ":");
      mu.branches.emplace_back(p, parse_term());
      if (peek().kind != Token::comma) break;
      get();
    }
    expect(Token::rbrace, "}");
    PRule rule{std::move(lhs), std::move(mu)};
    try {
      rule.validate();
    } catch (const std::invalid_argument& e) {
      throw ParseError(at.line, at.col, e.what());
    }
    return rule;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::set<std::string> vars_;
  std::map<std::string, int> arity_;
};

}  // namespace

PTRS parse_ptrs(const std::string& text) { return Parser(text).run(); }

PTRS parse_ptrs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_ptrs(ss.str());
}

}  // namespace adp
