#include "lexer.hpp"

#include <cctype>

#include "unani/rules/ast.hpp"

namespace unani::rules::detail {

const char* describe(TokenType type) noexcept {
  switch (type) {
    case TokenType::identifier: return "identifier";
    case TokenType::lparen: return "'('";
    case TokenType::rparen: return "')'";
    case TokenType::comma: return "','";
    case TokenType::question: return "'?'";
    case TokenType::arrow: return "'->'";
    case TokenType::rule_id: return "'@id'";
    case TokenType::end: return "end of input";
  }
  return "token";
}

namespace {
bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool rule_id_char(char c) { return ident_char(c) || c == '-' || c == '.'; }
}  // namespace

void Lexer::advance(std::size_t n) {
  for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i, ++pos_) {
    const auto b = static_cast<unsigned char>(text_[pos_]);
    if (b == '\n') {
      ++line_;
      column_ = 1;
    } else if ((b & 0xC0) != 0x80) {
      ++column_;
    }
  }
}

void Lexer::skip_trivia() {
  while (pos_ < text_.size()) {
    const char c = text_[pos_];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
    } else if (c == '#') {
      while (pos_ < text_.size() && text_[pos_] != '\n') advance();
    } else {
      break;
    }
  }
}

Token Lexer::next() {
  skip_trivia();
  Token tok;
  tok.line = line_;
  tok.column = column_;
  if (pos_ >= text_.size()) return tok;

  const char c = text_[pos_];
  const std::string_view rest = text_.substr(pos_);
  if (ident_start(c)) {
    std::size_t len = 0;
    while (len < rest.size() && ident_char(rest[len])) ++len;
    tok.type = TokenType::identifier;
    tok.text = std::string(rest.substr(0, len));
    advance(len);
    return tok;
  }
  if (rest.substr(0, 2) == "->") {
    tok.type = TokenType::arrow;
    tok.text = "->";
    advance(2);
    return tok;
  }
  if (rest.substr(0, 3) == "\xE2\x86\x92") {
    tok.type = TokenType::arrow;
    tok.text = "->";
    advance(3);
    return tok;
  }
  if (rest.substr(0, 3) == "@id" && (rest.size() == 3 || !ident_char(rest[3]))) {
    advance(3);
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) advance();
    std::size_t len = 0;
    const std::string_view after = text_.substr(pos_);
    while (len < after.size() && rule_id_char(after[len])) ++len;
    if (len == 0) throw RuleError("syntax_error", "'@id' must be followed by a rule id", line_, column_);
    tok.type = TokenType::rule_id;
    tok.text = std::string(after.substr(0, len));
    advance(len);
    return tok;
  }
  switch (c) {
    case '(': tok.type = TokenType::lparen; break;
    case ')': tok.type = TokenType::rparen; break;
    case ',': tok.type = TokenType::comma; break;
    case '?': tok.type = TokenType::question; break;
    default: {
      std::size_t len = 1;
      while (len < rest.size() && (static_cast<unsigned char>(rest[len]) & 0xC0) == 0x80) ++len;
      throw RuleError("syntax_error", "unexpected character '" + std::string(rest.substr(0, len)) + "'",
                      line_, column_);
    }
  }
  tok.text = std::string(1, c);
  advance();
  return tok;
}

}  // namespace unani::rules::detail
