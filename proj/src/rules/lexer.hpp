#pragma once

#include <string>
#include <string_view>

namespace unani::rules::detail {

enum class TokenType { identifier, lparen, rparen, comma, question, arrow, rule_id, end };

struct Token {
  TokenType type = TokenType::end;
  std::string text;
  int line = 1;
  int column = 1;
};

[[nodiscard]] const char* describe(TokenType type) noexcept;

/// Tokenizer for rule text. `@id <token>` is lexed as a single rule_id token
/// whose text is the annotated id. Both "->" and U+2192 are arrows.
class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  [[nodiscard]] Token next();

 private:
  void advance(std::size_t n = 1);
  void skip_trivia();

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace unani::rules::detail
