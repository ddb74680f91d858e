#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "littledarwin/source_file.hpp"

namespace littledarwin {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string file, uint32_t line, const std::string& message)
      : std::runtime_error(file + ":" + std::to_string(line) + ": " + message),
        file_(std::move(file)),
        line_(line),
        message_(message) {}

  const std::string& file() const { return file_; }
  uint32_t line() const { return line_; }
  const std::string& message() const { return message_; }

 private:
  std::string file_;
  uint32_t line_;
  std::string message_;
};

enum class TokenKind : uint8_t {
  Identifier,
  Keyword,
  IntLiteral,
  FloatLiteral,
  CharLiteral,
  StringLiteral,
  BoolLiteral,
  NullLiteral,
  Punct,
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  uint32_t start = 0;
  uint32_t end = 0;
  uint32_t line = 1;
  std::string_view text;

  bool is(std::string_view t) const { return text == t; }
  bool is_punct(std::string_view t) const {
    return kind == TokenKind::Punct && text == t;
  }
  bool is_keyword(std::string_view t) const {
    return kind == TokenKind::Keyword && text == t;
  }
  bool is_literal() const {
    return kind == TokenKind::IntLiteral || kind == TokenKind::FloatLiteral ||
           kind == TokenKind::CharLiteral || kind == TokenKind::StringLiteral ||
           kind == TokenKind::BoolLiteral || kind == TokenKind::NullLiteral;
  }
};

bool is_java_keyword(std::string_view word);
bool is_primitive_type_keyword(std::string_view word);

// Tokenizes Java source. Comments and whitespace are skipped; token text
// views point into `content`, which must outlive the result.
// Throws ParseError on malformed input (unterminated literal or comment).
std::vector<Token> lex_java(std::string_view content, const std::string& path);

}  // namespace littledarwin
