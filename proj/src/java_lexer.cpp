#include "littledarwin/java_lexer.hpp"

#include <array>
#include <cctype>
#include <unordered_set>

namespace littledarwin {

namespace {

const std::unordered_set<std::string_view> kKeywords = {
    "abstract",   "assert",       "boolean",   "break",      "byte",
    "case",       "catch",        "char",      "class",      "const",
    "continue",   "default",      "do",        "double",     "else",
    "enum",       "extends",      "final",     "finally",    "float",
    "for",        "goto",         "if",        "implements", "import",
    "instanceof", "int",          "interface", "long",       "native",
    "new",        "package",      "private",   "protected",  "public",
    "return",     "short",        "static",    "strictfp",   "super",
    "switch",     "synchronized", "this",      "throw",      "throws",
    "transient",  "try",          "void",      "volatile",   "while",
};

// Longest-match first. '>' sequences are lexed greedily; the parser splits
// them back apart when closing type arguments.
const std::array<std::string_view, 36> kPuncts = {
    ">>>=", ">>>", ">>=", "<<=", "...", "->", "::", "==", "!=", "<=", ">=",
    "&&",  "||",  "++",  "--",  "+=",  "-=", "*=", "/=", "%=", "&=", "|=",
    "^=",  "<<",  ">>",  "+",   "-",   "*",  "/",  "%",  "&",  "|",  "^",
    "!",   "~",   "<",
};

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$' ||
         static_cast<unsigned char>(c) >= 0x80;
}

bool is_ident_part(char c) {
  return is_ident_start(c) || std::isdigit(static_cast<unsigned char>(c));
}

}  // namespace

bool is_java_keyword(std::string_view word) { return kKeywords.count(word) > 0; }

bool is_primitive_type_keyword(std::string_view word) {
  return word == "boolean" || word == "byte" || word == "char" ||
         word == "short" || word == "int" || word == "long" ||
         word == "float" || word == "double";
}

std::vector<Token> lex_java(std::string_view src, const std::string& path) {
  std::vector<Token> out;
  uint32_t i = src.substr(0, 3) == "\xEF\xBB\xBF" ? 3 : 0;  // UTF-8 BOM
  uint32_t line = 1;
  const uint32_t n = static_cast<uint32_t>(src.size());

  auto peek = [&](uint32_t k) -> char { return i + k < n ? src[i + k] : '\0'; };
  auto push = [&](TokenKind kind, uint32_t start, uint32_t end) {
    out.push_back(Token{kind, start, end, line, src.substr(start, end - start)});
  };
  auto err = [&](const std::string& msg) { throw ParseError(path, line, msg); };

  while (i < n) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '/' && peek(1) == '/') {
      while (i < n && src[i] != '\n') ++i;
      continue;
    }
    if (c == '/' && peek(1) == '*') {
      uint32_t start_line = line;
      i += 2;
      while (i < n && !(src[i] == '*' && peek(1) == '/')) {
        if (src[i] == '\n') ++line;
        ++i;
      }
      if (i >= n) {
        line = start_line;
        err("unterminated block comment");
      }
      i += 2;
      continue;
    }
    if (is_ident_start(c)) {
      uint32_t start = i;
      while (i < n && is_ident_part(src[i])) ++i;
      std::string_view word = src.substr(start, i - start);
      TokenKind kind = TokenKind::Identifier;
      if (word == "true" || word == "false") {
        kind = TokenKind::BoolLiteral;
      } else if (word == "null") {
        kind = TokenKind::NullLiteral;
      } else if (is_java_keyword(word)) {
        kind = TokenKind::Keyword;
      }
      push(kind, start, i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      uint32_t start = i;
      bool hex = c == '0' && (peek(1) == 'x' || peek(1) == 'X');
      bool is_float = c == '.';
      if (hex) i += 2;
      while (i < n) {
        char d = src[i];
        if (std::isdigit(static_cast<unsigned char>(d)) || d == '_') {
          ++i;
        } else if (hex && std::isxdigit(static_cast<unsigned char>(d))) {
          ++i;
        } else if (d == '.' && !is_float &&
                   (i + 1 >= n || src[i + 1] != '.')) {
          is_float = true;
          ++i;
        } else if ((!hex && (d == 'e' || d == 'E')) ||
                   (hex && (d == 'p' || d == 'P'))) {
          is_float = true;
          ++i;
          if (i < n && (src[i] == '+' || src[i] == '-')) ++i;
        } else if (d == 'f' || d == 'F' || d == 'd' || d == 'D') {
          if (hex && !is_float) {
            ++i;  // hex digit, not a suffix
          } else {
            is_float = true;
            ++i;
            break;
          }
        } else if (d == 'l' || d == 'L') {
          ++i;
          break;
        } else if (d == 'b' || d == 'B' || d == 'x' || d == 'X') {
          // binary/hex markers directly after a leading 0
          if (i == start + 1 && src[start] == '0') {
            hex = hex || d == 'x' || d == 'X';
            ++i;
          } else {
            break;
          }
        } else if (hex && std::isxdigit(static_cast<unsigned char>(d))) {
          ++i;
        } else {
          break;
        }
      }
      push(is_float ? TokenKind::FloatLiteral : TokenKind::IntLiteral, start, i);
      continue;
    }
    if (c == '"' || c == '\'') {
      char quote = c;
      uint32_t start = i;
      ++i;
      while (i < n && src[i] != quote) {
        if (src[i] == '\n') err("unterminated literal");
        if (src[i] == '\\') ++i;
        ++i;
      }
      if (i >= n) err("unterminated literal");
      ++i;
      push(quote == '"' ? TokenKind::StringLiteral : TokenKind::CharLiteral,
           start, i);
      continue;
    }
    {
      bool matched = false;
      for (std::string_view p : kPuncts) {
        if (src.substr(i, p.size()) == p) {
          push(TokenKind::Punct, i, i + static_cast<uint32_t>(p.size()));
          i += static_cast<uint32_t>(p.size());
          matched = true;
          break;
        }
      }
      if (matched) continue;
    }
    if (std::string_view("=<>?:;,.()[]{}@").find(c) != std::string_view::npos) {
      push(TokenKind::Punct, i, i + 1);
      ++i;
      continue;
    }
    err(std::string("unexpected character '") + c + "'");
  }
  out.push_back(Token{TokenKind::End, n, n, line, {}});
  return out;
}

}  // namespace littledarwin
