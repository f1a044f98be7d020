#pragma once

// Tokenizer shared by the .bnet and CTL parsers.

#include "basinscope/error.hpp"

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace basinscope::detail {

enum class token_kind { identifier, constant, bang, amp, bar, lparen, rparen, lbracket, rbracket, comma, end };

struct token {
  token_kind kind;
  std::string text;
  std::size_t column; // 1-based
};

inline std::vector<token> tokenize(std::string_view text, std::size_t line) {
  std::vector<token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t col = i + 1;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i + 1;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
        ++j;
      }
      out.push_back({token_kind::identifier, std::string(text.substr(i, j - i)), col});
      i = j;
      continue;
    }
    if (c == '0' || c == '1') {
      if (i + 1 < text.size() && std::isalnum(static_cast<unsigned char>(text[i + 1]))) {
        throw parse_error("malformed token starting with '" + std::string(1, c) + "'", line, col);
      }
      out.push_back({token_kind::constant, std::string(1, c), col});
      ++i;
      continue;
    }
    token_kind kind;
    switch (c) {
    case '!':
      kind = token_kind::bang;
      break;
    case '&':
      kind = token_kind::amp;
      break;
    case '|':
      kind = token_kind::bar;
      break;
    case '(':
      kind = token_kind::lparen;
      break;
    case ')':
      kind = token_kind::rparen;
      break;
    case '[':
      kind = token_kind::lbracket;
      break;
    case ']':
      kind = token_kind::rbracket;
      break;
    case ',':
      kind = token_kind::comma;
      break;
    default:
      throw parse_error("unexpected character '" + std::string(1, c) + "'", line, col);
    }
    out.push_back({kind, std::string(1, c), col});
    ++i;
  }
  out.push_back({token_kind::end, "", text.size() + 1});
  return out;
}

inline const char* describe(token_kind k) {
  switch (k) {
  case token_kind::identifier:
    return "identifier";
  case token_kind::constant:
    return "constant";
  case token_kind::bang:
    return "'!'";
  case token_kind::amp:
    return "'&'";
  case token_kind::bar:
    return "'|'";
  case token_kind::lparen:
    return "'('";
  case token_kind::rparen:
    return "')'";
  case token_kind::lbracket:
    return "'['";
  case token_kind::rbracket:
    return "']'";
  case token_kind::comma:
    return "','";
  case token_kind::end:
    return "end of input";
  }
  return "token";
}

} // namespace basinscope::detail
