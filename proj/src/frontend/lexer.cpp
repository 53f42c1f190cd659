// Copyright 2026 The gmc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lexer.hpp"

#include <limits>

namespace gmc::frontend {
namespace {

bool ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }
bool digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

std::string_view describe(Tok kind) {
  switch (kind) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::Arrow: return "'->'";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view src, const std::string& file, Diagnostics& diags) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1, col = 1;

  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto lex_error = [&](std::string msg, int length) {
    diags.push_back({Severity::Error, "E001", "", std::move(msg), {file, line, col, length}});
  };

  while (i < src.size()) {
    const char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }

    Token tok;
    tok.line = line;
    tok.column = col;
    const std::size_t start = i;

    if (ident_start(c)) {
      std::size_t n = 1;
      while (start + n < src.size() && ident_char(src[start + n])) ++n;
      tok.kind = Tok::Ident;
      tok.text = src.substr(start, n);
      advance(n);
      out.push_back(tok);
      continue;
    }

    const bool negative = c == '-' && i + 1 < src.size() && digit(src[i + 1]);
    if (digit(c) || negative) {
      std::size_t n = negative ? 1 : 0;
      while (start + n < src.size() && digit(src[start + n])) ++n;
      tok.kind = Tok::Int;
      tok.text = src.substr(start, n);
      // Accumulate negatively so INT64_MIN is representable.
      std::int64_t v = 0;
      bool overflow = false;
      for (std::size_t k = negative ? 1 : 0; k < n; ++k) {
        const int d = src[start + k] - '0';
        if (v < (std::numeric_limits<std::int64_t>::min() + d) / 10) overflow = true;
        if (!overflow) v = v * 10 - d;
      }
      if (!negative) {
        if (v == std::numeric_limits<std::int64_t>::min()) overflow = true;
        v = -v;
      }
      if (overflow) {
        lex_error("integer literal '" + std::string(tok.text) + "' is out of range",
                  static_cast<int>(n));
        v = 0;
      }
      tok.value = v;
      advance(n);
      out.push_back(tok);
      continue;
    }

    std::size_t n = 1;
    switch (c) {
      case '[': tok.kind = Tok::LBracket; break;
      case ']': tok.kind = Tok::RBracket; break;
      case '{': tok.kind = Tok::LBrace; break;
      case '}': tok.kind = Tok::RBrace; break;
      case ',': tok.kind = Tok::Comma; break;
      case ':': tok.kind = Tok::Colon; break;
      case '-':
        if (i + 1 < src.size() && src[i + 1] == '>') {
          tok.kind = Tok::Arrow;
          n = 2;
          break;
        }
        [[fallthrough]];
      default: {
        // Report one diagnostic per run of unexpected bytes.
        std::size_t bad = 1;
        while (start + bad < src.size()) {
          char b = src[start + bad];
          if (b == ' ' || b == '\t' || b == '\r' || b == '\n' || ident_char(b) || b == '[' ||
              b == ']' || b == '{' || b == '}' || b == ',' || b == ':' || b == '-' || b == '/')
            break;
          ++bad;
        }
        const auto uc = static_cast<unsigned char>(c);
        std::string shown = uc >= 0x20 && uc < 0x7f ? std::string(1, c)
                                                    : "\\x" + std::string(1, "0123456789abcdef"[uc >> 4]) +
                                                          "0123456789abcdef"[uc & 15];
        lex_error("unexpected character '" + shown + "'", static_cast<int>(bad));
        advance(bad);
        continue;
      }
    }
    tok.text = src.substr(start, n);
    advance(n);
    out.push_back(tok);
  }

  // End of input is reported just past the last token so its span stays on a
  // line of the source.
  Token end;
  end.kind = Tok::End;
  if (!out.empty()) {
    end.line = out.back().line;
    end.column = out.back().column + static_cast<int>(out.back().text.size());
  }
  out.push_back(end);
  return out;
}

}  // namespace gmc::frontend
