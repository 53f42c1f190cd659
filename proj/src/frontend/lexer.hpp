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

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gmc/ir/diagnostic.hpp"

namespace gmc::frontend {

enum class Tok { Ident, Int, LBracket, RBracket, LBrace, RBrace, Comma, Colon, Arrow, End };

struct Token {
  Tok kind = Tok::End;
  std::string_view text;
  std::int64_t value = 0;
  int line = 1;
  int column = 1;
};

std::string_view describe(Tok kind);

/// Splits the whole input. Lexical errors (E001) are appended to `diags` and
/// the offending bytes skipped. The result always ends with Tok::End.
std::vector<Token> tokenize(std::string_view source, const std::string& file, Diagnostics& diags);

}  // namespace gmc::frontend
