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

#include "gmc/frontend/parser.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "lexer.hpp"

namespace gmc::frontend {
namespace {

constexpr std::array<std::string_view, 6> kDeclKeywords = {"array", "host",     "device",
                                                           "task",  "allocate", "connect"};
constexpr std::array<std::string_view, 22> kKeywords = {
    "array",   "task",    "repeat",  "body",    "in",     "out",      "inout",   "from",
    "tiler",   "origin",  "paving",  "fitting", "pattern", "host",    "device",  "memory",
    "kind",    "maxwg",   "maxdims", "allocate", "on",    "connect"};

constexpr std::size_t kMaxDiagnostics = 100;

bool is_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

struct SyntaxError {};

struct Name {
  std::string text;
  ir::SourceSpan span;
};

enum class Kind { Array, Task, Processor, Memory };

std::string_view kind_name(Kind k) {
  switch (k) {
    case Kind::Array: return "array";
    case Kind::Task: return "task";
    case Kind::Processor: return "processor";
    case Kind::Memory: return "memory";
  }
  return "?";
}

class Parser {
 public:
  Parser(std::string_view source, std::string file) : file_(std::move(file)) {
    toks_ = tokenize(source, file_, diags_);
  }

  ParseResult run() {
    if (peek().kind == Tok::End && !has_errors(diags_))
      report("E002", span_of(peek()), "expected model declaration");
    while (peek().kind != Tok::End && diags_.size() < kMaxDiagnostics) {
      try {
        declaration();
      } catch (const SyntaxError&) {
        recover();
      }
    }
    if (!has_errors(diags_)) resolve();

    ParseResult result;
    if (!has_errors(diags_)) result.model = std::move(model_);
    result.diagnostics = std::move(diags_);
    return result;
  }

 private:
  // Token helpers

  const Token& peek() const { return toks_[pos_]; }
  const Token& take() {
    const Token& t = toks_[pos_];
    if (t.kind != Tok::End) ++pos_;
    return t;
  }

  ir::SourceSpan span_of(const Token& t) const {
    return {file_, t.line, t.column, static_cast<int>(t.text.size())};
  }

  void report(std::string code, ir::SourceSpan span, std::string message) {
    diags_.push_back({Severity::Error, std::move(code), "", std::move(message), std::move(span)});
  }

  [[noreturn]] void syntax_error_at(const Token& t, const std::string& message) {
    report("E002", span_of(t), message);
    throw SyntaxError{};
  }

  std::string found(const Token& t) const {
    if (t.kind == Tok::End) return "end of input";
    if (t.kind == Tok::Ident && is_keyword(t.text)) return "keyword '" + std::string(t.text) + "'";
    return "'" + std::string(t.text) + "'";
  }

  const Token& expect(Tok kind, std::string_view context) {
    if (peek().kind != kind)
      syntax_error_at(peek(), "expected " + std::string(describe(kind)) + " " +
                                  std::string(context) + ", found " + found(peek()));
    return take();
  }

  void expect_keyword(std::string_view word, std::string_view context = {}) {
    const Token& t = peek();
    if (t.kind != Tok::Ident || t.text != word) {
      std::string msg = "expected '" + std::string(word) + "'";
      if (!context.empty()) msg += " " + std::string(context);
      syntax_error_at(t, msg + ", found " + found(t));
    }
    take();
  }

  bool accept_keyword(std::string_view word) {
    if (peek().kind == Tok::Ident && peek().text == word) {
      take();
      return true;
    }
    return false;
  }

  Name name(std::string_view context) {
    const Token& t = peek();
    if (t.kind != Tok::Ident || is_keyword(t.text))
      syntax_error_at(t, "expected identifier " + std::string(context) + ", found " + found(t));
    take();
    return {std::string(t.text), span_of(t)};
  }

  std::int64_t integer(std::string_view context) {
    return expect(Tok::Int, context).value;
  }

  std::vector<std::int64_t> ivec(std::string_view context) {
    expect(Tok::LBracket, context);
    std::vector<std::int64_t> v;
    if (peek().kind != Tok::RBracket) {
      v.push_back(integer(context));
      while (peek().kind == Tok::Comma) {
        take();
        v.push_back(integer(context));
      }
    }
    expect(Tok::RBracket, context);
    return v;
  }

  ir::Matrix imat(std::string_view context) {
    expect(Tok::LBracket, context);
    ir::Matrix m;
    if (peek().kind != Tok::RBracket) {
      m.push_back(ivec(context));
      while (peek().kind == Tok::Comma) {
        take();
        m.push_back(ivec(context));
      }
    }
    expect(Tok::RBracket, context);
    return m;
  }

  void recover() {
    while (peek().kind != Tok::End) {
      const Token& t = peek();
      if (t.kind == Tok::Ident &&
          std::find(kDeclKeywords.begin(), kDeclKeywords.end(), t.text) != kDeclKeywords.end())
        return;
      take();
    }
  }

  // Declarations

  void declaration() {
    const Token& t = peek();
    if (t.kind == Tok::Ident) {
      if (t.text == "array") return array_decl();
      if (t.text == "task") return task_decl();
      if (t.text == "host") return host_decl();
      if (t.text == "device") return device_decl();
      if (t.text == "allocate") return allocate_decl();
      if (t.text == "connect") return connect_decl();
    }
    syntax_error_at(t, "expected model declaration (array, task, host, device, allocate or "
                       "connect), found " + found(t));
  }

  void declare(const Name& n, Kind kind, const std::string& path) {
    auto [it, inserted] = symbols_.emplace(n.text, std::make_pair(kind, n.span));
    if (!inserted) {
      report("E003", n.span,
             "duplicate identifier '" + n.text + "' (first declared as " +
                 std::string(kind_name(it->second.first)) + " at " +
                 std::to_string(it->second.second.line) + ":" +
                 std::to_string(it->second.second.column) + ")");
      return;
    }
    model_.locations[path] = n.span;
  }

  void array_decl() {
    take();
    Name n = name("after 'array'");
    expect(Tok::Colon, "after array name");
    const Token& ty = peek();
    if (ty.kind != Tok::Ident || !ir::scalar_type_from(ty.text))
      syntax_error_at(ty, "expected element type (u8, i32 or f32), found " + found(ty));
    take();
    ir::ArrayValue a{n.text, *ir::scalar_type_from(ty.text), {ivec("for array shape")}};
    declare(n, Kind::Array, ir::array_path(n.text));
    model_.arrays.push_back(std::move(a));
  }

  void task_decl() {
    take();
    Name n = name("after 'task'");
    expect_keyword("repeat", "after task name");
    ir::RepetitiveTask task;
    task.name = n.text;
    task.repetition = {ivec("for repetition space")};
    expect_keyword("body");
    task.body = name("for task body").text;
    expect(Tok::LBrace, "to open task body");

    std::map<std::string, ir::SourceSpan> ports;
    while (peek().kind != Tok::RBrace) {
      const Token& dir_tok = peek();
      ir::Direction dir;
      if (accept_keyword("in")) {
        dir = ir::Direction::In;
      } else if (accept_keyword("out")) {
        dir = ir::Direction::Out;
      } else if (accept_keyword("inout")) {
        dir = ir::Direction::InOut;
      } else {
        syntax_error_at(dir_tok, "expected 'in', 'out', 'inout' or '}' in task '" + n.text +
                                     "', found " + found(dir_tok));
      }
      Name port = name("for port name");
      expect_keyword("from", "after port name");
      Name array = name("for tiled array");
      expect_keyword("tiler");
      expect(Tok::LBrace, "to open tiler");
      ir::Port p;
      p.name = port.text;
      p.direction = dir;
      p.tiler.array = array.text;
      expect_keyword("origin");
      p.tiler.origin = ivec("for origin");
      expect_keyword("paving");
      p.tiler.paving = imat("for paving");
      expect_keyword("fitting");
      p.tiler.fitting = imat("for fitting");
      expect_keyword("pattern");
      p.tiler.pattern = {ivec("for pattern shape")};
      expect(Tok::RBrace, "to close tiler");

      if (auto [it, inserted] = ports.emplace(port.text, port.span); !inserted) {
        report("E003", port.span, "duplicate port '" + port.text + "' in task '" + n.text + "'");
      } else {
        model_.locations[ir::port_path(n.text, port.text)] = port.span;
      }
      array_refs_.push_back(array);
      (dir == ir::Direction::Out ? task.outputs : task.inputs).push_back(std::move(p));
    }
    take();
    declare(n, Kind::Task, ir::task_path(n.text));
    model_.tasks.push_back(std::move(task));
  }

  void memory_clause(const std::string& owner, bool device) {
    expect_keyword("memory");
    Name mem = name("for memory name");
    ir::Region region = ir::Region::HostRam;
    if (device) {
      expect_keyword("kind", "after device memory name");
      const Token& r = peek();
      auto parsed = r.kind == Tok::Ident ? ir::region_from(r.text) : std::nullopt;
      if (!parsed || *parsed == ir::Region::HostRam)
        syntax_error_at(r, "expected memory region (global, constant, local or private), found " +
                               found(r));
      take();
      region = *parsed;
    }
    declare(mem, Kind::Memory, ir::memory_path(mem.text));
    model_.memories.push_back({mem.text, region, owner});
  }

  void host_decl() {
    take();
    Name n = name("after 'host'");
    expect(Tok::LBrace, "to open host");
    declare(n, Kind::Processor, ir::processor_path(n.text));
    model_.processors.push_back({n.text, ir::ProcessorKind::Host, 0, 3});
    do {
      memory_clause(n.text, false);
    } while (peek().kind == Tok::Ident && peek().text == "memory");
    expect(Tok::RBrace, "to close host");
  }

  void device_decl() {
    take();
    Name n = name("after 'device'");
    expect(Tok::LBrace, "to open device");
    declare(n, Kind::Processor, ir::processor_path(n.text));
    ir::Processor proc{n.text, ir::ProcessorKind::Device, 0, 3};
    do {
      memory_clause(n.text, true);
    } while (peek().kind == Tok::Ident && peek().text == "memory");
    expect_keyword("maxwg", "in device");
    proc.max_workgroup_size = integer("after 'maxwg'");
    if (accept_keyword("maxdims")) proc.max_dims = integer("after 'maxdims'");
    expect(Tok::RBrace, "to close device");
    model_.processors.push_back(std::move(proc));
  }

  void allocate_decl() {
    take();
    Name element = name("after 'allocate'");
    expect_keyword("on", "after allocated element");
    Name target = name("for allocation target");
    allocations_.push_back({std::move(element), std::move(target)});
  }

  void connect_decl() {
    take();
    Name from = name("after 'connect'");
    expect(Tok::Arrow, "in connector");
    Name to = name("after '->'");
    model_.locations[ir::connector_path(model_.connectors.size())] = from.span;
    model_.connectors.push_back({from.text, to.text});
    connector_refs_.push_back({std::move(from), std::move(to)});
  }

  // Name resolution

  const std::pair<Kind, ir::SourceSpan>* lookup(const std::string& n) const {
    auto it = symbols_.find(n);
    return it == symbols_.end() ? nullptr : &it->second;
  }

  void unresolved(const Name& n, std::string_view expected) {
    std::string msg = "unresolved reference '" + n.text + "'";
    if (const auto* sym = lookup(n.text))
      msg += ": expected " + std::string(expected) + ", found " +
             std::string(kind_name(sym->first));
    else
      msg += ": no " + std::string(expected) + " with that name";
    report("E004", n.span, msg);
  }

  void resolve() {
    for (const auto& ref : array_refs_) {
      const auto* sym = lookup(ref.text);
      if (!sym || sym->first != Kind::Array) unresolved(ref, "array");
    }
    for (const auto& [from, to] : connector_refs_) {
      for (const Name* end : {&from, &to}) {
        const auto* sym = lookup(end->text);
        if (!sym || (sym->first != Kind::Array && sym->first != Kind::Task))
          unresolved(*end, "array or task");
      }
    }
    for (const auto& [element, target] : allocations_) {
      const auto* sym = lookup(element.text);
      if (!sym || (sym->first != Kind::Array && sym->first != Kind::Task)) {
        unresolved(element, "array or task");
        continue;
      }
      const bool is_task = sym->first == Kind::Task;
      const auto* tsym = lookup(target.text);
      const Kind want = is_task ? Kind::Processor : Kind::Memory;
      if (!tsym || tsym->first != want) {
        unresolved(target, is_task ? "processor" : "memory");
        continue;
      }
      auto& map = is_task ? model_.allocation.task_map : model_.allocation.array_map;
      if (!map.emplace(element.text, target.text).second) {
        report("E003", element.span, "'" + element.text + "' is allocated more than once");
        continue;
      }
      model_.locations[ir::allocation_path(element.text)] = element.span;
    }
  }

  std::string file_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Diagnostics diags_;
  ir::Model model_;
  std::map<std::string, std::pair<Kind, ir::SourceSpan>> symbols_;
  std::vector<Name> array_refs_;
  std::vector<std::pair<Name, Name>> connector_refs_;
  std::vector<std::pair<Name, Name>> allocations_;
};

}  // namespace

ParseResult parse(std::string_view source, std::string file) {
  return Parser(source, std::move(file)).run();
}

}  // namespace gmc::frontend
