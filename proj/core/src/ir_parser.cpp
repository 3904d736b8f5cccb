// Copyright 2026 The TIC Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tic/ir_parser.hpp"

#include <cctype>
#include <charconv>
#include <optional>

#include "tic/errors.hpp"

namespace tic {
namespace {

enum class Tok {
  kIdent,     // lowercase-leading identifier
  kVariable,  // uppercase- or underscore-leading identifier
  kAnonymous,
  kInteger,
  kString,
  kLParen,
  kRParen,
  kComma,
  kDot,
  kIf,  // :-
  kAt,
  kPlus,
  kMinus,
  kStar,
  kSlash,
  kEq,
  kNe,
  kLt,
  kLe,
  kGt,
  kGe,
  kEnd,
};

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  std::int64_t value = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= src_.size()) {
        t.kind = Tok::kEnd;
        out.push_back(t);
        return out;
      }
      const char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < src_.size() && is_ident_char(src_[pos_])) advance();
        t.text = std::string(src_.substr(start, pos_ - start));
        if (t.text == "_") {
          t.kind = Tok::kAnonymous;
        } else if (std::islower(static_cast<unsigned char>(c))) {
          t.kind = Tok::kIdent;
        } else {
          t.kind = Tok::kVariable;
        }
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          advance();
        }
        t.kind = Tok::kInteger;
        t.text = std::string(src_.substr(start, pos_ - start));
        auto [p, ec] = std::from_chars(t.text.data(),
                                       t.text.data() + t.text.size(), t.value);
        if (ec != std::errc()) {
          throw SyntaxError(t.line, t.column, "integer in range", t.text);
        }
      } else if (c == '"') {
        t.kind = Tok::kString;
        advance();
        while (true) {
          if (pos_ >= src_.size()) {
            throw SyntaxError(line_, col_, "closing '\"'");
          }
          char d = src_[pos_];
          if (d == '"') {
            advance();
            break;
          }
          if (d == '\\' && pos_ + 1 < src_.size()) {
            advance();
            d = src_[pos_];
            if (d == 'n') d = '\n';
          }
          t.text.push_back(d);
          advance();
        }
      } else {
        t.kind = punct(t);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  static bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '%') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool next_is(char c) const {
    return pos_ + 1 < src_.size() && src_[pos_ + 1] == c;
  }

  Tok punct(Token& t) {
    const char c = src_[pos_];
    auto one = [&](Tok k) {
      t.text = std::string(1, c);
      advance();
      return k;
    };
    auto two = [&](Tok k) {
      t.text = std::string(src_.substr(pos_, 2));
      advance();
      advance();
      return k;
    };
    switch (c) {
      case '(':
        return one(Tok::kLParen);
      case ')':
        return one(Tok::kRParen);
      case ',':
        return one(Tok::kComma);
      case '.':
        return one(Tok::kDot);
      case '@':
        return one(Tok::kAt);
      case '+':
        return one(Tok::kPlus);
      case '-':
        return one(Tok::kMinus);
      case '*':
        return one(Tok::kStar);
      case '/':
        return one(Tok::kSlash);
      case '=':
        return next_is('=') ? two(Tok::kEq) : one(Tok::kEq);
      case '!':
        if (next_is('=')) return two(Tok::kNe);
        break;
      case '<':
        return next_is('=') ? two(Tok::kLe) : one(Tok::kLt);
      case '>':
        return next_is('=') ? two(Tok::kGe) : one(Tok::kGt);
      case ':':
        if (next_is('-')) return two(Tok::kIf);
        break;
      default:
        break;
    }
    throw SyntaxError(line_, col_, "a token",
                      std::string("unexpected character '") + c + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::string source_name)
      : toks_(std::move(tokens)) {
    program_.source_name = std::move(source_name);
  }

  Program run() {
    while (peek().kind != Tok::kEnd) program_.add(clause());
    return std::move(program_);
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }

  Token take() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }

  bool accept(Tok k) {
    if (peek().kind != k) return false;
    take();
    return true;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    std::string found =
        t.kind == Tok::kEnd ? "end of input" : "'" + t.text + "'";
    throw SyntaxError(t.line, t.column, expected, "found " + found);
  }

  Token expect(Tok k, const std::string& what) {
    if (peek().kind != k) fail(what);
    return take();
  }

  Rule clause() {
    Rule rule;
    rule.location = {peek().line, peek().column};
    bool is_default = false;
    if (peek().kind == Tok::kIdent && peek().text == "default" &&
        peek(1).kind == Tok::kIdent) {
      take();
      is_default = true;
    }
    rule.head = atom("a rule head");
    if (accept(Tok::kIf)) {
      rule.body.push_back(element());
      while (accept(Tok::kComma)) rule.body.push_back(element());
    }
    expect(Tok::kDot, "'.' at end of clause");

    if (is_default) {
      rule.kind = RuleKind::kDefault;
    } else if (rule.body.empty() && rule.head.is_ground()) {
      rule.kind = RuleKind::kFact;
    } else {
      rule.kind = RuleKind::kRule;
    }
    if (auto unsafe = unsafe_variables(rule); !unsafe.empty()) {
      throw UnsafeRule(rule.location.line, unsafe.front());
    }
    return rule;
  }

  Atom atom(const std::string& what) {
    if (peek().kind != Tok::kIdent) fail(what);
    Token name = take();
    Atom a;
    a.predicate = name.text;
    if (accept(Tok::kLParen)) {
      if (!accept(Tok::kRParen)) {
        a.args = terms();
        expect(Tok::kRParen, "')'");
      }
    }
    return a;
  }

  std::vector<Term> terms() {
    std::vector<Term> out;
    out.push_back(sum());
    while (accept(Tok::kComma)) out.push_back(sum());
    return out;
  }

  BodyElement element() {
    if (peek().kind == Tok::kIdent && peek().text == "not" &&
        peek(1).kind == Tok::kIdent) {
      take();
      Literal lit;
      lit.atom = atom("an atom after 'not'");
      lit.negated = true;
      return BodyElement::of(std::move(lit));
    }
    const std::size_t mark = pos_;
    // A plain atom unless a comparison operator follows the first term.
    if (peek().kind == Tok::kIdent) {
      Atom a = atom("a body literal");
      if (!is_compare(peek().kind) && !is_arith_op(peek().kind)) {
        Literal lit;
        lit.atom = std::move(a);
        return BodyElement::of(std::move(lit));
      }
      pos_ = mark;
    }
    Comparison c;
    c.left = sum();
    if (!is_compare(peek().kind)) fail("a comparison operator");
    c.op = compare_op(take().kind);
    c.right = sum();
    return BodyElement::of(std::move(c));
  }

  static bool is_compare(Tok k) {
    return k == Tok::kEq || k == Tok::kNe || k == Tok::kLt || k == Tok::kLe ||
           k == Tok::kGt || k == Tok::kGe;
  }

  static bool is_arith_op(Tok k) {
    return k == Tok::kPlus || k == Tok::kMinus || k == Tok::kStar ||
           k == Tok::kSlash;
  }

  static CompareOp compare_op(Tok k) {
    switch (k) {
      case Tok::kNe:
        return CompareOp::kNe;
      case Tok::kLt:
        return CompareOp::kLt;
      case Tok::kLe:
        return CompareOp::kLe;
      case Tok::kGt:
        return CompareOp::kGt;
      case Tok::kGe:
        return CompareOp::kGe;
      default:
        return CompareOp::kEq;
    }
  }

  Term sum() {
    Term left = product();
    while (peek().kind == Tok::kPlus || peek().kind == Tok::kMinus) {
      std::string op = take().text;
      left = Term::arith(op, std::move(left), product());
    }
    return left;
  }

  Term product() {
    Term left = primary();
    while (peek().kind == Tok::kStar || peek().kind == Tok::kSlash) {
      std::string op = take().text;
      left = Term::arith(op, std::move(left), primary());
    }
    return left;
  }

  Term primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::kInteger:
        return Term::integer(take().value);
      case Tok::kMinus:
        if (peek(1).kind == Tok::kInteger) {
          take();
          return Term::integer(-take().value);
        }
        fail("an integer after unary '-'");
      case Tok::kVariable:
        return Term::variable(take().text);
      case Tok::kAnonymous:
        take();
        return Term::anonymous();
      case Tok::kString:
        return Term::text(take().text);
      case Tok::kLParen: {
        take();
        Term inner = sum();
        expect(Tok::kRParen, "')'");
        return inner;
      }
      case Tok::kAt: {
        take();
        Token name = expect(Tok::kIdent, "an external predicate name");
        expect(Tok::kLParen, "'(' after external name");
        std::vector<Term> args;
        if (!accept(Tok::kRParen)) {
          args = terms();
          expect(Tok::kRParen, "')'");
        }
        return Term::external(name.text, std::move(args));
      }
      case Tok::kIdent: {
        Token name = take();
        if (!accept(Tok::kLParen)) return Term::symbol(name.text);
        std::vector<Term> args;
        if (!accept(Tok::kRParen)) {
          args = terms();
          expect(Tok::kRParen, "')'");
        }
        return Term::compound(name.text, std::move(args));
      }
      default:
        fail("a term");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Program program_;
};

}  // namespace

Program parse_program(std::string_view text, std::string source_name) {
  Lexer lexer(text);
  Parser parser(lexer.run(), std::move(source_name));
  return parser.run();
}

std::string serialize_program(const Program& program) {
  std::string out;
  for (const Rule& r : program.rules) {
    out += r.to_string();
    out.push_back('\n');
  }
  return out;
}

}  // namespace tic
