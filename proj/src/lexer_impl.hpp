// Internal tokenizer shared by the ASM-DL and scenario-file parsers.
#pragma once

#include <cctype>
#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "asurf/parser.hpp"

namespace asurf::detail {

enum class Tok {
  Ident,
  Number,
  LBrace,
  RBrace,
  Semi,
  Colon,
  ColonColon,
  Comma,
  Arrow,     // ->
  FatArrow,  // =>
  End,
};

inline const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Semi: return "';'";
    case Tok::Colon: return "':'";
    case Tok::ColonColon: return "'::'";
    case Tok::Comma: return "','";
    case Tok::Arrow: return "'->'";
    case Tok::FatArrow: return "'=>'";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;
};

class Lexer {
public:
  Lexer(std::string_view src, std::string file)
      : src_(src), file_(std::move(file)) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      Token t;
      t.span = span();
      if (pos_ >= src_.size()) {
        t.kind = Tok::End;
        out.push_back(t);
        return out;
      }
      char c = src_[pos_];
      if (std::isalpha((unsigned char)c) || c == '_') {
        size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum((unsigned char)src_[pos_]) || src_[pos_] == '_'))
          advance();
        t.kind = Tok::Ident;
        t.text = std::string(src_.substr(start, pos_ - start));
      } else if (std::isdigit((unsigned char)c)) {
        size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit((unsigned char)src_[pos_]))
          advance();
        if (pos_ < src_.size() && src_[pos_] == '.') {
          advance();
          while (pos_ < src_.size() && std::isdigit((unsigned char)src_[pos_]))
            advance();
        }
        t.kind = Tok::Number;
        t.text = std::string(src_.substr(start, pos_ - start));
      } else if (c == '{') {
        t.kind = Tok::LBrace;
        advance();
      } else if (c == '}') {
        t.kind = Tok::RBrace;
        advance();
      } else if (c == ';') {
        t.kind = Tok::Semi;
        advance();
      } else if (c == ',') {
        t.kind = Tok::Comma;
        advance();
      } else if (c == ':') {
        advance();
        if (pos_ < src_.size() && src_[pos_] == ':') {
          advance();
          t.kind = Tok::ColonColon;
        } else {
          t.kind = Tok::Colon;
        }
      } else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
        advance();
        advance();
        t.kind = Tok::Arrow;
      } else if (c == '=' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
        advance();
        advance();
        t.kind = Tok::FatArrow;
      } else {
        throw ParseError(t.span, std::string("illegal character '") + c + "'");
      }
      out.push_back(std::move(t));
    }
  }

private:
  SourceSpan span() const { return {file_, line_, col_}; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_trivia() {
    for (;;) {
      while (pos_ < src_.size() && std::isspace((unsigned char)src_[pos_]))
        advance();
      // line comment: -- ... \n
      if (pos_ + 1 < src_.size() && src_[pos_] == '-' && src_[pos_ + 1] == '-') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
        continue;
      }
      return;
    }
  }

  std::string_view src_;
  std::string file_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

inline bool parse_number(const std::string& text, double& out) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

inline std::string describe(const Token& t) {
  if (t.kind == Tok::Ident || t.kind == Tok::Number)
    return std::string(tok_name(t.kind)) + " '" + t.text + "'";
  return tok_name(t.kind);
}

// Shared cursor with expect/accept helpers.
class TokenStream {
public:
  TokenStream(std::string_view src, std::string file) {
    toks_ = Lexer(src, std::move(file)).run();
  }

  const Token& peek() const { return toks_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_keyword(const char* kw) const {
    return at(Tok::Ident) && peek().text == kw;
  }
  Token take() { return toks_[pos_++]; }

  Token expect(Tok k, const std::string& what = "") {
    if (!at(k)) {
      std::string expected = what.empty() ? tok_name(k) : what;
      throw ParseError(peek().span,
                       "unexpected " + describe(peek()) + ", expected " + expected,
                       expected);
    }
    return take();
  }

  Token expect_keyword(const char* kw) {
    if (!at_keyword(kw))
      throw ParseError(peek().span,
                       "unexpected " + describe(peek()) + ", expected '" +
                           std::string(kw) + "'",
                       kw);
    return take();
  }

private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace asurf::detail
