#include "turtlesyn/lang.hpp"

#include <cctype>
#include <sstream>

namespace tsyn {

namespace {

struct Token {
  enum class Type { Word, Number, LBrace, RBrace, End } type = Type::End;
  std::string text;
  long value = 0;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  // Returns the next token, or a ParseError for characters outside the
  // alphabet. Words are lowercase letters and underscores, numbers are
  // decimal digit runs.
  std::variant<Token, ParseError> next() {
    skip_ws();
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= text_.size()) {
      t.type = Token::Type::End;
      return t;
    }
    char c = text_[pos_];
    if (c == '{') {
      advance();
      t.type = Token::Type::LBrace;
      t.text = "{";
      return t;
    }
    if (c == '}') {
      advance();
      t.type = Token::Type::RBrace;
      t.text = "}";
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      t.type = Token::Type::Number;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        t.text += text_[pos_];
        advance();
      }
      t.value = std::stol(t.text);
      return t;
    }
    if (std::islower(static_cast<unsigned char>(c)) || c == '_') {
      t.type = Token::Type::Word;
      while (pos_ < text_.size()) {
        char w = text_[pos_];
        if (!std::islower(static_cast<unsigned char>(w)) && w != '_') break;
        t.text += w;
        advance();
      }
      return t;
    }
    return ParseError{line_, col_, std::string("unexpected character '") + c + "'"};
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

ParseError err_at(const Token& t, std::string message) { return ParseError{t.line, t.col, std::move(message)}; }

}  // namespace

std::variant<Program, ParseError> parse(std::string_view text) {
  Lexer lexer(text);
  Program program;

  auto take = [&]() -> std::variant<Token, ParseError> { return lexer.next(); };

  while (true) {
    auto tok_or = take();
    if (auto* e = std::get_if<ParseError>(&tok_or)) return *e;
    Token tok = std::get<Token>(tok_or);
    if (tok.type == Token::Type::End) break;

    if (tok.type == Token::Type::RBrace) return err_at(tok, "unexpected '}'");
    if (tok.type == Token::Type::LBrace) return err_at(tok, "unexpected '{'");
    if (tok.type == Token::Type::Number) return err_at(tok, "unexpected number '" + tok.text + "'");

    if (auto cmd = basic_from_name(tok.text)) {
      program.statements.push_back(Stmt::from_leaf(LeafStmt::basic(*cmd)));
      continue;
    }
    if (tok.text == "setpencolor") {
      auto arg_or = take();
      if (auto* e = std::get_if<ParseError>(&arg_or)) return *e;
      Token arg = std::get<Token>(arg_or);
      if (arg.type != Token::Type::Word)
        return err_at(arg, "expected pen color after 'setpencolor'");
      auto color = color_from_name(arg.text);
      if (!color) return err_at(arg, "unknown pen color '" + arg.text + "'");
      program.statements.push_back(Stmt::from_leaf(LeafStmt::pen(*color)));
      continue;
    }
    if (tok.text == "repeat") {
      auto count_or = take();
      if (auto* e = std::get_if<ParseError>(&count_or)) return *e;
      Token count = std::get<Token>(count_or);
      if (count.type != Token::Type::Number)
        return err_at(count, "expected repeat count after 'repeat'");
      if (count.value < 2 || count.value > 5)
        return err_at(count, "repeat count must be between 2 and 5");

      auto brace_or = take();
      if (auto* e = std::get_if<ParseError>(&brace_or)) return *e;
      Token brace = std::get<Token>(brace_or);
      if (brace.type != Token::Type::LBrace)
        return err_at(brace, "expected '{' after repeat count");

      std::vector<LeafStmt> body;
      while (true) {
        auto body_or = take();
        if (auto* e = std::get_if<ParseError>(&body_or)) return *e;
        Token bt = std::get<Token>(body_or);
        if (bt.type == Token::Type::End)
          return err_at(bt, "unclosed '{' in repeat body");
        if (bt.type == Token::Type::RBrace) {
          if (body.empty()) return err_at(bt, "repeat body must not be empty");
          break;
        }
        if (bt.type != Token::Type::Word)
          return err_at(bt, "unexpected token '" + bt.text + "' in repeat body");
        if (bt.text == "repeat")
          return err_at(bt, "nested repeat is not allowed");
        if (auto cmd = basic_from_name(bt.text)) {
          body.push_back(LeafStmt::basic(*cmd));
          continue;
        }
        if (bt.text == "setpencolor") {
          auto arg_or = take();
          if (auto* e = std::get_if<ParseError>(&arg_or)) return *e;
          Token arg = std::get<Token>(arg_or);
          if (arg.type != Token::Type::Word)
            return err_at(arg, "expected pen color after 'setpencolor'");
          auto color = color_from_name(arg.text);
          if (!color) return err_at(arg, "unknown pen color '" + arg.text + "'");
          body.push_back(LeafStmt::pen(*color));
          continue;
        }
        return err_at(bt, "unknown token '" + bt.text + "'");
      }
      program.statements.push_back(Stmt::repeat(static_cast<int>(count.value), std::move(body)));
      continue;
    }
    return err_at(tok, "unknown token '" + tok.text + "'");
  }
  return program;
}

namespace {

void print_leaf(std::ostringstream& out, const LeafStmt& l) {
  if (l.kind == LeafStmt::Kind::Basic) {
    out << basic_name(l.cmd);
  } else {
    out << "setpencolor " << color_name(l.color);
  }
}

}  // namespace

std::string print(const Program& code) {
  std::ostringstream out;
  bool first = true;
  for (const Stmt& s : code.statements) {
    if (!first) out << '\n';
    first = false;
    if (s.kind == Stmt::Kind::Leaf) {
      print_leaf(out, s.leaf);
    } else {
      out << "repeat " << s.count << " {";
      for (const LeafStmt& l : s.body) {
        out << "\n  ";
        print_leaf(out, l);
      }
      out << "\n}";
    }
  }
  return out.str();
}

}  // namespace tsyn
