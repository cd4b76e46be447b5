#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace groundwork {

// Source position, 1-based.
struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, SourcePos pos);

  const SourcePos& pos() const { return pos_; }

 private:
  SourcePos pos_;
};

// A parsed s-expression: either an atom (symbol, number or quoted string)
// or a parenthesised list.
class SExpr {
 public:
  enum class Kind { Atom, String, List };

  static SExpr atom(std::string text, SourcePos pos = {});
  static SExpr string(std::string text, SourcePos pos = {});
  static SExpr list(std::vector<SExpr> items, SourcePos pos = {});

  Kind kind() const { return kind_; }
  bool is_atom() const { return kind_ == Kind::Atom; }
  bool is_string() const { return kind_ == Kind::String; }
  bool is_list() const { return kind_ == Kind::List; }

  // Atom or string text. Throws ParseError on lists.
  const std::string& text() const;
  const std::vector<SExpr>& items() const;
  const SourcePos& pos() const { return pos_; }

  std::size_t size() const { return items_.size(); }
  const SExpr& operator[](std::size_t i) const;

  // True for a list whose first item is the atom `head`.
  bool is_form(std::string_view head) const;
  // Head symbol of a non-empty list starting with an atom, else "".
  std::string head() const;

  // Throws ParseError at this node's position.
  [[noreturn]] void fail(const std::string& message) const;

  std::string to_string() const;

 private:
  Kind kind_ = Kind::List;
  std::string text_;
  std::vector<SExpr> items_;
  SourcePos pos_;
};

// Parses every top-level expression in `source`. `;` starts a line comment.
std::vector<SExpr> parse_sexprs(std::string_view source);
// Parses exactly one expression.
SExpr parse_sexpr(std::string_view source);

std::string read_file(const std::string& path);

}  // namespace groundwork
