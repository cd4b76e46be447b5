#include "groundwork/sexpr.hpp"

#include <fstream>
#include <sstream>

namespace groundwork {

namespace {

std::string format_error(const std::string& message, SourcePos pos) {
  std::ostringstream out;
  out << pos.line << ":" << pos.column << ": " << message;
  return out.str();
}

class Reader {
 public:
  explicit Reader(std::string_view src) : src_(src) {}

  bool at_end() {
    skip_space();
    return i_ >= src_.size();
  }

  SExpr read() {
    skip_space();
    if (i_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    const SourcePos start = pos_;
    const char c = src_[i_];
    if (c == '(') {
      advance();
      std::vector<SExpr> items;
      while (true) {
        skip_space();
        if (i_ >= src_.size()) throw ParseError("unterminated list", start);
        if (src_[i_] == ')') {
          advance();
          break;
        }
        items.push_back(read());
      }
      return SExpr::list(std::move(items), start);
    }
    if (c == ')') throw ParseError("unexpected ')'", pos_);
    if (c == '"') {
      advance();
      std::string text;
      while (true) {
        if (i_ >= src_.size()) throw ParseError("unterminated string", start);
        char d = src_[i_];
        advance();
        if (d == '"') break;
        if (d == '\\' && i_ < src_.size()) {
          d = src_[i_];
          advance();
        }
        text.push_back(d);
      }
      return SExpr::string(std::move(text), start);
    }
    std::string text;
    while (i_ < src_.size()) {
      const char d = src_[i_];
      if (d == '(' || d == ')' || d == ';' || d == '"' || d == ' ' || d == '\t' || d == '\n' ||
          d == '\r')
        break;
      text.push_back(d);
      advance();
    }
    return SExpr::atom(std::move(text), start);
  }

 private:
  void advance() {
    if (src_[i_] == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else if ((static_cast<unsigned char>(src_[i_]) & 0xC0) != 0x80) {
      ++pos_.column;
    }
    ++i_;
  }

  void skip_space() {
    while (i_ < src_.size()) {
      const char c = src_[i_];
      if (c == ';') {
        while (i_ < src_.size() && src_[i_] != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t i_ = 0;
  SourcePos pos_;
};

}  // namespace

ParseError::ParseError(const std::string& message, SourcePos pos)
    : std::runtime_error(format_error(message, pos)), pos_(pos) {}

SExpr SExpr::atom(std::string text, SourcePos pos) {
  SExpr e;
  e.kind_ = Kind::Atom;
  e.text_ = std::move(text);
  e.pos_ = pos;
  return e;
}

SExpr SExpr::string(std::string text, SourcePos pos) {
  SExpr e;
  e.kind_ = Kind::String;
  e.text_ = std::move(text);
  e.pos_ = pos;
  return e;
}

SExpr SExpr::list(std::vector<SExpr> items, SourcePos pos) {
  SExpr e;
  e.kind_ = Kind::List;
  e.items_ = std::move(items);
  e.pos_ = pos;
  return e;
}

const std::string& SExpr::text() const {
  if (is_list()) fail("expected an atom, found a list");
  return text_;
}

const std::vector<SExpr>& SExpr::items() const {
  if (!is_list()) fail("expected a list, found '" + text_ + "'");
  return items_;
}

const SExpr& SExpr::operator[](std::size_t i) const {
  const auto& xs = items();
  if (i >= xs.size()) fail("list too short: expected at least " + std::to_string(i + 1) + " items");
  return xs[i];
}

bool SExpr::is_form(std::string_view head) const {
  return is_list() && !items_.empty() && items_[0].is_atom() && items_[0].text_ == head;
}

std::string SExpr::head() const {
  if (is_list() && !items_.empty() && items_[0].is_atom()) return items_[0].text_;
  return {};
}

void SExpr::fail(const std::string& message) const { throw ParseError(message, pos_); }

std::string SExpr::to_string() const {
  switch (kind_) {
    case Kind::Atom:
      return text_;
    case Kind::String: {
      std::string out = "\"";
      for (char c : text_) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
      }
      out.push_back('"');
      return out;
    }
    case Kind::List: {
      std::string out = "(";
      for (std::size_t i = 0; i < items_.size(); ++i) {
        if (i) out.push_back(' ');
        out += items_[i].to_string();
      }
      out.push_back(')');
      return out;
    }
  }
  return {};
}

std::vector<SExpr> parse_sexprs(std::string_view source) {
  Reader reader(source);
  std::vector<SExpr> out;
  while (!reader.at_end()) out.push_back(reader.read());
  return out;
}

SExpr parse_sexpr(std::string_view source) {
  Reader reader(source);
  SExpr e = reader.read();
  if (!reader.at_end()) throw ParseError("trailing input after expression", {});
  return e;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace groundwork
