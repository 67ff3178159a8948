#ifndef TSQ_SPECIO_HPP_
#define TSQ_SPECIO_HPP_

// Line-oriented text format for complexes (.tsq):
//
//   complex <name>
//   vertex <id> [<id> ...]
//   edge <label>: <vertex> -> <vertex>
//   triangle <id> = <letter> <letter> <letter>
//   square <id> = <letter> <letter> <letter> <letter>
//
// A letter is <label> or -<label>; '#' starts a comment.

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "complex.hpp"

namespace tsq {

  namespace detail {
    struct Token {
      enum class Kind { Ident, Colon, Arrow, Equals, Minus, End };
      Kind        kind = Kind::End;
      std::string text;
      size_t      column = 0;  // 1-based
    };

    inline bool ident_char(char ch) {
      return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'
             || ch == '\'' || ch == '.';
    }

    inline std::vector<Token> lex_line(std::string_view line, size_t lineno) {
      std::vector<Token> out;
      size_t             i = 0;
      while (i < line.size()) {
        char const ch = line[i];
        if (ch == '#') {
          break;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) {
          ++i;
          continue;
        }
        size_t const col = i + 1;
        if (ident_char(ch)) {
          size_t j = i;
          while (j < line.size() && ident_char(line[j])) {
            ++j;
          }
          out.push_back({Token::Kind::Ident,
                         std::string(line.substr(i, j - i)),
                         col});
          i = j;
        } else if (ch == ':') {
          out.push_back({Token::Kind::Colon, ":", col});
          ++i;
        } else if (ch == '=') {
          out.push_back({Token::Kind::Equals, "=", col});
          ++i;
        } else if (ch == '-' && i + 1 < line.size() && line[i + 1] == '>') {
          out.push_back({Token::Kind::Arrow, "->", col});
          i += 2;
        } else if (ch == '-') {
          out.push_back({Token::Kind::Minus, "-", col});
          ++i;
        } else {
          throw Error(ErrorCode::SyntaxError,
                      lineno,
                      col,
                      std::string("unexpected character '") + ch + "'");
        }
      }
      out.push_back({Token::Kind::End, "", line.size() + 1});
      return out;
    }

    class LineParser {
     public:
      LineParser(std::vector<Token> toks, size_t lineno)
          : _toks(std::move(toks)), _line(lineno) {}

      Token const& peek() const {
        return _toks[_pos];
      }

      Token const& expect(Token::Kind k, char const* what) {
        if (_toks[_pos].kind != k) {
          fail(std::string("expected ") + what);
        }
        return _toks[_pos++];
      }

      void expect_end() {
        if (peek().kind != Token::Kind::End) {
          fail("expected end of line");
        }
      }

      [[noreturn]] void fail(std::string const& msg) const {
        Token const& t = _toks[_pos];
        throw Error(ErrorCode::SyntaxError,
                    _line,
                    t.column,
                    msg + (t.kind == Token::Kind::End
                               ? ", found end of line"
                               : ", found '" + t.text + "'"));
      }

      size_t line() const noexcept {
        return _line;
      }

     private:
      std::vector<Token> _toks;
      size_t             _pos = 0;
      size_t             _line;
    };
  }  // namespace detail

  // Reads a document into an unvalidated description. Only syntax is
  // checked here; build_complex reports semantic errors with positions.
  inline ComplexDescription parse(std::string_view text) {
    using detail::Token;
    ComplexDescription d;
    bool               have_header = false;
    size_t             lineno      = 0;
    size_t             start       = 0;
    while (start <= text.size()) {
      size_t end = text.find('\n', start);
      if (end == std::string_view::npos) {
        end = text.size();
      }
      std::string_view line = text.substr(start, end - start);
      if (!line.empty() && line.back() == '\r') {
        line.remove_suffix(1);
      }
      ++lineno;
      start = end + 1;

      detail::LineParser p(detail::lex_line(line, lineno), lineno);
      if (p.peek().kind == Token::Kind::End) {
        continue;
      }
      Token const kw = p.expect(Token::Kind::Ident, "a keyword");
      if (!have_header && kw.text != "complex") {
        throw Error(ErrorCode::SyntaxError,
                    lineno,
                    kw.column,
                    "expected 'complex <name>' header, found '" + kw.text
                        + "'");
      }
      if (kw.text == "complex") {
        if (have_header) {
          throw Error(ErrorCode::SyntaxError,
                      lineno,
                      kw.column,
                      "second 'complex' header");
        }
        d.name      = p.expect(Token::Kind::Ident, "a complex name").text;
        have_header = true;
        p.expect_end();
      } else if (kw.text == "vertex") {
        d.vertices.push_back(p.expect(Token::Kind::Ident, "a vertex id").text);
        while (p.peek().kind == Token::Kind::Ident) {
          d.vertices.push_back(p.expect(Token::Kind::Ident, "").text);
        }
        p.expect_end();
      } else if (kw.text == "edge") {
        EdgeSpec e;
        e.line  = lineno;
        e.label = p.expect(Token::Kind::Ident, "an edge label").text;
        p.expect(Token::Kind::Colon, "':'");
        e.from = p.expect(Token::Kind::Ident, "a vertex id").text;
        p.expect(Token::Kind::Arrow, "'->'");
        e.to = p.expect(Token::Kind::Ident, "a vertex id").text;
        p.expect_end();
        d.edges.push_back(std::move(e));
      } else if (kw.text == "triangle" || kw.text == "square") {
        FaceSpec f;
        f.line = lineno;
        f.kind = kw.text == "triangle" ? FaceKind::Triangle : FaceKind::Square;
        f.id   = p.expect(Token::Kind::Ident, "a face id").text;
        p.expect(Token::Kind::Equals, "'='");
        while (p.peek().kind != Token::Kind::End) {
          LetterSpec l;
          l.line   = lineno;
          l.column = p.peek().column;
          if (p.peek().kind == Token::Kind::Minus) {
            p.expect(Token::Kind::Minus, "'-'");
            l.forward = false;
          }
          l.label = p.expect(Token::Kind::Ident, "an edge label").text;
          f.boundary.push_back(std::move(l));
        }
        if (f.boundary.empty()) {
          p.fail("expected a boundary word");
        }
        d.faces.push_back(std::move(f));
      } else {
        throw Error(ErrorCode::SyntaxError,
                    lineno,
                    kw.column,
                    "unknown keyword '" + kw.text
                        + "', expected one of complex, vertex, edge, "
                          "triangle, square");
      }
    }
    if (!have_header) {
      throw Error(ErrorCode::SyntaxError,
                  lineno == 0 ? 1 : lineno,
                  1,
                  "expected 'complex <name>' header");
    }
    return d;
  }

  inline Complex parse_complex(std::string_view text) {
    return build_complex(parse(text));
  }

  // Canonical document: vertices sorted, edges sorted by label, faces sorted
  // by kind then by least rotation of the boundary word.
  inline std::string serialize(Complex const& c) {
    auto const  form = detail::canonical_form(c);
    std::string out  = "complex " + c.name() + "\n";
    for (auto const& v : form.vertices) {
      out += "vertex " + v + "\n";
    }
    for (auto const& [label, from, to] : form.edges) {
      out += "edge " + label + ": " + from + " -> " + to + "\n";
    }
    for (auto const& [kind, word, id] : form.faces) {
      out += kind == static_cast<int>(FaceKind::Triangle) ? "triangle "
                                                          : "square ";
      out += id + " =";
      for (auto const& t : word) {
        out += " " + t;
      }
      out += "\n";
    }
    return out;
  }

}  // namespace tsq

#endif  // TSQ_SPECIO_HPP_
