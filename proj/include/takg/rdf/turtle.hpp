// Copyright 2026 The takg Authors
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

// Turtle serializer and parser for the blank-node-free subset used here:
// @prefix / PREFIX directives, IRIs, prefixed names, plain, typed and
// language-tagged literals, numeric and boolean shorthand, predicate lists
// (';'), object lists (',') and 'a'. Blank nodes and collections are rejected
// with UnsupportedFeature.
//
// The serializer is canonical: prefixes sorted by name, subjects, predicates
// and objects in triple order, literals always written in quoted form.

#pragma once

#include <cctype>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>

#include "takg/error.hpp"
#include "takg/rdf/graph.hpp"

namespace takg::rdf {

class TurtleParseError : public Error {
 public:
  TurtleParseError(ErrorCode code, std::size_t line, std::size_t column, std::string token,
                   const std::string& message)
      : Error(code, "line " + std::to_string(line) + ", column " + std::to_string(column) +
                        ": " + message + (token.empty() ? "" : " near '" + token + "'")),
        line_(line),
        column_(column),
        token_(std::move(token)) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& token() const noexcept { return token_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string token_;
};

namespace detail {

inline bool is_pn_chars_base(unsigned char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c >= 0x80;
}

inline bool is_pn_chars(unsigned char c) {
  return is_pn_chars_base(c) || c == '_' || c == '-' || (c >= '0' && c <= '9');
}

/// Locals the serializer is willing to write as prefixed names.
inline bool safe_local(std::string_view s) {
  if (s.empty()) return false;
  for (unsigned char c : s) {
    if (!((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
          c == '_' || c == '-')) {
      return false;
    }
  }
  return s.front() != '-';
}

inline void append_uchar(std::string& out, std::uint32_t cp) {
  static constexpr char hex[] = "0123456789ABCDEF";
  out += "\\u";
  for (int shift = 12; shift >= 0; shift -= 4) out += hex[(cp >> shift) & 0xF];
}

inline void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

}  // namespace detail

inline std::string escape_iri(std::string_view iri) {
  std::string out;
  out.reserve(iri.size() + 2);
  out += '<';
  for (unsigned char c : iri) {
    if (c <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' || c == '|' ||
        c == '^' || c == '`' || c == '\\') {
      detail::append_uchar(out, c);
    } else {
      out += static_cast<char>(c);
    }
  }
  out += '>';
  return out;
}

inline std::string escape_string(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  out += '"';
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20 || c == 0x7F) {
          detail::append_uchar(out, c);
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  out += '"';
  return out;
}

/// Writes `iri` as a prefixed name when a declared namespace allows it.
inline std::string format_iri(const Iri& iri, const std::map<std::string, std::string>& prefixes) {
  const std::string* best_prefix = nullptr;
  std::size_t best_len = 0;
  for (const auto& [prefix, ns] : prefixes) {
    if (ns.size() > best_len && iri.value.size() > ns.size() && iri.value.starts_with(ns) &&
        detail::safe_local(std::string_view(iri.value).substr(ns.size()))) {
      best_prefix = &prefix;
      best_len = ns.size();
    }
  }
  if (best_prefix) return *best_prefix + ":" + iri.value.substr(best_len);
  return escape_iri(iri.value);
}

inline std::string format_term(const Term& t, const std::map<std::string, std::string>& prefixes) {
  if (const auto* iri = std::get_if<Iri>(&t)) return format_iri(*iri, prefixes);
  const auto& lit = std::get<Literal>(t);
  std::string out = escape_string(lit.lexical);
  if (!lit.language.empty()) return out + "@" + lit.language;
  if (lit.datatype == xsd::string) return out;
  return out + "^^" + format_iri(lit.datatype, prefixes);
}

inline std::string serialize_turtle(const Graph& g) {
  std::ostringstream os;
  const auto& prefixes = g.prefixes();
  for (const auto& [prefix, ns] : prefixes) {
    os << "@prefix " << prefix << ": " << escape_iri(ns) << " .\n";
  }
  const Iri* subject = nullptr;
  const Iri* predicate = nullptr;
  for (const auto& t : g) {
    if (!subject || t.subject != *subject) {
      if (subject) os << " .\n";
      os << '\n' << format_iri(t.subject, prefixes) << ' ';
      subject = &t.subject;
      predicate = nullptr;
    }
    if (!predicate || t.predicate != *predicate) {
      if (predicate) os << " ;\n    ";
      os << (t.predicate == rdf_type ? std::string("a") : format_iri(t.predicate, prefixes)) << ' ';
      predicate = &t.predicate;
    } else {
      os << ", ";
    }
    os << format_term(t.object, prefixes);
  }
  if (subject) os << " .\n";
  return os.str();
}

namespace detail {

class TurtleParser {
 public:
  explicit TurtleParser(std::string_view text) : text_(text) {}

  Graph parse() {
    skip_ws();
    while (!at_end()) {
      if (peek() == '@') {
        directive_at();
      } else if (keyword_ahead("PREFIX")) {
        advance(6);
        prefix_body(false);
      } else if (keyword_ahead("BASE")) {
        fail(ErrorCode::UnsupportedFeature, "BASE", "base IRIs are not supported");
      } else {
        triples();
        expect('.');
      }
      skip_ws();
    }
    return std::move(graph_);
  }

 private:
  // --- cursor ---------------------------------------------------------
  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  char get() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void advance(std::size_t n) {
    while (n-- > 0 && !at_end()) get();
  }

  void skip_ws() {
    while (!at_end()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        get();
      } else if (c == '#') {
        while (!at_end() && peek() != '\n') get();
      } else {
        break;
      }
    }
  }

  bool keyword_ahead(std::string_view kw) const {
    if (text_.size() - pos_ < kw.size()) return false;
    for (std::size_t i = 0; i < kw.size(); ++i) {
      if (std::toupper(static_cast<unsigned char>(text_[pos_ + i])) != kw[i]) return false;
    }
    const char after = peek(kw.size());
    return after == ' ' || after == '\t' || after == '\n' || after == '\r';
  }

  std::string token_here() const {
    std::size_t end = pos_;
    while (end < text_.size() && end - pos_ < 24 && !std::isspace(static_cast<unsigned char>(text_[end]))) {
      ++end;
    }
    return std::string(text_.substr(pos_, end - pos_));
  }

  [[noreturn]] void fail(ErrorCode code, std::string token, const std::string& message) const {
    throw TurtleParseError(code, line_, col_, std::move(token), message);
  }
  [[noreturn]] void fail(const std::string& message) const {
    fail(ErrorCode::ParseError, token_here(), message);
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c || at_end()) fail(std::string("expected '") + c + "'");
    get();
  }

  // --- grammar --------------------------------------------------------
  void directive_at() {
    if (text_.substr(pos_).starts_with("@prefix")) {
      advance(7);
      prefix_body(true);
    } else if (text_.substr(pos_).starts_with("@base")) {
      fail(ErrorCode::UnsupportedFeature, "@base", "base IRIs are not supported");
    } else {
      fail("unknown directive");
    }
  }

  void prefix_body(bool dotted) {
    skip_ws();
    std::string prefix;
    while (!at_end() && peek() != ':') {
      const auto c = static_cast<unsigned char>(peek());
      if (!(is_pn_chars(c) || c == '.')) fail("invalid prefix name");
      prefix += get();
    }
    if (at_end()) fail("expected ':' after prefix name");
    get();
    skip_ws();
    if (peek() != '<') fail("expected namespace IRI");
    std::string ns = iriref();
    graph_.set_prefix(prefix, ns);
    if (dotted) expect('.');
  }

  void triples() {
    skip_ws();
    const char c = peek();
    if (c == '[' || (c == '_' && peek(1) == ':')) {
      fail(ErrorCode::UnsupportedFeature, token_here(), "blank nodes are not supported");
    }
    if (c == '(') fail(ErrorCode::UnsupportedFeature, "(", "collections are not supported");
    if (c == '"' || c == '\'') fail("a literal cannot be a subject");
    Iri subject = iri();
    predicate_object_list(subject);
  }

  void predicate_object_list(const Iri& subject) {
    while (true) {
      skip_ws();
      Iri predicate = verb();
      object_list(subject, predicate);
      skip_ws();
      if (peek() != ';') return;
      while (peek() == ';') {
        get();
        skip_ws();
      }
      // A trailing ';' before '.' is legal.
      if (peek() == '.' || at_end()) return;
    }
  }

  Iri verb() {
    if (peek() == 'a') {
      const char after = peek(1);
      if (after == ' ' || after == '\t' || after == '\n' || after == '\r' || after == '<' ||
          after == '"') {
        get();
        return rdf_type;
      }
    }
    if (peek() == '"' || peek() == '\'') fail("a literal cannot be a predicate");
    return iri();
  }

  void object_list(const Iri& subject, const Iri& predicate) {
    while (true) {
      skip_ws();
      graph_.insert(subject, predicate, object());
      skip_ws();
      if (peek() != ',') return;
      get();
    }
  }

  Term object() {
    const char c = peek();
    if (c == '[' || (c == '_' && peek(1) == ':')) {
      fail(ErrorCode::UnsupportedFeature, token_here(), "blank nodes are not supported");
    }
    if (c == '(') fail(ErrorCode::UnsupportedFeature, "(", "collections are not supported");
    if (c == '"' || c == '\'') return literal();
    if (c == '+' || c == '-' || c == '.' || (c >= '0' && c <= '9')) return numeric();
    if (text_.substr(pos_).starts_with("true") && !is_pn_chars(static_cast<unsigned char>(peek(4))) &&
        peek(4) != ':') {
      advance(4);
      return typed("true", xsd::boolean);
    }
    if (text_.substr(pos_).starts_with("false") && !is_pn_chars(static_cast<unsigned char>(peek(5))) &&
        peek(5) != ':') {
      advance(5);
      return typed("false", xsd::boolean);
    }
    return iri();
  }

  Iri iri() {
    if (at_end()) fail("unexpected end of input");
    if (peek() == '<') return Iri(iriref());
    return prefixed_name();
  }

  std::string iriref() {
    get();  // '<'
    std::string out;
    while (true) {
      if (at_end()) fail("unterminated IRI");
      const char c = get();
      if (c == '>') break;
      if (c == '\\') {
        out_uchar(out);
        continue;
      }
      if (static_cast<unsigned char>(c) <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' ||
          c == '|' || c == '^' || c == '`') {
        fail("illegal character in IRI");
      }
      out += c;
    }
    if (out.find(':') == std::string::npos) {
      fail(ErrorCode::ParseError, out, "relative IRIs are not supported");
    }
    return out;
  }

  void out_uchar(std::string& out) {
    if (at_end()) fail("dangling escape");
    const char kind = get();
    std::size_t digits = 0;
    if (kind == 'u') {
      digits = 4;
    } else if (kind == 'U') {
      digits = 8;
    } else {
      fail("invalid escape in IRI");
    }
    append_utf8(out, hex_digits(digits));
  }

  std::uint32_t hex_digits(std::size_t n) {
    std::uint32_t cp = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (at_end()) fail("truncated unicode escape");
      const char h = get();
      cp <<= 4;
      if (h >= '0' && h <= '9') {
        cp |= static_cast<std::uint32_t>(h - '0');
      } else if (h >= 'a' && h <= 'f') {
        cp |= static_cast<std::uint32_t>(h - 'a' + 10);
      } else if (h >= 'A' && h <= 'F') {
        cp |= static_cast<std::uint32_t>(h - 'A' + 10);
      } else {
        fail("invalid hex digit in unicode escape");
      }
    }
    if (cp > 0x10FFFF) fail("code point out of range");
    return cp;
  }

  Iri prefixed_name() {
    const std::string start_token = token_here();
    const auto start_line = line_;
    const auto start_col = col_;
    const auto fail_at_start = [&](const std::string& message) {
      throw TurtleParseError(ErrorCode::ParseError, start_line, start_col, start_token, message);
    };
    std::string prefix;
    while (!at_end() && peek() != ':') {
      const auto c = static_cast<unsigned char>(peek());
      if (!(is_pn_chars(c) || (c == '.' && !prefix.empty()))) {
        fail_at_start("expected IRI or prefixed name");
      }
      prefix += get();
    }
    if (at_end()) fail_at_start("expected IRI or prefixed name");
    get();  // ':'
    auto ns = graph_.prefixes().find(prefix);
    if (ns == graph_.prefixes().end()) {
      fail_at_start("undeclared prefix '" + prefix + "'");
    }
    std::string local;
    while (!at_end()) {
      const auto c = static_cast<unsigned char>(peek());
      if (is_pn_chars(c) || c == ':') {
        local += get();
      } else if (c == '\\') {
        get();
        if (at_end()) fail("dangling escape");
        local += get();
      } else if (c == '%') {
        local += get();
        if (!std::isxdigit(static_cast<unsigned char>(peek())) ||
            !std::isxdigit(static_cast<unsigned char>(peek(1)))) {
          fail("invalid percent escape");
        }
        local += get();
        local += get();
      } else if (c == '.') {
        // A dot inside a local name must be followed by another name char.
        const auto next = static_cast<unsigned char>(peek(1));
        if (is_pn_chars(next) || next == ':' || next == '%' || next == '\\') {
          local += get();
        } else {
          break;
        }
      } else {
        break;
      }
    }
    return Iri(ns->second + local);
  }

  Literal literal() {
    const char quote = peek();
    const bool long_form = peek(1) == quote && peek(2) == quote;
    advance(long_form ? 3 : 1);
    std::string value;
    while (true) {
      if (at_end()) fail("unterminated string literal");
      const char c = peek();
      if (long_form) {
        if (c == quote && peek(1) == quote && peek(2) == quote) {
          advance(3);
          break;
        }
      } else {
        if (c == quote) {
          get();
          break;
        }
        if (c == '\n' || c == '\r') fail("newline in short string literal");
      }
      get();
      if (c == '\\') {
        string_escape(value);
      } else {
        value += c;
      }
    }
    if (peek() == '@') {
      get();
      std::string lang;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')) {
        lang += get();
      }
      if (lang.empty()) fail("empty language tag");
      return lang_literal(std::move(value), std::move(lang));
    }
    if (peek() == '^' && peek(1) == '^') {
      advance(2);
      return typed(std::move(value), iri());
    }
    return plain(std::move(value));
  }

  void string_escape(std::string& out) {
    if (at_end()) fail("dangling escape");
    const char e = get();
    switch (e) {
      case 't': out += '\t'; break;
      case 'b': out += '\b'; break;
      case 'n': out += '\n'; break;
      case 'r': out += '\r'; break;
      case 'f': out += '\f'; break;
      case '"': out += '"'; break;
      case '\'': out += '\''; break;
      case '\\': out += '\\'; break;
      case 'u': append_utf8(out, hex_digits(4)); break;
      case 'U': append_utf8(out, hex_digits(8)); break;
      default: fail(std::string("invalid escape '\\") + e + "'");
    }
  }

  Literal numeric() {
    std::string text;
    if (peek() == '+' || peek() == '-') text += get();
    bool digits = false;
    bool dot = false;
    bool exponent = false;
    while (!at_end()) {
      const char c = peek();
      if (c >= '0' && c <= '9') {
        digits = true;
        text += get();
      } else if (c == '.' && !dot && !exponent && peek(1) >= '0' && peek(1) <= '9') {
        dot = true;
        text += get();
      } else if ((c == 'e' || c == 'E') && digits && !exponent) {
        exponent = true;
        text += get();
        if (peek() == '+' || peek() == '-') text += get();
      } else {
        break;
      }
    }
    if (!digits) fail("malformed number");
    if (exponent) return typed(std::move(text), xsd::double_);
    if (dot) return typed(std::move(text), xsd::decimal);
    return typed(std::move(text), xsd::integer);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  Graph graph_;
};

}  // namespace detail

inline Graph parse_turtle(std::string_view text) { return detail::TurtleParser(text).parse(); }

}  // namespace takg::rdf
