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

// Basic graph pattern queries: a conjunction of triple patterns, an optional
// list of numeric FILTER comparisons, and a SELECT projection (or a COUNT of
// all solutions). Results are a bag, sorted by the projected terms.
//
// JSON form:
//   {"select": ["?x"], "where": [["?x", "rdf:type", "sm:State"]],
//    "filter": [["?obs", ">", "?max"]], "count": false}
//
// Pattern positions are "?var", "<absolute-iri>", "prefix:local", "a", a
// JSON number, or a Turtle literal in a string ("\"open\"", "\"5\"^^xsd:integer").

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "takg/rdf/turtle.hpp"

namespace takg::rdf {

struct Variable {
  std::string name;  // without '?'

  friend auto operator<=>(const Variable&, const Variable&) = default;
  friend bool operator==(const Variable&, const Variable&) = default;
};

using PatternTerm = std::variant<Variable, Term>;

struct TriplePattern {
  PatternTerm subject;
  PatternTerm predicate;
  PatternTerm object;
};

enum class CompareOp { Less, LessEqual, Greater, GreaterEqual, Equal, NotEqual };

struct Filter {
  PatternTerm lhs;
  CompareOp op = CompareOp::Equal;
  PatternTerm rhs;
};

struct Query {
  /// Projected variables; empty selects every variable in order of appearance.
  std::vector<Variable> select;
  std::vector<TriplePattern> where;
  std::vector<Filter> filters;
  /// Replace the solutions by a single ?count binding.
  bool count = false;
};

using Solution = std::map<std::string, Term>;

/// Projected row; values follow the projection order.
struct ResultSet {
  std::vector<std::string> variables;
  std::vector<std::vector<Term>> rows;

  std::size_t size() const noexcept { return rows.size(); }
  bool empty() const noexcept { return rows.empty(); }
};

// --- exact numeric comparison ----------------------------------------------

__extension__ using Int128 = __int128;

/// Exact value of an xsd:integer or xsd:decimal lexical form: mantissa * 10^-scale.
struct DecimalValue {
  Int128 mantissa = 0;
  int scale = 0;
};

inline std::optional<DecimalValue> parse_decimal(const std::string& s) {
  DecimalValue v;
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) negative = s[i++] == '-';
  bool digits = false;
  bool dot = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (c >= '0' && c <= '9') {
      if (v.mantissa > (static_cast<Int128>(1) << 120) / 10) return std::nullopt;
      v.mantissa = v.mantissa * 10 + (c - '0');
      if (dot) ++v.scale;
      digits = true;
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      return std::nullopt;
    }
  }
  if (!digits) return std::nullopt;
  if (negative) v.mantissa = -v.mantissa;
  return v;
}

inline int compare_decimal(DecimalValue a, DecimalValue b) {
  while (a.scale < b.scale) {
    a.mantissa *= 10;
    ++a.scale;
  }
  while (b.scale < a.scale) {
    b.mantissa *= 10;
    ++b.scale;
  }
  return a.mantissa < b.mantissa ? -1 : (a.mantissa > b.mantissa ? 1 : 0);
}

inline bool is_numeric_datatype(const Iri& dt) {
  return dt == xsd::integer || dt == xsd::decimal || dt == xsd::double_;
}

/// Three-way numeric comparison; nullopt when either side is not numeric.
inline std::optional<int> compare_numeric(const Term& a, const Term& b) {
  const auto* la = std::get_if<Literal>(&a);
  const auto* lb = std::get_if<Literal>(&b);
  if (!la || !lb || !is_numeric_datatype(la->datatype) || !is_numeric_datatype(lb->datatype)) {
    return std::nullopt;
  }
  if (la->datatype != xsd::double_ && lb->datatype != xsd::double_) {
    auto da = parse_decimal(la->lexical);
    auto db = parse_decimal(lb->lexical);
    if (da && db) return compare_decimal(*da, *db);
  }
  try {
    const long double x = std::stold(la->lexical);
    const long double y = std::stold(lb->lexical);
    return x < y ? -1 : (x > y ? 1 : 0);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

// --- evaluation -------------------------------------------------------------

namespace detail {

inline void collect_vars(const PatternTerm& t, std::vector<Variable>& out) {
  if (const auto* v = std::get_if<Variable>(&t)) {
    if (std::find(out.begin(), out.end(), *v) == out.end()) out.push_back(*v);
  }
}

inline std::vector<Variable> pattern_vars(const Query& q) {
  std::vector<Variable> vars;
  for (const auto& p : q.where) {
    collect_vars(p.subject, vars);
    collect_vars(p.predicate, vars);
    collect_vars(p.object, vars);
  }
  return vars;
}

inline std::optional<Term> resolve(const PatternTerm& t, const Solution& s) {
  if (const auto* term = std::get_if<Term>(&t)) return *term;
  const auto& name = std::get<Variable>(t).name;
  auto it = s.find(name);
  if (it == s.end()) return std::nullopt;
  return it->second;
}

inline bool bind_term(const PatternTerm& t, const Term& value, Solution& s) {
  const auto* v = std::get_if<Variable>(&t);
  if (!v) return true;
  auto [it, inserted] = s.emplace(v->name, value);
  return inserted || it->second == value;
}

inline bool filter_holds(const Filter& f, const Solution& s) {
  auto a = resolve(f.lhs, s);
  auto b = resolve(f.rhs, s);
  if (!a || !b) return false;
  if (f.op == CompareOp::Equal || f.op == CompareOp::NotEqual) {
    bool equal = *a == *b;
    if (auto c = compare_numeric(*a, *b)) equal = *c == 0;
    return f.op == CompareOp::Equal ? equal : !equal;
  }
  auto c = compare_numeric(*a, *b);
  if (!c) return false;
  switch (f.op) {
    case CompareOp::Less: return *c < 0;
    case CompareOp::LessEqual: return *c <= 0;
    case CompareOp::Greater: return *c > 0;
    case CompareOp::GreaterEqual: return *c >= 0;
    default: return false;
  }
}

class BgpEvaluator {
 public:
  BgpEvaluator(const Graph& g, const Query& q) : graph_(g), query_(q), used_(q.where.size(), false) {}

  std::vector<Solution> run() {
    Solution s;
    extend(s, 0);
    return std::move(out_);
  }

 private:
  // Picks the unused pattern with the most positions already fixed.
  std::size_t pick(const Solution& s) const {
    std::size_t best = 0;
    int best_score = -1;
    for (std::size_t i = 0; i < query_.where.size(); ++i) {
      if (used_[i]) continue;
      const auto& p = query_.where[i];
      const int score = (resolve(p.subject, s) ? 4 : 0) + (resolve(p.predicate, s) ? 1 : 0) +
                        (resolve(p.object, s) ? 2 : 0);
      if (score > best_score) {
        best_score = score;
        best = i;
      }
    }
    return best;
  }

  void extend(Solution& s, std::size_t depth) {
    if (depth == query_.where.size()) {
      for (const auto& f : query_.filters) {
        if (!filter_holds(f, s)) return;
      }
      out_.push_back(s);
      return;
    }
    const std::size_t i = pick(s);
    const auto& p = query_.where[i];
    used_[i] = true;

    std::optional<Iri> subject;
    std::optional<Iri> predicate;
    const auto st = resolve(p.subject, s);
    const auto pt = resolve(p.predicate, s);
    const auto ot = resolve(p.object, s);
    bool possible = true;
    if (st) {
      if (const auto* iri = std::get_if<Iri>(&*st)) subject = *iri;
      else possible = false;
    }
    if (pt) {
      if (const auto* iri = std::get_if<Iri>(&*pt)) predicate = *iri;
      else possible = false;
    }
    if (possible) {
      std::vector<Triple> matches;
      graph_.match(subject, predicate, ot, [&](const Triple& t) { matches.push_back(t); });
      for (const auto& t : matches) {
        Solution next = s;
        if (bind_term(p.subject, Term{t.subject}, next) && bind_term(p.predicate, Term{t.predicate}, next) &&
            bind_term(p.object, t.object, next)) {
          extend(next, depth + 1);
        }
      }
    }
    used_[i] = false;
  }

  const Graph& graph_;
  const Query& query_;
  std::vector<bool> used_;
  std::vector<Solution> out_;
};

}  // namespace detail

/// Throws MalformedQuery for projections or filters over unknown variables
/// and for literal subjects or predicates.
inline void validate(const Query& q) {
  const auto vars = detail::pattern_vars(q);
  auto known = [&](const Variable& v) { return std::find(vars.begin(), vars.end(), v) != vars.end(); };
  for (const auto& v : q.select) {
    if (!known(v)) throw Error(ErrorCode::MalformedQuery, "?" + v.name + " is projected but never bound");
  }
  for (const auto& f : q.filters) {
    for (const auto* side : {&f.lhs, &f.rhs}) {
      if (const auto* v = std::get_if<Variable>(side); v && !known(*v)) {
        throw Error(ErrorCode::MalformedQuery, "?" + v->name + " is filtered but never bound");
      }
    }
  }
  for (const auto& p : q.where) {
    for (const auto* pos : {&p.subject, &p.predicate}) {
      if (const auto* t = std::get_if<Term>(pos); t && is_literal(*t)) {
        throw Error(ErrorCode::MalformedQuery, "literal in subject or predicate position");
      }
    }
  }
  if (q.where.empty()) throw Error(ErrorCode::MalformedQuery, "query has no patterns");
}

inline std::vector<std::string> projection(const Query& q) {
  std::vector<std::string> names;
  for (const auto& v : q.select.empty() ? detail::pattern_vars(q) : q.select) names.push_back(v.name);
  return names;
}

inline ResultSet query(const Graph& g, const Query& q) {
  validate(q);
  auto solutions = detail::BgpEvaluator(g, q).run();
  ResultSet rs;
  if (q.count) {
    rs.variables = {"count"};
    rs.rows.push_back({Term{integer_literal(static_cast<long long>(solutions.size()))}});
    return rs;
  }
  rs.variables = projection(q);
  rs.rows.reserve(solutions.size());
  for (const auto& s : solutions) {
    std::vector<Term> row;
    row.reserve(rs.variables.size());
    for (const auto& name : rs.variables) row.push_back(s.at(name));
    rs.rows.push_back(std::move(row));
  }
  std::sort(rs.rows.begin(), rs.rows.end());
  return rs;
}

// --- JSON form --------------------------------------------------------------

/// Namespaces known to query parsing in addition to a graph's own prefixes.
inline std::map<std::string, std::string> standard_prefixes() {
  return {{"rdf", std::string(ns::rdf)}, {"rdfs", std::string(ns::rdfs)}, {"xsd", std::string(ns::xsd)}};
}

inline Iri expand_name(const std::string& text, const std::map<std::string, std::string>& prefixes) {
  if (text.size() >= 2 && text.front() == '<' && text.back() == '>') {
    return Iri(text.substr(1, text.size() - 2));
  }
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw Error(ErrorCode::MalformedQuery, "'" + text + "' is neither an IRI nor a prefixed name");
  }
  auto it = prefixes.find(text.substr(0, colon));
  if (it == prefixes.end()) {
    throw Error(ErrorCode::MalformedQuery, "undeclared prefix in '" + text + "'");
  }
  return Iri(it->second + text.substr(colon + 1));
}

inline PatternTerm parse_pattern_term(const nlohmann::json& j,
                                      const std::map<std::string, std::string>& prefixes) {
  if (j.is_number_integer()) return Term{integer_literal(j.get<long long>())};
  if (j.is_number()) {
    // Keep the source spelling so 5.2 stays "5.2".
    return Term{typed(j.dump(), xsd::decimal)};
  }
  if (!j.is_string()) throw Error(ErrorCode::MalformedQuery, "pattern term must be a string or number");
  const auto text = j.get<std::string>();
  if (text.empty()) throw Error(ErrorCode::MalformedQuery, "empty pattern term");
  if (text.front() == '?') {
    if (text.size() == 1) throw Error(ErrorCode::MalformedQuery, "unnamed variable");
    return Variable{text.substr(1)};
  }
  if (text == "a") return Term{rdf_type};
  if (text.front() == '"' || text.front() == '\'') {
    // Reuse the Turtle literal grammar through a one-triple document.
    std::string doc;
    for (const auto& [p, ns] : prefixes) doc += "@prefix " + p + ": " + escape_iri(ns) + " .\n";
    doc += "<urn:q:s> <urn:q:p> " + text + " .";
    try {
      const Graph g = parse_turtle(doc);
      if (g.size() != 1) throw Error(ErrorCode::MalformedQuery, "bad literal '" + text + "'");
      return g.begin()->object;
    } catch (const TurtleParseError& e) {
      throw Error(ErrorCode::MalformedQuery, "bad literal '" + text + "': " + e.what());
    }
  }
  return Term{expand_name(text, prefixes)};
}

inline CompareOp parse_op(const std::string& op) {
  if (op == "<") return CompareOp::Less;
  if (op == "<=") return CompareOp::LessEqual;
  if (op == ">") return CompareOp::Greater;
  if (op == ">=") return CompareOp::GreaterEqual;
  if (op == "=") return CompareOp::Equal;
  if (op == "!=") return CompareOp::NotEqual;
  throw Error(ErrorCode::MalformedQuery, "unknown comparison '" + op + "'");
}

inline Query parse_query_json(const nlohmann::json& j, std::map<std::string, std::string> prefixes = {}) {
  for (auto& [p, ns] : standard_prefixes()) prefixes.emplace(p, ns);
  if (!j.is_object()) throw Error(ErrorCode::MalformedQuery, "query must be a JSON object");
  Query q;
  try {
    if (j.contains("select")) {
      for (const auto& v : j.at("select")) {
        const auto name = v.get<std::string>();
        if (name.size() < 2 || name.front() != '?') {
          throw Error(ErrorCode::MalformedQuery, "projection '" + name + "' is not a variable");
        }
        q.select.push_back(Variable{name.substr(1)});
      }
    }
    if (!j.contains("where")) throw Error(ErrorCode::MalformedQuery, "missing 'where'");
    for (const auto& p : j.at("where")) {
      if (!p.is_array() || p.size() != 3) {
        throw Error(ErrorCode::MalformedQuery, "a pattern needs exactly three positions");
      }
      q.where.push_back(TriplePattern{parse_pattern_term(p[0], prefixes),
                                      parse_pattern_term(p[1], prefixes),
                                      parse_pattern_term(p[2], prefixes)});
    }
    if (j.contains("filter")) {
      for (const auto& f : j.at("filter")) {
        if (!f.is_array() || f.size() != 3) {
          throw Error(ErrorCode::MalformedQuery, "a filter needs [lhs, op, rhs]");
        }
        q.filters.push_back(Filter{parse_pattern_term(f[0], prefixes), parse_op(f[1].get<std::string>()),
                                   parse_pattern_term(f[2], prefixes)});
      }
    }
    q.count = j.value("count", false);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedQuery, e.what());
  }
  validate(q);
  return q;
}

inline Query parse_query_json(const std::string& text, std::map<std::string, std::string> prefixes = {}) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedQuery, e.what());
  }
  return parse_query_json(j, std::move(prefixes));
}

inline Query parse_query_json(const char* text, std::map<std::string, std::string> prefixes = {}) {
  return parse_query_json(std::string(text), std::move(prefixes));
}

/// Lexical form for literals, the IRI itself otherwise.
inline std::string term_text(const Term& t) {
  if (const auto* iri = std::get_if<Iri>(&t)) return iri->value;
  return std::get<Literal>(t).lexical;
}

/// Tab-separated table with a header row of variable names.
inline std::string to_tsv(const ResultSet& rs) {
  std::string out;
  for (std::size_t i = 0; i < rs.variables.size(); ++i) {
    if (i > 0) out += '\t';
    out += "?" + rs.variables[i];
  }
  out += '\n';
  for (const auto& row : rs.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += '\t';
      for (char c : term_text(row[i])) out += (c == '\t' || c == '\n') ? ' ' : c;
    }
    out += '\n';
  }
  return out;
}

}  // namespace takg::rdf
