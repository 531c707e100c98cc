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

// RDF terms, triples and an in-memory graph with set semantics.
//
// There are no blank nodes: every resource is an IRI. Plain literals carry
// xsd:string and language-tagged literals rdf:langString, so two literals are
// equal exactly when lexical form, datatype and language tag are equal.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace takg::rdf {

namespace ns {
inline constexpr std::string_view rdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view rdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view xsd = "http://www.w3.org/2001/XMLSchema#";
}  // namespace ns

struct Iri {
  std::string value;

  Iri() = default;
  explicit Iri(std::string v) : value(std::move(v)) {}

  friend auto operator<=>(const Iri&, const Iri&) = default;
  friend bool operator==(const Iri&, const Iri&) = default;
};

inline Iri iri_in(std::string_view ns, std::string_view local) {
  return Iri(std::string(ns) + std::string(local));
}

namespace xsd {
inline const Iri string = iri_in(ns::xsd, "string");
inline const Iri integer = iri_in(ns::xsd, "integer");
inline const Iri decimal = iri_in(ns::xsd, "decimal");
inline const Iri double_ = iri_in(ns::xsd, "double");
inline const Iri boolean = iri_in(ns::xsd, "boolean");
}  // namespace xsd

inline const Iri rdf_type = iri_in(ns::rdf, "type");
inline const Iri rdf_lang_string = iri_in(ns::rdf, "langString");
inline const Iri rdfs_label = iri_in(ns::rdfs, "label");

struct Literal {
  std::string lexical;
  Iri datatype = xsd::string;
  std::string language;

  friend auto operator<=>(const Literal&, const Literal&) = default;
  friend bool operator==(const Literal&, const Literal&) = default;
};

inline Literal plain(std::string s) { return Literal{std::move(s), xsd::string, {}}; }
inline Literal lang_literal(std::string s, std::string lang) {
  return Literal{std::move(s), rdf_lang_string, std::move(lang)};
}
inline Literal integer_literal(long long v) { return Literal{std::to_string(v), xsd::integer, {}}; }
inline Literal typed(std::string s, Iri dt) { return Literal{std::move(s), std::move(dt), {}}; }

/// IRIs order before literals.
using Term = std::variant<Iri, Literal>;

inline bool is_iri(const Term& t) { return std::holds_alternative<Iri>(t); }
inline bool is_literal(const Term& t) { return std::holds_alternative<Literal>(t); }

struct Triple {
  Iri subject;
  Iri predicate;
  Term object;

  friend auto operator<=>(const Triple&, const Triple&) = default;
  friend bool operator==(const Triple&, const Triple&) = default;
};

/// Set of triples plus the prefix table used for serialization.
///
/// Concurrent readers are safe; writers need exclusive access.
class Graph {
 public:
  using const_iterator = std::set<Triple>::const_iterator;

  /// Returns true when the triple was not present before.
  bool insert(Triple t) { return triples_.insert(std::move(t)).second; }
  bool insert(Iri s, Iri p, Term o) { return insert(Triple{std::move(s), std::move(p), std::move(o)}); }

  void merge(const Graph& other) {
    triples_.insert(other.triples_.begin(), other.triples_.end());
    for (const auto& [k, v] : other.prefixes_) prefixes_.emplace(k, v);
  }

  bool contains(const Triple& t) const { return triples_.contains(t); }
  std::size_t size() const noexcept { return triples_.size(); }
  bool empty() const noexcept { return triples_.empty(); }
  const_iterator begin() const noexcept { return triples_.begin(); }
  const_iterator end() const noexcept { return triples_.end(); }
  const std::set<Triple>& triples() const noexcept { return triples_; }

  void set_prefix(std::string prefix, std::string ns) { prefixes_[std::move(prefix)] = std::move(ns); }
  const std::map<std::string, std::string>& prefixes() const noexcept { return prefixes_; }

  /// Calls f for every triple matching the given positions (nullopt = any).
  template <typename F>
  void match(const std::optional<Iri>& s, const std::optional<Iri>& p,
             const std::optional<Term>& o, F&& f) const {
    auto check = [&](const Triple& t) {
      return (!p || t.predicate == *p) && (!o || t.object == *o);
    };
    if (s) {
      // (s, "", <Iri "">) is the smallest triple with this subject.
      auto it = triples_.lower_bound(Triple{*s, p.value_or(Iri{}), Term{Iri{}}});
      for (; it != triples_.end() && it->subject == *s; ++it) {
        if (p && it->predicate != *p) break;
        if (check(*it)) f(*it);
      }
      return;
    }
    for (const auto& t : triples_) {
      if (check(t)) f(t);
    }
  }

  /// Set equality; prefixes are presentation only.
  friend bool operator==(const Graph& a, const Graph& b) { return a.triples_ == b.triples_; }

 private:
  std::set<Triple> triples_;
  std::map<std::string, std::string> prefixes_;
};

}  // namespace takg::rdf
