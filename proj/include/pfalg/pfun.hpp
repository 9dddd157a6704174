// Copyright 2026 The pfalg Authors
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

// Finite partial functions and the operations override, update, restrictive
// multiplication, minus and intersection.
//
// Minus is f restricted off dom(g). This is the reading under which
// f @ g = f - (f - g) holds and under which the minus table of the
// three-element algebra is correct.

#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <random>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pfalg/error.hpp"
#include "pfalg/op.hpp"

namespace pfalg {

// A finite partial map K -> V, stored as a key-sorted vector of pairs.
// Equality is extensional.
template <class K, class V>
class PartialFunction {
 public:
  using key_type = K;
  using mapped_type = V;
  using value_type = std::pair<K, V>;
  using const_iterator = typename std::vector<value_type>::const_iterator;

  PartialFunction() = default;

  PartialFunction(std::initializer_list<value_type> entries)
      : PartialFunction(std::vector<value_type>(entries)) {}

  // Throws if a key occurs twice.
  explicit PartialFunction(std::vector<value_type> entries) : entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(),
              [](const value_type& a, const value_type& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < entries_.size(); ++i)
      if (!(entries_[i - 1].first < entries_[i].first))
        throw Error("partial function: duplicate domain point");
  }

  // Entries must already be sorted by key with no duplicates.
  static PartialFunction from_sorted(std::vector<value_type> entries) {
    PartialFunction f;
    f.entries_ = std::move(entries);
    return f;
  }

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const_iterator begin() const noexcept { return entries_.begin(); }
  const_iterator end() const noexcept { return entries_.end(); }
  const std::vector<value_type>& entries() const noexcept { return entries_; }

  const V* find(const K& key) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                               [](const value_type& e, const K& k) { return e.first < k; });
    if (it == entries_.end() || key < it->first) return nullptr;
    return &it->second;
  }

  bool defined_at(const K& key) const { return find(key) != nullptr; }

  std::vector<K> domain() const {
    std::vector<K> keys;
    keys.reserve(entries_.size());
    for (const auto& [k, v] : entries_) keys.push_back(k);
    return keys;
  }

  bool operator==(const PartialFunction&) const = default;
  auto operator<=>(const PartialFunction&) const = default;

 private:
  std::vector<value_type> entries_;
};

// f | g: defined on dom f ∪ dom g, f wins where both are defined.
template <class K, class V>
PartialFunction<K, V> override(const PartialFunction<K, V>& f, const PartialFunction<K, V>& g) {
  std::vector<std::pair<K, V>> out;
  out.reserve(f.size() + g.size());
  auto a = f.begin(), b = g.begin();
  while (a != f.end() || b != g.end()) {
    if (b == g.end() || (a != f.end() && a->first < b->first)) {
      out.push_back(*a++);
    } else if (a == f.end() || b->first < a->first) {
      out.push_back(*b++);
    } else {
      out.push_back(*a++);
      ++b;
    }
  }
  return PartialFunction<K, V>::from_sorted(std::move(out));
}

// f[g]: domain dom f, taking g's value wherever g is defined.
template <class K, class V>
PartialFunction<K, V> update(const PartialFunction<K, V>& f, const PartialFunction<K, V>& g) {
  std::vector<std::pair<K, V>> out;
  out.reserve(f.size());
  auto b = g.begin();
  for (const auto& entry : f) {
    while (b != g.end() && b->first < entry.first) ++b;
    if (b != g.end() && !(entry.first < b->first))
      out.emplace_back(entry.first, b->second);
    else
      out.push_back(entry);
  }
  return PartialFunction<K, V>::from_sorted(std::move(out));
}

namespace detail {

template <class K, class V, bool Keep>
PartialFunction<K, V> filter_by_domain(const PartialFunction<K, V>& f,
                                       const PartialFunction<K, V>& g) {
  std::vector<std::pair<K, V>> out;
  auto b = g.begin();
  for (const auto& entry : f) {
    while (b != g.end() && b->first < entry.first) ++b;
    bool in_g = b != g.end() && !(entry.first < b->first);
    if (in_g == Keep) out.push_back(entry);
  }
  return PartialFunction<K, V>::from_sorted(std::move(out));
}

}  // namespace detail

// f @ g: f restricted to dom g.
template <class K, class V>
PartialFunction<K, V> rmult(const PartialFunction<K, V>& f, const PartialFunction<K, V>& g) {
  return detail::filter_by_domain<K, V, true>(f, g);
}

// f - g: f restricted to dom f \ dom g.
template <class K, class V>
PartialFunction<K, V> minus(const PartialFunction<K, V>& f, const PartialFunction<K, V>& g) {
  return detail::filter_by_domain<K, V, false>(f, g);
}

// Graph intersection.
template <class K, class V>
PartialFunction<K, V> intersect(const PartialFunction<K, V>& f, const PartialFunction<K, V>& g) {
  std::vector<std::pair<K, V>> out;
  auto b = g.begin();
  for (const auto& entry : f) {
    while (b != g.end() && b->first < entry.first) ++b;
    if (b != g.end() && !(entry.first < b->first) && b->second == entry.second)
      out.push_back(entry);
  }
  return PartialFunction<K, V>::from_sorted(std::move(out));
}

template <class K, class V>
PartialFunction<K, V> apply(Op op, const PartialFunction<K, V>& f, const PartialFunction<K, V>& g) {
  switch (op) {
    case Op::Override: return override(f, g);
    case Op::Update: return update(f, g);
    case Op::RMult: return rmult(f, g);
    case Op::Minus: return minus(f, g);
  }
  throw UnsupportedOperation("unknown operation");
}

// x -> least member of the class of f(x). Every value of f must lie in
// exactly one class.
template <class K, class V>
PartialFunction<K, V> quotient_range(const PartialFunction<K, V>& f,
                                     const std::vector<std::vector<V>>& classes) {
  std::map<V, V> representative;
  for (const auto& cls : classes) {
    if (cls.empty()) continue;
    const V& rep = *std::min_element(cls.begin(), cls.end());
    for (const V& v : cls)
      if (!representative.emplace(v, rep).second)
        throw Error("quotient_range: classes overlap");
  }
  std::vector<std::pair<K, V>> out;
  out.reserve(f.size());
  for (const auto& [k, v] : f) {
    auto it = representative.find(v);
    if (it == representative.end()) throw Error("quotient_range: value not covered by partition");
    out.emplace_back(k, it->second);
  }
  return PartialFunction<K, V>::from_sorted(std::move(out));
}

template <class K, class V>
PartialFunction<K, V> restrict_domain(const PartialFunction<K, V>& f, const std::set<K>& keep) {
  std::vector<std::pair<K, V>> out;
  for (const auto& entry : f)
    if (keep.count(entry.first)) out.push_back(entry);
  return PartialFunction<K, V>::from_sorted(std::move(out));
}

// The override-only formula characterising h = f[g]:
//   h | f = h  and  f | h = f     (same domain as f)
//   h | g = g | h                 (agrees with g on the overlap)
//   g | f = g | h                 (agrees with f off dom g)
template <class K, class V>
bool phi1_holds(const PartialFunction<K, V>& h, const PartialFunction<K, V>& f,
                const PartialFunction<K, V>& g) {
  return override(h, f) == h && override(f, h) == f && override(h, g) == override(g, h) &&
         override(g, f) == override(g, h);
}

// Every partial function from `points` into `values`, (|values|+1)^|points|
// of them, in a fixed order (the empty function first).
template <class K, class V>
std::vector<PartialFunction<K, V>> all_partial_functions(std::span<const K> points,
                                                         std::span<const V> values) {
  std::vector<PartialFunction<K, V>> out;
  std::vector<std::size_t> digit(points.size(), 0);
  const std::size_t base = values.size() + 1;
  std::vector<K> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  while (true) {
    std::vector<std::pair<K, V>> entries;
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (digit[i] != 0) entries.emplace_back(sorted[i], values[digit[i] - 1]);
    out.push_back(PartialFunction<K, V>::from_sorted(std::move(entries)));
    std::size_t i = 0;
    while (i < digit.size() && ++digit[i] == base) digit[i++] = 0;
    if (i == digit.size()) break;
  }
  return out;
}

// Uniform over all partial functions from `points` into `values`.
template <class K, class V, class Rng>
PartialFunction<K, V> random_partial_function(Rng& rng, std::span<const K> points,
                                              std::span<const V> values) {
  std::uniform_int_distribution<std::size_t> pick(0, values.size());
  std::vector<std::pair<K, V>> entries;
  for (const K& x : points) {
    std::size_t v = pick(rng);
    if (v != 0) entries.emplace_back(x, values[v - 1]);
  }
  return PartialFunction<K, V>(std::move(entries));
}

// ---------------------------------------------------------------------------
// Literal syntax: {a:1, b:2}; {} is the empty function.

using Atom = std::string;
using AtomFunction = PartialFunction<Atom, Atom>;

namespace detail {

class LiteralReader {
 public:
  explicit LiteralReader(std::string_view text) : text_(text) {}

  AtomFunction read() {
    expect('{');
    std::vector<std::pair<Atom, Atom>> entries;
    skip_space();
    if (peek() == '}') {
      ++pos_;
    } else {
      while (true) {
        Atom key = token();
        expect(':');
        Atom value = token();
        entries.emplace_back(std::move(key), std::move(value));
        skip_space();
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        expect('}');
        break;
      }
    }
    skip_space();
    if (pos_ != text_.size()) fail("trailing input after '}'");
    std::sort(entries.begin(), entries.end());
    for (std::size_t i = 1; i < entries.size(); ++i)
      if (entries[i - 1].first == entries[i].first)
        fail("duplicate key '" + entries[i].first + "'");
    return AtomFunction::from_sorted(std::move(entries));
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_space();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  Atom token() {
    skip_space();
    std::size_t start = pos_;
    auto ident = [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    };
    while (pos_ < text_.size() && ident(text_[pos_])) ++pos_;
    if (start == pos_) fail("expected identifier or natural number");
    return Atom(text_.substr(start, pos_ - start));
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, 1, pos_ + 1); }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline AtomFunction parse_literal(std::string_view text) {
  return detail::LiteralReader(text).read();
}

inline std::string render_literal(const AtomFunction& f) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : f) {
    if (!first) out += ", ";
    first = false;
    out += k;
    out += ':';
    out += v;
  }
  return out + "}";
}

}  // namespace pfalg
