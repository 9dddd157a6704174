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

// The named law library and the parametric quasi-identity schemas for
// override (lambda_n) and update (eta_n, eta'_n).

#pragma once

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pfalg/error.hpp"
#include "pfalg/term.hpp"

namespace pfalg {

// Kept byte-identical to data/laws.txt.
inline constexpr std::string_view kLawsText = R"(# Laws of override (|) and update ([ ]) valid for partial functions.
# One law per line: `id: statement`. `#` starts a comment.

# Axioms of the finite equational basis.
absorb: x = x[x | y]
absorb2: x | y = y[x] | x
leftdist: x[y][z] = x[z | y]
rightdist: (x | y)[z] = x[z] | y[z]
special: x[y[x[z]]] = x[y[x][z]]
special2: w[x[y[w[z]]]] = w[x[y[w][z]]]

# Band axioms (the equational part of the override quasivariety basis).
idem: x | x = x
assoc: x | (y | z) = x | y | z
lrb: x | y | x = x | y

# Update defined from override.
domaineq1: x[y] | x = x[y]
domaineq2: x | x[y] = x
agreement1: x[y] | y = y | x[y]
agreement2: y | x[y] = y | x

# Derived laws.
updateright: x[y][z] = x[z][y[z]]
switch: x[y] = x -> y[x] = y
jump: x | z = z & y | z = z -> x[y] = x
domainequality: x | y = x & y | x = y -> x[u][y] = y
samedom: x | y = x & y | x = y & v | x = v | y -> u[x][v[y][w]] = u[y][v[y][w]]
)";

class LawLibrary {
 public:
  LawLibrary() = default;

  // Parses `id: statement` lines; blank lines and `#` comments are skipped.
  static LawLibrary parse(std::string_view text) {
    LawLibrary lib;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t eol = text.find('\n', pos);
      if (eol == std::string_view::npos) eol = text.size();
      std::string_view line = text.substr(pos, eol - pos);
      ++line_no;
      pos = eol + 1;
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
      while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) line.remove_prefix(1);
      if (line.empty()) continue;
      auto colon = line.find(':');
      if (colon == std::string_view::npos) throw ParseError("expected 'id: law'", line_no, 1);
      std::string id(line.substr(0, colon));
      while (!id.empty() && std::isspace(static_cast<unsigned char>(id.back()))) id.pop_back();
      if (id.empty()) throw ParseError("empty law id", line_no, 1);
      try {
        lib.add(id, parse_quasi(line.substr(colon + 1)));
      } catch (const ParseError& e) {
        throw ParseError(e.message(), line_no, colon + 1 + e.column());
      }
    }
    return lib;
  }

  void add(const std::string& id, QuasiIdentity law) {
    if (index_.count(id)) throw Error("duplicate law id '" + id + "'");
    index_.emplace(id, entries_.size());
    entries_.emplace_back(id, std::move(law));
  }

  bool contains(const std::string& id) const { return index_.count(id) != 0; }

  const QuasiIdentity& get(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw Error("unknown law '" + id + "'");
    return entries_[it->second].second;
  }

  const std::vector<std::pair<std::string, QuasiIdentity>>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::vector<std::pair<std::string, QuasiIdentity>> entries_;
  std::map<std::string, std::size_t> index_;
};

inline const LawLibrary& standard_library() {
  static const LawLibrary lib = LawLibrary::parse(kLawsText);
  return lib;
}

// Which z_i must satisfy z_i | x = z_i | y in lambda_n. The printed display
// ranges over 1 <= i <= 2n-1, which admits a counterexample in 3{ov}; the
// soundness argument needs every i up to 2n+1.
enum class FenceBound { Literal2nMinus1, Corrected2nPlus1 };

namespace detail {
inline Term z(int i) { return var("z" + std::to_string(i)); }
inline Term xi(int i) { return var("x" + std::to_string(i)); }
}  // namespace detail

// The quasi-identity lambda_n over x, y, z1..z_{2n+1}, with juxtaposition
// read as override. Premises are ordered so that variables first occur as
// x, y, z1, z2, ...
inline QuasiIdentity lambda_n(int n, FenceBound bound = FenceBound::Corrected2nPlus1) {
  if (n < 1) throw Error("lambda_n: n must be at least 1");
  using detail::z;
  const Term x = var("x"), y = var("y");
  std::vector<Identity> p;
  p.push_back({ov(x, y), x});
  p.push_back({ov(y, x), y});
  p.push_back({ov(z(1), x), x});
  for (int i = 1; i <= n; ++i) {
    p.push_back({ov(z(2 * i - 1), z(2 * i)), z(2 * i)});
    p.push_back({ov(z(2 * i + 1), z(2 * i)), z(2 * i)});
  }
  p.push_back({ov(z(2 * n + 1), y), y});
  const int last = bound == FenceBound::Corrected2nPlus1 ? 2 * n + 1 : 2 * n - 1;
  for (int i = 1; i <= last; ++i) p.push_back({ov(z(i), x), ov(z(i), y)});
  return QuasiIdentity(std::move(p), Identity{x, y});
}

namespace detail {
// x_from[x_{from+1}[ ... x_to[tail] ... ]]
inline Term nested_updates(int from, int to, Term tail) {
  for (int i = to; i >= from; --i) tail = upd(xi(i), tail);
  return tail;
}
inline std::vector<Identity> chain_premises(int n) {
  std::vector<Identity> p;
  for (int i = 1; i < n; ++i) p.push_back({upd(xi(i), xi(i + 1)), xi(i)});
  return p;
}
}  // namespace detail

// x_i[x_{i+1}] = x_i for i < n  ->  x1[x2[...xn[u]]] = x1[x2[...xn[x1[u]]]]
inline QuasiIdentity eta_n(int n) {
  if (n < 1) throw Error("eta_n: n must be at least 1");
  using namespace detail;
  const Term u = var("u");
  Term lhs = nested_updates(1, n, u);
  Term rhs = nested_updates(1, n, upd(xi(1), u));
  return QuasiIdentity(chain_premises(n), Identity{lhs, rhs});
}

// Same premises  ->  x1[x2[...xn[u]]] = x1[(x2[x1])[(x3[x1])[...(xn[x1])[u]]]]
inline QuasiIdentity eta_prime_n(int n) {
  if (n < 1) throw Error("eta_prime_n: n must be at least 1");
  using namespace detail;
  const Term u = var("u");
  Term lhs = nested_updates(1, n, u);
  Term tail = u;
  for (int i = n; i >= 2; --i) tail = upd(upd(xi(i), xi(1)), tail);
  Term rhs = upd(xi(1), tail);
  return QuasiIdentity(chain_premises(n), Identity{lhs, rhs});
}

// The override basis: three band equations plus the lambda_n family, which
// is infinite and therefore handed out as a generator.
struct SigmaL {
  std::vector<std::pair<std::string, Identity>> equations;
  QuasiIdentity lambda(int n, FenceBound bound = FenceBound::Corrected2nPlus1) const {
    return lambda_n(n, bound);
  }
};

inline SigmaL sigma_L() {
  const LawLibrary& lib = standard_library();
  SigmaL s;
  for (const char* id : {"assoc", "idem", "lrb"}) s.equations.emplace_back(id, lib.get(id).conclusion);
  return s;
}

}  // namespace pfalg
