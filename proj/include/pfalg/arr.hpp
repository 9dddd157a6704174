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

// Faces of central hyperplane arrangements as sign vectors, their product,
// and the face semigroup as a finite override algebra.

#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pfalg/error.hpp"
#include "pfalg/falg.hpp"
#include "pfalg/pfun.hpp"

namespace pfalg {

using Rational = boost::multiprecision::cpp_rational;

// "3", "-2/3"
inline Rational parse_rational(std::string_view text) {
  using boost::multiprecision::cpp_int;
  auto parse_int = [&](std::string_view s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) throw ParseError("bad rational '" + std::string(text) + "'", 1, 1);
    for (std::size_t j = i; j < s.size(); ++j)
      if (s[j] < '0' || s[j] > '9') throw ParseError("bad rational '" + std::string(text) + "'", 1, j + 1);
    return cpp_int(std::string(s[0] == '+' ? s.substr(1) : s));
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  cpp_int den = parse_int(text.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'", 1, slash + 2);
  cpp_int num = parse_int(text.substr(0, slash));
  if (den < 0) num = -num, den = -den;
  return Rational(num, den);
}

inline std::string render_rational(const Rational& r) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

enum class Sign : unsigned char { Zero, Plus, Minus };

inline char sign_char(Sign s) { return s == Sign::Zero ? '0' : s == Sign::Plus ? '+' : '-'; }

struct SignVector {
  std::vector<Sign> signs;

  std::size_t size() const noexcept { return signs.size(); }
  Sign operator[](std::size_t i) const { return signs[i]; }

  // "0+-"
  std::string to_string() const {
    std::string s;
    for (Sign x : signs) s += sign_char(x);
    return s;
  }

  static SignVector parse(std::string_view text) {
    SignVector v;
    for (std::size_t i = 0; i < text.size(); ++i) {
      switch (text[i]) {
        case '0': v.signs.push_back(Sign::Zero); break;
        case '+': v.signs.push_back(Sign::Plus); break;
        case '-': v.signs.push_back(Sign::Minus); break;
        default: throw ParseError("bad sign character", 1, i + 1);
      }
    }
    return v;
  }

  friend bool operator==(const SignVector&, const SignVector&) = default;
  friend auto operator<=>(const SignVector&, const SignVector&) = default;
};

// (s.t)_i = s_i if s_i != 0, else t_i.
inline SignVector face_product(const SignVector& s, const SignVector& t) {
  if (s.size() != t.size()) throw Error("face_product: sign vectors of different lengths");
  SignVector out = s;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] == Sign::Zero) out.signs[i] = t[i];
  return out;
}

// Partial characteristic function: hyperplane index (1-based) to '+' or '-',
// undefined on hyperplanes containing the face.
inline PartialFunction<int, char> chi(const SignVector& s) {
  std::vector<std::pair<int, char>> pairs;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] != Sign::Zero) pairs.emplace_back(static_cast<int>(i) + 1, sign_char(s[i]));
  return PartialFunction<int, char>::from_sorted(std::move(pairs));
}

// Central arrangement: hyperplane i is {x : <normals[i], x> = 0}, with the
// positive side where the product is > 0.
class Arrangement {
 public:
  Arrangement(int dim, std::vector<std::vector<Rational>> normals) : dim_(dim), normals_(std::move(normals)) {
    if (dim < 1) throw Error("arrangement dimension must be positive");
    for (std::size_t i = 0; i < normals_.size(); ++i) {
      if (normals_[i].size() != static_cast<std::size_t>(dim))
        throw Error("normal " + std::to_string(i + 1) + " has wrong length");
      if (std::all_of(normals_[i].begin(), normals_[i].end(), [](const Rational& r) { return r == 0; }))
        throw Error("normal " + std::to_string(i + 1) + " is zero");
    }
  }

  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return normals_.size(); }
  const std::vector<std::vector<Rational>>& normals() const noexcept { return normals_; }

  // Sign vector of a point.
  SignVector signs_at(const std::vector<Rational>& x) const {
    if (x.size() != static_cast<std::size_t>(dim_)) throw Error("point has wrong dimension");
    SignVector s;
    for (const auto& n : normals_) {
      Rational dot = 0;
      for (int j = 0; j < dim_; ++j) dot += n[j] * x[j];
      s.signs.push_back(dot == 0 ? Sign::Zero : dot > 0 ? Sign::Plus : Sign::Minus);
    }
    return s;
  }

 private:
  int dim_;
  std::vector<std::vector<Rational>> normals_;
};

namespace detail {

using Matrix = std::vector<std::vector<Rational>>;

// Basis (as columns, returned as a list of vectors) of {x : E x = 0}.
inline std::vector<std::vector<Rational>> nullspace(Matrix e, int dim) {
  std::vector<int> pivot_col;
  std::size_t row = 0;
  for (int col = 0; col < dim && row < e.size(); ++col) {
    std::size_t p = row;
    while (p < e.size() && e[p][col] == 0) ++p;
    if (p == e.size()) continue;
    std::swap(e[row], e[p]);
    Rational inv = 1 / e[row][col];
    for (auto& v : e[row]) v *= inv;
    for (std::size_t r = 0; r < e.size(); ++r) {
      if (r == row || e[r][col] == 0) continue;
      Rational f = e[r][col];
      for (int c = 0; c < dim; ++c) e[r][c] -= f * e[row][c];
    }
    pivot_col.push_back(col);
    ++row;
  }
  std::vector<bool> is_pivot(dim, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (int free = 0; free < dim; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(dim, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -e[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Decides whether some y satisfies a . y > 0 for every row a, by
// Fourier-Motzkin elimination. All rows are strict and homogeneous, so the
// system is infeasible exactly when an all-zero row appears.
inline bool strictly_feasible(Matrix rows, int vars) {
  auto normalize = [](std::vector<Rational>& r) {
    for (const auto& v : r)
      if (v != 0) {
        Rational s = abs(v);
        for (auto& w : r) w /= s;
        return true;
      }
    return false;
  };
  for (auto& r : rows)
    if (!normalize(r)) return false;
  for (int j = 0; j < vars; ++j) {
    Matrix pos, neg, next;
    for (auto& r : rows) {
      if (r[j] > 0) pos.push_back(std::move(r));
      else if (r[j] < 0) neg.push_back(std::move(r));
      else next.push_back(std::move(r));
    }
    for (const auto& p : pos)
      for (const auto& n : neg) {
        std::vector<Rational> c(vars);
        for (int i = 0; i < vars; ++i) c[i] = -n[j] * p[i] + p[j] * n[i];
        if (!normalize(c)) return false;
        next.push_back(std::move(c));
      }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    rows = std::move(next);
  }
  return true;
}

}  // namespace detail

// True if some point of R^d has sign vector s.
inline bool is_face(const Arrangement& a, const SignVector& s) {
  if (s.size() != a.size()) throw Error("sign vector length does not match arrangement");
  const int d = a.dim();
  detail::Matrix eq, strict;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (s[i] == Sign::Zero) {
      eq.push_back(a.normals()[i]);
    } else {
      auto row = a.normals()[i];
      if (s[i] == Sign::Minus)
        for (auto& v : row) v = -v;
      strict.push_back(std::move(row));
    }
  }
  auto basis = detail::nullspace(eq, d);
  const int r = static_cast<int>(basis.size());
  detail::Matrix reduced;
  for (const auto& row : strict) {
    std::vector<Rational> b(r, 0);
    for (int c = 0; c < r; ++c)
      for (int k = 0; k < d; ++k) b[c] += row[k] * basis[c][k];
    reduced.push_back(std::move(b));
  }
  return detail::strictly_feasible(std::move(reduced), r);
}

struct FaceLimits {
  std::size_t max_hyperplanes = 8;
  int max_dim = 5;
};

// All faces, sorted.
inline std::vector<SignVector> enumerate_faces(const Arrangement& a, const FaceLimits& limits = {}) {
  if (a.size() > limits.max_hyperplanes || a.dim() > limits.max_dim)
    throw BudgetExceeded("enumerate_faces: arrangement exceeds " + std::to_string(limits.max_hyperplanes) +
                         " hyperplanes or dimension " + std::to_string(limits.max_dim));
  const std::size_t m = a.size();
  std::vector<SignVector> faces;
  SignVector s{std::vector<Sign>(m, Sign::Zero)};
  std::size_t total = 1;
  for (std::size_t i = 0; i < m; ++i) total *= 3;
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (std::size_t i = m; i-- > 0;) {
      s.signs[i] = static_cast<Sign>(rest % 3);
      rest /= 3;
    }
    if (is_face(a, s)) faces.push_back(s);
  }
  std::sort(faces.begin(), faces.end());
  return faces;
}

// The face semigroup with face_product as override; element i is faces[i].
inline FiniteAlgebra face_semigroup(const std::vector<SignVector>& faces, std::string name = "faces") {
  std::map<SignVector, int> index;
  for (std::size_t i = 0; i < faces.size(); ++i) index.emplace(faces[i], static_cast<int>(i));
  const int n = static_cast<int>(faces.size());
  FiniteAlgebra::Table t(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      auto it = index.find(face_product(faces[x], faces[y]));
      if (it == index.end()) throw Error("face set is not closed under the face product");
      t[static_cast<std::size_t>(x) * n + y] = it->second;
    }
  return FiniteAlgebra(n, {{Op::Override, std::move(t)}}, std::move(name));
}

inline FiniteAlgebra face_semigroup(const Arrangement& a, const FaceLimits& limits = {}) {
  return face_semigroup(enumerate_faces(a, limits));
}

}  // namespace pfalg
