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

// Terms, identities and quasi-identities over subsets of {ov, upd, at, mns}.
//
// Concrete syntax, loosest to tightest:
//
//   quasi   := eqlist "->" eq | eq
//   eqlist  := eq { "&" eq }
//   eq      := term "=" term
//   term    := mid { "|" mid }                 override, left associative
//   mid     := post { ("@" | "-") post }       left associative, no mixing
//   post    := atom { "[" term "]" }           update
//   atom    := ident | "(" term ")"
//
// Variable names match [a-z][a-z0-9_]*.

#pragma once

#include <cctype>
#include <concepts>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "pfalg/error.hpp"
#include "pfalg/op.hpp"
#include "pfalg/pfun.hpp"

namespace pfalg {

// Immutable term tree. Copies share structure; equality is structural.
class Term {
 public:
  static Term var(std::string name) {
    auto node = std::make_shared<Node>();
    node->name = std::move(name);
    node->size = 1;
    return Term(std::move(node));
  }

  static Term app(Op op, Term left, Term right) {
    auto node = std::make_shared<Node>();
    node->op = op;
    node->size = 1 + left.size() + right.size();
    node->left = std::move(left.node_);
    node->right = std::move(right.node_);
    return Term(std::move(node));
  }

  bool is_var() const noexcept { return !node_->left; }
  const std::string& name() const noexcept { return node_->name; }
  Op op() const noexcept { return node_->op; }
  Term left() const { return Term(node_->left); }
  Term right() const { return Term(node_->right); }
  // Number of nodes.
  std::size_t size() const noexcept { return node_->size; }

  friend bool operator==(const Term& a, const Term& b) { return equal(a.node_.get(), b.node_.get()); }

 private:
  struct Node {
    std::string name;
    Op op = Op::Override;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
    std::size_t size = 1;
  };

  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static bool equal(const Node* a, const Node* b) {
    if (a == b) return true;
    if (a->size != b->size) return false;
    if (!a->left || !b->left) return !a->left && !b->left && a->name == b->name;
    return a->op == b->op && equal(a->left.get(), b->left.get()) &&
           equal(a->right.get(), b->right.get());
  }

  std::shared_ptr<const Node> node_;
};

inline Term var(std::string name) { return Term::var(std::move(name)); }
inline Term ov(Term a, Term b) { return Term::app(Op::Override, std::move(a), std::move(b)); }
inline Term upd(Term a, Term b) { return Term::app(Op::Update, std::move(a), std::move(b)); }
inline Term at(Term a, Term b) { return Term::app(Op::RMult, std::move(a), std::move(b)); }
inline Term mns(Term a, Term b) { return Term::app(Op::Minus, std::move(a), std::move(b)); }

struct Identity {
  Term lhs;
  Term rhs;
  friend bool operator==(const Identity&, const Identity&) = default;
};

// premises -> conclusion. No premises means a plain identity.
struct QuasiIdentity {
  std::vector<Identity> premises;
  Identity conclusion;

  QuasiIdentity(std::vector<Identity> p, Identity c)
      : premises(std::move(p)), conclusion(std::move(c)) {}
  QuasiIdentity(Identity c) : conclusion(std::move(c)) {}  // NOLINT: implicit on purpose

  bool is_identity() const noexcept { return premises.empty(); }
  friend bool operator==(const QuasiIdentity&, const QuasiIdentity&) = default;
};

using Statement = std::variant<Term, Identity, QuasiIdentity>;

// ---------------------------------------------------------------------------
// Structural queries.

namespace detail {
inline void collect_vars(const Term& t, std::vector<std::string>& out, std::set<std::string>& seen) {
  if (t.is_var()) {
    if (seen.insert(t.name()).second) out.push_back(t.name());
    return;
  }
  collect_vars(t.left(), out, seen);
  collect_vars(t.right(), out, seen);
}
}  // namespace detail

// Variables in order of first occurrence, left to right.
inline std::vector<std::string> variables(const Term& t) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  detail::collect_vars(t, out, seen);
  return out;
}

inline std::vector<std::string> variables(const Identity& e) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  detail::collect_vars(e.lhs, out, seen);
  detail::collect_vars(e.rhs, out, seen);
  return out;
}

// Premises first, then the conclusion.
inline std::vector<std::string> variables(const QuasiIdentity& q) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& p : q.premises) {
    detail::collect_vars(p.lhs, out, seen);
    detail::collect_vars(p.rhs, out, seen);
  }
  detail::collect_vars(q.conclusion.lhs, out, seen);
  detail::collect_vars(q.conclusion.rhs, out, seen);
  return out;
}

inline Signature signature_of(const Term& t) {
  if (t.is_var()) return {};
  return Signature{t.op()} | signature_of(t.left()) | signature_of(t.right());
}
inline Signature signature_of(const Identity& e) { return signature_of(e.lhs) | signature_of(e.rhs); }
inline Signature signature_of(const QuasiIdentity& q) {
  Signature s = signature_of(q.conclusion);
  for (const auto& p : q.premises) s = s | signature_of(p);
  return s;
}

// Leftmost variable; for update-only terms this fixes the domain.
inline std::string leftmost_variable(const Term& t) {
  Term cur = t;
  while (!cur.is_var()) cur = cur.left();
  return cur.name();
}

// ---------------------------------------------------------------------------
// Rendering.

enum class RenderStyle {
  // Round-trips through the parser.
  Canonical,
  // Also drops parentheses around right-nested override (display only).
  FlattenOverride,
};

namespace detail {

inline bool is_post(const Term& t) { return t.is_var() || t.op() == Op::Update; }

inline void render_into(const Term& t, RenderStyle style, std::string& out);

inline void render_paren(const Term& t, RenderStyle style, std::string& out, bool paren) {
  if (paren) out += '(';
  render_into(t, style, out);
  if (paren) out += ')';
}

inline void render_into(const Term& t, RenderStyle style, std::string& out) {
  if (t.is_var()) {
    out += t.name();
    return;
  }
  const Term l = t.left();
  const Term r = t.right();
  switch (t.op()) {
    case Op::Update:
      render_paren(l, style, out, !is_post(l));
      out += '[';
      render_into(r, style, out);
      out += ']';
      return;
    case Op::RMult:
    case Op::Minus: {
      bool left_ok = is_post(l) || l.op() == t.op();
      render_paren(l, style, out, !left_ok);
      out += t.op() == Op::RMult ? " @ " : " - ";
      render_paren(r, style, out, !is_post(r));
      return;
    }
    case Op::Override:
      render_into(l, style, out);
      out += " | ";
      render_paren(r, style, out,
                   !r.is_var() && r.op() == Op::Override && style == RenderStyle::Canonical);
      return;
  }
}

}  // namespace detail

inline std::string render(const Term& t, RenderStyle style = RenderStyle::Canonical) {
  std::string out;
  detail::render_into(t, style, out);
  return out;
}

inline std::string render(const Identity& e, RenderStyle style = RenderStyle::Canonical) {
  return render(e.lhs, style) + " = " + render(e.rhs, style);
}

inline std::string render(const QuasiIdentity& q, RenderStyle style = RenderStyle::Canonical) {
  std::string out;
  for (std::size_t i = 0; i < q.premises.size(); ++i) {
    if (i) out += " & ";
    out += render(q.premises[i], style);
  }
  if (!q.premises.empty()) out += " -> ";
  return out + render(q.conclusion, style);
}

inline std::string render(const Statement& s, RenderStyle style = RenderStyle::Canonical) {
  return std::visit([style](const auto& v) { return render(v, style); }, s);
}

// ---------------------------------------------------------------------------
// Parsing.

namespace detail {

enum class Tok { Ident, Bar, At, Minus, LBrack, RBrack, LParen, RParen, Eq, Amp, Arrow, End };

inline const char* tok_text(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Bar: return "'|'";
    case Tok::At: return "'@'";
    case Tok::Minus: return "'-'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Eq: return "'='";
    case Tok::Amp: return "'&'";
    case Tok::Arrow: return "'->'";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Parser {
 public:
  explicit Parser(std::string_view text) { tokenize(text); }

  Statement statement() {
    Term lhs = term();
    if (peek().kind == Tok::End) return lhs;
    expect(Tok::Eq, {Tok::Eq, Tok::Bar, Tok::At, Tok::Minus, Tok::LBrack, Tok::End});
    Identity first{lhs, term()};
    if (peek().kind == Tok::End) return first;
    std::vector<Identity> premises{first};
    while (peek().kind == Tok::Amp) {
      next();
      premises.push_back(equation());
    }
    expect(Tok::Arrow, {Tok::Amp, Tok::Arrow, Tok::End});
    Identity conclusion = equation();
    expect(Tok::End, {Tok::End});
    return QuasiIdentity(std::move(premises), std::move(conclusion));
  }

  Term whole_term() {
    Term t = term();
    expect(Tok::End, {Tok::Bar, Tok::At, Tok::Minus, Tok::LBrack, Tok::End});
    return t;
  }

 private:
  Identity equation() {
    Term lhs = term();
    expect(Tok::Eq, {Tok::Eq});
    return Identity{lhs, term()};
  }

  Term term() {
    Term t = mid();
    while (peek().kind == Tok::Bar) {
      next();
      t = ov(t, mid());
    }
    return t;
  }

  Term mid() {
    Term t = post();
    std::optional<Tok> chain;
    while (peek().kind == Tok::At || peek().kind == Tok::Minus) {
      Token op = next();
      if (chain && *chain != op.kind)
        throw ParseError("cannot mix '@' and '-' without parentheses", op.line, op.column);
      chain = op.kind;
      Term rhs = post();
      t = Term::app(op.kind == Tok::At ? Op::RMult : Op::Minus, t, rhs);
    }
    return t;
  }

  Term post() {
    Term t = atom();
    while (peek().kind == Tok::LBrack) {
      next();
      Term arg = term();
      expect(Tok::RBrack, {Tok::RBrack, Tok::Bar, Tok::At, Tok::Minus, Tok::LBrack});
      t = upd(t, arg);
    }
    return t;
  }

  Term atom() {
    const Token& tok = peek();
    if (tok.kind == Tok::Ident) return var(next().text);
    if (tok.kind == Tok::LParen) {
      next();
      Term t = term();
      expect(Tok::RParen, {Tok::RParen, Tok::Bar, Tok::At, Tok::Minus, Tok::LBrack});
      return t;
    }
    fail(tok, {Tok::Ident, Tok::LParen});
  }

  const Token& peek() const { return tokens_[pos_]; }
  Token next() { return tokens_[pos_ == tokens_.size() - 1 ? pos_ : pos_++]; }

  void expect(Tok kind, std::initializer_list<Tok> expected) {
    if (peek().kind != kind) fail(peek(), expected);
    next();
  }

  [[noreturn]] void fail(const Token& tok, std::initializer_list<Tok> expected) const {
    std::string msg = "unexpected ";
    msg += tok.kind == Tok::Ident ? "identifier '" + tok.text + "'" : tok_text(tok.kind);
    msg += "; expected one of:";
    bool first = true;
    for (Tok e : expected) {
      msg += first ? " " : ", ";
      first = false;
      msg += tok_text(e);
    }
    throw ParseError(msg, tok.line, tok.column);
  }

  void tokenize(std::string_view text) {
    std::size_t line = 1, col = 1;
    std::size_t i = 0;
    auto push = [&](Tok kind, std::string s, std::size_t width) {
      tokens_.push_back(Token{kind, std::move(s), line, col});
      i += width;
      col += width;
    };
    while (i < text.size()) {
      char c = text[i];
      if (c == '\n') {
        ++line;
        col = 1;
        ++i;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        ++col;
        continue;
      }
      if (c >= 'a' && c <= 'z') {
        std::size_t j = i;
        while (j < text.size() && (std::islower(static_cast<unsigned char>(text[j])) ||
                                   std::isdigit(static_cast<unsigned char>(text[j])) ||
                                   text[j] == '_'))
          ++j;
        push(Tok::Ident, std::string(text.substr(i, j - i)), j - i);
        continue;
      }
      switch (c) {
        case '|': push(Tok::Bar, "|", 1); continue;
        case '@': push(Tok::At, "@", 1); continue;
        case '[': push(Tok::LBrack, "[", 1); continue;
        case ']': push(Tok::RBrack, "]", 1); continue;
        case '(': push(Tok::LParen, "(", 1); continue;
        case ')': push(Tok::RParen, ")", 1); continue;
        case '=': push(Tok::Eq, "=", 1); continue;
        case '&': push(Tok::Amp, "&", 1); continue;
        case '-':
          if (i + 1 < text.size() && text[i + 1] == '>')
            push(Tok::Arrow, "->", 2);
          else
            push(Tok::Minus, "-", 1);
          continue;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", line, col);
      }
    }
    tokens_.push_back(Token{Tok::End, "", line, col});
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Statement parse_statement(std::string_view text) { return detail::Parser(text).statement(); }

inline Term parse_term(std::string_view text) { return detail::Parser(text).whole_term(); }

inline Identity parse_identity(std::string_view text) {
  Statement s = parse_statement(text);
  if (auto* e = std::get_if<Identity>(&s)) return *e;
  throw ParseError("expected an identity 'lhs = rhs'", 1, 1);
}

// Accepts plain identities as quasi-identities without premises.
inline QuasiIdentity parse_quasi(std::string_view text) {
  Statement s = parse_statement(text);
  if (auto* e = std::get_if<Identity>(&s)) return QuasiIdentity(*e);
  if (auto* q = std::get_if<QuasiIdentity>(&s)) return *q;
  throw ParseError("expected an identity or quasi-identity", 1, 1);
}

// ---------------------------------------------------------------------------
// Positions, substitution and rewriting.

enum class Side : std::uint8_t { L, R };
using Path = std::vector<Side>;

// "L.R.L"; the root is "root" (the empty string is also accepted).
inline Path parse_path(std::string_view text) {
  Path path;
  if (text.empty() || text == "root") return path;
  std::size_t pos = 0;
  while (true) {
    if (pos >= text.size()) throw InvalidPath("malformed path '" + std::string(text) + "'");
    char c = text[pos];
    if (c == 'L')
      path.push_back(Side::L);
    else if (c == 'R')
      path.push_back(Side::R);
    else
      throw InvalidPath("malformed path '" + std::string(text) + "'");
    ++pos;
    if (pos == text.size()) break;
    if (text[pos] != '.') throw InvalidPath("malformed path '" + std::string(text) + "'");
    ++pos;
  }
  return path;
}

inline std::string render_path(const Path& path) {
  if (path.empty()) return "root";
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += '.';
    out += path[i] == Side::L ? 'L' : 'R';
  }
  return out;
}

inline Term subterm_at(const Term& t, const Path& path) {
  Term cur = t;
  for (Side s : path) {
    if (cur.is_var()) throw InvalidPath("path " + render_path(path) + " leaves the term");
    cur = s == Side::L ? cur.left() : cur.right();
  }
  return cur;
}

namespace detail {
inline Term replace_from(const Term& t, const Path& path, std::size_t depth, const Term& s) {
  if (depth == path.size()) return s;
  if (t.is_var()) throw InvalidPath("path " + render_path(path) + " leaves the term");
  if (path[depth] == Side::L) return Term::app(t.op(), replace_from(t.left(), path, depth + 1, s), t.right());
  return Term::app(t.op(), t.left(), replace_from(t.right(), path, depth + 1, s));
}
}  // namespace detail

inline Term replace_at(const Term& t, const Path& path, const Term& s) {
  return detail::replace_from(t, path, 0, s);
}

using Substitution = std::map<std::string, Term>;

// Simultaneous substitution; unmapped variables stay put.
inline Term substitute(const Term& t, const Substitution& sigma) {
  if (t.is_var()) {
    auto it = sigma.find(t.name());
    return it == sigma.end() ? t : it->second;
  }
  return Term::app(t.op(), substitute(t.left(), sigma), substitute(t.right(), sigma));
}

inline Identity substitute(const Identity& e, const Substitution& sigma) {
  return Identity{substitute(e.lhs, sigma), substitute(e.rhs, sigma)};
}

// ---------------------------------------------------------------------------
// Evaluation in any structure supplying (some of) the four operations.

template <class M>
concept Model = requires(const M& m, Op op, const typename M::Element& a) {
  { m.supports(op) } -> std::convertible_to<bool>;
  { m.apply(op, a, a) } -> std::convertible_to<typename M::Element>;
};

template <class K, class V>
struct PartialFunctionModel {
  using Element = PartialFunction<K, V>;
  bool supports(Op) const noexcept { return true; }
  Element apply(Op op, const Element& a, const Element& b) const { return pfalg::apply(op, a, b); }
};

template <Model M>
typename M::Element evaluate(const Term& t, const M& model,
                             const std::map<std::string, typename M::Element>& env) {
  if (t.is_var()) {
    auto it = env.find(t.name());
    if (it == env.end()) throw UnboundVariable(t.name());
    return it->second;
  }
  if (!model.supports(t.op()))
    throw UnsupportedOperation("operation '" + std::string(op_name(t.op())) +
                               "' is not supported by the model");
  return model.apply(t.op(), evaluate(t.left(), model, env), evaluate(t.right(), model, env));
}

}  // namespace pfalg
