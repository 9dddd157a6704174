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

// Choice functions on the nonempty subsets of {1..k}, the canonical free
// algebras they carry, and synthesis of update terms.

#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pfalg/error.hpp"
#include "pfalg/op.hpp"
#include "pfalg/pfun.hpp"
#include "pfalg/term.hpp"

namespace pfalg {

// A subset of {1..k} as a bitmask: element i is bit i-1.
using Subset = std::uint32_t;

inline constexpr int kMaxUniverse = 8;

inline Subset singleton(int i) { return Subset{1} << (i - 1); }
inline Subset top_subset(int k) { return (Subset{1} << k) - 1; }
inline bool contains(Subset a, int i) { return (a >> (i - 1)) & 1u; }

// "1,2,4"
inline std::string subset_to_string(Subset a) {
  std::string out;
  for (int i = 1; a >> (i - 1); ++i)
    if (contains(a, i)) {
      if (!out.empty()) out += ',';
      out += std::to_string(i);
    }
  return out;
}

inline Subset parse_subset(std::string_view text, int k) {
  Subset a = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(pos, end - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    int i = 0;
    for (char c : item) {
      if (c < '0' || c > '9') throw Error("bad subset element in '" + std::string(text) + "'");
      i = i * 10 + (c - '0');
      if (i > k) break;
    }
    if (item.empty() || i < 1 || i > k)
      throw Error("subset element out of range 1.." + std::to_string(k) + " in '" + std::string(text) + "'");
    a |= singleton(i);
    pos = end + 1;
  }
  if (a == 0) throw Error("empty subset");
  return a;
}

class ChoiceFunction {
 public:
  explicit ChoiceFunction(int k) : k_(k) {
    if (k < 1 || k > kMaxUniverse)
      throw Error("universe size must be in 1.." + std::to_string(kMaxUniverse));
    values_.assign(top_subset(k), 0);
  }

  int universe() const noexcept { return k_; }

  // gamma(A), or 0 when A is outside the domain.
  int at(Subset a) const {
    check_subset(a);
    return values_[a - 1];
  }
  bool defined(Subset a) const { return at(a) != 0; }

  void set(Subset a, int v) {
    check_subset(a);
    if (v != 0 && (v < 1 || v > k_ || !contains(a, v)))
      throw Error("choice " + std::to_string(v) + " is not in {" + subset_to_string(a) + "}");
    values_[a - 1] = static_cast<std::uint8_t>(v);
  }
  void erase(Subset a) { set(a, 0); }

  // Domain members in increasing bitmask order.
  std::vector<Subset> domain() const {
    std::vector<Subset> d;
    for (Subset a = 1; a <= values_.size(); ++a)
      if (values_[a - 1]) d.push_back(a);
    return d;
  }

  std::size_t size() const noexcept {
    std::size_t n = 0;
    for (auto v : values_) n += v != 0;
    return n;
  }
  bool empty() const noexcept { return size() == 0; }

  const std::vector<std::uint8_t>& raw() const noexcept { return values_; }

  friend bool operator==(const ChoiceFunction&, const ChoiceFunction&) = default;
  friend auto operator<=>(const ChoiceFunction&, const ChoiceFunction&) = default;

 private:
  void check_subset(Subset a) const {
    if (a == 0 || a > top_subset(k_)) throw Error("subset out of range for universe " + std::to_string(k_));
  }

  int k_;
  std::vector<std::uint8_t> values_;
};

// "{1:1, 1,2:2}" with keys in increasing bitmask order.
inline std::string to_string(const ChoiceFunction& g) {
  std::string out = "{";
  bool first = true;
  for (Subset a : g.domain()) {
    if (!first) out += ", ";
    first = false;
    out += subset_to_string(a) + ":" + std::to_string(g.at(a));
  }
  return out + "}";
}

struct ChoiceFunctionHash {
  std::size_t operator()(const ChoiceFunction& g) const noexcept {
    std::size_t h = static_cast<std::size_t>(g.universe());
    for (auto v : g.raw()) h = h * 1099511628211ull + v;
    return h;
  }
};

// The constant choice function i on D_i = {A : i in A}.
inline ChoiceFunction generator_cf(int i, int k) {
  ChoiceFunction g(k);
  if (i < 1 || i > k) throw Error("generator index " + std::to_string(i) + " out of range 1.." + std::to_string(k));
  for (Subset a = 1; a <= top_subset(k); ++a)
    if (contains(a, i)) g.set(a, i);
  return g;
}

// Subsets become sorted element lists.
inline PartialFunction<std::vector<int>, int> as_partial_function(const ChoiceFunction& g) {
  std::vector<std::pair<std::vector<int>, int>> pairs;
  for (Subset a : g.domain()) {
    std::vector<int> key;
    for (int i = 1; i <= g.universe(); ++i)
      if (contains(a, i)) key.push_back(i);
    pairs.emplace_back(std::move(key), g.at(a));
  }
  return PartialFunction<std::vector<int>, int>(std::move(pairs));
}

inline ChoiceFunction apply(Op op, const ChoiceFunction& f, const ChoiceFunction& g) {
  if (f.universe() != g.universe()) throw Error("choice functions over different universes");
  ChoiceFunction out(f.universe());
  const auto& a = f.raw();
  const auto& b = g.raw();
  for (Subset s = 1; s <= a.size(); ++s) {
    std::uint8_t fv = a[s - 1], gv = b[s - 1], v = 0;
    switch (op) {
      case Op::Override: v = fv ? fv : gv; break;
      case Op::Update: v = fv ? (gv ? gv : fv) : 0; break;
      case Op::RMult: v = gv ? fv : 0; break;
      case Op::Minus: v = gv ? 0 : fv; break;
    }
    if (v) out.set(s, v);
  }
  return out;
}

struct ChoiceModel {
  using Element = ChoiceFunction;
  bool supports(Op) const noexcept { return true; }
  Element apply(Op op, const Element& a, const Element& b) const { return pfalg::apply(op, a, b); }
};

namespace detail {
// Index of a variable named x<i>, or 0.
inline int generator_index(const std::string& name) {
  if (name.size() < 2 || name[0] != 'x' || name[1] == '0') return 0;
  int i = 0;
  for (std::size_t p = 1; p < name.size(); ++p) {
    if (name[p] < '0' || name[p] > '9') return 0;
    i = i * 10 + (name[p] - '0');
    if (i > kMaxUniverse) return 0;
  }
  return i;
}
}  // namespace detail

inline std::string generator_name(int i) { return "x" + std::to_string(i); }

// Evaluates t with x_i bound to generator_cf(i, k).
inline ChoiceFunction evaluate_at_generators(const Term& t, int k) {
  std::map<std::string, ChoiceFunction> env;
  for (int i = 1; i <= k; ++i) env.emplace(generator_name(i), generator_cf(i, k));
  return evaluate(t, ChoiceModel{}, env);
}

// The largest generator index mentioned by t; throws on other variable names.
inline int generator_arity(const Term& t) {
  int k = 0;
  for (const auto& v : variables(t)) {
    int i = detail::generator_index(v);
    if (i == 0) throw Error("variable '" + v + "' is not a generator name x1..x" + std::to_string(kMaxUniverse));
    k = std::max(k, i);
  }
  return k;
}

// ---------------------------------------------------------------------------
// Free algebras.

struct ClosureOptions {
  int max_universe = 4;
  std::size_t max_elements = 1'000'000;
  std::uint64_t max_steps = 200'000'000;
};

// The subalgebra of Choice({1..k}) generated by the generators under sig,
// sorted ascending.
inline std::vector<ChoiceFunction> free_closure(int k, Signature sig, const ClosureOptions& opts = {}) {
  if (k < 1 || k > opts.max_universe)
    throw Error("free_closure: universe size must be in 1.." + std::to_string(opts.max_universe));
  std::vector<Op> ops;
  for (Op op : kAllOps)
    if (sig.contains(op)) ops.push_back(op);

  std::vector<ChoiceFunction> elems;
  std::unordered_set<ChoiceFunction, ChoiceFunctionHash> seen;
  auto add = [&](ChoiceFunction g) {
    if (seen.insert(g).second) {
      if (seen.size() > opts.max_elements)
        throw BudgetExceeded("free_closure: more than " + std::to_string(opts.max_elements) + " elements");
      elems.push_back(std::move(g));
    }
  };
  for (int i = 1; i <= k; ++i) add(generator_cf(i, k));

  std::uint64_t steps = 0;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      for (Op op : ops) {
        steps += 2;
        if (steps > opts.max_steps)
          throw BudgetExceeded("free_closure: more than " + std::to_string(opts.max_steps) + " operations");
        // elems may reallocate inside add, so copy operands first.
        ChoiceFunction a = elems[i], b = elems[j];
        add(apply(op, a, b));
        add(apply(op, b, a));
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

// The closed form n * prod_{1<=i<=n} i^C(n,i) as usually quoted for the
// n-generated free algebra over update. It overcounts from n = 3 on: D_p has
// C(n-1,i-1) members of size i, not C(n,i). update_free_size gives the
// actual size.
inline boost::multiprecision::cpp_int count_update_free(int n) {
  using boost::multiprecision::cpp_int;
  if (n < 1) throw Error("count_update_free: n must be at least 1");
  cpp_int result = n;
  cpp_int binom = 1;
  for (int i = 1; i <= n; ++i) {
    binom = binom * (n - i + 1) / i;
    cpp_int factor = 1;
    for (cpp_int e = 0; e < binom; ++e) factor *= i;
    result *= factor;
  }
  return result;
}

// n * prod_{1<=i<=n} i^C(n-1,i-1): the number of choice functions on the n
// generator domains, which is the size of the free algebra.
inline boost::multiprecision::cpp_int update_free_size(int n) {
  using boost::multiprecision::cpp_int;
  if (n < 1) throw Error("update_free_size: n must be at least 1");
  cpp_int result = n;
  cpp_int binom = 1;  // C(n-1, i-1)
  for (int i = 1; i <= n; ++i) {
    if (i > 1) binom = binom * (n - i + 1) / (i - 1);
    result *= boost::multiprecision::pow(cpp_int(i), binom.convert_to<unsigned>());
  }
  return result;
}

// ---------------------------------------------------------------------------
// Update-term synthesis.

// An update-only term with leftmost variable x_p whose value at the
// generators agrees with gamma on D_p. Children x_j for j outside A are
// appended in ascending order.
inline Term synthesize_update_term(const ChoiceFunction& gamma, int p) {
  const int k = gamma.universe();
  if (p < 1 || p > k) throw Error("synthesize_update_term: p out of range");
  for (Subset a = 1; a <= top_subset(k); ++a)
    if (contains(a, p) && !gamma.defined(a))
      throw Error("synthesize_update_term: choice function undefined on {" + subset_to_string(a) + "}");

  const Subset top = top_subset(k);
  std::map<std::pair<int, Subset>, Term> memo;
  std::function<Term(int, Subset)> build = [&](int l, Subset a) -> Term {
    auto key = std::make_pair(l, a);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    Term t = upd(var(generator_name(l)), var(generator_name(gamma.at(a))));
    if (a != top)
      for (int j = 1; j <= k; ++j)
        if (!contains(a, j)) t = upd(t, build(j, a | singleton(j)));
    memo.emplace(key, t);
    return t;
  };
  return build(p, singleton(p));
}

inline std::size_t leaf_count(const Term& t) { return (t.size() + 1) / 2; }

namespace detail {
inline void update_paths(const Term& t, Path& cur, std::vector<Path>& out) {
  if (t.is_var()) return;
  out.push_back(cur);
  cur.push_back(Side::L);
  update_paths(t.left(), cur, out);
  cur.back() = Side::R;
  update_paths(t.right(), cur, out);
  cur.pop_back();
}
}  // namespace detail

// Greedy rewriting that keeps the value at the generators fixed: s[s] -> s,
// and a[b] -> a or a[b] -> b wherever the result still evaluates the same.
// Each accepted rewrite strictly shrinks the term, so this terminates. No
// minimality is claimed.
inline Term simplify_update_term(Term t) {
  if (!Signature{Op::Update}.includes(signature_of(t)))
    throw UnsupportedOperation("simplify_update_term: term uses operations other than update");
  const int k = std::max(1, generator_arity(t));
  const ChoiceFunction target = evaluate_at_generators(t, k);

  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Path> paths;
    Path cur;
    detail::update_paths(t, cur, paths);
    for (const Path& p : paths) {
      const Term node = subterm_at(t, p);
      std::vector<Term> candidates;
      candidates.push_back(node.left());
      candidates.push_back(node.right());
      for (const Term& c : candidates) {
        Term next = replace_at(t, p, c);
        if (evaluate_at_generators(next, k) == target) {
          t = next;
          changed = true;
          break;
        }
      }
      if (changed) break;
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Which domains occur in the free algebras.

// A family of nonempty subsets of {1..k}: bit (A-1) is set when A belongs.
using Family = std::uint64_t;

inline constexpr int kMaxFamilyUniverse = 6;

inline Family domain_family(const ChoiceFunction& g) {
  if (g.universe() > kMaxFamilyUniverse) throw Error("domain_family: universe too large");
  Family f = 0;
  for (Subset a : g.domain()) f |= Family{1} << (a - 1);
  return f;
}

inline Family upset_family(Subset a, int k) {
  Family f = 0;
  for (Subset b = 1; b <= top_subset(k); ++b)
    if ((b & a) == a) f |= Family{1} << (b - 1);
  return f;
}

struct DomainPredicate {
  std::string description;
  std::function<bool(Family)> holds;
};

// Domain predicate for the free algebra over sig, for the signatures whose
// free algebras are characterized: {upd}, {at,upd}, {ov,at,upd}, {ov,upd}
// and the full signature.
inline DomainPredicate characterize_domains(Signature sig, int k) {
  if (!sig.contains(Op::Update)) throw Error("characterize_domains: signature must contain upd");
  if (k < 1 || k > kMaxFamilyUniverse) throw Error("characterize_domains: universe size out of range");
  const Subset top = top_subset(k);

  auto is_upset = [k, top](Family f) {
    for (Subset a = 1; a <= top; ++a)
      if ((f >> (a - 1)) & 1)
        for (int i = 1; i <= k; ++i)
          if (!((f >> ((a | singleton(i)) - 1)) & 1)) return false;
    return true;
  };

  if (sig == Signature{Op::Update})
    return {"D_s for some s", [k](Family f) {
              for (int s = 1; s <= k; ++s)
                if (f == upset_family(singleton(s), k)) return true;
              return false;
            }};
  if (sig == Signature{Op::RMult, Op::Update})
    return {"principal upsets", [k, top](Family f) {
              for (Subset a = 1; a <= top; ++a)
                if (f == upset_family(a, k)) return true;
              return false;
            }};
  if (sig == Signature{Op::Override, Op::RMult, Op::Update})
    return {"nonempty upsets", [is_upset](Family f) { return f != 0 && is_upset(f); }};
  if (sig == Signature{Op::Override, Op::Update})
    return {"unions of D_s", [k](Family f) {
              Family u = 0;
              for (int s = 1; s <= k; ++s)
                if ((f >> (singleton(s) - 1)) & 1) u |= upset_family(singleton(s), k);
              return f != 0 && f == u;
            }};
  if (sig == Signature::all()) return {"all families", [](Family) { return true; }};
  throw UnsupportedOperation("characterize_domains: no characterization for {" + sig.to_string() + "}");
}

struct DomainCrossCheck {
  std::size_t closure_size = 0;
  // Number of choice functions whose domain satisfies the predicate.
  std::size_t predicted_size = 0;
  // Every closure element has a predicate-satisfying domain.
  bool domains_match = false;
  // Every choice function on a predicate-satisfying domain was reached.
  bool complete = false;
};

inline DomainCrossCheck cross_check_domains(Signature sig, int k, const ClosureOptions& opts = {}) {
  DomainPredicate pred = characterize_domains(sig, k);
  DomainCrossCheck r;
  auto closure = free_closure(k, sig, opts);
  r.closure_size = closure.size();
  r.domains_match = true;
  for (const auto& g : closure)
    if (!pred.holds(domain_family(g))) r.domains_match = false;

  const Subset top = top_subset(k);
  for (Family f = 0; f < (Family{1} << top); ++f) {
    if (!pred.holds(f)) continue;
    std::size_t n = 1;
    for (Subset a = 1; a <= top; ++a)
      if ((f >> (a - 1)) & 1) n *= static_cast<std::size_t>(std::popcount(a));
    r.predicted_size += n;
  }
  // The closure is a set of distinct choice functions; if all lie in the
  // predicted set and the sizes agree, every predicted function is reached.
  r.complete = r.domains_match && r.closure_size == r.predicted_size;
  return r;
}

// All choice functions defined exactly on the given family.
inline std::vector<ChoiceFunction> all_choice_functions(int k, Family f) {
  std::vector<Subset> dom;
  for (Subset a = 1; a <= top_subset(k); ++a)
    if ((f >> (a - 1)) & 1) dom.push_back(a);
  std::vector<ChoiceFunction> out;
  ChoiceFunction g(k);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == dom.size()) {
      out.push_back(g);
      return;
    }
    for (int v = 1; v <= k; ++v)
      if (contains(dom[i], v)) {
        g.set(dom[i], v);
        rec(i + 1);
      }
    g.erase(dom[i]);
  };
  rec(0);
  return out;
}

}  // namespace pfalg
