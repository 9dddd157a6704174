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

// Finite algebras given by operation tables, the builtin algebras 3 and L,
// exhaustive identity and quasi-identity checking, homomorphism search and
// the separating-homomorphism representability test.
//
// An algebra is in Rep(tau) iff it embeds in a power of 3_tau, so an identity
// holds for all tau-algebras of partial functions iff it holds in 3_tau, and
// a finite algebra is representable iff its points are separated by
// homomorphisms into 3_tau.

#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "pfalg/error.hpp"
#include "pfalg/op.hpp"
#include "pfalg/term.hpp"

namespace pfalg {

class FiniteAlgebra {
 public:
  using Element = int;
  using Table = std::vector<Element>;  // row-major, row = left argument

  FiniteAlgebra() = default;

  // Each table must be size*size entries, every entry < size.
  FiniteAlgebra(int size, std::map<Op, Table> tables, std::string name = {})
      : size_(size), name_(std::move(name)) {
    if (size <= 0) throw Error("algebra size must be positive");
    if (tables.empty()) throw Error("algebra needs at least one operation");
    for (auto& [op, table] : tables) {
      if (table.size() != static_cast<std::size_t>(size) * static_cast<std::size_t>(size))
        throw Error("table for '" + std::string(op_name(op)) + "' has wrong size");
      for (Element v : table)
        if (v < 0 || v >= size)
          throw Error("table for '" + std::string(op_name(op)) + "' has an entry out of range");
      tables_[op_index(op)] = std::move(table);
      signature_.insert(op);
    }
  }

  int size() const noexcept { return size_; }
  const std::string& name() const noexcept { return name_; }
  Signature signature() const noexcept { return signature_; }
  bool supports(Op op) const noexcept { return signature_.contains(op); }

  Element apply(Op op, Element a, Element b) const {
    return tables_[op_index(op)][static_cast<std::size_t>(a) * size_ + b];
  }

  const Table& table(Op op) const {
    if (!supports(op))
      throw UnsupportedOperation("algebra has no '" + std::string(op_name(op)) + "' table");
    return tables_[op_index(op)];
  }

  // Keeps only the operations in `sig`.
  FiniteAlgebra reduct(Signature sig, std::string name = {}) const {
    std::map<Op, Table> kept;
    for (Op op : kAllOps)
      if (sig.contains(op) && supports(op)) kept.emplace(op, tables_[op_index(op)]);
    if (kept.size() == 0) throw SignatureMismatch("reduct leaves no operations");
    return FiniteAlgebra(size_, std::move(kept), name.empty() ? name_ : std::move(name));
  }

  friend bool operator==(const FiniteAlgebra& a, const FiniteAlgebra& b) {
    return a.size_ == b.size_ && a.signature_ == b.signature_ && a.tables_ == b.tables_;
  }

 private:
  int size_ = 0;
  std::string name_;
  Signature signature_;
  std::array<Table, 4> tables_;
};

static_assert(Model<FiniteAlgebra>);

// The algebra of partial functions on a one-point domain with two values:
// 0 is the empty function, 1 maps the point to +, 2 maps it to -. Override and
// minus are given; @ and update are derived from f@g = f-(f-g) and
// f[g] = (g|f)@f.
inline FiniteAlgebra builtin_three(Signature sig = Signature::all()) {
  const FiniteAlgebra::Table ov = {0, 1, 2,  //
                                   1, 1, 1,  //
                                   2, 2, 2};
  const FiniteAlgebra::Table mn = {0, 0, 0,  //
                                   1, 0, 0,  //
                                   2, 0, 0};
  FiniteAlgebra::Table at(9), up(9);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) at[a * 3 + b] = mn[a * 3 + mn[a * 3 + b]];
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) up[a * 3 + b] = at[ov[b * 3 + a] * 3 + a];
  std::map<Op, FiniteAlgebra::Table> tables;
  if (sig.contains(Op::Override)) tables.emplace(Op::Override, ov);
  if (sig.contains(Op::Update)) tables.emplace(Op::Update, up);
  if (sig.contains(Op::RMult)) tables.emplace(Op::RMult, at);
  if (sig.contains(Op::Minus)) tables.emplace(Op::Minus, mn);
  return FiniteAlgebra(3, std::move(tables), "3{" + sig.to_string() + "}");
}

// The monoid L on {0, +, -} encoded as 0, 1, 2: 0 is the identity and + and -
// are left zeros. Its operation is read as override.
inline FiniteAlgebra builtin_L() {
  return FiniteAlgebra(3, {{Op::Override, {0, 1, 2, 1, 1, 1, 2, 2, 2}}}, "L");
}

// ---------------------------------------------------------------------------
// Compiled terms for fast sweeps over finite algebras.

class CompiledTerm {
 public:
  CompiledTerm(const Term& t, const std::vector<std::string>& vars) { compile(t, vars); }

  int eval(const FiniteAlgebra& a, const int* env) const {
    int stack[64];
    int top = 0;
    for (const Instr& in : code_) {
      if (in.var >= 0) {
        stack[top++] = env[in.var];
      } else {
        int rhs = stack[--top];
        int lhs = stack[top - 1];
        stack[top - 1] = a.apply(in.op, lhs, rhs);
      }
    }
    return stack[0];
  }

 private:
  struct Instr {
    int var;  // -1 for an operation
    Op op;
  };

  // Post-order; returns the stack depth the subterm needs.
  int compile(const Term& t, const std::vector<std::string>& vars) {
    if (t.is_var()) {
      auto it = std::find(vars.begin(), vars.end(), t.name());
      if (it == vars.end()) throw UnboundVariable(t.name());
      code_.push_back({static_cast<int>(it - vars.begin()), Op::Override});
      return 1;
    }
    int l = compile(t.left(), vars);
    int r = compile(t.right(), vars);
    code_.push_back({-1, t.op()});
    int depth = std::max(l, r + 1);
    if (depth > 64) throw Error("term nested too deeply for compiled evaluation");
    return depth;
  }

  std::vector<Instr> code_;
};

// ---------------------------------------------------------------------------
// Exhaustive checking.

struct SweepOptions {
  // Refuse sweeps with more than this many assignments.
  std::uint64_t budget = 100'000'000;
  // Worker threads; the reported counterexample does not depend on this.
  unsigned threads = 1;
};

// An assignment of algebra elements to variables, in variable order.
struct Assignment {
  std::vector<std::string> variables;
  std::vector<int> values;

  std::map<std::string, int> as_map() const {
    std::map<std::string, int> m;
    for (std::size_t i = 0; i < variables.size(); ++i) m.emplace(variables[i], values[i]);
    return m;
  }

  // "x=1 y=2"
  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < variables.size(); ++i) {
      if (i) out += ' ';
      out += variables[i] + "=" + std::to_string(values[i]);
    }
    return out;
  }

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct CheckResult {
  // Lexicographically first counter-assignment, if any. Variables are
  // ordered by first occurrence (premises before conclusion); the first
  // variable is the most significant.
  std::optional<Assignment> counterexample;
  std::uint64_t assignments = 0;

  bool valid() const noexcept { return !counterexample.has_value(); }
};

namespace detail {

inline std::uint64_t checked_power(std::uint64_t base, std::size_t exp, std::uint64_t budget) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && total > budget / base)
      throw BudgetExceeded("sweep of " + std::to_string(base) + "^" + std::to_string(exp) +
                           " assignments exceeds budget " + std::to_string(budget));
    total *= base;
  }
  if (total > budget)
    throw BudgetExceeded("sweep exceeds budget " + std::to_string(budget));
  return total;
}

// Finds the least index in [0, n^k) whose decoded assignment satisfies
// `bad`, scanning in lexicographic order with the first variable most
// significant.
template <class Bad>
std::optional<std::uint64_t> first_bad(int n, std::size_t k, std::uint64_t total,
                                       const SweepOptions& opts, const Bad& bad) {
  std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};

  auto scan = [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<int> env(k, 0);
    std::uint64_t rest = begin;
    for (std::size_t i = k; i-- > 0;) {
      env[i] = static_cast<int>(rest % n);
      rest /= n;
    }
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      if ((idx & 0xfff) == 0 && best.load(std::memory_order_relaxed) < idx) return;
      if (bad(env.data())) {
        std::uint64_t cur = best.load();
        while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
        }
        return;
      }
      for (std::size_t i = k; i-- > 0;) {
        if (++env[i] < n) break;
        env[i] = 0;
      }
    }
  };

  unsigned threads = std::max(1u, opts.threads);
  if (threads == 1 || total < 4096) {
    scan(0, total);
  } else {
    std::vector<std::thread> pool;
    std::uint64_t chunk = (total + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      std::uint64_t b = t * chunk, e = std::min(total, b + chunk);
      if (b < e) pool.emplace_back(scan, b, e);
    }
    for (auto& th : pool) th.join();
  }
  std::uint64_t found = best.load();
  if (found == std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return found;
}

inline Assignment decode_assignment(const std::vector<std::string>& vars, int n, std::uint64_t idx) {
  Assignment a{vars, std::vector<int>(vars.size(), 0)};
  for (std::size_t i = vars.size(); i-- > 0;) {
    a.values[i] = static_cast<int>(idx % n);
    idx /= n;
  }
  return a;
}

inline void require_signature(const FiniteAlgebra& a, Signature needed) {
  if (!a.signature().includes(needed))
    throw UnsupportedOperation("algebra " + a.name() + " does not support {" +
                               needed.to_string() + "}");
}

}  // namespace detail

inline CheckResult check_quasi(const FiniteAlgebra& a, const QuasiIdentity& q,
                               const SweepOptions& opts = {}) {
  detail::require_signature(a, signature_of(q));
  const std::vector<std::string> vars = variables(q);
  const std::uint64_t total = detail::checked_power(a.size(), vars.size(), opts.budget);

  std::vector<std::pair<CompiledTerm, CompiledTerm>> premises;
  for (const auto& p : q.premises) premises.emplace_back(CompiledTerm(p.lhs, vars), CompiledTerm(p.rhs, vars));
  const CompiledTerm lhs(q.conclusion.lhs, vars), rhs(q.conclusion.rhs, vars);

  auto bad = [&](const int* env) {
    for (const auto& [pl, pr] : premises)
      if (pl.eval(a, env) != pr.eval(a, env)) return false;
    return lhs.eval(a, env) != rhs.eval(a, env);
  };
  CheckResult result;
  auto found = detail::first_bad(a.size(), vars.size(), total, opts, bad);
  result.assignments = found ? *found + 1 : total;
  if (found) result.counterexample = detail::decode_assignment(vars, a.size(), *found);
  return result;
}

inline CheckResult check_identity(const FiniteAlgebra& a, const Identity& e,
                                  const SweepOptions& opts = {}) {
  return check_quasi(a, QuasiIdentity(e), opts);
}

// ---------------------------------------------------------------------------
// Homomorphisms.

namespace detail {

// Backtracking search for maps A -> B preserving every table of A. Elements
// of A are assigned in order 0..n-1 and images are tried in increasing
// order, so solutions arrive in lexicographic order. `distinct` (if set)
// requires h(first) != h(second); `injective` requires a one-to-one map.
class HomSearch {
 public:
  HomSearch(const FiniteAlgebra& a, const FiniteAlgebra& b) : a_(a), b_(b) {
    if (a.signature() != b.signature())
      throw SignatureMismatch("homomorphism search needs equal signatures: {" +
                              a.signature().to_string() + "} vs {" + b.signature().to_string() + "}");
    const int n = a.size();
    checks_.resize(n);
    for (Op op : kAllOps) {
      if (!a.supports(op)) continue;
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          int z = a.apply(op, x, y);
          checks_[std::max({x, y, z})].push_back({op, x, y, z});
        }
    }
  }

  std::optional<std::pair<int, int>> distinct;
  bool injective = false;

  // Calls `visit` with each homomorphism until it returns false.
  void run(const std::function<bool(const std::vector<int>&)>& visit) {
    image_.assign(a_.size(), -1);
    used_.assign(b_.size(), false);
    stop_ = false;
    step(0, visit);
  }

 private:
  struct Check {
    Op op;
    int x, y, z;
  };

  void step(int i, const std::function<bool(const std::vector<int>&)>& visit) {
    if (stop_) return;
    if (i == a_.size()) {
      if (!visit(image_)) stop_ = true;
      return;
    }
    for (int v = 0; v < b_.size() && !stop_; ++v) {
      if (injective && used_[v]) continue;
      image_[i] = v;
      if (consistent(i)) {
        used_[v] = true;
        step(i + 1, visit);
        used_[v] = false;
      }
    }
    image_[i] = -1;
  }

  bool consistent(int i) const {
    for (const Check& c : checks_[i])
      if (b_.apply(c.op, image_[c.x], image_[c.y]) != image_[c.z]) return false;
    if (distinct) {
      auto [p, q] = *distinct;
      if (std::max(p, q) == i && image_[p] == image_[q]) return false;
    }
    return true;
  }

  const FiniteAlgebra& a_;
  const FiniteAlgebra& b_;
  std::vector<std::vector<Check>> checks_;
  std::vector<int> image_;
  std::vector<bool> used_;
  bool stop_ = false;
};

}  // namespace detail

// All homomorphisms A -> B in lexicographic order of their image vectors.
inline std::vector<std::vector<int>> homomorphisms(const FiniteAlgebra& a, const FiniteAlgebra& b,
                                                   std::size_t limit = 1'000'000) {
  std::vector<std::vector<int>> out;
  detail::HomSearch search(a, b);
  search.run([&](const std::vector<int>& h) {
    if (out.size() == limit) throw BudgetExceeded("more than " + std::to_string(limit) + " homomorphisms");
    out.push_back(h);
    return true;
  });
  return out;
}

// A bijective homomorphism, if the algebras are isomorphic.
inline std::optional<std::vector<int>> isomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  if (a.size() != b.size() || a.signature() != b.signature()) return std::nullopt;
  std::optional<std::vector<int>> found;
  detail::HomSearch search(a, b);
  search.injective = true;
  search.run([&](const std::vector<int>& h) {
    found = h;
    return false;
  });
  return found;
}

struct RepResult {
  // First pair a < b (lexicographic) that no homomorphism separates.
  std::optional<std::pair<int, int>> inseparable;
  // Homomorphisms that were found and used as separators.
  std::vector<std::vector<int>> separators;

  bool representable() const noexcept { return !inseparable.has_value(); }
};

// Representable iff every pair of distinct elements is separated by some
// homomorphism into `target`. With target = 3_tau this decides membership in
// Rep(tau); with target = L it decides membership in the quasivariety of L.
inline RepResult rep_check(const FiniteAlgebra& a, const FiniteAlgebra& target) {
  const int n = a.size();
  std::vector<std::vector<bool>> separated(n, std::vector<bool>(n, false));
  RepResult result;
  detail::HomSearch search(a, target);
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      if (separated[x][y]) continue;
      search.distinct = std::make_pair(x, y);
      std::optional<std::vector<int>> hom;
      search.run([&](const std::vector<int>& h) {
        hom = h;
        return false;
      });
      if (!hom) {
        result.inseparable = std::make_pair(x, y);
        return result;
      }
      for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q)
          if ((*hom)[p] != (*hom)[q]) separated[p][q] = true;
      result.separators.push_back(std::move(*hom));
    }
  return result;
}

// ---------------------------------------------------------------------------
// Products and subalgebras.

// Element (c_0, ..., c_{k-1}) of A^k has index sum c_i * n^(k-1-i).
inline std::vector<int> power_decode(int n, int k, int index) {
  std::vector<int> c(k);
  for (int i = k; i-- > 0;) {
    c[i] = index % n;
    index /= n;
  }
  return c;
}

inline int power_encode(int n, const std::vector<int>& coords) {
  int index = 0;
  for (int c : coords) index = index * n + c;
  return index;
}

inline FiniteAlgebra direct_power(const FiniteAlgebra& a, int k, int max_size = 1024) {
  if (k < 1) throw Error("direct_power: exponent must be positive");
  long long size = 1;
  for (int i = 0; i < k; ++i) {
    size *= a.size();
    if (size > max_size)
      throw BudgetExceeded("direct power " + a.name() + "^" + std::to_string(k) + " exceeds " +
                           std::to_string(max_size) + " elements");
  }
  const int m = static_cast<int>(size);
  std::vector<std::vector<int>> coords(m);
  for (int i = 0; i < m; ++i) coords[i] = power_decode(a.size(), k, i);
  std::map<Op, FiniteAlgebra::Table> tables;
  for (Op op : kAllOps) {
    if (!a.supports(op)) continue;
    FiniteAlgebra::Table t(static_cast<std::size_t>(m) * m);
    std::vector<int> c(k);
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y) {
        for (int i = 0; i < k; ++i) c[i] = a.apply(op, coords[x][i], coords[y][i]);
        t[static_cast<std::size_t>(x) * m + y] = power_encode(a.size(), c);
      }
    tables.emplace(op, std::move(t));
  }
  return FiniteAlgebra(m, std::move(tables), a.name() + "^" + std::to_string(k));
}

// Least subset containing `generators` and closed under every operation.
inline std::vector<int> subalgebra_closure(const FiniteAlgebra& a, const std::vector<int>& generators) {
  std::set<int> seen;
  std::vector<int> members;
  for (int g : generators) {
    if (g < 0 || g >= a.size()) throw Error("generator out of range");
    if (seen.insert(g).second) members.push_back(g);
  }
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      for (Op op : kAllOps) {
        if (!a.supports(op)) continue;
        for (int z : {a.apply(op, members[i], members[j]), a.apply(op, members[j], members[i])})
          if (seen.insert(z).second) members.push_back(z);
      }
    }
  }
  return {seen.begin(), seen.end()};
}

// The subalgebra on `elements` (which must be closed), relabelled 0..m-1 in
// increasing order of the original labels.
inline FiniteAlgebra induced_subalgebra(const FiniteAlgebra& a, std::vector<int> elements,
                                        std::string name = {}) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  std::map<int, int> label;
  for (std::size_t i = 0; i < elements.size(); ++i) label[elements[i]] = static_cast<int>(i);
  const int m = static_cast<int>(elements.size());
  std::map<Op, FiniteAlgebra::Table> tables;
  for (Op op : kAllOps) {
    if (!a.supports(op)) continue;
    FiniteAlgebra::Table t(static_cast<std::size_t>(m) * m);
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y) {
        auto it = label.find(a.apply(op, elements[x], elements[y]));
        if (it == label.end()) throw Error("induced_subalgebra: element set is not closed");
        t[static_cast<std::size_t>(x) * m + y] = it->second;
      }
    tables.emplace(op, std::move(t));
  }
  return FiniteAlgebra(m, std::move(tables), name);
}

}  // namespace pfalg
