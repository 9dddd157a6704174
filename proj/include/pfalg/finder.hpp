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

// Finite model search: fill in operation tables of a fixed size so that the
// axioms hold and the goal fails.
//
// Cells are assigned by backtracking. After every assignment each ground
// instance of each axiom is re-evaluated on the partial tables: an instance
// whose two sides are known and differ is a conflict, and an instance where
// one side is known and the other is stuck only on its outermost cell forces
// that cell. Values are limited to one more than the largest element
// mentioned so far, which prunes isomorphic copies. Complete tables are
// re-verified with the plain exhaustive checker before being returned.

#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "pfalg/error.hpp"
#include "pfalg/falg.hpp"
#include "pfalg/term.hpp"

namespace pfalg {

enum class FinderStatus { Model, Exhausted, BudgetExceeded };

inline const char* to_string(FinderStatus s) {
  switch (s) {
    case FinderStatus::Model: return "model";
    case FinderStatus::Exhausted: return "exhausted";
    case FinderStatus::BudgetExceeded: return "budget exceeded";
  }
  return "?";
}

struct FinderOptions {
  std::uint64_t max_nodes = 10'000'000;
  std::chrono::milliseconds time_limit{0};  // 0 means no limit
  // Values of the first open cell are explored in parallel when > 1. The
  // model returned is the one the single-threaded search would find.
  unsigned threads = 1;
};

struct FinderResult {
  FinderStatus status = FinderStatus::Exhausted;
  std::optional<FiniteAlgebra> model;
  std::optional<Assignment> witness;  // violates the goal in `model`
  std::uint64_t nodes = 0;
};

namespace detail {

class ModelSearch {
 public:
  ModelSearch(const std::vector<QuasiIdentity>& axioms, const QuasiIdentity& goal, int n)
      : n_(n), goal_(goal) {
    if (n < 1) throw Error("find_model: size must be at least 1");
    for (const auto& a : axioms) sig_ = sig_ | signature_of(a);
    sig_ = sig_ | signature_of(goal);
    if (sig_.empty()) sig_.insert(Op::Override);
    for (Op op : kAllOps)
      if (sig_.contains(op)) ops_.push_back(op);

    for (const auto& a : axioms) {
      Axiom ax;
      ax.vars = variables(a);
      for (const auto& p : a.premises) ax.premises.push_back({compile(p.lhs, ax.vars), compile(p.rhs, ax.vars)});
      ax.lhs = compile(a.conclusion.lhs, ax.vars);
      ax.rhs = compile(a.conclusion.rhs, ax.vars);
      axioms_.push_back(std::move(ax));
      source_.push_back(a);
    }

    // Cell order: diagonals of idempotent operations first, then (row, col).
    std::vector<bool> placed(ops_.size() * n * n, false);
    for (std::size_t k = 0; k < ops_.size(); ++k)
      if (idempotent(ops_[k], axioms))
        for (int i = 0; i < n; ++i) {
          order_.push_back(cell(k, i, i));
          placed[cell(k, i, i)] = true;
        }
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        for (std::size_t k = 0; k < ops_.size(); ++k)
          if (!placed[cell(k, r, c)]) order_.push_back(cell(k, r, c));
  }

  FinderResult run(const FinderOptions& opts) {
    opts_ = opts;
    start_ = std::chrono::steady_clock::now();
    std::vector<int> cells(ops_.size() * n_ * n_, -1);
    FinderResult result;
    if (!propagate(cells)) {
      result.nodes = nodes_;
      return result;
    }
    std::size_t first = next_open(cells);
    if (opts.threads <= 1 || first == order_.size()) {
      dfs(cells, 0);
    } else {
      // Branch v fixes the first open cell to v. A branch gives up once a
      // model turns up in a lower branch.
      const int limit = value_limit(cells, order_[first]);
      std::atomic<int> next{0};
      auto worker = [&] {
        for (int v; !stop_ && (v = next++) <= limit;) {
          std::vector<int> copy = cells;
          copy[order_[first]] = v;
          if (count_node() && propagate(copy)) dfs(copy, v);
        }
      };
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < opts.threads; ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }
    result.nodes = nodes_;
    if (best_branch_ != kNone) {
      result.status = FinderStatus::Model;
      result.model = std::move(model_);
      result.witness = std::move(witness_);
    } else if (out_of_budget_) {
      result.status = FinderStatus::BudgetExceeded;
    }
    return result;
  }

 private:
  // Compiled term: a variable, or an operation over two compiled subterms.
  struct Code {
    int var = -1;
    Op op = Op::Override;
    std::vector<Code> kids;
  };

  struct Axiom {
    std::vector<std::string> vars;
    std::vector<std::pair<Code, Code>> premises;
    Code lhs, rhs;
  };

  // Value of a subterm under partial tables; on an unknown outermost cell,
  // `stuck` receives its index.
  struct Value {
    int v = -1;
    int stuck = -1;
  };

  Code compile(const Term& t, const std::vector<std::string>& vars) const {
    Code c;
    if (t.is_var()) {
      c.var = static_cast<int>(std::find(vars.begin(), vars.end(), t.name()) - vars.begin());
      return c;
    }
    c.op = t.op();
    c.kids.push_back(compile(t.left(), vars));
    c.kids.push_back(compile(t.right(), vars));
    return c;
  }

  static bool idempotent(Op op, const std::vector<QuasiIdentity>& axioms) {
    auto is_sq = [op](const Term& a, const Term& b) {
      return b.is_var() && !a.is_var() && a.op() == op && a.left() == b && a.right() == b;
    };
    for (const auto& q : axioms)
      if (q.premises.empty() && (is_sq(q.conclusion.lhs, q.conclusion.rhs) || is_sq(q.conclusion.rhs, q.conclusion.lhs)))
        return true;
    return false;
  }

  std::size_t op_slot(Op op) const {
    return static_cast<std::size_t>(std::find(ops_.begin(), ops_.end(), op) - ops_.begin());
  }
  int cell(std::size_t k, int r, int c) const { return static_cast<int>((k * n_ + r) * n_ + c); }

  Value eval(const Code& c, const std::vector<int>& cells, const int* env) const {
    if (c.var >= 0) return {env[c.var], -1};
    Value a = eval(c.kids[0], cells, env);
    if (a.v < 0) return {};
    Value b = eval(c.kids[1], cells, env);
    if (b.v < 0) return {};
    int idx = cell(op_slot(c.op), a.v, b.v);
    return {cells[idx], cells[idx] < 0 ? idx : -1};
  }

  // Unit propagation to a fixpoint; false on conflict.
  bool propagate(std::vector<int>& cells) const {
    std::vector<int> env;
    for (bool changed = true; changed;) {
      changed = false;
      for (const Axiom& ax : axioms_) {
        const std::size_t k = ax.vars.size();
        env.assign(k, 0);
        while (true) {
          bool applies = true;
          for (const auto& [pl, pr] : ax.premises) {
            Value a = eval(pl, cells, env.data()), b = eval(pr, cells, env.data());
            if (a.v < 0 || b.v < 0 || a.v != b.v) {
              applies = false;
              break;
            }
          }
          if (applies) {
            Value a = eval(ax.lhs, cells, env.data()), b = eval(ax.rhs, cells, env.data());
            if (a.v >= 0 && b.v >= 0) {
              if (a.v != b.v) return false;
            } else if (a.v >= 0 && b.stuck >= 0) {
              cells[b.stuck] = a.v;
              changed = true;
            } else if (b.v >= 0 && a.stuck >= 0) {
              cells[a.stuck] = b.v;
              changed = true;
            }
          }
          std::size_t i = k;
          while (i > 0 && ++env[i - 1] == n_) env[--i] = 0;
          if (i == 0) break;
        }
      }
    }
    return true;
  }

  std::size_t next_open(const std::vector<int>& cells) const {
    std::size_t i = 0;
    while (i < order_.size() && cells[order_[i]] >= 0) ++i;
    return i;
  }

  // Least-number heuristic: elements above the largest one mentioned so far
  // (by a set cell or by the cell being filled) are interchangeable.
  int value_limit(const std::vector<int>& cells, int idx) const {
    const int nn = n_ * n_;
    int mx = std::max((idx % nn) / n_, idx % n_);
    for (int i = 0; i < static_cast<int>(cells.size()); ++i)
      if (cells[i] >= 0) mx = std::max({mx, cells[i], (i % nn) / n_, i % n_});
    return std::min(n_ - 1, mx + 1);
  }

  bool count_node() {
    std::uint64_t k = ++nodes_;
    if (k > opts_.max_nodes) {
      out_of_budget_ = true;
      stop_ = true;
      return false;
    }
    if (opts_.time_limit.count() > 0 && k % 1024 == 0 &&
        std::chrono::steady_clock::now() - start_ > opts_.time_limit) {
      out_of_budget_ = true;
      stop_ = true;
      return false;
    }
    return true;
  }

  bool halted(int branch) const { return stop_ || best_branch_ <= branch; }

  void dfs(const std::vector<int>& cells, int branch) {
    if (halted(branch)) return;
    std::size_t i = next_open(cells);
    if (i == order_.size()) {
      leaf(cells, branch);
      return;
    }
    const int idx = order_[i];
    const int limit = value_limit(cells, idx);
    for (int v = 0; v <= limit && !halted(branch); ++v) {
      std::vector<int> copy = cells;
      copy[idx] = v;
      if (!count_node()) return;
      if (propagate(copy)) dfs(copy, branch);
    }
  }

  FiniteAlgebra build(const std::vector<int>& cells) const {
    std::map<Op, FiniteAlgebra::Table> tables;
    const std::size_t nn = static_cast<std::size_t>(n_) * n_;
    for (std::size_t k = 0; k < ops_.size(); ++k)
      tables.emplace(ops_[k], FiniteAlgebra::Table(cells.begin() + k * nn, cells.begin() + (k + 1) * nn));
    return FiniteAlgebra(n_, std::move(tables), "model" + std::to_string(n_));
  }

  void leaf(const std::vector<int>& cells, int branch) {
    FiniteAlgebra a = build(cells);
    CheckResult g = check_quasi(a, goal_);
    if (g.valid()) return;
    // Independent re-verification of the axioms.
    for (const auto& ax : source_)
      if (!check_quasi(a, ax).valid()) throw Error("find_model: internal error, model violates " + render(ax));
    std::lock_guard<std::mutex> lock(mu_);
    if (best_branch_ <= branch) return;
    best_branch_ = branch;
    model_ = std::move(a);
    witness_ = std::move(g.counterexample);
  }

  int n_;
  QuasiIdentity goal_;
  Signature sig_;
  std::vector<Op> ops_;
  std::vector<Axiom> axioms_;
  std::vector<QuasiIdentity> source_;
  std::vector<int> order_;

  FinderOptions opts_;
  std::chrono::steady_clock::time_point start_;
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<bool> stop_{false};
  std::atomic<bool> out_of_budget_{false};
  static constexpr int kNone = std::numeric_limits<int>::max();
  std::atomic<int> best_branch_{kNone};
  std::mutex mu_;
  std::optional<FiniteAlgebra> model_;
  std::optional<Assignment> witness_;
};

}  // namespace detail

// Searches for an algebra of the given size in which every axiom holds and
// the goal fails. Exhausted means no such algebra of that size exists.
inline FinderResult find_model(const std::vector<QuasiIdentity>& axioms, const QuasiIdentity& goal, int size,
                               const FinderOptions& opts = {}) {
  return detail::ModelSearch(axioms, goal, size).run(opts);
}

inline FinderResult find_model(const std::vector<Identity>& axioms, const QuasiIdentity& goal, int size,
                               const FinderOptions& opts = {}) {
  std::vector<QuasiIdentity> qs(axioms.begin(), axioms.end());
  return find_model(qs, goal, size, opts);
}

}  // namespace pfalg
