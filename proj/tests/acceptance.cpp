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

// Acceptance run: one PASS or FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <array>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pfalg/arr.hpp"
#include "pfalg/choice.hpp"
#include "pfalg/falg.hpp"
#include "pfalg/finder.hpp"
#include "pfalg/io.hpp"
#include "pfalg/laws.hpp"
#include "pfalg/pfun.hpp"
#include "pfalg/proofchk.hpp"

namespace {

using namespace pfalg;
using PF = PartialFunction<int, int>;

const std::string kData = PFALG_DATA_DIR;

// Collects failure notes for one criterion.
struct Criterion {
  std::vector<std::string> notes;
  void require(bool ok, const std::string& what) {
    if (!ok) notes.push_back(what);
  }
};

bool holds_on_functions(const QuasiIdentity& q, const std::map<std::string, PF>& env) {
  PartialFunctionModel<int, int> model;
  for (const auto& p : q.premises)
    if (evaluate(p.lhs, model, env) != evaluate(p.rhs, model, env)) return true;
  return evaluate(q.conclusion.lhs, model, env) == evaluate(q.conclusion.rhs, model, env);
}

void soundness(Criterion& c) {
  const FiniteAlgebra three = builtin_three();
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> size_x(1, 4), size_y(1, 3);
  for (const auto& [id, law] : standard_library().entries()) {
    CheckResult r = check_quasi(three, law);
    c.require(r.valid(), id + " fails in 3 at " + (r.valid() ? "" : r.counterexample->to_string()));
    const auto vars = variables(law);
    int violations = 0;
    for (int trial = 0; trial < 10'000; ++trial) {
      std::vector<int> xs(size_x(rng)), ys(size_y(rng));
      std::iota(xs.begin(), xs.end(), 0);
      std::iota(ys.begin(), ys.end(), 0);
      std::map<std::string, PF> env;
      for (const auto& v : vars)
        env[v] = random_partial_function(rng, std::span<const int>(xs), std::span<const int>(ys));
      if (!holds_on_functions(law, env)) ++violations;
    }
    c.require(violations == 0, id + " violated by " + std::to_string(violations) + " random assignments");
  }
}

void lambda_eta(Criterion& c) {
  const FiniteAlgebra three_ov = builtin_three(Signature{Op::Override});
  for (int n = 1; n <= 4; ++n)
    c.require(check_quasi(three_ov, lambda_n(n)).valid(), "lambda_" + std::to_string(n) + " not valid");
  CheckResult lit = check_quasi(three_ov, lambda_n(1, FenceBound::Literal2nMinus1));
  c.require(!lit.valid() && lit.counterexample->to_string() == "x=1 y=2 z1=1 z2=1 z3=0",
            "literal lambda_1 counter-assignment is " + (lit.valid() ? std::string("none") : lit.counterexample->to_string()));
  const FiniteAlgebra three_upd = builtin_three(Signature{Op::Update});
  for (int n = 2; n <= 3; ++n) {
    c.require(check_quasi(three_upd, eta_n(n)).valid(), "eta_" + std::to_string(n) + " not valid");
    c.require(check_quasi(three_upd, eta_prime_n(n)).valid(), "eta'_" + std::to_string(n) + " not valid");
  }
}

void interdefinability(Criterion& c) {
  // 3 points with 2 values (27 functions), then 3 points with 6 values (343).
  const std::array<int, 3> xs{0, 1, 2};
  const std::array<int, 6> ys{0, 1, 2, 3, 4, 5};
  for (std::size_t nv : {2u, 6u}) {
    const auto all = all_partial_functions(std::span<const int>(xs), std::span<const int>(ys.data(), nv));
    std::size_t bad = 0;
    for (const auto& f : all)
      for (const auto& g : all) {
        if (rmult(f, g) != minus(f, minus(f, g))) ++bad;
        if (update(f, g) != rmult(override(g, f), f)) ++bad;
      }
    c.require(all.size() == (nv == 2 ? 27u : 343u), "unexpected function count");
    c.require(bad == 0, std::to_string(bad) + " pairs break an interdefinition");
  }
  // 3 on one point: 0 empty, 1 and 2 the two total functions.
  const std::array<int, 1> pt{0};
  const std::array<int, 2> vals{1, 2};
  auto fs = all_partial_functions(std::span<const int>(pt), std::span<const int>(vals));
  auto index = [&](const PF& f) { return static_cast<int>(std::find(fs.begin(), fs.end(), f) - fs.begin()); };
  const FiniteAlgebra three = builtin_three();
  for (Op op : kAllOps)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        c.require(three.apply(op, a, b) == index(apply(op, fs[a], fs[b])),
                  std::string(op_name(op)) + " table entry differs from composition");
}

void phi1(Criterion& c) {
  // 2 points (9 functions), then 4 points (81 functions), 2 values each.
  const std::array<int, 4> xs{0, 1, 2, 3};
  const std::array<int, 2> ys{0, 1};
  for (std::size_t np : {2u, 4u}) {
    const auto all = all_partial_functions(std::span<const int>(xs.data(), np), std::span<const int>(ys));
    std::size_t bad = 0;
    for (const auto& h : all)
      for (const auto& f : all)
        for (const auto& g : all)
          if (phi1_holds(h, f, g) != (h == update(f, g))) ++bad;
    c.require(all.size() == (np == 2 ? 9u : 81u), "unexpected function count");
    c.require(bad == 0, std::to_string(bad) + " triples disagree");
  }
}

ChoiceFunction gamma_from_printed() {
  ChoiceFunction g(4);
  const std::pair<const char*, int> entries[] = {{"1,2,3,4", 1}, {"1,2,3", 3}, {"1,3,4", 4}, {"1,2,4", 2},
                                                 {"1,2", 2},     {"1,3", 1},   {"1,4", 4},   {"1", 1}};
  for (const auto& [s, v] : entries) g.set(parse_subset(s, 4), v);
  return g;
}

void synthesis(Criterion& c) {
  const ChoiceFunction printed = gamma_from_printed();
  const ChoiceFunction file = choice_from_json(parse_json(read_file(kData + "/choice/figure.json")));
  c.require(file == printed, "choice fixture differs from the printed values");
  const Term synth = synthesize_update_term(printed, 1);
  c.require(evaluate_at_generators(synth, 4) == printed, "synthesized term has the wrong value");
  for (const char* name : {"figure_long.term", "figure_simplified.term"}) {
    std::string text = read_file(kData + "/synthesis/" + name);
    c.require(evaluate_at_generators(parse_term(text), 4) == printed, std::string(name) + " has the wrong value");
  }
  std::size_t checked = 0;
  for (int p = 1; p <= 3; ++p)
    for (const auto& g : all_choice_functions(3, domain_family(generator_cf(p, 3)))) {
      ++checked;
      c.require(evaluate_at_generators(synthesize_update_term(g, p), 3) == g, "synthesis wrong for " + to_string(g));
    }
  c.require(checked == 3 * 12, "expected 12 choice functions per generator domain at k=3, got " +
                                   std::to_string(checked));
}

void corollary_count(Criterion& c) {
  const long long printed[] = {1, 4, 72};
  for (int k = 1; k <= 3; ++k) {
    const auto size = free_closure(k, Signature{Op::Update}).size();
    c.require(static_cast<long long>(size) == printed[k - 1],
              "k=" + std::to_string(k) + ": closure has " + std::to_string(size) + " elements, formula gives " +
                  std::to_string(printed[k - 1]));
    c.require(count_update_free(k) == printed[k - 1], "formula value for k=" + std::to_string(k));
  }
  c.require(count_update_free(4) == 82944, "formula value for k=4 is " + count_update_free(4).str());
}

void characterizations(Criterion& c) {
  const Signature sigs[] = {Signature{Op::Update}, Signature{Op::RMult, Op::Update},
                            Signature{Op::Override, Op::Update}, Signature{Op::Override, Op::RMult, Op::Update}};
  for (Signature sig : sigs)
    for (int k = 1; k <= 3; ++k) {
      DomainCrossCheck r = cross_check_domains(sig, k);
      c.require(r.domains_match && r.complete && r.closure_size == r.predicted_size,
                "{" + sig.to_string() + "} k=" + std::to_string(k) + ": closure " + std::to_string(r.closure_size) +
                    " vs predicted " + std::to_string(r.predicted_size));
    }
}

Arrangement load_arr(const std::string& name) {
  return arrangement_from_json(parse_json(read_file(kData + "/arrangements/" + name)));
}

void hyperplanes(Criterion& c) {
  const auto lines = enumerate_faces(load_arr("three_lines.json"));
  const auto planes = enumerate_faces(load_arr("coordinate_planes.json"));
  c.require(lines.size() == 13, "three lines give " + std::to_string(lines.size()) + " faces");
  c.require(planes.size() == 27, "coordinate planes give " + std::to_string(planes.size()) + " faces");

  std::vector<std::vector<SignVector>> all = {lines, planes, enumerate_faces(load_arr("one_line.json"))};
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<std::vector<Rational>> normals;
    while (normals.size() < 3) {
      std::vector<Rational> n = {coef(rng), coef(rng), coef(rng)};
      if (n[0] != 0 || n[1] != 0 || n[2] != 0) normals.push_back(n);
    }
    all.push_back(enumerate_faces(Arrangement(3, normals)));
  }
  for (const auto& faces : all) {
    for (const auto& s : faces)
      for (const auto& t : faces)
        c.require(chi(face_product(s, t)) == override(chi(s), chi(t)), "chi fails on " + s.to_string() + "," +
                                                                           t.to_string());
    c.require(rep_check(face_semigroup(faces), builtin_L()).representable(),
              "face algebra with " + std::to_string(faces.size()) + " faces is not representable over L");
  }
  c.require(isomorphism(face_semigroup(all[2]), builtin_L()).has_value(), "one-line algebra is not isomorphic to L");
}

void representability(Criterion& c) {
  for (std::uint8_t bits = 1; bits < 16; ++bits) {
    Signature sig;
    for (Op op : kAllOps)
      if (bits & (1u << op_index(op))) sig.insert(op);
    c.require(rep_check(builtin_three(sig), builtin_three(sig)).representable(),
              "3{" + sig.to_string() + "} not representable");
  }
  auto load = [](const std::string& f) { return algebra_from_json(parse_json(read_file(kData + "/algebras/" + f))); };
  c.require(rep_check(load("left_zero.json"), builtin_L()).representable(), "left zero band not representable over L");
  RepResult rz = rep_check(load("right_zero.json"), builtin_L());
  c.require(!rz.representable(), "right zero semigroup separated over L");
}

void proofs(Criterion& c) {
  namespace fs = std::filesystem;
  std::size_t positive = 0, negative = 0;
  for (const auto& e : fs::directory_iterator(kData + "/proofs")) {
    if (e.path().extension() != ".prf") continue;
    ++positive;
    ProofResult r = check_proof(read_file(e.path().string()));
    c.require(r.ok(), e.path().filename().string() + ": " + (r.ok() ? "" : r.failure->reason));
  }
  for (const auto& e : fs::directory_iterator(kData + "/proofs/negative")) {
    if (e.path().extension() != ".prf") continue;
    ++negative;
    const std::string text = read_file(e.path().string());
    std::istringstream first(text.substr(0, text.find('\n')));
    std::string hash, tag, block;
    std::size_t step = 0;
    first >> hash >> tag >> block >> step;
    ProofResult r = check_proof(text);
    const std::string got = r.ok() ? "ok" : (r.failure->block.empty() ? "main" : r.failure->block) + " " +
                                                std::to_string(r.failure->step);
    c.require(got == block + " " + std::to_string(step), e.path().filename().string() + " failed at " + got);
  }
  c.require(positive >= 12, "only " + std::to_string(positive) + " positive scripts");
  c.require(negative >= 5, "only " + std::to_string(negative) + " negative scripts");
}

bool brute_force_exists(const std::vector<QuasiIdentity>& axioms, const QuasiIdentity& goal, int n) {
  std::uint64_t total = 1;
  for (int i = 0; i < n * n; ++i) total *= n;
  FiniteAlgebra::Table t(n * n);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t rest = idx;
    for (auto& v : t) {
      v = static_cast<int>(rest % n);
      rest /= n;
    }
    FiniteAlgebra a(n, {{Op::Override, t}});
    bool ok = true;
    for (const auto& ax : axioms) ok = ok && check_quasi(a, ax).valid();
    if (ok && !check_quasi(a, goal).valid()) return true;
  }
  return false;
}

Term random_term(std::mt19937& rng, int depth) {
  static const char* names[] = {"x", "y", "z"};
  if (depth == 0 || rng() % 3 == 0) return var(names[rng() % 3]);
  return ov(random_term(rng, depth - 1), random_term(rng, depth - 1));
}

void model_finder(Criterion& c) {
  const auto& lib = standard_library();
  std::vector<QuasiIdentity> band = {lib.get("idem"), lib.get("assoc"), lib.get("lrb")};
  FinderResult r = find_model(band, parse_quasi("x | y = y | x"), 2);
  c.require(r.status == FinderStatus::Model, "no model for commutativity");
  if (r.model) {
    c.require(r.model->table(Op::Override) == FiniteAlgebra::Table{0, 0, 1, 1}, "model is not the left-zero band");
    c.require(r.witness->to_string() == "x=0 y=1", "witness is " + r.witness->to_string());
    for (const auto& ax : band) c.require(check_quasi(*r.model, ax).valid(), "model violates " + render(ax));
  }
  c.require(find_model(band, parse_quasi("x | x = x"), 3).status == FinderStatus::Exhausted,
            "goal equal to an axiom not exhausted");
  std::mt19937 rng(11);
  for (int system = 0; system < 20; ++system) {
    std::vector<QuasiIdentity> axioms = {Identity{random_term(rng, 2), random_term(rng, 2)},
                                         Identity{random_term(rng, 2), random_term(rng, 2)}};
    QuasiIdentity goal = Identity{random_term(rng, 2), random_term(rng, 2)};
    for (int n = 1; n <= 3; ++n) {
      FinderResult f = find_model(axioms, goal, n);
      c.require(f.status != FinderStatus::BudgetExceeded, "budget exceeded");
      c.require((f.status == FinderStatus::Model) == brute_force_exists(axioms, goal, n),
                "system " + std::to_string(system) + " size " + std::to_string(n) + " disagrees with enumeration");
    }
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Criterion&)>>> criteria = {
      {"law soundness", soundness},
      {"lambda and eta schemas", lambda_eta},
      {"interdefinability", interdefinability},
      {"update characterized by override", phi1},
      {"update term synthesis", synthesis},
      {"free update algebra count", corollary_count},
      {"free algebra domains", characterizations},
      {"hyperplane faces", hyperplanes},
      {"representability", representability},
      {"proof scripts", proofs},
      {"model finder", model_finder},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Criterion c;
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.notes.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = c.notes.empty();
    failed += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first;
    if (!ok) {
      std::cout << ":";
      for (std::size_t k = 0; k < c.notes.size() && k < 4; ++k) std::cout << (k ? ";" : "") << " " << c.notes[k];
      if (c.notes.size() > 4) std::cout << "; (" << c.notes.size() - 4 << " more)";
    }
    std::cout << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass" << std::endl;
  return failed ? 1 : 0;
}
