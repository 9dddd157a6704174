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

// The `pfalg` command line. Exit status: 0 affirmative result, 1 negative
// result (counterexample, inseparable pair, failed proof, no model), 2 usage
// or input error.

#pragma once

#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pfalg/arr.hpp"
#include "pfalg/choice.hpp"
#include "pfalg/falg.hpp"
#include "pfalg/finder.hpp"
#include "pfalg/io.hpp"
#include "pfalg/laws.hpp"
#include "pfalg/pfun.hpp"
#include "pfalg/proofchk.hpp"
#include "pfalg/term.hpp"

namespace pfalg::cli {

inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;
inline constexpr int kUsage = 2;

struct Globals {
  bool json = false;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

namespace detail {

// Emits a report: JSON when requested, otherwise the text lines.
struct Report {
  const Globals& g;
  std::ostream& out;
  Json j;
  std::string text;

  Report(const Globals& globals, std::ostream& o, const std::string& command)
      : g(globals), out(o), j{{"command", command}, {"seed", globals.seed}} {}

  void line(const std::string& s) { text += s + "\n"; }
  void flush() {
    if (g.json) out << j.dump(2) << "\n";
    else out << text;
  }
};

inline FiniteAlgebra load_model(const std::string& spec) {
  if (spec == "three") return builtin_three();
  if (spec.rfind("three:", 0) == 0) return builtin_three(Signature::parse(spec.substr(6)));
  if (spec == "L") return builtin_L();
  return algebra_from_json(parse_json(read_file(spec)));
}

inline std::string ascii_table(const FiniteAlgebra& a, Op op) {
  const int n = a.size();
  const int w = static_cast<int>(std::to_string(n - 1).size());
  std::ostringstream s;
  s << op_name(op) << std::string(w + 1 > 3 ? w + 1 - 3 : 0, ' ') << " |";
  for (int y = 0; y < n; ++y) s << ' ' << std::setw(w) << y;
  s << "\n" << std::string(std::max(w + 1, 3), '-') << "-+" << std::string(static_cast<std::size_t>(n) * (w + 1), '-')
    << "\n";
  for (int x = 0; x < n; ++x) {
    s << std::setw(std::max(w + 1, 3)) << x << " |";
    for (int y = 0; y < n; ++y) s << ' ' << std::setw(w) << a.apply(op, x, y);
    s << "\n";
  }
  return s.str();
}

inline Json assignment_json(const Assignment& a) {
  Json j = Json::object();
  for (std::size_t i = 0; i < a.variables.size(); ++i) j[a.variables[i]] = a.values[i];
  return j;
}

inline std::pair<std::string, std::string> split_binding(const std::string& b) {
  auto eq = b.find('=');
  if (eq == std::string::npos || eq == 0) throw Error("binding '" + b + "' must look like name=value");
  return {b.substr(0, eq), b.substr(eq + 1)};
}

inline int parse_element(const std::string& text, int size) {
  std::size_t used = 0;
  int v = -1;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || v < 0 || v >= size)
    throw Error("'" + text + "' is not an element of a " + std::to_string(size) + "-element algebra");
  return v;
}

// --- subcommands --------------------------------------------------------------

inline int cmd_check(const Globals& g, std::ostream& out, const std::string& sig_text, const std::string& law) {
  Report r(g, out, "check");
  const Signature sig = Signature::parse(sig_text);
  const QuasiIdentity q = parse_quasi(law);
  if (!sig.includes(signature_of(q)))
    throw SignatureMismatch("law uses {" + signature_of(q).to_string() + "}, outside {" + sig.to_string() + "}");
  SweepOptions opts;
  opts.threads = g.threads;
  CheckResult c = check_quasi(builtin_three(sig), q, opts);
  r.j["law"] = render(q);
  r.j["signature"] = sig.to_string();
  r.j["assignments"] = c.assignments;
  if (c.valid()) {
    r.j["result"] = "valid";
    r.line("valid");
  } else {
    r.j["result"] = "counterexample";
    r.j["assignment"] = assignment_json(*c.counterexample);
    r.line("counterexample " + c.counterexample->to_string());
  }
  r.flush();
  return c.valid() ? kOk : kNegative;
}

inline int cmd_eval(const Globals& g, std::ostream& out, const std::string& model, const std::vector<std::string>& env,
                    const std::string& term_text) {
  Report r(g, out, "eval");
  const Term t = parse_term(term_text);
  r.j["term"] = render(t);
  bool literal = model == "pf";
  for (const auto& b : env)
    if (split_binding(b).second.find('{') != std::string::npos) literal = true;
  if (literal) {
    std::map<std::string, AtomFunction> e;
    for (const auto& b : env) {
      auto [name, value] = split_binding(b);
      e[name] = parse_literal(value);
    }
    AtomFunction v = evaluate(t, PartialFunctionModel<Atom, Atom>{}, e);
    r.j["model"] = "pf";
    r.j["value"] = render_literal(v);
    r.line(render_literal(v));
  } else {
    FiniteAlgebra a = load_model(model);
    std::map<std::string, int> e;
    for (const auto& b : env) {
      auto [name, value] = split_binding(b);
      e[name] = parse_element(value, a.size());
    }
    int v = evaluate(t, a, e);
    r.j["model"] = a.name();
    r.j["value"] = v;
    r.line(std::to_string(v));
  }
  r.flush();
  return kOk;
}

inline int cmd_synth(const Globals& g, std::ostream& out, const std::string& file, int pivot, bool simplify) {
  Report r(g, out, "synth");
  const ChoiceFunction gamma = choice_from_json(parse_json(read_file(file)));
  Term t = synthesize_update_term(gamma, pivot);
  if (simplify) t = simplify_update_term(t);
  const int k = gamma.universe();
  const ChoiceFunction value = evaluate_at_generators(t, k);
  for (Subset a = 1; a <= top_subset(k); ++a)
    if (contains(a, pivot) && value.at(a) != gamma.at(a))
      throw Error("internal error: synthesized term disagrees with the choice function");
  r.j["term"] = render(t);
  r.j["leaves"] = leaf_count(t);
  r.j["pivot"] = pivot;
  r.line(render(t));
  r.line("leaves " + std::to_string(leaf_count(t)));
  r.flush();
  return kOk;
}

inline int cmd_free(const Globals& g, std::ostream& out, int k, const std::string& sig_text, bool count_only,
                    std::size_t max_elements) {
  Report r(g, out, "free");
  const Signature sig = Signature::parse(sig_text);
  r.j["k"] = k;
  r.j["signature"] = sig.to_string();
  if (count_only && sig == Signature{Op::Update}) {
    // Closed form, checked against the closure for small k in the test suite.
    const std::string n = update_free_size(k).str();
    // Beyond 64 bits the JSON value is a decimal string.
    r.j["size"] = n.size() < 19 ? Json::parse(n) : Json(n);
    r.line(n);
    r.flush();
    return kOk;
  }
  ClosureOptions opts;
  opts.max_elements = max_elements;
  const auto elems = free_closure(k, sig, opts);
  r.j["size"] = elems.size();
  if (!count_only) {
    Json list = Json::array();
    for (const auto& e : elems) {
      list.push_back(to_json(e));
      r.line(to_string(e));
    }
    r.j["elements"] = std::move(list);
    r.line("size " + std::to_string(elems.size()));
  } else {
    r.line(std::to_string(elems.size()));
  }
  r.flush();
  return kOk;
}

inline int cmd_faces(const Globals& g, std::ostream& out, const std::string& file, bool table, bool check_L) {
  Report r(g, out, "faces");
  const Arrangement arr = arrangement_from_json(parse_json(read_file(file)));
  const auto faces = enumerate_faces(arr);
  Json list = Json::array();
  for (std::size_t i = 0; i < faces.size(); ++i) {
    list.push_back(faces[i].to_string());
    r.line(std::to_string(i) + " " + faces[i].to_string());
  }
  r.j["faces"] = std::move(list);
  r.j["count"] = faces.size();
  r.line("faces " + std::to_string(faces.size()));
  int code = kOk;
  if (table || check_L) {
    const FiniteAlgebra a = face_semigroup(faces);
    if (table) {
      r.j["algebra"] = to_json(a);
      r.text += ascii_table(a, Op::Override);
    }
    if (check_L) {
      RepResult rep = rep_check(a, builtin_L());
      r.j["representable"] = rep.representable();
      if (rep.representable()) {
        r.line("representable over L");
      } else {
        r.j["inseparable"] = {rep.inseparable->first, rep.inseparable->second};
        r.line("inseparable " + std::to_string(rep.inseparable->first) + " " +
               std::to_string(rep.inseparable->second));
        code = kNegative;
      }
    }
  }
  r.flush();
  return code;
}

inline int cmd_prove(const Globals& g, std::ostream& out, const std::string& file, const std::string& laws_file) {
  Report r(g, out, "prove");
  const LawLibrary lib = laws_file.empty() ? standard_library() : LawLibrary::parse(read_file(laws_file));
  const ProofResult res = check_proof(read_file(file), lib);
  Json proved = Json::array();
  for (const auto& [name, q] : res.proved) proved.push_back({{"block", name.empty() ? "main" : name}, {"statement", render(q)}});
  r.j["proved"] = std::move(proved);
  r.j["ok"] = res.ok();
  if (res.ok()) {
    for (const auto& [name, q] : res.proved) r.line("proved " + (name.empty() ? "main" : name) + ": " + render(q));
    r.line("ok");
  } else {
    const ProofFailure& f = *res.failure;
    const std::string block = f.block.empty() ? "main" : f.block;
    r.j["failure"] = {{"block", block}, {"step", f.step}, {"line", f.line}, {"reason", f.reason}};
    r.line("fail " + block + " step " + std::to_string(f.step) + " (line " + std::to_string(f.line) + "): " +
           f.reason);
  }
  r.flush();
  return res.ok() ? kOk : kNegative;
}

inline int cmd_findmodel(const Globals& g, std::ostream& out, const std::string& axioms_file,
                         const std::vector<std::string>& ids, const std::string& goal_text, int size,
                         std::uint64_t budget, int time_limit_ms) {
  Report r(g, out, "findmodel");
  const LawLibrary lib = LawLibrary::parse(read_file(axioms_file));
  std::vector<QuasiIdentity> axioms;
  if (ids.empty()) {
    for (const auto& [id, q] : lib.entries()) axioms.push_back(q);
  } else {
    for (const auto& id : ids) axioms.push_back(lib.get(id));
  }
  // The goal is a law, or the id of one in the axiom file or the standard library.
  QuasiIdentity goal = goal_text.find('=') != std::string::npos ? parse_quasi(goal_text)
                       : lib.contains(goal_text)                ? lib.get(goal_text)
                                                                : standard_library().get(goal_text);
  FinderOptions opts;
  opts.max_nodes = budget;
  opts.time_limit = std::chrono::milliseconds(time_limit_ms);
  opts.threads = g.threads;
  const FinderResult res = find_model(axioms, goal, size, opts);
  r.j.update(to_json(res));
  r.j["goal"] = render(goal);
  r.j["size"] = size;
  r.line(to_string(res.status));
  if (res.model) {
    for (Op op : kAllOps)
      if (res.model->supports(op)) r.text += ascii_table(*res.model, op);
    r.line("witness " + res.witness->to_string());
  }
  r.flush();
  return res.status == FinderStatus::Model ? kOk : kNegative;
}

inline int cmd_repcheck(const Globals& g, std::ostream& out, const std::string& file, const std::string& target) {
  Report r(g, out, "repcheck");
  const FiniteAlgebra a = algebra_from_json(parse_json(read_file(file)));
  FiniteAlgebra t = target == "three" ? builtin_three(a.signature()) : load_model(target);
  if (t.signature() != a.signature())
    throw SignatureMismatch("algebra has {" + a.signature().to_string() + "} but target has {" +
                            t.signature().to_string() + "}");
  const RepResult rep = rep_check(a, t);
  r.j["target"] = t.name();
  r.j["representable"] = rep.representable();
  Json seps = Json::array();
  for (const auto& h : rep.separators) seps.push_back(h);
  r.j["separators"] = std::move(seps);
  if (rep.representable()) {
    r.line("representable (" + std::to_string(rep.separators.size()) + " separating homomorphisms into " + t.name() +
           ")");
  } else {
    r.j["inseparable"] = {rep.inseparable->first, rep.inseparable->second};
    r.line("inseparable " + std::to_string(rep.inseparable->first) + " " + std::to_string(rep.inseparable->second));
  }
  r.flush();
  return rep.representable() ? kOk : kNegative;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Algebras of partial functions: law checking, synthesis, faces, proofs, models", "pfalg"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "Print a JSON report");
  app.add_option("--seed", g.seed, "Random seed, echoed in every report")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads")->capture_default_str()->check(CLI::Range(1u, 256u));

  std::function<int()> action;

  std::string sig = "ov,upd", law;
  auto* check = app.add_subcommand("check", "Decide a law for all partial functions via the algebra 3");
  check->add_option("--sig", sig, "Signature, e.g. ov,upd")->capture_default_str();
  check->add_option("law", law, "Identity or quasi-identity")->required();
  check->callback([&] { action = [&] { return detail::cmd_check(g, out, sig, law); }; });

  std::string model = "three", term;
  std::vector<std::string> env;
  auto* eval = app.add_subcommand("eval", "Evaluate a term");
  eval->add_option("--model", model, "three, three:<sig>, L, pf or an algebra JSON file")->capture_default_str();
  eval->add_option("--env", env, "Binding name=value; value is an element or a literal like {a:1}")
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  eval->add_option("term", term, "Term")->required();
  eval->callback([&] { action = [&] { return detail::cmd_eval(g, out, model, env, term); }; });

  std::string cf_file;
  int pivot = 1;
  bool simplify = false;
  auto* synth = app.add_subcommand("synth", "Build an update term for a choice function");
  synth->add_option("--cf", cf_file, "Choice function JSON file")->required();
  synth->add_option("--pivot", pivot, "Generator p; the function must be total on sets containing p")
      ->capture_default_str();
  synth->add_flag("--simplify", simplify, "Shrink the term");
  synth->callback([&] { action = [&] { return detail::cmd_synth(g, out, cf_file, pivot, simplify); }; });

  int k = 3;
  std::string free_sig = "upd";
  bool count_only = false;
  std::size_t max_elements = 1'000'000;
  auto* free = app.add_subcommand("free", "Enumerate the free algebra on k generators");
  free->add_option("--k", k, "Number of generators")->capture_default_str();
  free->add_option("--sig", free_sig, "Signature")->capture_default_str();
  free->add_flag("--count-only", count_only, "Print only the size");
  free->add_option("--max-elements", max_elements, "Closure size limit")->capture_default_str();
  free->callback([&] { action = [&] { return detail::cmd_free(g, out, k, free_sig, count_only, max_elements); }; });

  std::string arr_file;
  bool table = false, check_L = false;
  auto* faces = app.add_subcommand("faces", "Faces of a central hyperplane arrangement");
  faces->add_option("--arr", arr_file, "Arrangement JSON file")->required();
  faces->add_flag("--table", table, "Print the face product table");
  faces->add_flag("--check-L", check_L, "Test membership in the quasivariety of L");
  faces->callback([&] { action = [&] { return detail::cmd_faces(g, out, arr_file, table, check_L); }; });

  std::string script, prove_laws;
  auto* prove = app.add_subcommand("prove", "Check a derivation script");
  prove->add_option("script", script, "Script file")->required();
  prove->add_option("--laws", prove_laws, "Law file (default: the built-in library)");
  prove->callback([&] { action = [&] { return detail::cmd_prove(g, out, script, prove_laws); }; });

  std::string axioms_file, goal;
  std::vector<std::string> ids;
  int size = 2, time_limit_ms = 0;
  std::uint64_t budget = 10'000'000;
  auto* findmodel = app.add_subcommand("findmodel", "Search for a finite model of axioms violating a goal");
  findmodel->add_option("--axioms", axioms_file, "Law file")->required();
  findmodel->add_option("--ids", ids, "Use only these laws from the file")->delimiter(',');
  findmodel->add_option("--goal", goal, "Law to refute, or a law id")->required();
  findmodel->add_option("--size", size, "Algebra size")->capture_default_str();
  findmodel->add_option("--budget", budget, "Search node limit")->capture_default_str();
  findmodel->add_option("--time-limit", time_limit_ms, "Milliseconds, 0 for none")->capture_default_str();
  findmodel->callback([&] {
    action = [&] { return detail::cmd_findmodel(g, out, axioms_file, ids, goal, size, budget, time_limit_ms); };
  });

  std::string alg_file, target = "three";
  auto* repcheck = app.add_subcommand("repcheck", "Test representability by separating homomorphisms");
  repcheck->add_option("--alg", alg_file, "Algebra JSON file")->required();
  repcheck->add_option("--target", target, "three, three:<sig> or L")->capture_default_str();
  repcheck->callback([&] { action = [&] { return detail::cmd_repcheck(g, out, alg_file, target); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsage;
  }
  try {
    return action();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace pfalg::cli
