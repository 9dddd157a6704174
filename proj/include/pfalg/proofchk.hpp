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

// Checker for equational derivation scripts.
//
// A script is a list of lines:
//
//   hyp h1: x | y = x
//   lemma c1: x[y] = x
//   start: x[y]
//   step: x ; law=jump dir=L2R pos=root sub={x: x, y: y, z: z}
//   end
//   goal: x = y
//   start: x
//   step: ... ; law=c1 dir=R2L pos=L
//
// Hypotheses are fixed identities about the variables they mention: they may
// be cited in either direction but never instantiated. A `lemma` block proves
// its statement and makes it citable; it is fixed like a hypothesis when its
// proof relies on one, and instantiable otherwise. The lines after the last
// block form the main derivation. Every step cites one law, a direction, a
// position and an explicit substitution; nothing is inferred.

#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pfalg/error.hpp"
#include "pfalg/laws.hpp"
#include "pfalg/term.hpp"

namespace pfalg {

struct Justification {
  std::string law;
  bool reverse = false;  // R2L
  Path pos;
  Substitution sub;
};

struct ProofStep {
  Term term;
  std::optional<Justification> just;  // absent on the start line
  std::size_t line = 0;
};

struct ProofBlock {
  std::string name;  // empty for the main derivation
  std::optional<Identity> goal;
  std::vector<ProofStep> steps;
  std::size_t line = 0;
};

struct ProofScript {
  std::vector<std::pair<std::string, Identity>> hypotheses;
  std::vector<ProofBlock> blocks;
};

struct ProofFailure {
  std::string block;  // lemma id, or empty for the main derivation
  std::size_t step = 0;  // 0 is the start line
  std::size_t line = 0;
  std::string reason;
};

struct ProofResult {
  std::optional<ProofFailure> failure;
  // What each block established, as hypotheses -> (first = last term).
  std::vector<std::pair<std::string, QuasiIdentity>> proved;

  bool ok() const noexcept { return !failure.has_value(); }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline bool starts_with_word(std::string_view line, std::string_view word) {
  return line.substr(0, word.size()) == word &&
         (line.size() == word.size() || line[word.size()] == ' ' || line[word.size()] == ':');
}

inline Substitution parse_substitution(std::string_view text, std::size_t line_no) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '{' || text.back() != '}')
    throw ParseError("substitution must be written {x: term, ...}", line_no, 1);
  text = trim(text.substr(1, text.size() - 2));
  Substitution sub;
  std::size_t pos = 0;
  while (!text.empty() && pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = trim(text.substr(pos, comma - pos));
    auto colon = item.find(':');
    if (colon == std::string_view::npos) throw ParseError("substitution entry needs ':'", line_no, 1);
    std::string name(trim(item.substr(0, colon)));
    if (name.empty()) throw ParseError("empty variable in substitution", line_no, 1);
    Term t = parse_term(item.substr(colon + 1));
    if (!sub.emplace(name, t).second) throw ParseError("variable '" + name + "' bound twice", line_no, 1);
    pos = comma + 1;
  }
  return sub;
}

inline Justification parse_justification(std::string_view text, std::size_t line_no) {
  Justification j;
  bool have_law = false;
  std::size_t i = 0;
  while (true) {
    while (i < text.size() && text[i] == ' ') ++i;
    if (i >= text.size()) break;
    std::size_t eq = text.find('=', i);
    if (eq == std::string_view::npos) throw ParseError("expected key=value", line_no, i + 1);
    std::string_view key = text.substr(i, eq - i);
    std::size_t vstart = eq + 1, vend;
    if (key == "sub") {
      vend = text.find('}', vstart);
      if (vend == std::string_view::npos) throw ParseError("unterminated substitution", line_no, vstart + 1);
      ++vend;
    } else {
      vend = text.find(' ', vstart);
      if (vend == std::string_view::npos) vend = text.size();
    }
    std::string_view value = text.substr(vstart, vend - vstart);
    if (key == "law") {
      j.law = std::string(value);
      have_law = !j.law.empty();
    } else if (key == "dir") {
      if (value == "L2R") j.reverse = false;
      else if (value == "R2L") j.reverse = true;
      else throw ParseError("dir must be L2R or R2L", line_no, vstart + 1);
    } else if (key == "pos") {
      try {
        j.pos = parse_path(value);
      } catch (const InvalidPath& e) {
        throw ParseError(e.what(), line_no, vstart + 1);
      }
    } else if (key == "sub") {
      j.sub = parse_substitution(value, line_no);
    } else {
      throw ParseError("unknown key '" + std::string(key) + "'", line_no, i + 1);
    }
    i = vend;
  }
  if (!have_law) throw ParseError("step must cite law=<id>", line_no, 1);
  return j;
}

}  // namespace detail

inline ProofScript parse_proof_script(std::string_view text) {
  using detail::starts_with_word;
  using detail::trim;
  ProofScript script;
  ProofBlock current;
  bool in_lemma = false;
  std::size_t line_no = 0, pos = 0;

  auto wrap = [&](auto&& fn, std::string_view body, std::size_t offset) {
    try {
      return fn(body);
    } catch (const ParseError& e) {
      throw ParseError(e.message(), line_no, offset + e.column());
    }
  };

  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view raw = text.substr(pos, eol - pos);
    ++line_no;
    pos = eol + 1;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string_view line = trim(raw);
    if (line.empty()) continue;
    const std::size_t indent = static_cast<std::size_t>(line.data() - raw.data());

    auto after_colon = [&](std::string_view l) {
      auto c = l.find(':');
      if (c == std::string_view::npos) throw ParseError("expected ':'", line_no, indent + 1);
      return c + 1;
    };

    if (starts_with_word(line, "hyp")) {
      if (!script.blocks.empty() || in_lemma || !current.steps.empty())
        throw ParseError("hypotheses must come first", line_no, indent + 1);
      std::size_t c = after_colon(line);
      std::string id(trim(line.substr(3, c - 4)));
      if (id.empty()) throw ParseError("hypothesis needs an id", line_no, indent + 1);
      Identity e = wrap([](std::string_view b) { return parse_identity(b); }, line.substr(c), indent + c);
      script.hypotheses.emplace_back(id, e);
    } else if (starts_with_word(line, "lemma")) {
      if (in_lemma) throw ParseError("lemma blocks cannot nest", line_no, indent + 1);
      if (!current.steps.empty()) throw ParseError("lemma must precede the main derivation", line_no, indent + 1);
      std::size_t c = after_colon(line);
      current = ProofBlock{};
      current.name = std::string(trim(line.substr(5, c - 6)));
      if (current.name.empty()) throw ParseError("lemma needs an id", line_no, indent + 1);
      current.goal = wrap([](std::string_view b) { return parse_identity(b); }, line.substr(c), indent + c);
      current.line = line_no;
      in_lemma = true;
    } else if (line == "end") {
      if (!in_lemma) throw ParseError("'end' outside a lemma", line_no, indent + 1);
      if (current.steps.empty()) throw ParseError("empty lemma", line_no, indent + 1);
      script.blocks.push_back(std::move(current));
      current = ProofBlock{};
      in_lemma = false;
    } else if (starts_with_word(line, "goal")) {
      if (in_lemma || !current.steps.empty() || current.goal)
        throw ParseError("unexpected goal", line_no, indent + 1);
      std::size_t c = after_colon(line);
      current.goal = wrap([](std::string_view b) { return parse_identity(b); }, line.substr(c), indent + c);
      current.line = line_no;
    } else if (starts_with_word(line, "start")) {
      if (!current.steps.empty()) throw ParseError("second start line", line_no, indent + 1);
      std::size_t c = after_colon(line);
      Term t = wrap([](std::string_view b) { return parse_term(b); }, line.substr(c), indent + c);
      if (!current.line) current.line = line_no;
      current.steps.push_back({t, std::nullopt, line_no});
    } else if (starts_with_word(line, "step")) {
      if (current.steps.empty()) throw ParseError("step before start", line_no, indent + 1);
      std::size_t c = after_colon(line);
      std::string_view rest = line.substr(c);
      auto semi = rest.find(';');
      if (semi == std::string_view::npos) throw ParseError("step needs '; law=...'", line_no, indent + c + 1);
      Term t = wrap([](std::string_view b) { return parse_term(b); }, rest.substr(0, semi), indent + c);
      Justification j = detail::parse_justification(rest.substr(semi + 1), line_no);
      current.steps.push_back({t, std::move(j), line_no});
    } else {
      throw ParseError("unrecognized line", line_no, indent + 1);
    }
  }
  if (in_lemma) throw ParseError("lemma '" + current.name + "' is missing 'end'", current.line, 1);
  if (!current.steps.empty()) script.blocks.push_back(std::move(current));
  else if (current.goal) throw ParseError("goal without derivation", line_no, 1);
  if (script.blocks.empty()) throw ParseError("script has no derivation", line_no, 1);
  return script;
}

inline ProofResult check_proof(const ProofScript& script, const LawLibrary& lib = standard_library()) {
  struct Fact {
    Identity e;
    bool fixed;
  };
  std::map<std::string, Fact> facts;
  std::vector<Identity> hyps;
  for (const auto& [id, e] : script.hypotheses) {
    if (lib.contains(id) || !facts.emplace(id, Fact{e, true}).second)
      return {ProofFailure{"", 0, 0, "hypothesis id '" + id + "' is already in use"}, {}};
    hyps.push_back(e);
  }

  auto known = [&](const Identity& p) {
    if (p.lhs == p.rhs) return std::optional<bool>(false);
    for (const auto& [id, f] : facts)
      if ((f.e.lhs == p.lhs && f.e.rhs == p.rhs) || (f.e.lhs == p.rhs && f.e.rhs == p.lhs))
        return std::optional<bool>(f.fixed);
    return std::optional<bool>();
  };

  ProofResult result;
  for (const ProofBlock& block : script.blocks) {
    auto fail = [&](std::size_t step, std::size_t line, std::string reason) {
      result.failure = ProofFailure{block.name, step, line, std::move(reason)};
      return result;
    };
    bool uses_fixed = false;
    for (std::size_t k = 1; k < block.steps.size(); ++k) {
      const ProofStep& step = block.steps[k];
      const Justification& j = *step.just;
      const Term& prev = block.steps[k - 1].term;

      QuasiIdentity law(Identity{prev, prev});
      bool fixed = false;
      if (auto it = facts.find(j.law); it != facts.end()) {
        law = QuasiIdentity(it->second.e);
        fixed = it->second.fixed;
      } else if (lib.contains(j.law)) {
        law = lib.get(j.law);
      } else {
        return fail(k, step.line, "unknown law '" + j.law + "'");
      }

      const auto vars = variables(law);
      const std::set<std::string> var_set(vars.begin(), vars.end());
      for (const auto& [v, t] : j.sub) {
        if (!var_set.count(v)) return fail(k, step.line, "law '" + j.law + "' has no variable '" + v + "'");
        if (fixed && !(t.is_var() && t.name() == v))
          return fail(k, step.line, "'" + j.law + "' is a fixed hypothesis and cannot be instantiated");
      }
      uses_fixed |= fixed;

      const Term lhs = substitute(law.conclusion.lhs, j.sub);
      const Term rhs = substitute(law.conclusion.rhs, j.sub);
      const Term& from = j.reverse ? rhs : lhs;
      const Term& to = j.reverse ? lhs : rhs;

      Term found = prev;
      try {
        found = subterm_at(prev, j.pos);
      } catch (const InvalidPath&) {
        return fail(k, step.line, "position " + render_path(j.pos) + " does not exist in " + render(prev));
      }
      if (!(found == from))
        return fail(k, step.line,
                    "at " + render_path(j.pos) + " expected " + render(from) + " but found " + render(found));
      const Term expected = replace_at(prev, j.pos, to);
      if (!(expected == step.term))
        return fail(k, step.line, "rewrite gives " + render(expected) + " but step states " + render(step.term));

      for (const auto& p : law.premises) {
        Identity inst = substitute(p, j.sub);
        auto status = known(inst);
        if (!status)
          return fail(k, step.line, "premise " + render(inst) + " of '" + j.law + "' is not a hypothesis or lemma");
        uses_fixed |= *status;
      }
    }

    const Term& first = block.steps.front().term;
    const Term& last = block.steps.back().term;
    if (block.goal) {
      if (!(first == block.goal->lhs))
        return fail(0, block.steps.front().line,
                    "derivation starts at " + render(first) + " but the goal starts at " + render(block.goal->lhs));
      if (!(last == block.goal->rhs))
        return fail(block.steps.size() - 1, block.steps.back().line,
                    "derivation ends at " + render(last) + " but the goal ends at " + render(block.goal->rhs));
    }
    Identity proved{first, last};
    result.proved.emplace_back(block.name, QuasiIdentity(hyps, proved));
    if (!block.name.empty()) {
      if (lib.contains(block.name) || !facts.emplace(block.name, Fact{proved, uses_fixed}).second)
        return fail(0, block.line, "lemma id '" + block.name + "' is already in use");
    }
  }
  return result;
}

inline ProofResult check_proof(std::string_view text, const LawLibrary& lib = standard_library()) {
  return check_proof(parse_proof_script(text), lib);
}

}  // namespace pfalg
