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

// JSON file formats.
//
//   algebra      {"name": "L", "size": 3, "ops": {"ov": [[0,1,2],[1,1,1],[2,2,2]]}}
//   arrangement  {"dim": 2, "normals": [["1","0"], ["0","1"], ["1","-2/3"]]}
//   choice       {"universe": 2, "map": {"1": 1, "1,2": 2}}
//   model        algebra fields plus "witness": {"x": 0, "y": 1}

#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "pfalg/arr.hpp"
#include "pfalg/choice.hpp"
#include "pfalg/falg.hpp"
#include "pfalg/finder.hpp"

namespace pfalg {

using Json = nlohmann::json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(e.what(), 1, e.byte);
  }
}

namespace detail {
template <class F>
auto json_guard(const char* what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad ") + what + ": " + e.what(), 1, 1);
  }
}
}  // namespace detail

// --- algebras ---------------------------------------------------------------

inline Json to_json(const FiniteAlgebra& a) {
  Json ops = Json::object();
  const int n = a.size();
  for (Op op : kAllOps) {
    if (!a.supports(op)) continue;
    Json rows = Json::array();
    for (int x = 0; x < n; ++x) {
      Json row = Json::array();
      for (int y = 0; y < n; ++y) row.push_back(a.apply(op, x, y));
      rows.push_back(std::move(row));
    }
    ops[std::string(op_name(op))] = std::move(rows);
  }
  Json j = {{"size", n}, {"ops", std::move(ops)}};
  if (!a.name().empty()) j["name"] = a.name();
  return j;
}

inline FiniteAlgebra algebra_from_json(const Json& j) {
  return detail::json_guard("algebra", [&] {
    const int n = j.at("size").get<int>();
    std::map<Op, FiniteAlgebra::Table> tables;
    for (const auto& [key, rows] : j.at("ops").items()) {
      auto op = op_from_name(key);
      if (!op) throw Error("unknown operation '" + key + "'");
      if (!rows.is_array() || rows.size() != static_cast<std::size_t>(n))
        throw Error("table '" + key + "' needs " + std::to_string(n) + " rows");
      FiniteAlgebra::Table t;
      for (const auto& row : rows) {
        if (!row.is_array() || row.size() != static_cast<std::size_t>(n))
          throw Error("table '" + key + "' needs " + std::to_string(n) + " columns");
        for (const auto& v : row) t.push_back(v.get<int>());
      }
      tables.emplace(*op, std::move(t));
    }
    return FiniteAlgebra(n, std::move(tables), j.value("name", std::string{}));
  });
}

// --- arrangements -----------------------------------------------------------

inline Json to_json(const Arrangement& a) {
  Json normals = Json::array();
  for (const auto& n : a.normals()) {
    Json row = Json::array();
    for (const auto& r : n) row.push_back(render_rational(r));
    normals.push_back(std::move(row));
  }
  return {{"dim", a.dim()}, {"normals", std::move(normals)}};
}

inline Arrangement arrangement_from_json(const Json& j) {
  return detail::json_guard("arrangement", [&] {
    std::vector<std::vector<Rational>> normals;
    for (const auto& row : j.at("normals")) {
      std::vector<Rational> n;
      for (const auto& v : row) n.push_back(v.is_string() ? parse_rational(v.get<std::string>()) : Rational(v.get<long long>()));
      normals.push_back(std::move(n));
    }
    return Arrangement(j.at("dim").get<int>(), std::move(normals));
  });
}

// --- choice functions -------------------------------------------------------

inline Json to_json(const ChoiceFunction& g) {
  Json map = Json::object();
  for (Subset a : g.domain()) map[subset_to_string(a)] = g.at(a);
  return {{"universe", g.universe()}, {"map", std::move(map)}};
}

inline ChoiceFunction choice_from_json(const Json& j) {
  return detail::json_guard("choice function", [&] {
    const int k = j.at("universe").get<int>();
    ChoiceFunction g(k);
    for (const auto& [key, v] : j.at("map").items()) g.set(parse_subset(key, k), v.get<int>());
    return g;
  });
}

// --- finder results ---------------------------------------------------------

inline Json to_json(const FinderResult& r) {
  Json j = {{"status", to_string(r.status)}, {"nodes", r.nodes}};
  if (r.model) {
    j["model"] = to_json(*r.model);
    Json w = Json::object();
    for (const auto& [name, v] : r.witness->as_map()) w[name] = v;
    j["model"]["witness"] = std::move(w);
  }
  return j;
}

}  // namespace pfalg
