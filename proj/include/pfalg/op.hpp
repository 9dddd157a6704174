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

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "pfalg/error.hpp"

namespace pfalg {

// The four binary operations on partial functions.
//   Override  f | g   union, left argument wins on the overlap
//   Update    f[g]    f with values replaced by g on dom f ∩ dom g
//   RMult     f @ g   f restricted to dom g
//   Minus     f - g   f restricted off dom g
enum class Op : std::uint8_t { Override = 0, Update = 1, RMult = 2, Minus = 3 };

inline constexpr std::array<Op, 4> kAllOps = {Op::Override, Op::Update, Op::RMult,
                                              Op::Minus};

// Short names used in files and on the command line.
constexpr std::string_view op_name(Op op) noexcept {
  switch (op) {
    case Op::Override: return "ov";
    case Op::Update: return "upd";
    case Op::RMult: return "at";
    case Op::Minus: return "mns";
  }
  return "?";
}

inline std::optional<Op> op_from_name(std::string_view name) noexcept {
  for (Op op : kAllOps)
    if (op_name(op) == name) return op;
  return std::nullopt;
}

constexpr std::size_t op_index(Op op) noexcept { return static_cast<std::size_t>(op); }

// A subset of {ov, upd, at, mns}.
class Signature {
 public:
  constexpr Signature() = default;
  constexpr Signature(std::initializer_list<Op> ops) {
    for (Op op : ops) bits_ |= bit(op);
  }

  static constexpr Signature all() { return Signature{Op::Override, Op::Update, Op::RMult, Op::Minus}; }

  constexpr bool contains(Op op) const noexcept { return (bits_ & bit(op)) != 0; }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr bool includes(Signature other) const noexcept {
    return (other.bits_ & ~bits_) == 0;
  }
  constexpr Signature& insert(Op op) noexcept {
    bits_ |= bit(op);
    return *this;
  }
  constexpr Signature operator|(Signature other) const noexcept {
    Signature s;
    s.bits_ = bits_ | other.bits_;
    return s;
  }
  constexpr std::uint8_t bits() const noexcept { return bits_; }
  constexpr bool operator==(const Signature&) const = default;

  // Comma separated short names in canonical order, e.g. "ov,upd".
  std::string to_string() const {
    std::string out;
    for (Op op : kAllOps) {
      if (!contains(op)) continue;
      if (!out.empty()) out += ',';
      out += op_name(op);
    }
    return out;
  }

  // Accepts "ov,upd", "ov, upd" and the empty string.
  static Signature parse(std::string_view text) {
    Signature sig;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t comma = text.find(',', pos);
      if (comma == std::string_view::npos) comma = text.size();
      std::string_view item = text.substr(pos, comma - pos);
      while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
      while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
      if (!item.empty()) {
        auto op = op_from_name(item);
        if (!op) throw Error("unknown operation '" + std::string(item) + "'");
        sig.insert(*op);
      }
      pos = comma + 1;
    }
    return sig;
  }

 private:
  static constexpr std::uint8_t bit(Op op) noexcept {
    return static_cast<std::uint8_t>(1u << op_index(op));
  }
  std::uint8_t bits_ = 0;
};

}  // namespace pfalg
