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

#include <gtest/gtest.h>

#include <array>
#include <random>
#include <set>

#include "pfalg/pfun.hpp"

namespace pfalg {
namespace {

using PF = PartialFunction<int, int>;

constexpr std::array<int, 4> kPoints = {0, 1, 2, 3};
constexpr std::array<int, 3> kValues = {10, 11, 12};

PF random_pf(std::mt19937_64& rng) {
  return random_partial_function<int, int>(rng, kPoints, kValues);
}

AtomFunction lit(const char* s) { return parse_literal(s); }

TEST(Override, Examples) {
  EXPECT_EQ(override(lit("{a:1}"), lit("{a:2, b:3}")), lit("{a:1, b:3}"));
  EXPECT_EQ(override(lit("{}"), lit("{a:2, b:3}")), lit("{a:2, b:3}"));
  EXPECT_EQ(override(lit("{a:1}"), lit("{a:1}")), lit("{a:1}"));
}

TEST(Update, Examples) {
  EXPECT_EQ(update(lit("{a:1, b:2}"), lit("{a:5, c:7}")), lit("{a:5, b:2}"));
  EXPECT_EQ(update(lit("{}"), lit("{a:5, c:7}")), lit("{}"));
}

TEST(Update, SelfUpdateIsIdentity) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    PF f = random_pf(rng);
    EXPECT_EQ(update(f, f), f);
    // f[f] = (f|f)@f by definition.
    EXPECT_EQ(update(f, f), rmult(override(f, f), f));
  }
}

TEST(RMult, Examples) {
  EXPECT_EQ(rmult(lit("{a:1, b:2}"), lit("{b:9, c:9}")), lit("{b:2}"));
  EXPECT_EQ(rmult(lit("{a:1, b:2}"), lit("{}")), lit("{}"));
}

TEST(RMult, IsMinusOfMinus) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10000; ++i) {
    PF f = random_pf(rng), g = random_pf(rng);
    ASSERT_EQ(rmult(f, g), minus(f, minus(f, g)));
  }
}

TEST(Minus, Examples) {
  EXPECT_EQ(minus(lit("{a:1, b:2}"), lit("{b:9}")), lit("{a:1}"));
  EXPECT_EQ(minus(lit("{a:1, b:2}"), lit("{}")), lit("{a:1, b:2}"));
}

TEST(Minus, ThreeElementTable) {
  // 0 = empty, 1 = {x:+}, 2 = {x:-}
  const AtomFunction e = lit("{}"), p = lit("{x:plus}"), m = lit("{x:minus}");
  EXPECT_EQ(minus(p, p), e);
  EXPECT_EQ(minus(p, e), p);
  EXPECT_EQ(minus(m, p), e);
}

TEST(Intersect, Examples) {
  EXPECT_EQ(intersect(lit("{a:1, b:2}"), lit("{a:1, b:3}")), lit("{a:1}"));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    PF f = random_pf(rng), g = random_pf(rng);
    EXPECT_EQ(intersect(f, f), f);
    EXPECT_EQ(intersect(f, g), intersect(g, f));
  }
}

std::set<int> dom(const PF& f) {
  auto d = f.domain();
  return {d.begin(), d.end()};
}

TEST(Operations, DomainLaws) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 5000; ++i) {
    PF f = random_pf(rng), g = random_pf(rng);
    std::set<int> df = dom(f), dg = dom(g), both, either, only_f;
    for (int x : kPoints) {
      if (df.count(x) && dg.count(x)) both.insert(x);
      if (df.count(x) || dg.count(x)) either.insert(x);
      if (df.count(x) && !dg.count(x)) only_f.insert(x);
    }
    ASSERT_EQ(dom(override(f, g)), either);
    ASSERT_EQ(dom(update(f, g)), df);
    ASSERT_EQ(dom(rmult(f, g)), both);
    ASSERT_EQ(dom(minus(f, g)), only_f);
  }
}

TEST(Operations, UpdateIsRestrictedOverride) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 10000; ++i) {
    PF f = random_pf(rng), g = random_pf(rng);
    ASSERT_EQ(update(f, g), rmult(override(g, f), f));
  }
}

TEST(Override, LeftRegularBand) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 5000; ++i) {
    PF x = random_pf(rng), y = random_pf(rng), z = random_pf(rng);
    ASSERT_EQ(override(x, x), x);
    ASSERT_EQ(override(x, override(y, z)), override(override(x, y), z));
    ASSERT_EQ(override(override(x, y), x), override(x, y));
  }
}

TEST(QuotientRange, Examples) {
  PF f{{0, 1}, {1, 2}};
  EXPECT_EQ(quotient_range(f, {{1, 2}}), (PF{{0, 1}, {1, 1}}));
  EXPECT_EQ(quotient_range(f, {{1}, {2}}), f);
  EXPECT_THROW(quotient_range(f, {{1}}), Error);
  EXPECT_THROW(quotient_range(f, {{1, 2}, {2}}), Error);
}

TEST(QuotientRange, IsHomomorphism) {
  std::mt19937_64 rng(19);
  const std::vector<std::vector<int>> classes = {{10, 12}, {11}};
  for (int i = 0; i < 3000; ++i) {
    PF f = random_pf(rng), g = random_pf(rng);
    for (Op op : kAllOps)
      ASSERT_EQ(quotient_range(apply(op, f, g), classes),
                apply(op, quotient_range(f, classes), quotient_range(g, classes)));
  }
}

TEST(RestrictDomain, Examples) {
  PF f{{0, 1}, {1, 2}};
  EXPECT_EQ(restrict_domain(f, {0}), (PF{{0, 1}}));
  EXPECT_EQ(restrict_domain(f, {}), PF{});
}

TEST(RestrictDomain, IsHomomorphism) {
  std::mt19937_64 rng(23);
  const std::set<int> keep = {1, 3};
  for (int i = 0; i < 3000; ++i) {
    PF f = random_pf(rng), g = random_pf(rng);
    for (Op op : kAllOps)
      ASSERT_EQ(restrict_domain(apply(op, f, g), keep),
                apply(op, restrict_domain(f, keep), restrict_domain(g, keep)));
  }
}

TEST(Phi1, UpdateSatisfiesFormula) {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 10000; ++i) {
    PF f = random_pf(rng), g = random_pf(rng);
    ASSERT_TRUE(phi1_holds(update(f, g), f, g));
  }
}

TEST(Phi1, Examples) {
  // g overlaps f and disagrees there, so h = f is not f[g].
  PF f{{0, 10}, {1, 11}}, g{{0, 12}};
  EXPECT_FALSE(phi1_holds(f, f, g));
  EXPECT_TRUE(phi1_holds(PF{}, PF{}, PF{}));
}

TEST(Enumeration, CountsAllPartialFunctions) {
  const std::array<int, 3> pts = {0, 1, 2};
  const std::array<int, 2> vals = {0, 1};
  auto all = all_partial_functions<int, int>(pts, vals);
  EXPECT_EQ(all.size(), 27u);
  std::set<PF> distinct(all.begin(), all.end());
  EXPECT_EQ(distinct.size(), 27u);
}

TEST(Literal, ParseAndRender) {
  AtomFunction f = parse_literal("  { b : 2 ,a:1 }");
  EXPECT_EQ(render_literal(f), "{a:1, b:2}");
  EXPECT_TRUE(parse_literal("{}").empty());
  EXPECT_EQ(parse_literal(render_literal(f)), f);
}

TEST(Literal, Errors) {
  EXPECT_THROW(parse_literal("{a:1, a:2}"), ParseError);
  EXPECT_THROW(parse_literal("{a 1}"), ParseError);
  EXPECT_THROW(parse_literal("{a:1"), ParseError);
  EXPECT_THROW(parse_literal("{a:1} x"), ParseError);
}

}  // namespace
}  // namespace pfalg
