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

#include "cli.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace pfalg {
namespace {

const std::string kData = PFALG_DATA_DIR;

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "pfalg");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args, int expected_code = 0) {
  args.insert(args.begin(), "--json");
  Outcome r = run(args);
  EXPECT_EQ(r.code, expected_code) << r.err;
  return parse_json(r.out);
}

TEST(Cli, CheckValid) {
  Outcome r = run({"check", "--sig", "ov,upd", "x[y[x[z]]] = x[y[x][z]]"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "valid\n");
}

TEST(Cli, CheckCounterexample) {
  Outcome r = run({"check", "--sig", "ov", "x|y = y|x"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "counterexample x=1 y=2\n");
}

TEST(Cli, CheckQuasiAndJson) {
  Json j = run_json({"check", "--sig", "ov", "x | y = x -> x = y"}, 1);
  EXPECT_EQ(j["result"], "counterexample");
  EXPECT_EQ(j["seed"], 1);
  EXPECT_TRUE(j["assignment"].contains("x"));
  EXPECT_EQ(run({"check", "--sig", "upd", "x|y = y|x"}).code, 2);
}

TEST(Cli, ThreadsDoNotChangeResults) {
  for (const char* law : {"x|y = y|x", "x[y][z] = x[z][y[z]]", "x | y | x = x | y"}) {
    Outcome a = run({"check", "--sig", "ov,upd", law});
    Outcome b = run({"--threads", "4", "check", "--sig", "ov,upd", law});
    EXPECT_EQ(a.out, b.out) << law;
    EXPECT_EQ(a.code, b.code) << law;
  }
  const std::string axioms = kData + "/band_axioms.txt";
  Outcome a = run({"findmodel", "--axioms", axioms, "--goal", "x | y = y | x", "--size", "3"});
  Outcome b = run({"findmodel", "--axioms", axioms, "--goal", "x | y = y | x", "--size", "3", "--threads", "3"});
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, Eval) {
  EXPECT_EQ(run({"eval", "--model", "three", "--env", "x=1", "--env", "y=2", "x[y]"}).out, "2\n");
  EXPECT_EQ(run({"eval", "--model", "L", "--env", "x=0", "--env", "y=2", "x | y"}).out, "2\n");
  EXPECT_EQ(run({"eval", "--env", "x={a:1, b:2}", "--env", "y={b:3, c:4}", "x | y"}).out, "{a:1, b:2, c:4}\n");
  EXPECT_EQ(run({"eval", "--env", "x={a:1, b:2}", "--env", "y={b:3, c:4}", "x[y]"}).out, "{a:1, b:3}\n");
  EXPECT_EQ(run({"eval", "--env", "x={a:1, b:2}", "--env", "y={b:3, c:4}", "x - y"}).out, "{a:1}\n");
  EXPECT_EQ(run({"eval", "--model", kData + "/algebras/left_zero.json", "--env", "x=0", "--env", "y=1", "y | x"}).out,
            "1\n");
  EXPECT_EQ(run({"eval", "--env", "x=3", "x"}).code, 2);
  EXPECT_EQ(run({"eval", "--env", "x=1", "x | y"}).code, 2);
}

TEST(Cli, Synth) {
  Outcome r = run({"synth", "--cf", kData + "/choice/figure.json", "--pivot", "1"});
  EXPECT_EQ(r.code, 0) << r.err;
  ChoiceFunction g = choice_from_json(parse_json(read_file(kData + "/choice/figure.json")));
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), render(synthesize_update_term(g, 1)));
  Json j = run_json({"synth", "--cf", kData + "/choice/figure.json", "--pivot", "1", "--simplify"});
  EXPECT_EQ(j["term"], "x1[x2[x3]][x4[x2[x3[x1]]]]");
  EXPECT_EQ(j["leaves"], 7);
  // Not total on the sets containing 2.
  EXPECT_EQ(run({"synth", "--cf", kData + "/choice/figure.json", "--pivot", "2"}).code, 2);
}

TEST(Cli, Free) {
  EXPECT_EQ(run({"free", "--k", "2", "--sig", "upd", "--count-only"}).out, "4\n");
  EXPECT_EQ(run({"free", "--k", "3", "--sig", "upd", "--count-only"}).out, "36\n");
  EXPECT_EQ(run({"free", "--k", "2", "--sig", "ov,upd", "--count-only"}).out,
            std::to_string(free_closure(2, Signature{Op::Override, Op::Update}).size()) + "\n");
  Json j = run_json({"free", "--k", "2", "--sig", "upd"});
  ASSERT_EQ(j["size"], 4);
  std::vector<ChoiceFunction> back;
  for (const auto& e : j["elements"]) back.push_back(choice_from_json(e));
  EXPECT_EQ(back, free_closure(2, Signature{Op::Update}));
  EXPECT_EQ(run({"free", "--k", "3", "--sig", "ov,upd,at,mns", "--max-elements", "10"}).code, 2);
}

TEST(Cli, Faces) {
  Outcome r = run({"faces", "--arr", kData + "/arrangements/three_lines.json", "--check-L"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("faces 13\n"), std::string::npos);
  EXPECT_NE(r.out.find("representable over L"), std::string::npos);
  Json j = run_json({"faces", "--arr", kData + "/arrangements/coordinate_planes.json", "--table"});
  EXPECT_EQ(j["count"], 27);
  FiniteAlgebra a = algebra_from_json(j["algebra"]);
  std::vector<SignVector> faces;
  for (const auto& f : j["faces"]) faces.push_back(SignVector::parse(f.get<std::string>()));
  EXPECT_EQ(a, face_semigroup(faces));
}

TEST(Cli, Prove) {
  Outcome ok = run({"prove", kData + "/proofs/lambda1.prf"});
  EXPECT_EQ(ok.code, 0) << ok.out;
  EXPECT_NE(ok.out.find("\nok\n"), std::string::npos);
  Outcome bad = run({"prove", kData + "/proofs/negative/wrong_law.prf"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.out.rfind("fail main step 2", 0), 0u) << bad.out;
  Json j = run_json({"prove", kData + "/proofs/negative/lemma_wrong_hypothesis.prf"}, 1);
  EXPECT_EQ(j["failure"]["block"], "agree");
  EXPECT_EQ(j["failure"]["step"], 3);
  EXPECT_EQ(run({"prove", kData + "/proofs/missing.prf"}).code, 2);
}

TEST(Cli, FindModel) {
  const std::string axioms = kData + "/band_axioms.txt";
  Outcome r = run({"findmodel", "--axioms", axioms, "--goal", "x | y = y | x", "--size", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("witness x=0 y=1"), std::string::npos);
  Json j = run_json({"findmodel", "--axioms", axioms, "--goal", "x | y = y | x", "--size", "2"});
  FiniteAlgebra m = algebra_from_json(j["model"]);
  EXPECT_EQ(m.table(Op::Override), (FiniteAlgebra::Table{0, 0, 1, 1}));
  EXPECT_EQ(j["model"]["witness"]["x"], 0);
  EXPECT_EQ(run({"findmodel", "--axioms", axioms, "--goal", "idem", "--size", "3"}).code, 1);
  Outcome budget = run({"findmodel", "--axioms", axioms, "--goal", "idem", "--size", "4", "--budget", "2"});
  EXPECT_EQ(budget.code, 1);
  EXPECT_EQ(budget.out, "budget exceeded\n");
  Outcome ids = run({"findmodel", "--axioms", kData + "/laws.txt", "--ids", "idem,assoc", "--goal", "lrb", "--size", "3"});
  EXPECT_EQ(ids.code, 0) << ids.err;
}

TEST(Cli, RepCheck) {
  EXPECT_EQ(run({"repcheck", "--alg", kData + "/algebras/left_zero.json", "--target", "L"}).code, 0);
  Outcome r = run({"repcheck", "--alg", kData + "/algebras/right_zero.json", "--target", "L"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "inseparable 0 1\n");
  EXPECT_EQ(run({"repcheck", "--alg", kData + "/algebras/three_ov_upd.json", "--target", "three:ov,upd"}).code, 0);
  EXPECT_EQ(run({"repcheck", "--alg", kData + "/algebras/three_ov_upd.json", "--target", "L"}).code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"check"}).code, 2);
  EXPECT_EQ(run({"check", "x |"}).code, 2);
  EXPECT_EQ(run({"--threads", "0", "check", "x = x"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, SeedIsReported) {
  Json j = run_json({"--seed", "42", "check", "x | x = x"});
  EXPECT_EQ(j["seed"], 42);
  EXPECT_EQ(j["command"], "check");
}

}  // namespace
}  // namespace pfalg
