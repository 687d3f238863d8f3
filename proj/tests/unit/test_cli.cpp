#include <sstream>

#include "doctest.h"
#include "logiclab/cli.hpp"
#include "logiclab/turing.hpp"

using namespace logiclab::cli;

namespace {

const std::string kDir = LOGICLAB_CORPUS_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string at(const std::string& file) { return kDir + "/" + file; }

std::string code_of(const logiclab::tm::Machine& m) {
  return logiclab::to_string(logiclab::tm::encode_machine(m));
}

// One invocation per library operation reachable from the workbench.
const std::vector<std::pair<std::string, std::vector<std::string>>>& manifest() {
  static const std::vector<std::pair<std::string, std::vector<std::string>>> m{
      {"prop.parse", {"prop", "parse", "A & B -> C"}},
      {"prop.evaluate", {"prop", "eval", "A -> B", "A=T", "B=F"}},
      {"prop.truth_table", {"prop", "table", "A <-> B"}},
      {"prop.classify", {"prop", "classify", "A | ~A"}},
      {"prop.equivalent", {"prop", "equiv", "A -> B", "~A | B"}},
      {"prop.to_dnf", {"prop", "dnf", "A <-> B"}},
      {"prop.is_adequate", {"prop", "adequate", "nand"}},
      {"prop.enumerate_truth_functions", {"prop", "functions", "2", "--adequate"}},
      {"sat.solve", {"sat", "solve", at("triangle.txt")}},
      {"sat.solve.exhaustive", {"sat", "solve", "--mode", "exhaustive", at("split.txt")}},
      {"sat.encode", {"sat", "encode", at("transversal.txt")}},
      {"sat.decode_witness", {"sat", "decode", at("order2.txt"), at("order2.wit")}},
      {"fol.parse_formula", {"fol", "parse", "--sig", "rel:R/2", "forall x. R(x,x)"}},
      {"fol.satisfies", {"fol", "check", at("cyc3a.txt"), "exists x. R(x,x)"}},
      {"fol.models_theory", {"fol", "models", at("path3.txt"), "@" + at("order_axioms.txt")}},
      {"fol.reduct", {"fol", "reduct", at("group2.txt"), "--sig", "fun:f/2"}},
      {"fol.find_isomorphism", {"fol", "iso", at("cyc3a.txt"), at("cyc3b.txt")}},
      {"fol.substitute", {"fol", "subst", "--sig", "rel:R/2", "exists y. R(x,y)", "x", "y"}},
      {"fol.find_model", {"fol", "find", "--sig", "rel:R/2", "--size", "2", "forall x. exists y. R(x,y)"}},
      {"nf.to_nnf", {"nf", "nnf", "--sig", "rel:P/1", "~(forall x. P(x))"}},
      {"nf.to_prenex", {"nf", "prenex", "--sig", "rel:P/1", "(exists x. P(x)) -> forall y. P(y)"}},
      {"nf.skolemize", {"nf", "skolem", "--sig", "rel:R/2", "forall x. exists y. R(x,y)"}},
      {"nf.herbrand_validity", {"nf", "herbrand", "--sig", "rel:P/1", "exists x. (P(x) -> forall y. P(y))"}},
      {"nf.decide_quantifier_free", {"nf", "qfree", "--sig", "rel:P/1,const:a", "P(a) | ~P(a)"}},
      {"nf.herbrand_universe", {"nf", "universe", "--sig", "fun:f/1", "--depth", "2"}},
      {"nf.check_mp_step", {"nf", "mp", "--sig", "rel:P/1,rel:Q/1,const:a", "--premise", "P(a)",
                            "--premise", "P(a) -> Q(a)", "Q(a)"}},
      {"tm.run", {"tm", "run", "fixture:successor", "--args", "3"}},
      {"tm.trace", {"tm", "trace", at("parity.tm"), "--input", "101"}},
      {"tm.encode_machine", {"tm", "encode", "fixture:successor"}},
      {"tm.encode_sequence", {"tm", "encode", "--sequence", "fixture:identity"}},
      {"tm.decode_machine", {"tm", "decode", code_of(logiclab::tm::fixtures::successor())}},
      {"tm.utm_run", {"tm", "utm", code_of(logiclab::tm::fixtures::parity()), "--input", "11"}},
      {"tm.enumerate_we", {"tm", "we", code_of(logiclab::tm::fixtures::even_length()), "--fuel", "10"}},
      {"tm.fixtures", {"tm", "fixture", "adder"}},
      {"ord.add", {"ord", "add", "w", "1"}},
      {"ord.mul", {"ord", "mul", "w+1", "w+1"}},
      {"ord.pow", {"ord", "pow", "2", "w+1"}},
      {"ord.left_subtract", {"ord", "sub", "w", "w^2"}},
      {"ord.compare", {"ord", "cmp", "w^w", "w^3"}},
      {"ord.divmod", {"ord", "divmod", "w^2+3", "w"}},
      {"ord.is_indecomposable", {"ord", "indec", "w^w"}},
      {"ord.sort", {"ord", "sort", "w", "3", "w^2"}},
      {"ord.goodstein_run", {"ord", "goodstein", "3", "--base", "2"}},
      {"ord.hereditary_expand", {"ord", "expand", "266", "--base", "2"}},
      {"hf.vn_universe", {"hf", "vn", "3"}},
      {"hf.eval_delta0", {"hf", "eval", "forall z in x. z in y", "x={}", "y={{}}"}},
      {"hf.eval_sigma1_bounded", {"hf", "eval", "exists p. x in p", "x={}"}},
      {"hf.hf_pair", {"hf", "pair", "{}", "{{}}"}},
      {"hf.crt_solve", {"hf", "crt", "--moduli", "3,5", "--residues", "2,3"}},
      {"hf.beta_encode", {"hf", "beta", "3,1,4"}},
      {"hf.beta_decode", {"hf", "beta", "--index", "1", "--x", "5744236", "--y", "120"}},
      {"hf.godel_number", {"hf", "godel", "--sig", "rel:R/2", "R(x,y)"}},
      {"hf.godel_number.prop", {"hf", "godel", "--prop", "A -> B"}},
      {"hf.self_apply", {"hf", "self", "--sig", "rel:P/1", "P(x)"}},
      {"hf.diagonal_sentence", {"hf", "diag", "--sig", "rel:Q/2,rel:P/1", "--chi", "Q", "~P(z)"}},
      {"hf.check_fin_axioms", {"hf", "fin", "3"}},
  };
  return m;
}

}  // namespace

TEST_CASE("every operation is reachable from the command line") {
  for (const auto& [op, args] : manifest()) {
    const auto r = run(args);
    INFO(op << ": " << r.err);
    CHECK(r.code == kExitOk);
    CHECK_FALSE(r.out.empty());
  }
}

TEST_CASE("golden corpus") {
  const auto report = run_corpus(kDir);
  for (const auto& c : report.cases) {
    INFO(c.name << ": " << c.detail);
    CHECK(c.passed);
  }
  CHECK(report.cases.size() >= 90);
  CHECK(report.passed() == report.cases.size());
}

TEST_CASE("output is deterministic") {
  for (const auto& [op, args] : manifest()) {
    CHECK(transcript(args) == transcript(args));
  }
}

TEST_CASE("json-lines output is one object per line") {
  const auto r = run({"--format", "json-lines", "hf", "vn", "2"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "{\"set\":\"{}\",\"rank\":0}\n{\"set\":\"{{}}\",\"rank\":1}\n");
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"prop"}).code == kExitUsage);
  CHECK(run({"prop", "parse"}).code == kExitUsage);
  CHECK(run({"--format", "xml", "prop", "parse", "A"}).code == kExitUsage);
  CHECK(run({"ord", "nope"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
  const auto bad = run({"prop", "parse", "A &"});
  CHECK(bad.code == kExitDomainError);
  CHECK(bad.err.rfind("error[syntax error]", 0) == 0);
  const auto missing = run({"sat", "solve", "/nonexistent/instance.txt"});
  CHECK(missing.code == kExitDomainError);
  CHECK(missing.err.find("error[i/o error]") == 0);
}

TEST_CASE("documented examples") {
  CHECK(run({"ord", "goodstein", "36", "--base", "2", "--steps", "1"}).out.find("22876792454987") !=
        std::string::npos);
  CHECK(run({"hf", "crt", "--moduli", "3,5", "--residues", "2,3"}).out == "8\n");
  CHECK(run({"tm", "run", "fixture:successor", "--input", "111"}).out.find("1111") != std::string::npos);
}
