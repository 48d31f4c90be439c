#include <doctest.h>

#include "creg/errors.hpp"
#include "creg/harness.hpp"
#include "creg/instance.hpp"
#include "support.hpp"

using namespace creg;

namespace {

const char* kNode = R"(# comment
[ring]
vars = x, y
char = 101

[ideal]
gens = x*y

[module]
name = line
kind = cokernel
twists = 0
column = x + y

[module]
name = m2
kind = power_ideal
j = 2

[module]
name = top
kind = truncation
of = line
q = 1

[caps]
hom_cap = 5

[checks]
mpower = 1, 2
)";

void expect_error(const std::string& text, int line, int column) {
  try {
    parse_instance(text);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == line);
    CHECK(e.column() == column);
  }
}

}  // namespace

TEST_SUITE("instance") {
  TEST_CASE("parsing a complete instance") {
    auto spec = parse_instance(kNode, "node");
    CHECK(spec.var_names == std::vector<std::string>{"x", "y"});
    CHECK(spec.weights == std::vector<int>{1, 1});
    CHECK(spec.characteristic == 101);
    CHECK(spec.ideal == std::vector<std::string>{"x*y"});
    REQUIRE(spec.modules.size() == 3);
    CHECK(spec.modules[0].columns == std::vector<std::vector<std::string>>{{"x + y"}});
    CHECK(spec.modules[1].j == 2);
    CHECK(spec.modules[2].of == "line");
    CHECK(spec.hom_cap == 5);
    CHECK(spec.mpower == std::vector<int>{1, 2});

    auto inst = build_instance(spec, PrimeField(101));
    CHECK(inst.ring->dim(3) == 2);
    CHECK(inst.module("m2")->dim(2) == 2);
    CHECK(inst.module("top")->dim(0) == 0);
    CHECK(inst.module("top")->dim(1) == 1);
    REQUIRE(inst.truncation_of[2]);
    CHECK(inst.truncation_of[2]->first == 1);
    CHECK(inst.truncation_of[1]->second.empty());
    CHECK_THROWS_AS(inst.module("nope"), InvalidInput);
  }

  TEST_CASE("weighted variables") {
    auto spec = parse_instance("[ring]\nvars = x:1, y:2\n");
    CHECK(spec.weights == std::vector<int>{1, 2});
  }

  TEST_CASE("errors carry line and column") {
    expect_error("[ring]\nvars = x, y\n[bogus]\n", 3, 2);
    expect_error("[ring]\nvars = x, y\nchar = 12\n", 3, 8);
    expect_error("[ring]\nvars = x, y\n[ideal]\ngens = x*y, x + z\n", 4, 17);
    expect_error("[ring]\nvars = x, y\nweird = 1\n", 3, 1);
    expect_error("[ring]\nvars = x, x\n", 2, 11);
    expect_error("[ring]\nvars = x:0\n", 2, 10);
    expect_error("vars = x\n", 1, 1);
    expect_error("[ring]\nvars = x\n[module]\nname = M\nkind = blob\n", 5, 8);
    expect_error("[ring]\nvars = x\n[module]\nname = M\nkind = free\ntwists = 1, a\n", 6, 13);
    expect_error("[ring]\nvars = x\n[caps]\nhom_cap\n", 4, 1);
    expect_error("[ring]\nvars = x\n[module]\nname = M\ncolumn = x,\n", 5, 12);
  }

  TEST_CASE("structural errors") {
    CHECK_THROWS_AS(parse_instance("# nothing\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("[ring]\nvars = x\n[module]\nkind = ring\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("[ring]\nvars = x\n[module]\nname = a\nkind = truncation\nof = b\nq = 1\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_instance("[ring]\nvars = x\n[module]\nname = a\nkind = power_ideal\n"), ParseError);
    CHECK_THROWS_AS(
        parse_instance("[ring]\nvars = x\n[module]\nname = a\nkind = ring\n[module]\nname = a\nkind = ring\n"),
        ParseError);
  }

  TEST_CASE("every bundled instance parses and builds") {
    auto files = list_instances(CREG_CORPUS_DIR);
    CHECK(files.size() >= 9);
    for (const auto& path : files) {
      CAPTURE(path.string());
      auto spec = load_instance(path);
      CHECK(spec.name == path.stem().string());
      if (spec.heavy) continue;
      auto inst = build_instance(spec, PrimeField(101));
      for (const auto& [name, m] : inst.modules) CHECK_FALSE(m->is_zero());
    }
  }
}

TEST_SUITE("harness") {
  TEST_CASE("canonical module of the square-zero ring") {
    auto spec = load_instance(std::string(CREG_CORPUS_DIR) + "/square_zero.inst");
    Analyzer<PrimeField> a(build_instance(spec, PrimeField()));
    CHECK(a.koszul_positive());
    CHECK(a.regL_R() == 1);
    CHECK(a.regL("omega") == 0);
    CHECK(*a.tor("omega").reg.value == -1);

    auto main = check_main_inequalities(a, "omega");
    CHECK(main.verdict == Verdict::Holds);
    CHECK(main.witness.find("left equality") != std::string::npos);

    auto converse = check_converse_witness(a, "omega");
    CHECK(converse.verdict == Verdict::Holds);

    auto pd = check_finite_pd_equality(a, "omega");
    CHECK(pd.verdict == Verdict::PreconditionUnmet);
    CHECK(check_finite_pd_equality(a, "free").verdict == Verdict::Holds);

    auto trunc = check_truncation_theorem(a, "omega");
    CHECK(trunc.verdict == Verdict::HoldsUpToCaps);
    CHECK(trunc.witness.find("q=-2:no") != std::string::npos);
    CHECK(trunc.witness.find("q=-1:yes-up-to-caps") != std::string::npos);

    auto json = main.to_json();
    for (const char* key : {"check", "instance", "regL_M", "regL_R", "regT_M", "regT_status", "verdict", "witness",
                            "millis"})
      CHECK(json.contains(key));
    CHECK(json["regT_M"] == -1);
    CHECK(json["verdict"] == "holds");
    CHECK(main.to_text().rfind("[holds] main_inequalities square_zero/omega", 0) == 0);
  }

  TEST_CASE("sandwich over the complete intersection") {
    auto spec = load_instance(std::string(CREG_CORPUS_DIR) + "/ci_quadrics.inst");
    Analyzer<PrimeField> a(build_instance(spec, PrimeField()));
    auto r = check_mpower_sandwich(a, 1);
    CHECK(r.verdict == Verdict::Holds);
    CHECK(*r.regL_M == 2);
    CHECK(*r.regT_M->value == 1);
    CHECK(r.witness.find("strict") != std::string::npos);
    auto main = check_main_inequalities(a, "m");
    CHECK(main.verdict == Verdict::Holds);
    CHECK(main.witness.find("(strict)") != std::string::npos);
  }

  TEST_CASE("non-Koszul ring: upper inequality and truncation are not asserted") {
    auto spec = load_instance(std::string(CREG_CORPUS_DIR) + "/cubic.inst");
    Analyzer<PrimeField> a(build_instance(spec, PrimeField()));
    CHECK_FALSE(a.koszul_positive());
    auto k = check_main_inequalities(a, "K");
    CHECK(k.verdict == Verdict::Holds);
    CHECK(k.detail.find("not asserted") != std::string::npos);
    CHECK(check_truncation_theorem(a, "K").verdict == Verdict::PreconditionUnmet);
  }

  TEST_CASE("polynomial characterization") {
    std::vector<std::unique_ptr<Analyzer<PrimeField>>> owned;
    std::vector<Analyzer<PrimeField>*> ptrs;
    for (const char* name : {"poly_xy", "square_zero", "node"}) {
      auto spec = load_instance(std::string(CREG_CORPUS_DIR) + "/" + name + ".inst");
      owned.push_back(std::make_unique<Analyzer<PrimeField>>(build_instance(spec, PrimeField())));
      ptrs.push_back(owned.back().get());
    }
    auto r = check_polynomial_characterization(ptrs);
    CHECK(r.verdict == Verdict::Holds);
    CHECK(r.witness.find("[omega: regT=-1 regL=0]") != std::string::npos);
  }

  TEST_CASE("single instance run has no violations") {
    CorpusOptions o;
    auto spec = load_instance(std::string(CREG_CORPUS_DIR) + "/node.inst");
    auto result = run_instance(spec, o);
    CHECK_FALSE(result.any_violated());
    CHECK(result.reports.size() >= 15);
  }

  TEST_CASE("violations and errors fail the run") {
    CorpusResult r;
    r.reports.push_back({});
    r.reports.back().verdict = Verdict::HoldsUpToCaps;
    CHECK_FALSE(r.any_violated());
    r.reports.push_back({});
    r.reports.back().verdict = Verdict::Error;
    CHECK(r.any_violated());
    r.reports.back().verdict = Verdict::Violated;
    CHECK(r.any_violated());
  }
}
