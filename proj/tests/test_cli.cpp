#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "ssg/dot.hpp"
#include "ssg/expr.hpp"
#include "ssg/json_io.hpp"

using namespace ssg;

namespace {

struct CliResult {
  int code;
  std::string out, err;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return std::string("/tmp/ssg_test_") + name;
}

}  // namespace

TEST_CASE("expression parser") {
  ElementExpr e = parse_element("t*x^2*t^-1");
  REQUIRE(e.kind == ElementExpr::Kind::Product);
  REQUIRE(e.factors.size() == 3);
  CHECK(e.factors[0].name == "t");
  CHECK(e.factors[1].exponent == 2);
  CHECK(e.factors[2].exponent == -1);
  CHECK(e.str() == "t*x^2*t^-1");
  CHECK(parse_element(e.str()).str() == e.str());

  ElementExpr paren = parse_element("(a*b)");
  CHECK(paren.kind == ElementExpr::Kind::Product);

  try {
    parse_element("x**y");
    FAIL("expected a syntax error");
  } catch (const Error& err) {
    CHECK(std::string(err.what()).find("column 3") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_element("x^"), Error);
  CHECK_THROWS_AS(parse_element("(x"), Error);
}

TEST_CASE("expression resolution") {
  FamilyPtr fam = Family::free_group(2);
  auto ctx = family_context(fam);
  GroupElement g = resolve_element(parse_element("x1*x2^-2"), ctx);
  CHECK(g.w == FreeWord({1, -2, -2}));
  CHECK(element_is_identity(resolve_element(parse_element("x1^0"), ctx)));
  CHECK_THROWS_AS(resolve_element(parse_element("nope"), ctx), Error);
}

TEST_CASE("element expressions round-trip through the parser") {
  HeisEndo phi(2, 0, 0, 3);
  FamilyPtr fam = Family::hnn_heis(phi);
  auto ctx = family_context(fam);
  std::mt19937_64 rng(0xE59ULL);
  std::uniform_int_distribution<int> pick(0, 2), sign(0, 1);
  for (int i = 0; i < 50; ++i) {
    GroupElement g = GroupElement::identity(fam);
    for (int j = 0; j < 5; ++j) {
      GroupElement s = GroupElement::generator(fam, pick(rng));
      g = element_mul(g, sign(rng) ? s : element_inverse(s));
    }
    GroupElement back = resolve_element(parse_element(element_expression(g)), ctx);
    CHECK(element_equal(g, back));
  }
}

TEST_CASE("cli: build-bn emits a reloadable automaton") {
  std::string path = temp_path("b5.json");
  CliResult r = run_cli({"build-bn", "--n", "5", "--emit", path});
  CHECK(r.code == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  Json j;
  in >> j;
  AutomatonPtr aut = automaton_from_json(j);
  CHECK(aut->state_names.size() == 5);
  CHECK(j["schema"] == "ssg/1");
  std::remove(path.c_str());
}

TEST_CASE("cli: unknown flags and verbs are rejected before any computation") {
  CHECK(run_cli({"no-such-verb"}).code == 2);
  CHECK(run_cli({"build-bn", "--n", "5", "--bogus"}).code == 2);
  CHECK(run_cli({"build-bn"}).code == 2);  // missing required --n
}

TEST_CASE("cli: act agrees with the library on random fixtures") {
  std::string path = temp_path("b3.json");
  REQUIRE(run_cli({"build-bn", "--n", "3", "--emit", path}).code == 0);
  AutomatonPtr aut = make_bn(3);
  std::mt19937_64 rng(0xAC7ULL);
  std::uniform_int_distribution<int> letter(0, 1), st(0, 2), sgn(0, 1);
  for (int i = 0; i < 100; ++i) {
    std::vector<int> letters;
    std::string expr;
    for (int j = 0; j < 4; ++j) {
      int s = st(rng);
      bool inv = sgn(rng);
      letters.push_back(inv ? -(s + 1) : s + 1);
      expr += (j ? "*" : "");
      expr += aut->state_names[static_cast<std::size_t>(s)];
      if (inv) expr += "^-1";
    }
    TreeWord v;
    std::string vstr;
    for (int j = 0; j < 5; ++j) {
      v.push_back(letter(rng));
      vstr += static_cast<char>('0' + v.back());
    }
    CliResult r = run_cli({"act", "--automaton", path, "--element", expr, "--vertex", vstr});
    REQUIRE(r.code == 0);
    std::string expect = tree_word_str(act(StateWord{aut, letters}, v));
    CHECK(r.out == expect + "\n");
  }
  std::remove(path.c_str());
}

TEST_CASE("cli: abelian-hnn pipeline with probe and verify") {
  std::string sys_path = temp_path("bs12.json");
  CliResult build = run_cli({"abelian-hnn", "--matrix", "[[2]]", "--q", "3", "--emit", sys_path});
  CHECK(build.code == 0);

  CliResult probe = run_cli({"--json", "probe", "--system", sys_path, "--len", "3", "--depth", "3"});
  CHECK(probe.code == 0);
  Json pj = Json::parse(probe.out);
  CHECK(pj["verdict"] == "NoKernelWitness");

  CliResult verify = run_cli({"--json", "verify", "--system", sys_path});
  CHECK(verify.code == 0);
  Json vj = Json::parse(verify.out);
  CHECK(vj["all_pass"] == true);

  // act through the compiled system.
  CliResult act_r = run_cli({"act", "--system", sys_path, "--element", "a*t", "--vertex", "012"});
  CHECK(act_r.code == 0);

  std::remove(sys_path.c_str());
}

TEST_CASE("cli: verification failures exit with code 3") {
  std::string sys_path = temp_path("broken.json");
  // Build a valid rank-2 system, then swap one image so a relation fails:
  // with M = [[2,1],[0,2]], sending q a1 to a2 breaks t a1 t^-1 = a1^2.
  EndoSystem sys = build_abelian_hnn(IntMat{{Int(2), Int(1)}, {Int(0), Int(2)}}, 3);
  Json j = endo_system_to_json(sys);
  j["endos"][0]["images"][0] = "a2";
  std::ofstream(sys_path) << j.dump();
  CliResult r = run_cli({"verify", "--system", sys_path});
  CHECK(r.code == 3);
  std::remove(sys_path.c_str());
}

TEST_CASE("cli: missing depth bound on compile is a budget error") {
  std::string sys_path = temp_path("bs12b.json");
  REQUIRE(run_cli({"abelian-hnn", "--matrix", "[[2]]", "--q", "3", "--emit", sys_path}).code == 0);
  CliResult r = run_cli({"compile", "--system", sys_path});
  CHECK(r.code == 4);
  CliResult ok = run_cli({"--json", "compile", "--system", sys_path, "--depth", "1"});
  CHECK(ok.code == 0);
  Json cj = Json::parse(ok.out);
  CHECK(cj["degree"] == 3);
  std::remove(sys_path.c_str());
}

TEST_CASE("cli: heis-hnn claim pipeline") {
  CliResult r = run_cli({"--json", "heis-hnn", "--endo", R"({"A":[[1,1],[0,2]],"c":[0,0]})"});
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["claim_data"]["p"] == 5);
  CHECK(j["claim_data"]["k"] == 5);
  CHECK(j["claim_data"]["alpha0"] == -2);
  CHECK(j["verified"] == true);
  // The emitted system reloads and passes the relation gate again.
  EndoSystem sys = endo_system_from_json(j["system"]);
  verify_system(sys);
  CHECK(endo_system_to_json(sys) == j["system"]);
}

TEST_CASE("cli: certificate verdicts") {
  Certificate pass = bs_certificate(3, 3, 1);
  std::string pass_path = temp_path("bs33.json");
  std::ofstream(pass_path) << certificate_to_json(pass).dump();
  CliResult ok = run_cli({"--json", "certificate", "--cert", pass_path, "--reduce", "--split1"});
  CHECK(ok.code == 0);
  Json oj = Json::parse(ok.out);
  CHECK(oj["all_pass"] == true);
  CHECK(oj["reduction"]["s"] == 3);
  CHECK(oj.contains("system"));
  std::remove(pass_path.c_str());

  Certificate fail = bs_certificate(2, 3, 1);
  std::string fail_path = temp_path("bs23.json");
  std::ofstream(fail_path) << certificate_to_json(fail).dump();
  CliResult bad = run_cli({"--json", "certificate", "--cert", fail_path});
  CHECK(bad.code == 3);
  std::remove(fail_path.c_str());
}

TEST_CASE("cli: heis-semidirect with the swap action") {
  CliResult r = run_cli({"--json", "heis-semidirect", "--action",
                         R"([{"A":[[0,1],[1,0]],"c":[0,0]}])", "--p", "3"});
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["f1_index"] == 1);
  CHECK(j["system"]["endos"].size() == 2);
  // The emitted system reloads and re-verifies.
  EndoSystem sys = endo_system_from_json(j["system"]);
  verify_system(sys);
}

TEST_CASE("cli: split1 from matrices") {
  CliResult r = run_cli({"--json", "split1", "--rank", "2", "--action",
                         "[[[1,1],[0,1]],[[0,-1],[1,0]]]"});
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["endos"].size() == 2);
}

TEST_CASE("cli: derive-free reports orbits") {
  CliResult r = run_cli({"--json", "derive-free", "--n", "5"});
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["generators"].size() == 4);
  CHECK(j["level1_orbits"] == 1);
  CHECK(j["freeness_warning"] == false);
}

TEST_CASE("cli: linearize over Q") {
  CliResult r = run_cli({"--json", "linearize", "--input", R"({"type":"abelian_hnn","matrix":[[2]]})"});
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["dimension"] == 2);
  CHECK(j["ring"] == "Q");
}

TEST_CASE("cli: export writes DOT") {
  std::string aut_path = temp_path("b3_dot.json"), dot_path = temp_path("b3.dot");
  REQUIRE(run_cli({"build-bn", "--n", "3", "--emit", aut_path}).code == 0);
  CliResult r = run_cli({"export", "--automaton", aut_path, "--dot", dot_path});
  CHECK(r.code == 0);
  std::ifstream in(dot_path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str().find("digraph moore") != std::string::npos);
  CHECK(buf.str().find("\"a\"") != std::string::npos);
  std::remove(aut_path.c_str());
  std::remove(dot_path.c_str());
}

TEST_CASE("dot export of a depth-0 portrait is a single root node") {
  AutomatonPtr b3 = make_bn(3);
  std::string dot = export_dot(portrait(StateWord::empty(b3), 0));
  CHECK(dot.find("digraph portrait") != std::string::npos);
  CHECK(dot.find("->") == std::string::npos);  // no edges
}

TEST_CASE("json round trips") {
  // Automaton.
  AutomatonPtr b4 = make_bn(4);
  Json ja = automaton_to_json(b4);
  AutomatonPtr back = automaton_from_json(ja);
  CHECK(automaton_to_json(back) == ja);

  // Endo system (split1 over a nontrivial action).
  IntMat shear{{Int(1), Int(1)}, {Int(0), Int(1)}};
  IntMat rot{{Int(0), Int(-1)}, {Int(1), Int(0)}};
  AutomatonPtr b3 = make_bn(3);
  VirtualEndo f0 = free_ve_from_automaton(b3, derived_free_generators(3, b3).gens);
  EndoSystem sys = build_split1(2, {shear, rot}, f0);
  Json js = endo_system_to_json(sys);
  EndoSystem reloaded = endo_system_from_json(js);
  CHECK(endo_system_to_json(reloaded) == js);
  verify_system(reloaded);

  // Certificate.
  Certificate cert = bs_certificate(4, 4, 1);
  Json jc = certificate_to_json(cert);
  CHECK(certificate_to_json(certificate_from_json(jc)) == jc);

  // Big integers fall back to strings.
  Int big("123456789012345678901234567890");
  CHECK(int_from_json(int_to_json(big)) == big);
  CHECK(int_to_json(big).is_string());
  CHECK(int_from_json(int_to_json(Int(42))) == 42);
}
