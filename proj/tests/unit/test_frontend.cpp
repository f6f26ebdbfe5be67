#include "dppc/frontend.hpp"

#include <string>

#include "doctest.h"
#include "dppc/diagram.hpp"
#include "dppc/error.hpp"
#include "dppc/inference.hpp"

using namespace dppc;

namespace {

const char* kDisease = R"(
test(z) :=
  let t_tt = flip(99/100);
  let t_tf = flip(0.02);
  let tp = z ∧ t_tt;
  let fp = ¬z ∧ t_tf;
  let t = tp ∨ fp;
  t

hasDisease() :=
  let x = flip(0.0001);
  let t1 = test(x);
  let t2 = test(x);
  let y = t1 ∧ ¬t2;
  observe(y);
  x
)";

void expect_parse_error(const std::string& src, const std::string& needle) {
  try {
    parse_program(src);
    FAIL("expected a parse error for: " << src);
  } catch (const Error& e) {
    CHECK(e.kind == ErrorKind::parse);
    CHECK(std::string(e.what()).find("line") != std::string::npos);
    CHECK(std::string(e.what()).find(needle) != std::string::npos);
  }
}

std::string sym_name(const Hierarchy& h, const Assignment& a) { return h.sig.symbols[a.sym].name; }

}  // namespace

TEST_CASE("two-function disease program parses to the documented ast") {
  auto ast = parse_program(kDisease);
  REQUIRE(ast.functions.size() == 2);

  const FnDef& test_fn = ast.functions[0];
  CHECK(test_fn.name == "test");
  CHECK(test_fn.params == std::vector<std::string>{"z"});
  REQUIRE(test_fn.stmts.size() == 5);
  for (const Stmt& st : test_fn.stmts) CHECK(!st.is_observe);
  CHECK(test_fn.stmts[4].targets == std::vector<std::string>{"t"});
  REQUIRE(test_fn.rets.size() == 1);
  CHECK(test_fn.rets[0].kind == Expr::Kind::var);

  const FnDef& main_fn = ast.functions[1];
  CHECK(main_fn.name == "hasDisease");
  CHECK(main_fn.params.empty());
  REQUIRE(main_fn.stmts.size() == 5);
  CHECK(main_fn.stmts[4].is_observe);
  CHECK(main_fn.rets.size() == 1);
  CHECK(main_fn.line > test_fn.line);
  CHECK(main_fn.stmts[0].expr.kind == Expr::Kind::flip);
  CHECK(main_fn.stmts[0].expr.prob == mpq_class(1, 10000));
}

TEST_CASE("desugaring flattens expressions in evaluation order and shares call nodes") {
  Hierarchy h = desugar(parse_program(kDisease));
  REQUIRE(h.nodes.size() == 2);
  CHECK(h.root == 1);
  // base: and, or, not, observe + flips 99/100, 1/50, 1/10000
  CHECK(h.n_base == 7);

  const Diagram& test_body = h.nodes[0].body;
  REQUIRE(test_body.assignments.size() == 6);  // 5 lets, one fresh for the negation
  CHECK(test_body.n_vars() == 7);
  CHECK(test_body.in.size() == 1);
  CHECK(test_body.out.size() == 1);
  CHECK(sym_name(h, test_body.assignments[3]) == "not");  // just before fp's and
  CHECK(sym_name(h, test_body.assignments[4]) == "and");
  CHECK(sym_name(h, test_body.assignments[5]) == "or");

  const Diagram& main_body = h.nodes[1].body;
  REQUIRE(main_body.assignments.size() == 6);
  CHECK(main_body.n_vars() == 5);  // x, t1, t2, the negation, y
  CHECK(main_body.in.empty());
  CHECK(main_body.out.size() == 1);
  CHECK(main_body.assignments[1].sym == h.call_symbol(0));
  CHECK(main_body.assignments[2].sym == h.call_symbol(0));  // one shared node
  CHECK(sym_name(h, main_body.assignments[5]) == "observe");
  CHECK(main_body.assignments[5].outs.empty());

  validate(h);
  validate(h.sig, unfold(h));
}

TEST_CASE("desugared disease program infers the pinned posterior") {
  Hierarchy h = desugar(parse_program(kDisease));
  Diagram flat = unfold(h);
  auto [p, q] = exact_inference(h.sig, flat);
  CHECK(p / (p + q) == mpq_class(1) / 19797);

  auto res = infer(h.sig, flat, 30);
  mpq_class err = abs(to_rational(res.p_f) - mpq_class(1) / 19797);
  CHECK(err <= mpq_class(1, mpz_class(1) << 31));
}

TEST_CASE("operator spellings and precedence") {
  const char* utf = "f(a, b, c) := a ∨ b ∧ ¬c";
  const char* ascii = "f(a, b, c) := a || b && !c";
  Hierarchy h1 = desugar(parse_program(utf));
  Hierarchy h2 = desugar(parse_program(ascii));
  const Diagram& b1 = h1.nodes[0].body;
  REQUIRE(b1.assignments.size() == 3);
  CHECK(sym_name(h1, b1.assignments[0]) == "not");
  CHECK(sym_name(h1, b1.assignments[1]) == "and");
  CHECK(sym_name(h1, b1.assignments[2]) == "or");
  CHECK(diagram_equal(b1, h2.nodes[0].body));

  Hierarchy h3 = desugar(parse_program("f(a, b, c) := (a ∨ b) ∧ c"));
  const Diagram& b3 = h3.nodes[0].body;
  REQUIRE(b3.assignments.size() == 2);
  CHECK(sym_name(h3, b3.assignments[0]) == "or");
  CHECK(sym_name(h3, b3.assignments[1]) == "and");
  CHECK(!diagram_equal(b1, b3));
}

TEST_CASE("rational spellings intern one flip symbol per value") {
  Hierarchy h = desugar(parse_program("f() := flip(0.25) ∧ flip(1/4) ∧ flip(2/8)"));
  CHECK(h.n_base == 5);  // and, or, not, observe, flip(1/4)
  const SymbolInfo& flip = h.sig.symbols[4];
  REQUIRE(flip.param.has_value());
  CHECK(*flip.param == mpq_class(1, 4));

  Hierarchy hl = desugar(parse_program("f() := true ∧ false"));
  CHECK(hl.n_base == 6);  // flip(1) and flip(0)
  const Diagram& body = hl.nodes[0].body;
  REQUIRE(body.assignments.size() == 3);
  CHECK(*h.sig.symbols[body.assignments[0].sym].param == 1);
  CHECK(*h.sig.symbols[body.assignments[1].sym].param == 0);
}

TEST_CASE("multi-output lets and tuple returns") {
  const char* src =
      "pair() :=\n"
      "  let x = flip(1/2);\n"
      "  let y = flip(1/3);\n"
      "  x, y\n"
      "both() := pair()\n"
      "use() :=\n"
      "  let a, b = pair();\n"
      "  a ∧ b\n";
  Hierarchy h = desugar(parse_program(src));
  REQUIRE(h.nodes.size() == 3);
  CHECK(h.sig.symbols[h.call_symbol(0)].out_sorts.size() == 2);
  CHECK(h.nodes[1].body.assignments.size() == 1);
  CHECK(h.nodes[1].body.out.size() == 2);
  CHECK(h.nodes[2].body.out.size() == 1);

  Hierarchy hu = desugar(parse_program(src), "use");
  CHECK(hu.root == 2);
  auto [p, q] = exact_inference(hu.sig, unfold(hu));
  CHECK(p == mpq_class(1, 6));
  CHECK(p + q == 1);

  CHECK(desugar(parse_program(src), "both").root == 1);
  CHECK_THROWS_AS(desugar(parse_program(src), "nope"), Error);
}

TEST_CASE("aliases introduce no assignments") {
  Hierarchy h = desugar(parse_program("id(x) := let y = x; y"));
  const Diagram& body = h.nodes[0].body;
  CHECK(body.assignments.empty());
  CHECK(body.in == body.out);
  CHECK(body.n_vars() == 1);
}

TEST_CASE("parse and resolution errors carry positions") {
  expect_parse_error("f() := let x = g(); x", "undefined function");
  expect_parse_error("f() := let x = f(); x", "recursive");
  expect_parse_error("f() := let x = g(); x\ng() := flip(1/2)", "recursive");
  expect_parse_error("f() := flip(3/2)", "outside [0,1]");
  expect_parse_error("f() := flip(1.5)", "outside [0,1]");
  expect_parse_error("f() := flip(1/0)", "zero denominator");
  expect_parse_error("f() := flip(0.5", "expected ')'");
  expect_parse_error("f() := let x = y; x", "undefined variable");
  expect_parse_error("f() :=", "expected an expression");
  expect_parse_error("f() := 1", "expected an expression");
  expect_parse_error("f() := let let = flip(1); x", "reserved");
  expect_parse_error("f(x, x) := x", "duplicate parameter");
  expect_parse_error("f() := true\nf() := false", "already defined");
  expect_parse_error("f() := @", "unexpected character");
  expect_parse_error("f(x) := x\ng() := let a = f(); a", "takes 1 arguments");
  expect_parse_error("f() := let a, b = flip(1/2); a", "only a call");
  expect_parse_error("f() := let a, a = flip(1/2); a", "duplicate binding");
  expect_parse_error("p() := flip(1/2), flip(1/2)\nf() := let a = p(); a",
                     "cannot be used as a single expression");
  expect_parse_error("p() := flip(1/2), flip(1/2)\nf() := let a, b, c = p(); a",
                     "returns 2 values");
  expect_parse_error("f() := let x = flip(1/2) x", "expected ';'");
  expect_parse_error("", "expected a function definition");
}

TEST_CASE("pretty printed programs desugar back to the same diagrams") {
  const char* sources[] = {
      kDisease,
      "pair() :=\n  let x = flip(1/2);\n  let y = flip(1/3);\n  x, y\nboth() := pair()\n",
      "id(x) := let y = x; y",
      "f(a, b, c) := a ∨ b ∧ ¬c, c",
      "g() :=\n  let x = true;\n  observe(x ∨ false);\n  x\n",
  };
  for (const char* src : sources) {
    Hierarchy h1 = desugar(parse_program(src));
    std::string printed = pretty_print(h1);
    Hierarchy h2 = desugar(parse_program(printed), h1.nodes[h1.root].name);
    REQUIRE(h1.nodes.size() == h2.nodes.size());
    CHECK(h1.root == h2.root);
    for (std::size_t k = 0; k < h1.nodes.size(); ++k)
      CHECK(diagram_equal(h1.nodes[k].body, h2.nodes[k].body));
    CHECK(diagram_equal(unfold(h1), unfold(h2)));
  }
}
