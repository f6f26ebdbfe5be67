#include "dppc/query.hpp"

#include <random>
#include <sstream>

#include "doctest.h"
#include "dppc/testkit.hpp"

using namespace dppc;

TEST_CASE("parsing a select-join-project rule") {
  auto q = parse_query(
      "result(u, c) :- bookings(u, h, d), hotels(h, p), cities(c, p, k).");
  CHECK(q.relations == std::vector<std::string>{"bookings", "hotels", "cities"});
  CHECK(q.arity == std::vector<std::size_t>{3, 2, 3});
  CHECK(q.n_vars() == 6);
  CHECK(q.atoms.size() == 3);
  REQUIRE(q.free_vars.size() == 2);
  CHECK(q.var_names[q.free_vars[0]] == "u");
  CHECK(q.var_names[q.free_vars[1]] == "c");

  auto qd = query_to_diagram(q);
  CHECK(qd.f.assignments.size() == 3);
  CHECK(qd.f.in.size() == 2);
  CHECK(qd.f.out.empty());
  for (const auto& a : qd.f.assignments) CHECK(a.outs.empty());

  // atomless head and repeated variables both parse
  CHECK(parse_query("q(x)").atoms.empty());
  CHECK(parse_query("q(x) :- r(x, x)").arity == std::vector<std::size_t>{2});
  CHECK(parse_query("q() :- r(y). # everything existential").free_vars.empty());
}

TEST_CASE("query parse errors") {
  CHECK_THROWS_AS(parse_query("q(x) :- r(x), r(x, x)"), Error);  // arity conflict
  CHECK_THROWS_AS(parse_query("q(x extra"), Error);
  CHECK_THROWS_AS(parse_query("q(x) :- r(x) trailing"), Error);
  CHECK_THROWS_AS(parse_query(""), Error);
}

TEST_CASE("characteristic rows use the mixed-radix tuple index") {
  ConjunctiveQuery q;
  q.relations = {"r"};
  q.arity = {2};
  q.var_names = {"x", "y"};
  q.free_vars = {0, 1};
  q.atoms = {{0, {0, 1}}};
  RelationalInstance A;
  A.elements = {"a", "b"};
  A.tuples = {{{0, 1}}};

  auto I = instance_to_interpretation(q, A);
  REQUIRE(I.sym.size() == 1);
  CHECK(I.sym[0].rows == 1);
  CHECK(I.sym[0].cols == 4);
  CHECK(I.sym[0].a == std::vector<std::uint8_t>{0, 1, 0, 0});  // index 0*2+1
}

TEST_CASE("csv instances: interning, dedup, rejection") {
  auto q = parse_query("q(u) :- r(u, v), s(v)");
  std::istringstream in(
      "r, a, b\n"
      "# comment line\n"
      "s, b\n"
      "r, a, b\n"  // duplicate collapses
      "\n"
      "r,c,a\n");
  auto A = load_instance_csv(in, q);
  CHECK(A.elements == std::vector<std::string>{"a", "b", "c"});
  CHECK(A.tuples[0] == std::vector<std::vector<std::size_t>>{{0, 1}, {2, 0}});
  CHECK(A.tuples[1] == std::vector<std::vector<std::size_t>>{{1}});

  std::istringstream bad_rel("t, a\n");
  CHECK_THROWS_AS(load_instance_csv(bad_rel, q), Error);
  std::istringstream bad_arity("r, a\n");
  CHECK_THROWS_AS(load_instance_csv(bad_arity, q), Error);
  std::istringstream bad_value("s, \n");
  CHECK_THROWS_AS(load_instance_csv(bad_value, q), Error);
}

TEST_CASE("booking query evaluates to the expected user-city pairs") {
  auto q = parse_query(
      "result(u, c) :- bookings(u, h, d), hotels(h, p), cities(c, p, k).");
  std::istringstream in(
      "bookings, ann, ritz, mon\n"
      "bookings, bob, ritz, mon\n"
      "hotels, ritz, p1\n"
      "cities, rome, p1, it\n");
  auto A = load_instance_csv(in, q);

  auto got = eval_query(q, A);
  CHECK(got == naive_join(q, A));
  REQUIRE(got.size() == 2);
  auto name = [&](std::size_t i) { return A.elements[i]; };
  CHECK(name(got[0][0]) == "ann");
  CHECK(name(got[0][1]) == "rome");
  CHECK(name(got[1][0]) == "bob");
  CHECK(name(got[1][1]) == "rome");
}

TEST_CASE("atomless queries are pure wiring over the domain") {
  auto q = parse_query("q(x)");
  RelationalInstance A;
  A.elements = {"a", "b", "c"};
  auto got = eval_query(q, A);
  CHECK(got == std::vector<std::vector<std::size_t>>{{0}, {1}, {2}});
  CHECK(got == naive_join(q, A));
}

TEST_CASE("pipeline evaluation equals the naive join on random queries") {
  std::mt19937_64 rng(6020);
  int evaluated = 0;
  for (int it = 0; it < 40; ++it) {
    ConjunctiveQuery q;
    std::size_t n_rel = 1 + rng() % 3;
    for (std::size_t r = 0; r < n_rel; ++r) {
      q.relations.push_back("r" + std::to_string(r));
      q.arity.push_back(1 + rng() % 3);
    }
    std::size_t n_vars = 1 + rng() % 4;
    for (std::size_t v = 0; v < n_vars; ++v) q.var_names.push_back("x" + std::to_string(v));
    std::size_t n_atoms = 1 + rng() % 3;
    for (std::size_t a = 0; a < n_atoms; ++a) {
      std::size_t rel = rng() % n_rel;
      std::vector<VarId> args;
      for (std::size_t i = 0; i < q.arity[rel]; ++i) args.push_back(VarId(rng() % n_vars));
      q.atoms.push_back({rel, std::move(args)});
    }
    // free variables: a prefix subset; the rest must occur in some atom
    for (VarId v = 0; v < n_vars; ++v)
      if (rng() % 2) q.free_vars.push_back(v);
    bool all_used = true;
    {
      std::vector<char> used(n_vars, 0);
      for (VarId v : q.free_vars) used[v] = 1;
      for (const auto& a : q.atoms)
        for (VarId v : a.args) used[v] = 1;
      for (char u : used) all_used = all_used && u;
    }
    if (!all_used) continue;

    RelationalInstance A;
    std::size_t domain = 1 + rng() % 3;
    for (std::size_t d = 0; d < domain; ++d) A.elements.push_back(std::string(1, char('a' + d)));
    A.tuples.resize(n_rel);
    for (std::size_t r = 0; r < n_rel; ++r) {
      std::size_t rows = rng() % 6;
      for (std::size_t i = 0; i < rows; ++i) {
        std::vector<std::size_t> t;
        for (std::size_t k = 0; k < q.arity[r]; ++k) t.push_back(rng() % domain);
        A.tuples[r].push_back(std::move(t));
      }
      std::sort(A.tuples[r].begin(), A.tuples[r].end());
      A.tuples[r].erase(std::unique(A.tuples[r].begin(), A.tuples[r].end()),
                        A.tuples[r].end());
    }

    // repeated variables across atoms can realize widths whose dense boolean
    // matrices blow the budget; those instances throw cleanly and are skipped
    EvalLimits lim;
    lim.max_entries = std::size_t(1) << 20;
    std::vector<std::vector<std::size_t>> got;
    try {
      got = eval_query(q, A, lim);
    } catch (const Error& e) {
      CHECK(e.kind == ErrorKind::resource);
      continue;
    }
    ++evaluated;
    CHECK(got == naive_join(q, A));
  }
  CHECK(evaluated >= 20);
}
