#include "dppc/inference.hpp"

#include <random>

#include "doctest.h"
#include "dppc/testkit.hpp"

using namespace dppc;

namespace {

template <class Fn>
void expect_kind(ErrorKind k, Fn&& fn) {
  try {
    fn();
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind == k);
  }
}

mpq_class pow2_inv(unsigned long k) {  // 2^-k
  return mpq_class(mpz_class(1), mpz_class(1) << k);
}

// x = flip(p); observe(x); the output is x, so p_f = 1 whenever p > 0
Diagram observed_coin(BoolStochSig& bs, const mpq_class& p) {
  Diagram f;
  f.var_sort = {bs.bool_sort};
  f.assignments = {{{0}, bs.flip(p), {}}, {{}, bs.sym_observe, {0}}};
  f.out = {0};
  validate(bs.sig, f);
  return f;
}

}  // namespace

TEST_CASE("truncated evaluation brackets the exact values") {
  std::mt19937_64 rng(7201);
  testkit::GenOptions opts;
  opts.max_vars = 6;
  opts.max_assignments = 5;
  opts.max_interface = 2;

  RationalSemiring alg;
  int evaluated = 0;
  for (int it = 0; it < 60; ++it) {
    BoolStochSig bs;
    for (int i = 0; i < 3; ++i)
      bs.flip(make_rational(long(rng() % 30), long(30 + rng() % 30)));
    Diagram f = testkit::random_diagram_over(bs.sig, rng, opts);
    auto R = algebrise(bs.sig, f);
    if (R.store->width(R.root) > 14) continue;
    ++evaluated;

    auto ct = compile_term(alg, *R.store, bool_stoch_interpretation(bs.sig), R.root);
    auto exact = eval_circuit(alg, ct.circuit);
    std::vector<Dyadic> prev;
    for (unsigned long b : {10ul, 20ul, 40ul}) {
      unsigned long bits = 2 * ct.circuit.size() + b;
      auto approx = truncated_eval(ct.circuit, bits);
      REQUIRE(approx.size() == exact.size());
      for (std::size_t i = 0; i < exact.size(); ++i) {
        mpq_class v = to_rational(approx[i]);
        CHECK(v <= exact[i]);                 // truncation never overshoots
        CHECK(exact[i] - v <= pow2_inv(b));   // and stays within 2^-b
        if (!prev.empty()) CHECK(compare(prev[i], approx[i]) <= 0);  // monotone in bits
      }
      prev = std::move(approx);
    }
  }
  CHECK(evaluated >= 35);
}

TEST_CASE("truncated evaluation with dyadic constants is eventually exact") {
  RationalSemiring alg;
  CircuitBuilder<RationalSemiring> cb(alg);
  std::uint32_t a = cb.constant(make_rational(3, 8));
  std::uint32_t b = cb.constant(make_rational(1, 4));
  std::uint32_t r = cb.add(cb.mul(a, b), cb.mul(a, a));
  std::vector<std::uint32_t> roots{r};
  auto c = cb.prune(roots);
  auto exact = eval_circuit(alg, c);
  auto approx = truncated_eval(c, 64);
  CHECK(to_rational(approx[roots[0]]) == exact[roots[0]]);
}

TEST_CASE("truncated evaluation rejects constants outside [0,1]") {
  RationalSemiring alg;
  CircuitBuilder<RationalSemiring> cb(alg);
  std::uint32_t a = cb.constant(make_rational(3, 2));
  std::vector<std::uint32_t> roots{a};
  auto c = cb.prune(roots);
  expect_kind(ErrorKind::validation, [&] { truncated_eval(c, 16); });
}

TEST_CASE("disease test program: certified digits on both inference paths") {
  auto bp = testkit::disease_test_program();
  Diagram flat = unfold(bp.h);
  mpq_class truth = mpq_class(33) / 653301;  // p / (p + q), canonically 1/19797

  auto [p, q] = exact_inference(bp.bs.sig, flat);
  CHECK(p == make_rational(99, 100000000));
  CHECK(p / (p + q) == truth);

  InferOptions opts;
  opts.exact_decomposition = true;
  InferenceResult r = infer(bp.bs.sig, flat, 30, opts);
  CHECK(r.exact);
  CHECK(r.bits_used == 0);
  CHECK(r.tree_w == 3);
  CHECK(r.branch_w <= 4);
  CHECK(r.circuit_size > 0);
  CHECK(abs(to_rational(r.p_f) - truth) <= pow2_inv(31));
  CHECK(sign(r.p_acc_lower) > 0);
  CHECK(to_rational(r.p_acc_lower) <= p + q);

  opts.exact_node_cap = 0;  // force the truncated dyadic path
  InferenceResult t = infer(bp.bs.sig, flat, 30, opts);
  CHECK(!t.exact);
  CHECK(t.bits_used >= 32);
  CHECK(abs(to_rational(t.p_f) - truth) <= pow2_inv(31));
  CHECK(sign(t.p_acc_lower) > 0);
  CHECK(to_rational(t.p_acc_lower) <= p + q);
}

TEST_CASE("conjunction chain: dyadic answers come out exact") {
  auto bp = testkit::and_chain_program(3);
  Diagram flat = unfold(bp.h);
  // no observations, so p_f = P(f_3 = true) = 4^-8
  Dyadic truth = dyadic(mpz_class(1), -16);

  InferenceResult r = infer(bp.bs.sig, flat, 20);
  CHECK(r.exact);
  CHECK(r.p_f == truth);

  InferOptions opts;
  opts.exact_node_cap = 0;
  InferenceResult t = infer(bp.bs.sig, flat, 20, opts);
  CHECK(!t.exact);
  CHECK(t.p_f == truth);
  CHECK(to_rational(t.p_acc_lower) <= 1);
}

TEST_CASE("shared coin program: quotient matches the pinned probability") {
  auto bd = testkit::shared_flip_or_of_ands();
  auto [p, q] = exact_inference(bd.bs.sig, bd.f);
  CHECK(p == make_rational(37, 500));
  CHECK(p + q == 1);
  InferenceResult r = infer(bd.bs.sig, bd.f, 20);
  CHECK(abs(to_rational(r.p_f) - make_rational(37, 500)) <= pow2_inv(21));
}

TEST_CASE("contradictory observations: exact zero, truncated unresolved") {
  BoolStochSig bs;
  Diagram f;
  f.var_sort = {bs.bool_sort, bs.bool_sort};
  f.assignments = {{{0}, bs.flip(make_rational(1, 3)), {}},
                   {{1}, bs.sym_not, {0}},
                   {{}, bs.sym_observe, {0}},
                   {{}, bs.sym_observe, {1}}};
  f.out = {0};
  validate(bs.sig, f);

  auto [p, q] = exact_inference(bs.sig, f);
  CHECK(p == 0);
  CHECK(q == 0);

  InferenceResult r = infer(bs.sig, f, 10);
  CHECK(r.exact);
  CHECK(r.p_f == dyadic(0));
  CHECK(r.p_acc_lower == dyadic(0));

  InferOptions opts;
  opts.exact_node_cap = 0;
  opts.bits_cap = 64;  // p + q is exactly 0: no precision can certify it positive
  expect_kind(ErrorKind::unresolved, [&] { infer(bs.sig, f, 10, opts); });
}

TEST_CASE("tiny acceptance probability drives the precision search") {
  BoolStochSig bs;
  Diagram f = observed_coin(bs, pow2_inv(200));

  InferOptions opts;
  opts.exact_node_cap = 0;
  InferenceResult r = infer(bs.sig, f, 10, opts);
  CHECK(!r.exact);
  CHECK(r.p_f == dyadic(1));  // observing the output forces p_f = 1
  CHECK(r.bits_used >= 200);
  CHECK(sign(r.p_acc_lower) > 0);
  CHECK(to_rational(r.p_acc_lower) <= pow2_inv(200));

  // the same search gives up once the cap is below what certification needs
  opts.bits_cap = 64;
  expect_kind(ErrorKind::unresolved, [&] { infer(bs.sig, f, 10, opts); });
}

TEST_CASE("truncated evaluation respects the memory budget") {
  BoolStochSig bs;
  Diagram f = observed_coin(bs, make_rational(1, 3));
  InferOptions opts;
  opts.exact_node_cap = 0;
  opts.trunc_total_bits_cap = 10;  // below even one node at minimum precision
  expect_kind(ErrorKind::resource, [&] { infer(bs.sig, f, 10, opts); });
}

TEST_CASE("inference validates its interface") {
  BoolStochSig bs;
  Diagram open_input;
  open_input.var_sort = {bs.bool_sort};
  open_input.in = {0};
  open_input.out = {0};
  validate(bs.sig, open_input);
  expect_kind(ErrorKind::validation, [&] { infer(bs.sig, open_input, 10); });

  Diagram two_out;
  two_out.var_sort = {bs.bool_sort};
  two_out.assignments = {{{0}, bs.flip(make_rational(1, 2)), {}}};
  two_out.out = {0, 0};
  validate(bs.sig, two_out);
  expect_kind(ErrorKind::validation, [&] { exact_inference(bs.sig, two_out); });

  // infer_circuit itself insists on a (q p)^T root matrix
  auto R = algebrise(bs.sig, two_out);
  auto ct = compile_term(RationalSemiring{}, *R.store, bool_stoch_interpretation(bs.sig), R.root);
  CHECK(ct.rows == 4);
  expect_kind(ErrorKind::validation, [&] { infer_circuit(ct, 10); });
}
