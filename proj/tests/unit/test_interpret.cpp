#include "dppc/interpret.hpp"

#include <random>

#include "doctest.h"
#include "dppc/algebraise.hpp"
#include "dppc/testkit.hpp"

using namespace dppc;

TEST_CASE("probabilistic reading of the boolean vocabulary") {
  BoolStochSig bs;
  SymbolId fl = bs.flip(make_rational(1, 4));
  auto I = bool_stoch_interpretation(bs.sig);

  // columns are input combinations ff, ft, tf, tt; row 1 is "output true"
  const auto& land = I.sym[bs.sym_and];
  CHECK(land.rows == 2);
  CHECK(land.cols == 4);
  CHECK(land.a == std::vector<mpq_class>{1, 1, 1, 0, 0, 0, 0, 1});
  const auto& lor = I.sym[bs.sym_or];
  CHECK(lor.a == std::vector<mpq_class>{1, 0, 0, 0, 0, 1, 1, 1});

  const auto& obs = I.sym[bs.sym_observe];
  CHECK(obs.rows == 1);
  CHECK(obs.cols == 2);
  CHECK(obs.a == std::vector<mpq_class>{0, 1});

  const auto& coin = I.sym[fl];
  CHECK(coin.rows == 2);
  CHECK(coin.cols == 1);
  CHECK(coin.at(0, 0) == make_rational(3, 4));
  CHECK(coin.at(1, 0) == make_rational(1, 4));

  for (const auto& m : I.sym)
    if (m.rows > 0) CHECK(is_substochastic(m));
}

TEST_CASE("substochastic check accepts column sums up to one and nothing more") {
  Matrix<mpq_class> ok(2, 2, mpq_class(0));
  ok.at(0, 0) = make_rational(1, 2);
  ok.at(1, 0) = make_rational(1, 2);
  ok.at(1, 1) = make_rational(1, 3);
  CHECK(is_substochastic(ok));
  ok.at(0, 1) = make_rational(3, 4);  // column 1 sums to 13/12
  CHECK(!is_substochastic(ok));
  Matrix<mpq_class> neg(1, 1, make_rational(-1, 2));
  CHECK(!is_substochastic(neg));
}

TEST_CASE("support readings over booleans and costs") {
  BoolStochSig bs;
  bs.flip(make_rational(1, 4));
  bs.flip(mpq_class(0));

  auto B = bool_support_interpretation(bs.sig);
  CHECK(B.sym[bs.sym_and].a == std::vector<std::uint8_t>{1, 1, 1, 0, 0, 0, 0, 1});
  CHECK(B.sym[bs.sym_observe].a == std::vector<std::uint8_t>{0, 1});
  // a certain-false coin can only produce false
  CHECK(B.sym[bs.flips.at(mpq_class(0))].a == std::vector<std::uint8_t>{1, 0});

  auto T = tropical_support_interpretation(bs.sig);
  constexpr auto INF = TropicalSemiring::INF;
  CHECK(T.sym[bs.sym_and].a == std::vector<std::uint64_t>{0, 0, 0, INF, INF, INF, INF, 0});
  CHECK(T.sym[bs.sym_or].a == std::vector<std::uint64_t>{0, INF, INF, INF, INF, 0, 0, 0});
  CHECK(T.sym[bs.sym_not].a == std::vector<std::uint64_t>{INF, 0, 0, INF});
}

TEST_CASE("prime field interpretation is deterministic per seed") {
  BoolStochSig bs;
  bs.flip(make_rational(1, 3));
  auto a = prime_field_interpretation(bs.sig, 42);
  auto b = prime_field_interpretation(bs.sig, 42);
  auto c = prime_field_interpretation(bs.sig, 43);
  REQUIRE(a.sym.size() == b.sym.size());
  bool all_equal = true, any_diff = false;
  for (std::size_t s = 0; s < a.sym.size(); ++s) {
    all_equal = all_equal && a.sym[s].a == b.sym[s].a;
    any_diff = any_diff || a.sym[s].a != c.sym[s].a;
    for (auto v : a.sym[s].a) CHECK(v < Fp61Semiring::P);
  }
  CHECK(all_equal);
  CHECK(any_diff);
}

TEST_CASE("rationals embed homomorphically in the prime field") {
  Fp61Semiring f;
  CHECK(f.mul(fp61_of(make_rational(1, 2)), 2) == 1);
  CHECK(fp61_of(make_rational(3, 7)) == f.mul(3, f.inv(7)));
  CHECK(f.add(fp61_of(make_rational(-1, 3)), fp61_of(make_rational(1, 3))) == 0);
  mpq_class huge(mpz_class(1) << 200, mpz_class(3));
  huge.canonicalize();
  CHECK(f.mul(fp61_of(huge), 3) == f.pow(2, 200));
}

TEST_CASE("checked evaluation agrees with unchecked on boolean programs") {
  std::mt19937_64 rng(3111);
  testkit::GenOptions opts;
  opts.max_vars = 5;
  opts.max_assignments = 4;
  opts.max_interface = 2;

  RationalSemiring alg;
  EvalLimits checked;
  checked.checked = true;

  int evaluated = 0;
  for (int it = 0; it < 25; ++it) {
    BoolStochSig bs;
    for (int i = 0; i < 2; ++i)
      bs.flip(make_rational(long(rng() % 20), long(20 + rng() % 20)));
    Diagram f = testkit::random_diagram_over(bs.sig, rng, opts);
    auto R = algebrise(bs.sig, f);
    if (R.store->width(R.root) > 12) continue;
    ++evaluated;

    auto I = bool_stoch_interpretation(bs.sig);
    auto plain = interpret_term(alg, *R.store, I, R.root);
    auto audited = interpret_term(alg, *R.store, I, R.root, checked);
    CHECK(matrix_eq(alg, plain, audited));
  }
  CHECK(evaluated >= 15);
}
