#include <doctest.h>

#include <random>

#include "mql/error.hpp"
#include "mql/oracle.hpp"
#include "support.hpp"

using namespace mql;

TEST_SUITE("oracle") {

TEST_CASE("fresh oracle answers and counts") {
  QueryOracle o(reduce({Term{0}}, 1));
  CHECK(o.query_count() == 0);
  CHECK(o.query(Assignment::from_string("1")));
  CHECK(o.query_count() == 1);

  QueryOracle zero(Mdnf(4));
  CHECK_FALSE(zero.query(Assignment::ones(4)));
  CHECK_FALSE(zero.query(Assignment::zeros(4)));
}

TEST_CASE("budget") {
  QueryOracle o(reduce({Term{0}}, 2), 0);
  CHECK_THROWS_AS(o.query(Assignment::ones(2)), BudgetExhausted);
  CHECK(o.query_count() == 0);

  QueryOracle two(reduce({Term{0}}, 2), 2);
  two.query(Assignment::ones(2));
  two.query(Assignment::ones(2));
  CHECK_THROWS_AS(two.query(Assignment::ones(2)), BudgetExhausted);
  CHECK(two.query_count() == 2);
}

TEST_CASE("query answers and dimension check") {
  QueryOracle o(reduce({Term{0, 1}, Term{2}}, 3));
  CHECK(o.query(Assignment::from_string("110")));
  CHECK_FALSE(o.query(Assignment::from_string("100")));
  CHECK(o.query_count() == 2);
  CHECK_THROWS_AS(o.query(Assignment::from_string("10")), ContractError);
}

TEST_CASE("repeated queries all count; distinct count tracks effective points") {
  QueryOracle o(reduce({Term{0}}, 3));
  const Assignment a = Assignment::from_string("101");
  CHECK(o.query(a) == o.query(a));
  o.query(a);
  CHECK(o.query_count() == 3);
  CHECK(o.distinct_query_count() == 1);
}

TEST_CASE("restricted views") {
  QueryOracle o(reduce({Term{0, 1}}, 2));
  Substitution on(2);
  on.fix(0, true);
  QueryOracle v1 = o.restricted_view(on);
  CHECK(v1.query(Assignment::from_string("01")));
  Substitution off(2);
  off.fix(0, false);
  QueryOracle v0 = o.restricted_view(off);
  CHECK_FALSE(v0.query(Assignment::from_string("11")));

  v1.query(Assignment::from_string("00"));
  CHECK(o.query_count() == 3);
  CHECK(v0.query_count() == 3);

  CHECK_THROWS_AS(v1.restricted_view(off), ContractError);
  Substitution second(2);
  second.fix(1, false);
  QueryOracle stacked = v1.restricted_view(second);
  CHECK_FALSE(stacked.query(Assignment::ones(2)));
  CHECK(o.query_count() == 4);
}

TEST_CASE("view agrees with apply_substitution, exhaustive n <= 12") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 11;
    const Mdnf f = test::random_mdnf(rng, n, 4, 3);
    Substitution sub(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto pick = rng() % 3;
      if (pick == 1) sub.fix(i, false);
      if (pick == 2) sub.fix(i, true);
    }
    QueryOracle root(f);
    QueryOracle view = root.restricted_view(sub);
    const Mdnf restricted = apply_substitution(f, sub);
    std::uint64_t asked = 0;
    for (std::uint32_t x = 0; x < (1U << n); ++x) {
      const Assignment a = test::from_mask(x, n);
      CHECK(view.query(a) == eval(restricted, a));
      ++asked;
    }
    CHECK(root.query_count() == asked);
    CHECK(&testing::reveal_target(view) == &testing::reveal_target(root));
  }
}

}  // TEST_SUITE
