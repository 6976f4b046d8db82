#include <doctest.h>

#include <random>

#include "mql/error.hpp"
#include "mql/find_term.hpp"
#include "mql/instances.hpp"
#include "support.hpp"

using namespace mql;

TEST_SUITE("find_term") {

TEST_CASE("single variable target from all-ones, hand trace") {
  // Blocks {x1..x4},{x5..x8}: first clear fails, second holds; then
  // {x1,x2},{x3,x4}: again second holds; cleanup clears x1, keeps x2.
  QueryOracle o(reduce({Term{1}}, 8));
  FindTermStats stats;
  CHECK(find_term(o, Assignment::ones(8), 1, &stats) == Term{1});
  CHECK(stats.queries == 6);
  CHECK(stats.passes == 2);
  CHECK(stats.pass_weights == std::vector<std::size_t>{8, 4, 1});
}

TEST_CASE("a minterm start is returned unchanged") {
  QueryOracle o(reduce({Term{0, 1}}, 3));
  FindTermStats stats;
  CHECK(find_term(o, Assignment::from_string("110"), 2, &stats) == (Term{0, 1}));
  CHECK(stats.queries <= 4);
  // Nothing cleared, so the start itself had to be confirmed.
  CHECK(stats.queries == 3);
}

TEST_CASE("negative start is a contract error") {
  QueryOracle o(reduce({Term{0, 1}}, 4));
  CHECK_THROWS_AS(find_term(o, Assignment::from_string("1011"), 2), ContractError);
}

TEST_CASE("constant-1 target gives the empty term") {
  QueryOracle o(reduce({Term{}}, 16));
  CHECK(find_term(o, Assignment::ones(16), 2).empty());
}

TEST_CASE("n = 1024, r = 4: at most 72 queries") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Mdnf f = random_instance(1024, 1, 4, 1000 + trial);
    QueryOracle o(f);
    FindTermStats stats;
    const Term t = find_term(o, Assignment::ones(1024), 4, &stats);
    CHECK(f.contains(t));
    CHECK(stats.queries <= 72);
    CHECK(find_term_query_bound(1024, 4) == 72);
  }
}

TEST_CASE("property: minterm contract, b <= a, halving, and no known term") {
  std::mt19937_64 rng(17);
  int positive_starts = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 8 + trial % 40;
    const std::size_t r = 1 + trial % 4;
    const Mdnf f = random_instance(n, 1 + trial % 4, r, static_cast<std::uint64_t>(trial));
    Assignment a = test::random_assignment(rng, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rng() % 4 != 0) a.set(i);
    }
    if (!eval(f, a)) continue;
    ++positive_starts;

    // Known part h: the terms a does not satisfy.
    std::vector<Term> known;
    for (const auto& t : f.terms()) {
      if (!eval_term(t, a)) known.push_back(t);
    }
    QueryOracle o(f);
    FindTermStats stats;
    const Term t = find_term(o, a, r, &stats);
    const Assignment b = Assignment::indicator(n, t.vars());
    CHECK(b.leq(a));
    CHECK(is_minterm(f, b));
    CHECK(f.contains(t));
    for (const auto& k : known) CHECK(k != t);
    CHECK(stats.queries == o.query_count());
    CHECK(stats.queries <= find_term_query_bound(a.weight(), r));
    for (std::size_t p = 0; p + 1 < stats.pass_weights.size(); ++p) {
      CHECK(stats.pass_weights[p + 1] <= stats.pass_weights[p]);
    }
    // Single-term targets: every full pass halves, up to block rounding.
    if (f.term_count() == 1) {
      for (std::size_t p = 0; p < stats.passes; ++p) {
        const std::size_t w = stats.pass_weights[p];
        const std::size_t ceil_block = (w + 2 * r - 1) / (2 * r);
        CHECK(stats.pass_weights[p + 1] <= r * ceil_block);
      }
    }
  }
  CHECK(positive_starts > 500);
}

}  // TEST_SUITE
