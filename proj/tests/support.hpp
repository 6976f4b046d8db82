#pragma once

// Brute-force reference code for the tests. Nothing here calls the library's
// evaluation routines: functions are tabulated from raw term masks.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "mql/boolean.hpp"

namespace mql::test {

/// Term as a bit mask (n <= 32).
inline std::uint32_t term_mask(const std::vector<Var>& vars) {
  std::uint32_t m = 0;
  for (Var v : vars) m |= 1U << v;
  return m;
}

/// Truth table of OR of AND-terms; bit x of the table's index is variable x.
inline std::vector<bool> truth_table(const std::vector<std::vector<Var>>& terms, std::size_t n) {
  std::vector<std::uint32_t> masks;
  for (const auto& t : terms) masks.push_back(term_mask(t));
  std::vector<bool> table(std::size_t{1} << n);
  for (std::uint32_t x = 0; x < table.size(); ++x) {
    for (auto m : masks) {
      if ((x & m) == m) {
        table[x] = true;
        break;
      }
    }
  }
  return table;
}

inline std::vector<bool> truth_table(const Mdnf& f) {
  std::vector<std::vector<Var>> terms;
  for (const auto& t : f.terms()) terms.push_back(t.vars());
  return truth_table(terms, f.n());
}

inline Assignment from_mask(std::uint32_t x, std::size_t n) {
  Assignment a(n);
  for (std::size_t i = 0; i < n; ++i) {
    if ((x >> i) & 1U) a.set(i);
  }
  return a;
}

/// Arbitrary (possibly unreduced) term list.
inline std::vector<std::vector<Var>> random_terms(std::mt19937_64& rng, std::size_t n, std::size_t count,
                                                  std::size_t max_size) {
  std::vector<std::vector<Var>> out;
  std::uniform_int_distribution<std::size_t> size_dist(0, max_size);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<Var> vars;
    std::vector<Var> perm(n);
    for (std::size_t j = 0; j < n; ++j) perm[j] = static_cast<Var>(j);
    std::shuffle(perm.begin(), perm.end(), rng);
    const std::size_t k = std::min(size_dist(rng), n);
    vars.assign(perm.begin(), perm.begin() + static_cast<long>(k));
    std::sort(vars.begin(), vars.end());
    out.push_back(vars);
  }
  return out;
}

inline std::vector<Term> to_terms(const std::vector<std::vector<Var>>& raw) {
  std::vector<Term> out;
  for (const auto& v : raw) out.emplace_back(v);
  return out;
}

inline Mdnf random_mdnf(std::mt19937_64& rng, std::size_t n, std::size_t count, std::size_t max_size) {
  return reduce(to_terms(random_terms(rng, n, count, max_size)), n);
}

inline Assignment random_assignment(std::mt19937_64& rng, std::size_t n) {
  Assignment a(n);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < n; ++i) {
    if (coin(rng)) a.set(i);
  }
  return a;
}

}  // namespace mql::test
