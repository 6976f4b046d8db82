#include "mql/instances.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "mql/cff.hpp"
#include "mql/error.hpp"
#include "mql/random.hpp"

namespace mql {

namespace {

constexpr std::size_t kAttemptsPerTerm = 10'000;

bool comparable(const Term& a, const Term& b) { return a.is_subset_of(b) || b.is_subset_of(a); }

}  // namespace

Mdnf random_instance(std::size_t n, std::size_t s, std::size_t r, std::uint64_t seed) {
  if (s == 0) return Mdnf(n);
  const std::size_t rmax = std::min(r, n);
  if (rmax == 0) throw InfeasibleParameters("terms need at least one variable (r >= 1, n >= 1)");
  // Largest antichain of sets with at most rmax elements (Sperner / LYM).
  const double antichain = binomial(n, std::min(rmax, n / 2));
  if (static_cast<double>(s) > antichain) {
    throw InfeasibleParameters("cannot place " + std::to_string(s) + " incomparable terms of size <= " +
                               std::to_string(rmax) + " over " + std::to_string(n) + " variables");
  }

  Prng rng(seed);
  std::vector<Term> terms;
  std::vector<Var> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = static_cast<Var>(i);
  for (std::size_t placed = 0; placed < s; ++placed) {
    bool ok = false;
    for (std::size_t attempt = 0; attempt < kAttemptsPerTerm && !ok; ++attempt) {
      const std::size_t size = 1 + static_cast<std::size_t>(rng.uniform(rmax));
      // Partial Fisher-Yates for a uniform size-subset.
      for (std::size_t i = 0; i < size; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.uniform(n - i));
        std::swap(pool[i], pool[j]);
      }
      Term t = Term::from_unsorted(std::vector<Var>(pool.begin(), pool.begin() + static_cast<long>(size)));
      if (std::none_of(terms.begin(), terms.end(), [&](const Term& u) { return comparable(t, u); })) {
        terms.push_back(std::move(t));
        ok = true;
      }
    }
    if (!ok) throw InfeasibleParameters("gave up placing incomparable terms after bounded retries");
  }
  return Mdnf::from_reduced(n, std::move(terms));
}

InstancePair hard_pair(std::size_t ell, std::size_t t, std::uint64_t seed) {
  if (t < 2) throw InfeasibleParameters("t must be at least 2");
  if (ell < t) throw InfeasibleParameters("ell must be at least t");
  const std::size_t m = ell / t;
  if (m < 2) {
    throw InfeasibleParameters("floor(ell/t) = 1: the hidden term would absorb the only block");
  }

  InstancePair pair;
  pair.ell = ell;
  pair.t = t;
  Prng rng(seed);
  std::vector<Term> blocks;
  std::vector<Var> hidden;
  pair.witness = Assignment::ones(ell);
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t k = 1 + static_cast<std::size_t>(rng.uniform(t));
    pair.k.push_back(k);
    std::vector<Var> block;
    for (std::size_t i = 0; i < t; ++i) {
      const auto v = static_cast<Var>(j * t + i);
      block.push_back(v);
      if (i + 1 != k) hidden.push_back(v);
    }
    pair.witness.clear(j * t + k - 1);
    blocks.emplace_back(std::move(block));
  }
  pair.hidden = Term(hidden);
  pair.f = Mdnf::from_reduced(ell, blocks);
  blocks.push_back(pair.hidden);
  pair.g = Mdnf::from_reduced(ell, std::move(blocks));
  return pair;
}

double BoundValues::for_algorithm(int alg) const {
  switch (alg) {
    case 1: return alg1;
    case 2: return alg2;
    case 3: return alg3;
    case 4: return alg4;
    case 5: return alg5;
    default: throw std::out_of_range("algorithm must be 1..5");
  }
}

BoundValues bound_values(std::size_t n, std::size_t s, std::size_t r, double delta) {
  if (s == 0 || r == 0) throw InfeasibleParameters("bound_values needs s, r >= 1");
  const double sd = static_cast<double>(s);
  const double rd = static_cast<double>(r);
  const double three_e = 3.0 * std::numbers::e;
  const double log_inv_delta = std::log2(1.0 / delta);

  BoundValues b{};
  b.info = rd * sd * std::log2(static_cast<double>(std::max<std::size_t>(n, 1)));
  if (r <= s) {
    b.lower_s_dominant = std::pow(2.0 * sd / rd, rd / 2.0);
  } else {
    b.lower_r_dominant = std::pow(rd / sd, sd - 1.0);
  }
  b.alg1 = std::pow(rd, sd - 1.0);
  b.alg2 = sd * cff_size_bounds(s - 1, r, r * s).explicit_power;
  b.alg3 = std::sqrt(sd) * binomial(s + r, s) * (rd * std::log2(rd) + log_inv_delta);
  b.alg4 = std::pow(three_e, rd) * std::pow(rd * sd, rd / 2.0 + 1.5);
  b.alg5 = std::sqrt(rd) * std::pow(three_e, rd) * std::pow(sd, rd / 2.0) * (sd * std::log2(sd) + log_inv_delta);
  return b;
}

double hard_pair_reference(std::size_t ell, std::size_t t) {
  if (t == 0) throw InfeasibleParameters("t must be positive");
  return std::pow(static_cast<double>(t), static_cast<double>(ell / t));
}

}  // namespace mql
