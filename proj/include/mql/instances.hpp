#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "mql/boolean.hpp"

namespace mql {

/// Reduced MDNF over n variables with exactly s terms, each of uniform size in
/// [1, min(r, n)] over uniform variables. A term comparable (under inclusion)
/// to an earlier one is redrawn. Throws InfeasibleParameters when s terms
/// cannot be placed.
Mdnf random_instance(std::size_t n, std::size_t s, std::size_t r, std::uint64_t seed);

/// Two functions that agree everywhere except on a set of assignments found
/// only by guessing one variable per block.
///
/// With m = floor(ell/t) blocks M_j = x_{(j-1)t+1} ... x_{jt}, f is the OR of
/// the blocks and g adds the term made of every block minus its k_j-th
/// variable.
struct InstancePair {
  std::size_t ell = 0;
  std::size_t t = 0;
  std::vector<std::size_t> k;  ///< 1-based index dropped from each block
  Mdnf f;
  Mdnf g;
  Term hidden;
  /// 1 everywhere except the dropped variable of each block: the largest
  /// assignment on which f and g differ.
  Assignment witness;
};

/// Requires t >= 2, ell >= t and floor(ell/t) >= 2 (a single block would be
/// absorbed by its own sub-term).
InstancePair hard_pair(std::size_t ell, std::size_t t, std::uint64_t seed);

/// Reference values; constants hidden by the asymptotic notation are 1, logs
/// are base 2. Values outside their regime are empty. None of these is a
/// certified bound for a particular instance.
struct BoundValues {
  double info;                             ///< r s log n
  std::optional<double> lower_s_dominant;  ///< (2s/r)^(r/2), r <= s
  std::optional<double> lower_r_dominant;  ///< (r/s)^(s-1), r > s
  double alg1;                             ///< r^(s-1)
  double alg2;                             ///< s * explicit (s-1, r)-CFF size over r s positions
  double alg3;                             ///< sqrt(s) C(s+r,s) (r log r + log 1/delta)
  double alg4;                             ///< (3e)^r (rs)^(r/2+1.5)
  double alg5;                             ///< sqrt(r) (3e)^r s^(r/2) (s log s + log 1/delta)

  /// The lower bound that applies in this regime.
  double lower() const { return lower_s_dominant ? *lower_s_dominant : lower_r_dominant.value_or(0.0); }
  /// Reference value for algorithm 1..5.
  double for_algorithm(int alg) const;
};

BoundValues bound_values(std::size_t n, std::size_t s, std::size_t r, double delta = 0.1);

/// t^floor(ell/t): average guesses needed to tell the pair apart.
double hard_pair_reference(std::size_t ell, std::size_t t);

}  // namespace mql
