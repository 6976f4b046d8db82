#pragma once

// (n,(s,r))-cover-free families: for every s+r positions and every way of
// calling s of them "zero" and r of them "one", some row realizes the split.
//
// When ground_n < s + r there is no full (s+r)-tuple. The property checked
// then is the one the learners rely on: every split of the whole ground set
// into at most s zeros and at most r ones is realized by some row.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "mql/boolean.hpp"

namespace mql {

struct CoverFreeFamily {
  std::size_t ground_n = 0;
  std::size_t s = 0;
  std::size_t r = 0;
  std::vector<Assignment> rows;
  bool verified = false;

  std::size_t size() const noexcept { return rows.size(); }
};

/// A (tuple, J) pair that no row covers. Both hold ground positions in
/// ascending order; `zeros` is a subset of `tuple`.
struct CffViolation {
  std::vector<Var> tuple;
  std::vector<Var> zeros;

  friend bool operator==(const CffViolation&, const CffViolation&) = default;
};

struct CffVerdict {
  bool ok = true;
  std::optional<CffViolation> counterexample;

  explicit operator bool() const noexcept { return ok; }
};

/// Default ceiling on enumeration work for the exhaustive helpers.
inline constexpr std::uint64_t kDefaultCffLimit = 200'000'000;

/// Rows needed so a random family with bias r/(s+r) fails with probability at
/// most delta, from a union bound over the n^(s+r) (tuple, J) events:
///   m = ceil(((s+r) ln n + ln(1/delta)) / -ln(1 - p^r (1-p)^s)),  p = r/(s+r).
/// Always at least 1.
std::size_t random_cff_size(std::size_t ground_n, std::size_t s, std::size_t r, double delta);

/// random_cff_size rows, each bit 1 independently with probability r/(s+r).
/// verified is false.
CoverFreeFamily build_random_cff(std::size_t ground_n, std::size_t s, std::size_t r, double delta,
                                 std::uint64_t seed);

/// Checks every (tuple, J). The first violation in lexicographic order of
/// tuple, then |J|, then J is reported.
CffVerdict verify_cff(const CoverFreeFamily& family, std::uint64_t limit = kDefaultCffLimit);

/// Every row that is 0 on some Z with |Z| <= s and 1 elsewhere, sorted as
/// strings. Covers by construction.
CoverFreeFamily exhaustive_cff(std::size_t ground_n, std::size_t s, std::size_t r,
                               std::uint64_t limit = kDefaultCffLimit);

/// Greedy set cover over the uncovered (tuple, J) constraints. Never larger
/// than exhaustive_cff.
CoverFreeFamily greedy_cff(std::size_t ground_n, std::size_t s, std::size_t r,
                           std::uint64_t limit = kDefaultCffLimit);

/// Reference sizes for reports. Constants hidden by the asymptotic notation
/// are taken as 1 and logarithms are base 2.
struct CffSizeBounds {
  double lower;              ///< (s+r)/log C(s+r,s) * C(s+r,s) * log n
  double explicit_power;     ///< min((2e)^s r^(s+3), (2e)^r s^(r+3)) * log n
  double explicit_binomial;  ///< C(s+r,r) * 2^((s+r)/log log(s+r)) * log n
};

CffSizeBounds cff_size_bounds(std::size_t s, std::size_t r, std::size_t ground_n);

/// Restriction of every row to its first `width` coordinates; repeated rows
/// are dropped (first occurrence kept).
CoverFreeFamily project_cff(const CoverFreeFamily& family, std::size_t width);

double binomial(std::size_t n, std::size_t k);

}  // namespace mql
