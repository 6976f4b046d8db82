#include "mql/cff.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>
#include <unordered_set>

#include "mql/error.hpp"
#include "mql/random.hpp"

namespace mql {

namespace {

// Advances idx (strictly increasing, values < n) to the next combination in
// lexicographic order. Returns false after the last one.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<std::size_t> first_combination(std::size_t k) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  return idx;
}

// Shape of the constraint set for given parameters.
struct Shape {
  std::size_t width;  // tuple size, min(s + r, n)
  std::size_t zlo;    // admissible zero counts per tuple
  std::size_t zhi;
};

Shape constraint_shape(std::size_t n, std::size_t s, std::size_t r) {
  Shape sh{};
  sh.width = std::min(s + r, n);
  sh.zlo = sh.width > r ? sh.width - r : 0;
  sh.zhi = std::min(s, sh.width);
  return sh;
}

double patterns_per_tuple(const Shape& sh) {
  double p = 0;
  for (std::size_t z = sh.zlo; z <= sh.zhi; ++z) p += binomial(sh.width, z);
  return p;
}

// String order: compare at the first differing position, '0' < '1'.
bool lex_less(const Assignment& a, const Assignment& b) {
  const auto wa = a.words();
  const auto wb = b.words();
  for (std::size_t w = 0; w < wa.size(); ++w) {
    const std::uint64_t diff = wa[w] ^ wb[w];
    if (diff != 0) {
      const int bit = std::countr_zero(diff);
      return ((wa[w] >> bit) & 1U) == 0;
    }
  }
  return false;
}

void sort_rows(std::vector<Assignment>& rows) { std::sort(rows.begin(), rows.end(), lex_less); }

void check_limit(double work, std::uint64_t limit, const char* what) {
  if (work > static_cast<double>(limit)) {
    throw LimitExceeded(std::string(what) + ": enumeration of about " +
                        std::to_string(static_cast<long long>(work)) + " steps exceeds limit " +
                        std::to_string(limit));
  }
}

std::uint64_t low_mask(std::size_t width) {
  return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

}  // namespace

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  double out = 1;
  for (std::size_t i = 1; i <= k; ++i) out = out * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(out);
}

std::size_t random_cff_size(std::size_t ground_n, std::size_t s, std::size_t r, double delta) {
  if (s + r == 0 || s + r > ground_n) {
    throw InfeasibleParameters("random CFF needs 1 <= s + r <= ground_n");
  }
  if (!(delta > 0.0 && delta < 1.0)) throw InfeasibleParameters("delta must lie in (0, 1)");
  const double d = static_cast<double>(s + r);
  const double p = static_cast<double>(r) / d;
  const double hit = std::pow(p, static_cast<double>(r)) * std::pow(1.0 - p, static_cast<double>(s));
  if (hit >= 1.0) return 1;
  const double events = d * std::log(static_cast<double>(ground_n)) + std::log(1.0 / delta);
  const double m = std::ceil(events / -std::log1p(-hit));
  return std::max<std::size_t>(1, static_cast<std::size_t>(m));
}

CoverFreeFamily build_random_cff(std::size_t ground_n, std::size_t s, std::size_t r, double delta,
                                 std::uint64_t seed) {
  const std::size_t m = random_cff_size(ground_n, s, r, delta);
  const double p = static_cast<double>(r) / static_cast<double>(s + r);
  Prng rng(seed);
  CoverFreeFamily family{ground_n, s, r, {}, false};
  family.rows.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    Assignment row(ground_n);
    for (std::size_t j = 0; j < ground_n; ++j) {
      if (rng.bernoulli(p)) row.set(j);
    }
    family.rows.push_back(std::move(row));
  }
  return family;
}

CffVerdict verify_cff(const CoverFreeFamily& family, std::uint64_t limit) {
  const std::size_t n = family.ground_n;
  for (const auto& row : family.rows) {
    if (row.size() != n) throw ContractError("CFF row length differs from ground_n");
  }
  const Shape sh = constraint_shape(n, family.s, family.r);
  if (sh.width > 63) throw LimitExceeded("CFF verification supports tuples of at most 63 positions");
  const double tuples = binomial(n, sh.width);
  check_limit(tuples * (static_cast<double>(family.rows.size() * std::max<std::size_t>(sh.width, 1)) +
                        patterns_per_tuple(sh)),
              limit, "verify_cff");

  const std::uint64_t full = low_mask(sh.width);
  const bool dense = sh.width <= 20;
  std::vector<std::uint32_t> stamp(dense ? (std::size_t{1} << sh.width) : 0, 0);
  std::vector<std::uint64_t> seen;
  std::uint32_t generation = 0;

  auto tuple = first_combination(sh.width);
  do {
    ++generation;
    seen.clear();
    for (const auto& row : family.rows) {
      std::uint64_t pattern = 0;
      for (std::size_t i = 0; i < sh.width; ++i) {
        if (row[tuple[i]]) pattern |= std::uint64_t{1} << i;
      }
      if (dense) {
        stamp[pattern] = generation;
      } else {
        seen.push_back(pattern);
      }
    }
    if (!dense) std::sort(seen.begin(), seen.end());

    for (std::size_t z = sh.zlo; z <= sh.zhi; ++z) {
      auto zeros = first_combination(z);
      do {
        std::uint64_t need = full;
        for (auto j : zeros) need &= ~(std::uint64_t{1} << j);
        const bool covered =
            dense ? stamp[need] == generation : std::binary_search(seen.begin(), seen.end(), need);
        if (!covered) {
          CffViolation v;
          for (auto i : tuple) v.tuple.push_back(static_cast<Var>(i));
          for (auto j : zeros) v.zeros.push_back(static_cast<Var>(tuple[j]));
          return {false, std::move(v)};
        }
      } while (next_combination(zeros, sh.width));
    }
  } while (next_combination(tuple, n));
  return {true, std::nullopt};
}

CoverFreeFamily exhaustive_cff(std::size_t ground_n, std::size_t s, std::size_t r, std::uint64_t limit) {
  const std::size_t zmax = std::min(s, ground_n);
  double count = 0;
  for (std::size_t z = 0; z <= zmax; ++z) count += binomial(ground_n, z);
  check_limit(count * static_cast<double>(std::max<std::size_t>(ground_n, 1)), limit, "exhaustive_cff");

  CoverFreeFamily family{ground_n, s, r, {}, true};
  family.rows.reserve(static_cast<std::size_t>(count));
  for (std::size_t z = 0; z <= zmax; ++z) {
    auto zeros = first_combination(z);
    do {
      Assignment row = Assignment::ones(ground_n);
      for (auto j : zeros) row.clear(j);
      family.rows.push_back(std::move(row));
    } while (next_combination(zeros, ground_n));
  }
  sort_rows(family.rows);
  return family;
}

CoverFreeFamily greedy_cff(std::size_t ground_n, std::size_t s, std::size_t r, std::uint64_t limit) {
  if (ground_n > 64) throw LimitExceeded("greedy_cff supports at most 64 ground positions");
  CoverFreeFamily fallback = exhaustive_cff(ground_n, s, r, limit);

  const Shape sh = constraint_shape(ground_n, s, r);
  const double tuples_d = binomial(ground_n, sh.width);
  const double slots_d = tuples_d * std::ldexp(1.0, static_cast<int>(sh.width));
  check_limit(slots_d, limit, "greedy_cff");

  // Candidate rows as bit masks. Small grounds search every row; larger ones
  // pick a sub-family of the exhaustive rows.
  std::vector<std::uint64_t> pool;
  const bool all_rows =
      ground_n <= 16 && std::ldexp(tuples_d * static_cast<double>(sh.width), static_cast<int>(ground_n)) <=
                            static_cast<double>(limit);
  if (all_rows) {
    pool.resize(std::size_t{1} << ground_n);
    for (std::uint64_t v = 0; v < pool.size(); ++v) pool[v] = v;
  } else {
    check_limit(static_cast<double>(fallback.size()) * tuples_d * static_cast<double>(sh.width), limit,
                "greedy_cff");
    for (const auto& row : fallback.rows) pool.push_back(row.words().empty() ? 0 : row.words()[0]);
  }
  // Tie-break on string order of the rows.
  auto string_rank_less = [&](std::uint64_t a, std::uint64_t b) {
    const std::uint64_t diff = a ^ b;
    if (diff == 0) return false;
    return ((a >> std::countr_zero(diff)) & 1U) == 0;
  };
  std::sort(pool.begin(), pool.end(), string_rank_less);

  std::vector<std::vector<std::size_t>> tuples;
  {
    auto t = first_combination(sh.width);
    do {
      tuples.push_back(t);
    } while (next_combination(t, ground_n));
  }
  const std::size_t patterns = std::size_t{1} << sh.width;
  std::vector<std::uint8_t> covered(tuples.size() * patterns, 1);
  std::size_t remaining = 0;
  for (std::size_t ti = 0; ti < tuples.size(); ++ti) {
    for (std::size_t p = 0; p < patterns; ++p) {
      const auto zeros = sh.width - static_cast<std::size_t>(std::popcount(p));
      if (zeros >= sh.zlo && zeros <= sh.zhi) {
        covered[ti * patterns + p] = 0;
        ++remaining;
      }
    }
  }

  auto pattern_of = [&](std::uint64_t row, std::size_t ti) {
    std::size_t p = 0;
    for (std::size_t i = 0; i < sh.width; ++i) {
      if ((row >> tuples[ti][i]) & 1U) p |= std::size_t{1} << i;
    }
    return p;
  };
  auto gain_of = [&](std::uint64_t row) {
    std::size_t g = 0;
    for (std::size_t ti = 0; ti < tuples.size(); ++ti) {
      if (!covered[ti * patterns + pattern_of(row, ti)]) ++g;
    }
    return g;
  };

  // Lazy greedy: stale gains only overestimate.
  using Entry = std::pair<std::size_t, std::size_t>;  // (gain, pool index)
  auto worse = [](const Entry& a, const Entry& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second > b.second;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const std::size_t g = gain_of(pool[i]);
    if (g > 0) heap.emplace(g, i);
  }

  std::vector<std::uint64_t> chosen;
  while (remaining > 0 && !heap.empty()) {
    auto [stale, idx] = heap.top();
    heap.pop();
    const std::size_t g = gain_of(pool[idx]);
    if (g == 0) continue;
    if (!heap.empty() && worse(Entry{g, idx}, heap.top())) {
      heap.emplace(g, idx);
      continue;
    }
    for (std::size_t ti = 0; ti < tuples.size(); ++ti) {
      auto& slot = covered[ti * patterns + pattern_of(pool[idx], ti)];
      if (!slot) {
        slot = 1;
        --remaining;
      }
    }
    chosen.push_back(pool[idx]);
    if (chosen.size() >= fallback.size()) break;
  }
  if (remaining > 0 || chosen.size() >= fallback.size()) return fallback;

  CoverFreeFamily family{ground_n, s, r, {}, true};
  for (auto mask : chosen) {
    Assignment row(ground_n);
    for (std::size_t j = 0; j < ground_n; ++j) {
      if ((mask >> j) & 1U) row.set(j);
    }
    family.rows.push_back(std::move(row));
  }
  sort_rows(family.rows);
  return family;
}

CffSizeBounds cff_size_bounds(std::size_t s, std::size_t r, std::size_t ground_n) {
  const double log_n = std::log2(static_cast<double>(std::max<std::size_t>(ground_n, 1)));
  const double sd = static_cast<double>(s);
  const double rd = static_cast<double>(r);
  const double d = sd + rd;
  const double choose = binomial(s + r, s);
  const double two_e = 2.0 * std::numbers::e;

  CffSizeBounds b{};
  const double log_choose = std::log2(choose);
  b.lower = (log_choose > 0 ? d / log_choose : 1.0) * choose * log_n;
  b.explicit_power =
      std::min(std::pow(two_e, sd) * std::pow(rd, sd + 3), std::pow(two_e, rd) * std::pow(sd, rd + 3)) * log_n;
  const double loglog = d > 2 ? std::log2(std::log2(d)) : 0.0;
  b.explicit_binomial = choose * std::exp2(d / std::max(loglog, 1.0)) * log_n;
  return b;
}

CoverFreeFamily project_cff(const CoverFreeFamily& family, std::size_t width) {
  if (width > family.ground_n) throw ContractError("projection wider than the family");
  CoverFreeFamily out{width, family.s, family.r, {}, false};
  out.rows.reserve(family.rows.size());
  std::unordered_set<Assignment, AssignmentHash> seen;
  for (const auto& row : family.rows) {
    Assignment p(width);
    for (std::size_t j = 0; j < width; ++j) {
      if (row[j]) p.set(j);
    }
    if (seen.insert(p).second) out.rows.push_back(std::move(p));
  }
  return out;
}

}  // namespace mql
