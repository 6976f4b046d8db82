#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mql/boolean.hpp"
#include "mql/oracle.hpp"

namespace mql {

struct FindTermStats {
  std::uint64_t queries = 0;
  std::size_t passes = 0;                 ///< block-halving passes
  std::vector<std::size_t> pass_weights;  ///< weight before each pass, then the final weight
};

/// Descends from a positive assignment to a minterm of the oracle's function.
///
/// While more than 2r bits are set, the 1-positions are split into 2r
/// consecutive blocks (sizes floor/ceil of w/2r); each block is cleared in
/// turn and kept cleared iff the oracle still answers 1. With at most 2r bits
/// left, single bits are tried the same way in ascending order.
///
/// The starting point is only queried when no clearing step came back
/// positive, which is also how a negative start is detected (ContractError).
Term find_term(QueryOracle& oracle, Assignment a, std::size_t r, FindTermStats* stats = nullptr);

/// Query ceiling for one call: 2r * ceil(log2(max(w, 2r) / 2r)) + 4r.
std::uint64_t find_term_query_bound(std::size_t weight, std::size_t r);

}  // namespace mql
