#include "mql/find_term.hpp"

#include <algorithm>
#include <cmath>

#include "mql/error.hpp"

namespace mql {

Term find_term(QueryOracle& oracle, Assignment a, std::size_t r, FindTermStats* stats) {
  if (a.size() != oracle.n()) throw ContractError("find_term: assignment length mismatch");
  const std::size_t blocks = 2 * std::max<std::size_t>(r, 1);
  const std::uint64_t start = oracle.query_count();
  // True once some query answered 1 at the current working assignment.
  bool confirmed = false;
  FindTermStats local;

  auto ones = a.ones_positions();
  while (ones.size() > blocks) {
    local.pass_weights.push_back(ones.size());
    ++local.passes;
    const std::size_t w = ones.size();
    const std::size_t base = w / blocks;
    const std::size_t extra = w % blocks;
    std::size_t begin = 0;
    for (std::size_t b = 0; b < blocks; ++b) {
      const std::size_t len = base + (b < extra ? 1 : 0);
      for (std::size_t i = begin; i < begin + len; ++i) a.clear(ones[i]);
      if (oracle.query(a)) {
        confirmed = true;
      } else {
        for (std::size_t i = begin; i < begin + len; ++i) a.set(ones[i]);
      }
      begin += len;
    }
    auto next = a.ones_positions();
    if (next.size() == ones.size()) break;  // nothing cleared; finish bit by bit
    ones = std::move(next);
  }

  for (Var v : a.ones_positions()) {
    a.clear(v);
    if (oracle.query(a)) {
      confirmed = true;
    } else {
      a.set(v);
    }
  }
  local.pass_weights.push_back(a.weight());

  if (!confirmed && !oracle.query(a)) {
    throw ContractError("find_term: the oracle answers 0 at the starting assignment");
  }
  local.queries = oracle.query_count() - start;
  if (stats != nullptr) *stats = std::move(local);
  return term_of_minterm(a);
}

std::uint64_t find_term_query_bound(std::size_t weight, std::size_t r) {
  const std::size_t two_r = 2 * std::max<std::size_t>(r, 1);
  const double ratio = static_cast<double>(std::max(weight, two_r)) / static_cast<double>(two_r);
  const auto passes = static_cast<std::uint64_t>(std::ceil(std::log2(ratio) - 1e-12));
  return two_r * passes + 2 * two_r;
}

}  // namespace mql
