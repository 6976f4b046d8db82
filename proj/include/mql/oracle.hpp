#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_set>

#include "mql/boolean.hpp"

namespace mql {

class QueryOracle;

namespace testing {
/// Test-only access to the hidden function. Does not touch the counter.
const Mdnf& reveal_target(const QueryOracle& oracle);
}  // namespace testing

/// Membership-query access to a hidden reduced MDNF.
///
/// Copies and restricted views share one counter, budget and target with the
/// root they came from. Every call to query() counts, repeated or not; the
/// number of distinct effective assignments is tracked alongside.
class QueryOracle {
 public:
  explicit QueryOracle(Mdnf target, std::optional<std::uint64_t> budget = std::nullopt);

  std::size_t n() const noexcept;

  /// f(a) under this view's substitution. Throws BudgetExhausted when the
  /// shared budget is spent and ContractError on a length mismatch.
  bool query(const Assignment& a);

  /// A view answering f(a merged with sub). Stacks on this view's own
  /// substitution; re-fixing a coordinate to the other value throws.
  QueryOracle restricted_view(const Substitution& sub) const;

  const Substitution& substitution() const noexcept { return sub_; }

  std::uint64_t query_count() const noexcept;
  std::uint64_t distinct_query_count() const noexcept;
  std::optional<std::uint64_t> budget() const noexcept;

 private:
  struct State {
    Mdnf target;
    std::optional<std::uint64_t> budget;
    std::uint64_t count = 0;
    std::unordered_set<Assignment, AssignmentHash> seen;
  };

  QueryOracle(std::shared_ptr<State> state, Substitution sub)
      : state_(std::move(state)), sub_(std::move(sub)) {}

  std::shared_ptr<State> state_;
  Substitution sub_;

  friend const Mdnf& testing::reveal_target(const QueryOracle&);
};

}  // namespace mql
