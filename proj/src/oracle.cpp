#include "mql/oracle.hpp"

#include "mql/error.hpp"

namespace mql {

QueryOracle::QueryOracle(Mdnf target, std::optional<std::uint64_t> budget)
    : state_(std::make_shared<State>()), sub_(Substitution::identity(target.n())) {
  state_->target = std::move(target);
  state_->budget = budget;
}

std::size_t QueryOracle::n() const noexcept { return state_->target.n(); }

bool QueryOracle::query(const Assignment& a) {
  if (a.size() != n()) throw ContractError("query length does not match the hidden function");
  State& st = *state_;
  if (st.budget && st.count >= *st.budget) {
    throw BudgetExhausted("query budget of " + std::to_string(*st.budget) + " exhausted");
  }
  ++st.count;
  Assignment effective = sub_.is_identity() ? a : sub_.merge(a);
  const bool answer = eval(st.target, effective);
  st.seen.insert(std::move(effective));
  return answer;
}

QueryOracle QueryOracle::restricted_view(const Substitution& sub) const {
  if (sub.size() != n()) throw ContractError("substitution length does not match the hidden function");
  return QueryOracle(state_, sub_.compose(sub));
}

std::uint64_t QueryOracle::query_count() const noexcept { return state_->count; }

std::uint64_t QueryOracle::distinct_query_count() const noexcept { return state_->seen.size(); }

std::optional<std::uint64_t> QueryOracle::budget() const noexcept { return state_->budget; }

namespace testing {
const Mdnf& reveal_target(const QueryOracle& oracle) { return oracle.state_->target; }
}  // namespace testing

}  // namespace mql
