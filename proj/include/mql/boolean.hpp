#pragma once

// Assignments, monotone terms, substitutions and reduced monotone DNF.
//
// Variables are 0-indexed; x_1 in the usual notation is index 0. Only the
// display helpers (to_display) print 1-based names.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mql {

using Var = std::uint32_t;

/// Fixed-length bit vector over n variables.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::size_t n, bool value = false);

  static Assignment zeros(std::size_t n) { return Assignment(n, false); }
  static Assignment ones(std::size_t n) { return Assignment(n, true); }
  /// Parses a string of '0'/'1'; character i is variable i.
  static Assignment from_string(std::string_view bits);
  /// 1 exactly on `vars`.
  static Assignment indicator(std::size_t n, std::span<const Var> vars);

  std::size_t size() const noexcept { return n_; }

  bool operator[](std::size_t i) const noexcept {
    return (words_[i >> 6] >> (i & 63)) & 1U;
  }
  bool get(std::size_t i) const;
  void set(std::size_t i, bool value = true);
  void clear(std::size_t i) { set(i, false); }

  std::size_t weight() const noexcept;
  /// Ascending positions of the 1-bits.
  std::vector<Var> ones_positions() const;

  /// Pointwise a <= b. Sizes must match.
  bool leq(const Assignment& other) const;

  std::string to_string() const;

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct AssignmentHash {
  std::size_t operator()(const Assignment& a) const noexcept;
};

/// Monotone conjunction of distinct variables, kept sorted. The empty term is
/// the constant 1.
class Term {
 public:
  Term() = default;
  /// vars must be strictly increasing.
  explicit Term(std::vector<Var> vars);
  Term(std::initializer_list<Var> vars) : Term(std::vector<Var>(vars)) {}
  /// Sorts and deduplicates.
  static Term from_unsorted(std::vector<Var> vars);

  const std::vector<Var>& vars() const noexcept { return vars_; }
  std::size_t size() const noexcept { return vars_.size(); }
  bool empty() const noexcept { return vars_.empty(); }
  bool contains(Var v) const;
  bool is_subset_of(const Term& other) const;
  /// One past the largest index, 0 for the empty term.
  std::size_t min_dimension() const { return vars_.empty() ? 0 : vars_.back() + 1; }

  /// 1-based display, e.g. "x1x3"; the empty term prints as "1".
  std::string to_display() const;

  friend auto operator<=>(const Term&, const Term&) = default;
  friend bool operator==(const Term&, const Term&) = default;

 private:
  std::vector<Var> vars_;
};

/// Reduced monotone DNF over n variables: no term contains another and terms
/// are stored in lexicographic order. No terms is the constant 0; a single
/// empty term is the constant 1.
class Mdnf {
 public:
  Mdnf() = default;
  /// Constant 0 over n variables.
  explicit Mdnf(std::size_t n) : n_(n) {}

  /// Accepts only an already reduced term set (any order); throws
  /// ContractError otherwise.
  static Mdnf from_reduced(std::size_t n, std::vector<Term> terms);

  std::size_t n() const noexcept { return n_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  /// Largest term size, 0 when there are no terms.
  std::size_t max_term_size() const noexcept;
  bool is_constant_one() const noexcept { return terms_.size() == 1 && terms_[0].empty(); }
  bool contains(const Term& t) const;
  /// Sorted union of the variables of all terms.
  std::vector<Var> variables() const;

  std::string to_display() const;

  friend bool operator==(const Mdnf&, const Mdnf&) = default;

 private:
  friend Mdnf reduce(std::vector<Term> terms, std::size_t n);
  std::size_t n_ = 0;
  std::vector<Term> terms_;
};

/// Per-variable action of a substitution.
enum class Fix : std::uint8_t { Free, Zero, One };

/// Total map from variables to {fix-to-0, fix-to-1, free}.
class Substitution {
 public:
  Substitution() = default;
  explicit Substitution(std::size_t n) : actions_(n, Fix::Free) {}

  static Substitution identity(std::size_t n) { return Substitution(n); }

  std::size_t size() const noexcept { return actions_.size(); }
  Fix operator[](std::size_t i) const { return actions_.at(i); }
  void fix(std::size_t i, bool value) { actions_.at(i) = value ? Fix::One : Fix::Zero; }
  bool is_identity() const;
  std::size_t free_count() const;

  /// a with every fixed coordinate overwritten.
  Assignment merge(const Assignment& a) const;

  /// Stacks `inner` on top of this. Fixing a coordinate that is already fixed
  /// to the other value is a ContractError.
  Substitution compose(const Substitution& inner) const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::vector<Fix> actions_;
};

bool eval_term(const Term& t, const Assignment& a);
bool eval(const Mdnf& f, const Assignment& a);

/// Removes duplicates and absorbed supersets. Deterministic: result terms are
/// sorted lexicographically.
Mdnf reduce(std::vector<Term> terms, std::size_t n);

bool is_minterm(const Mdnf& f, const Assignment& a);

/// The term whose variables are the 1-positions of a.
Term term_of_minterm(const Assignment& a);

Mdnf apply_substitution(const Mdnf& f, const Substitution& sub);

/// Variables occurring in at least `threshold` terms, ascending.
std::vector<Var> frequent_vars(const Mdnf& f, std::size_t threshold);

/// Same function. Both arguments are reduced, so this is term-set equality.
bool equivalent(const Mdnf& f, const Mdnf& g);

}  // namespace mql
