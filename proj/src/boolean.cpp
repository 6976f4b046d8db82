#include "mql/boolean.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

#include "mql/error.hpp"

namespace mql {

namespace {

constexpr std::size_t word_count(std::size_t n) { return (n + 63) / 64; }

}  // namespace

// ---------------------------------------------------------------- Assignment

Assignment::Assignment(std::size_t n, bool value)
    : n_(n), words_(word_count(n), value ? ~std::uint64_t{0} : 0) {
  if (value && (n & 63) != 0) words_.back() = (std::uint64_t{1} << (n & 63)) - 1;
}

Assignment Assignment::from_string(std::string_view bits) {
  Assignment a(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      a.set(i);
    } else if (bits[i] != '0') {
      throw FormatError("assignment strings may only contain '0' and '1'");
    }
  }
  return a;
}

Assignment Assignment::indicator(std::size_t n, std::span<const Var> vars) {
  Assignment a(n);
  for (Var v : vars) a.set(v);
  return a;
}

bool Assignment::get(std::size_t i) const {
  if (i >= n_) throw ContractError("assignment index out of range");
  return (*this)[i];
}

void Assignment::set(std::size_t i, bool value) {
  if (i >= n_) throw ContractError("assignment index out of range");
  const std::uint64_t mask = std::uint64_t{1} << (i & 63);
  if (value) {
    words_[i >> 6] |= mask;
  } else {
    words_[i >> 6] &= ~mask;
  }
}

std::size_t Assignment::weight() const noexcept {
  std::size_t w = 0;
  for (auto word : words_) w += static_cast<std::size_t>(std::popcount(word));
  return w;
}

std::vector<Var> Assignment::ones_positions() const {
  std::vector<Var> out;
  out.reserve(weight());
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t word = words_[w];
    while (word != 0) {
      const int bit = std::countr_zero(word);
      out.push_back(static_cast<Var>(w * 64 + static_cast<std::size_t>(bit)));
      word &= word - 1;
    }
  }
  return out;
}

bool Assignment::leq(const Assignment& other) const {
  if (n_ != other.n_) throw ContractError("comparing assignments of different length");
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & ~other.words_[w]) != 0) return false;
  }
  return true;
}

std::string Assignment::to_string() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i) {
    if ((*this)[i]) s[i] = '1';
  }
  return s;
}

std::size_t AssignmentHash::operator()(const Assignment& a) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ a.size();
  for (auto w : a.words()) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------------- Term

Term::Term(std::vector<Var> vars) : vars_(std::move(vars)) {
  for (std::size_t i = 1; i < vars_.size(); ++i) {
    if (vars_[i - 1] >= vars_[i]) throw ContractError("term variables must be strictly increasing");
  }
}

Term Term::from_unsorted(std::vector<Var> vars) {
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return Term(std::move(vars));
}

bool Term::contains(Var v) const { return std::binary_search(vars_.begin(), vars_.end(), v); }

bool Term::is_subset_of(const Term& other) const {
  return std::includes(other.vars_.begin(), other.vars_.end(), vars_.begin(), vars_.end());
}

std::string Term::to_display() const {
  if (vars_.empty()) return "1";
  std::string s;
  for (Var v : vars_) s += "x" + std::to_string(v + 1);
  return s;
}

// ---------------------------------------------------------------------- Mdnf

Mdnf Mdnf::from_reduced(std::size_t n, std::vector<Term> terms) {
  for (const auto& t : terms) {
    if (t.min_dimension() > n) throw ContractError("term variable index out of range");
  }
  Mdnf reduced = reduce(terms, n);
  if (reduced.term_count() != terms.size()) {
    throw ContractError("term set is not reduced (duplicate or absorbed term)");
  }
  return reduced;
}

std::size_t Mdnf::max_term_size() const noexcept {
  std::size_t r = 0;
  for (const auto& t : terms_) r = std::max(r, t.size());
  return r;
}

bool Mdnf::contains(const Term& t) const { return std::binary_search(terms_.begin(), terms_.end(), t); }

std::vector<Var> Mdnf::variables() const {
  std::vector<Var> vars;
  for (const auto& t : terms_) vars.insert(vars.end(), t.vars().begin(), t.vars().end());
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

std::string Mdnf::to_display() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i != 0) s += " v ";
    s += terms_[i].to_display();
  }
  return s;
}

// -------------------------------------------------------------- Substitution

bool Substitution::is_identity() const {
  return std::all_of(actions_.begin(), actions_.end(), [](Fix f) { return f == Fix::Free; });
}

std::size_t Substitution::free_count() const {
  return static_cast<std::size_t>(std::count(actions_.begin(), actions_.end(), Fix::Free));
}

Assignment Substitution::merge(const Assignment& a) const {
  if (a.size() != actions_.size()) throw ContractError("substitution and assignment differ in length");
  Assignment out = a;
  for (std::size_t i = 0; i < actions_.size(); ++i) {
    if (actions_[i] != Fix::Free) out.set(i, actions_[i] == Fix::One);
  }
  return out;
}

Substitution Substitution::compose(const Substitution& inner) const {
  if (inner.size() != size()) throw ContractError("substitutions differ in length");
  Substitution out = *this;
  for (std::size_t i = 0; i < actions_.size(); ++i) {
    if (inner.actions_[i] == Fix::Free) continue;
    if (actions_[i] != Fix::Free && actions_[i] != inner.actions_[i]) {
      throw ContractError("conflicting re-fix of variable x" + std::to_string(i + 1));
    }
    out.actions_[i] = inner.actions_[i];
  }
  return out;
}

// ---------------------------------------------------------------- operations

bool eval_term(const Term& t, const Assignment& a) {
  if (t.min_dimension() > a.size()) throw ContractError("term variable outside assignment");
  for (Var v : t.vars()) {
    if (!a[v]) return false;
  }
  return true;
}

bool eval(const Mdnf& f, const Assignment& a) {
  if (f.n() != a.size()) throw ContractError("function and assignment differ in dimension");
  for (const auto& t : f.terms()) {
    if (eval_term(t, a)) return true;
  }
  return false;
}

Mdnf reduce(std::vector<Term> terms, std::size_t n) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());

  // Shorter terms come first, so a term is kept iff no kept term is inside it.
  Mdnf out(n);
  for (auto& t : terms) {
    if (t.min_dimension() > n) throw ContractError("term variable index out of range");
    const bool absorbed = std::any_of(out.terms_.begin(), out.terms_.end(),
                                      [&](const Term& kept) { return kept.is_subset_of(t); });
    if (!absorbed) out.terms_.push_back(std::move(t));
  }
  std::sort(out.terms_.begin(), out.terms_.end());
  return out;
}

bool is_minterm(const Mdnf& f, const Assignment& a) {
  if (!eval(f, a)) return false;
  Assignment b = a;
  for (Var i : a.ones_positions()) {
    b.clear(i);
    if (eval(f, b)) return false;
    b.set(i);
  }
  return true;
}

Term term_of_minterm(const Assignment& a) { return Term(a.ones_positions()); }

Mdnf apply_substitution(const Mdnf& f, const Substitution& sub) {
  if (sub.size() != f.n()) throw ContractError("substitution and function differ in dimension");
  std::vector<Term> kept;
  kept.reserve(f.term_count());
  for (const auto& t : f.terms()) {
    std::vector<Var> rest;
    bool killed = false;
    for (Var v : t.vars()) {
      const Fix action = sub[v];
      if (action == Fix::Zero) {
        killed = true;
        break;
      }
      if (action == Fix::Free) rest.push_back(v);
    }
    if (!killed) kept.emplace_back(std::move(rest));
  }
  return reduce(std::move(kept), f.n());
}

std::vector<Var> frequent_vars(const Mdnf& f, std::size_t threshold) {
  if (threshold == 0) throw ContractError("frequency threshold must be at least 1");
  std::unordered_map<Var, std::size_t> counts;
  for (const auto& t : f.terms()) {
    for (Var v : t.vars()) ++counts[v];
  }
  std::vector<Var> out;
  for (const auto& [v, c] : counts) {
    if (c >= threshold) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool equivalent(const Mdnf& f, const Mdnf& g) {
  if (f.n() != g.n()) throw ContractError("comparing functions of different dimension");
  return f.terms() == g.terms();
}

}  // namespace mql
