#include "mql/learners.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <stdexcept>

#include "mql/error.hpp"
#include "mql/find_term.hpp"

namespace mql {

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::I: return "I";
    case Algorithm::II: return "II";
    case Algorithm::III: return "III";
    case Algorithm::IV: return "IV";
    case Algorithm::V: return "V";
  }
  return "?";
}

std::string to_string(CffMode m) {
  switch (m) {
    case CffMode::Exhaustive: return "exhaustive";
    case CffMode::Greedy: return "greedy";
    case CffMode::RandomVerified: return "random-verified";
    case CffMode::Random: return "random";
  }
  return "?";
}

std::optional<CffMode> parse_cff_mode(std::string_view s) {
  if (s == "exhaustive") return CffMode::Exhaustive;
  if (s == "greedy") return CffMode::Greedy;
  if (s == "random-verified") return CffMode::RandomVerified;
  if (s == "random") return CffMode::Random;
  return std::nullopt;
}

namespace {

constexpr std::uint64_t kMaxCandidates = 1'000'000'000;
constexpr int kVerifiedAttempts = 100;

// Random family usable over ground_n positions. Short grounds are drawn over
// s + r positions and cut down, which keeps every split of the short ground
// covered whenever the long family is a CFF.
CoverFreeFamily random_family(std::size_t ground_n, std::size_t s, std::size_t r, double delta,
                              std::uint64_t seed) {
  if (s + r == 0) return exhaustive_cff(ground_n, s, r);
  const std::size_t wide = std::max(ground_n, s + r);
  CoverFreeFamily family = build_random_cff(wide, s, r, delta, seed);
  return wide == ground_n ? family : project_cff(family, ground_n);
}

// Assignment that follows `row` on vars and is 1 everywhere else.
Assignment spread_row(std::size_t n, const std::vector<Var>& vars, const Assignment& row) {
  Assignment a = Assignment::ones(n);
  for (std::size_t j = 0; j < vars.size(); ++j) {
    if (!row[j]) a.clear(vars[j]);
  }
  return a;
}

// Known terms so far. Adding a term re-reduces; a repeat or an excess over
// s_max means the target broke the declared bounds.
class KnownTerms {
 public:
  KnownTerms(std::size_t n, std::size_t s_max, LearnTrace* trace) : h_(n), s_max_(s_max), trace_(trace) {}

  const Mdnf& h() const noexcept { return h_; }

  void add(const Term& t) {
    if (h_.contains(t)) throw std::logic_error("learner rediscovered a known term " + t.to_display());
    std::vector<Term> terms = h_.terms();
    terms.push_back(t);
    h_ = reduce(std::move(terms), h_.n());
    if (trace_ != nullptr) trace_->found.push_back(t);
    if (h_.term_count() > s_max_ && !h_.is_constant_one()) {
      throw ContractError("target has more than s_max = " + std::to_string(s_max_) + " terms");
    }
  }

 private:
  Mdnf h_;
  std::size_t s_max_;
  LearnTrace* trace_;
};

void push_round(LearnTrace* trace, RoundRecord rec) {
  if (trace != nullptr) trace->rounds.push_back(std::move(rec));
}

// Query a candidate known to be 0 on h; on a positive answer run find_term.
std::optional<Term> probe(QueryOracle& oracle, const Assignment& a, std::size_t r_max, RoundRecord& rec) {
  ++rec.candidate_queries;
  if (!oracle.query(a)) return std::nullopt;
  FindTermStats stats;
  Term t = find_term(oracle, a, r_max, &stats);
  rec.find_term_queries += stats.queries;
  return t;
}

// Rounds shared by Algorithms II and III: the family for a round depends only
// on |V| and the number of known terms.
using FamilyFor = std::function<CoverFreeFamily(std::size_t ground_n, std::size_t known)>;

Mdnf cff_rounds(QueryOracle& oracle, std::size_t s_max, std::size_t r_max, const FamilyFor& family_for,
                LearnTrace* trace) {
  const std::size_t n = oracle.n();
  KnownTerms known(n, s_max, trace);
  for (;;) {
    const Mdnf& h = known.h();
    RoundRecord rec;
    rec.known_terms = h.term_count();
    const std::vector<Var> vars = h.variables();
    const CoverFreeFamily family = family_for(vars.size(), h.term_count());
    std::optional<Term> found;
    for (const auto& row : family.rows) {
      ++rec.candidates;
      const Assignment a = spread_row(n, vars, row);
      if (eval(h, a)) {
        ++rec.local_rejections;
        continue;
      }
      if ((found = probe(oracle, a, r_max, rec))) break;
    }
    rec.found = found;
    push_round(trace, rec);
    if (!found) return h;
    known.add(*found);
    if (found->empty()) return known.h();
  }
}

}  // namespace

// ----------------------------------------------------------------- CffSource

CffSource::CffSource(CffMode mode, std::uint64_t seed, double delta_per_family)
    : mode_(mode), rng_(seed), delta_(delta_per_family) {}

const CoverFreeFamily& CffSource::get(std::size_t ground_n, std::size_t s, std::size_t r) {
  const auto key = std::make_tuple(ground_n, s, r);
  if (mode_ == CffMode::Random) {
    scratch_ = random_family(ground_n, s, r, delta_, rng_.next());
    ++built_;
    return scratch_;
  }
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  CoverFreeFamily family;
  switch (mode_) {
    case CffMode::Exhaustive:
      family = exhaustive_cff(ground_n, s, r);
      break;
    case CffMode::Greedy:
      family = ground_n <= 64 ? greedy_cff(ground_n, s, r) : exhaustive_cff(ground_n, s, r);
      break;
    case CffMode::RandomVerified: {
      bool ok = false;
      for (int attempt = 0; attempt < kVerifiedAttempts && !ok; ++attempt) {
        family = random_family(ground_n, s, r, delta_, rng_.next());
        ok = verify_cff(family).ok;
      }
      if (!ok) throw LimitExceeded("no verified random CFF after " + std::to_string(kVerifiedAttempts) + " draws");
      family.verified = true;
      break;
    }
    case CffMode::Random:
      break;
  }
  ++built_;
  return cache_.emplace(key, std::move(family)).first->second;
}

// ---------------------------------------------------------------- Algorithm I

Mdnf learn_alg1(QueryOracle& oracle, std::size_t s_max, std::size_t r_max, LearnTrace* trace) {
  const std::size_t n = oracle.n();
  KnownTerms known(n, s_max, trace);
  for (;;) {
    const Mdnf& h = known.h();
    const auto& terms = h.terms();
    RoundRecord rec;
    rec.known_terms = terms.size();

    std::uint64_t product = 1;
    for (const auto& t : terms) {
      product *= t.size();
      if (product > kMaxCandidates) throw LimitExceeded("Algorithm I candidate set too large");
    }
    rec.candidates = product;

    // Odometer over one chosen variable per term; the last term moves fastest.
    std::vector<std::size_t> pick(terms.size(), 0);
    std::optional<Term> found;
    for (std::uint64_t c = 0; c < product; ++c) {
      Assignment a = Assignment::ones(n);
      for (std::size_t i = 0; i < terms.size(); ++i) a.clear(terms[i].vars()[pick[i]]);
      if (eval(h, a)) throw std::logic_error("Algorithm I candidate satisfies a known term");
      if ((found = probe(oracle, a, r_max, rec))) break;
      for (std::size_t i = terms.size(); i-- > 0;) {
        if (++pick[i] < terms[i].size()) break;
        pick[i] = 0;
      }
    }
    rec.found = found;
    push_round(trace, rec);
    if (!found) return h;
    known.add(*found);
    if (found->empty()) return known.h();
  }
}

// --------------------------------------------------------------- Algorithm II

Mdnf learn_alg2(QueryOracle& oracle, std::size_t s_max, std::size_t r_max, CffMode mode, LearnTrace* trace,
                std::uint64_t seed, double delta) {
  CffSource cffs(mode, seed, delta);
  return cff_rounds(
      oracle, s_max, r_max,
      [&](std::size_t ground_n, std::size_t known) { return cffs.get(ground_n, known, r_max); }, trace);
}

// -------------------------------------------------------------- Algorithm III

Mdnf learn_alg3(QueryOracle& oracle, std::size_t s_max, std::size_t r_max, double delta, std::uint64_t seed,
                LearnTrace* trace) {
  if (!(delta > 0.0 && delta < 1.0)) throw ContractError("delta must lie in (0, 1)");
  const std::size_t ground = r_max * s_max;
  const std::size_t zeros = s_max > 0 ? s_max - 1 : 0;
  const CoverFreeFamily shared = random_family(ground, zeros, r_max, delta, seed);
  return cff_rounds(
      oracle, s_max, r_max,
      [&](std::size_t ground_n, std::size_t) {
        if (ground_n > shared.ground_n) {
          throw ContractError("known terms span more than r_max * s_max variables");
        }
        return project_cff(shared, ground_n);
      },
      trace);
}

// ------------------------------------------------------------ Algorithms IV, V

std::optional<Assignment> learn_read(QueryOracle& oracle, const Mdnf& h, std::size_t rprime, std::size_t k,
                                     CffSource& cffs, RoundRecord* record) {
  RoundRecord scratch;
  RoundRecord& rec = record != nullptr ? *record : scratch;
  const std::size_t n = oracle.n();
  const std::vector<Var> vars = h.variables();
  const CoverFreeFamily& family = cffs.get(vars.size(), rprime * k, rprime);
  for (const auto& row : family.rows) {
    ++rec.candidates;
    Assignment a = spread_row(n, vars, row);
    // Knock out each known term still satisfied, in term order.
    for (const auto& t : h.terms()) {
      if (!t.empty() && eval_term(t, a)) a.clear(t.vars().front());
    }
    if (eval(h, a)) {
      ++rec.local_rejections;
      continue;
    }
    ++rec.candidate_queries;
    if (oracle.query(a)) return a;
  }
  return std::nullopt;
}

std::size_t frequency_threshold(std::size_t s_max, std::size_t d) {
  if (d == 0) throw ContractError("frequency parameter d must be at least 1");
  std::size_t tau = 1;
  while (tau * tau * d < s_max) ++tau;
  return tau;
}

std::optional<Term> find_new_term_frequent(QueryOracle& oracle, const Mdnf& h, std::size_t s_max,
                                           std::size_t r_max, std::size_t d, CffSource& cffs,
                                           RoundRecord* record) {
  RoundRecord scratch;
  RoundRecord& rec = record != nullptr ? *record : scratch;
  const std::size_t n = oracle.n();
  const std::size_t tau = frequency_threshold(s_max, d);
  const std::vector<Var> frequent = frequent_vars(h, tau);
  // Each frequent variable takes tau of the at most s_max * r_max term slots.
  if (frequent.size() * tau > std::max(h.term_count(), s_max) * r_max) {
    throw ContractError("known terms exceed the declared r_max");
  }

  const std::size_t max_fixed_ones = std::min(r_max, frequent.size());
  for (std::size_t size = 0; size <= max_fixed_ones; ++size) {
    std::vector<std::size_t> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    for (;;) {
      Substitution fix(n);
      for (Var v : frequent) fix.fix(v, false);
      for (auto i : pick) fix.fix(frequent[i], true);

      const Mdnf restricted = apply_substitution(h, fix);
      if (!restricted.is_constant_one()) {
        QueryOracle view = oracle.restricted_view(fix);
        if (auto hit = learn_read(view, restricted, r_max - size, tau - 1, cffs, &rec)) {
          const Assignment lifted = fix.merge(*hit);
          if (eval(h, lifted)) throw std::logic_error("lifted assignment satisfies a known term");
          FindTermStats stats;
          Term t = find_term(oracle, lifted, r_max, &stats);
          rec.find_term_queries += stats.queries;
          return t;
        }
      }

      // Next R of this size in lexicographic order.
      std::size_t i = size;
      bool advanced = false;
      while (i > 0) {
        --i;
        if (pick[i] < frequent.size() - size + i) {
          ++pick[i];
          for (std::size_t j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }
  }
  return std::nullopt;
}

namespace {

Mdnf frequent_rounds(QueryOracle& oracle, std::size_t s_max, std::size_t r_max, std::size_t d, CffSource& cffs,
                     LearnTrace* trace) {
  KnownTerms known(oracle.n(), s_max, trace);
  for (;;) {
    RoundRecord rec;
    rec.known_terms = known.h().term_count();
    auto found = find_new_term_frequent(oracle, known.h(), s_max, r_max, d, cffs, &rec);
    rec.found = found;
    push_round(trace, rec);
    if (!found) return known.h();
    known.add(*found);
    if (found->empty()) return known.h();
  }
}

}  // namespace

Mdnf learn_alg4(QueryOracle& oracle, std::size_t s_max, std::size_t r_max, CffMode mode, LearnTrace* trace,
                std::optional<std::size_t> d) {
  if (mode == CffMode::Random) throw ContractError("Algorithm IV needs verified CFFs");
  CffSource cffs(mode, 0, 0.5);
  return frequent_rounds(oracle, s_max, r_max, d.value_or(std::max<std::size_t>(r_max, 1)), cffs, trace);
}

Mdnf learn_alg5(QueryOracle& oracle, std::size_t s_max, std::size_t r_max, double delta, std::uint64_t seed,
                LearnTrace* trace) {
  if (!(delta > 0.0 && delta < 1.0)) throw ContractError("delta must lie in (0, 1)");
  CffSource cffs(CffMode::Random, seed, delta / static_cast<double>(std::max<std::size_t>(s_max, 1)));
  return frequent_rounds(oracle, s_max, r_max, 1, cffs, trace);
}

// ----------------------------------------------------------------- run_learner

RunReport run_learner(const LearnerConfig& config, QueryOracle& oracle, const Mdnf* target) {
  RunReport report;
  report.algorithm = config.algorithm;
  report.n = oracle.n();
  report.s_max = config.s_max;
  report.r_max = config.r_max;
  report.delta = config.delta;
  report.seed = config.seed;
  report.cff_mode = config.cff_mode;

  const auto start = std::chrono::steady_clock::now();
  bool finished = false;
  try {
    switch (config.algorithm) {
      case Algorithm::I:
        learn_alg1(oracle, config.s_max, config.r_max, &report.trace);
        break;
      case Algorithm::II:
        learn_alg2(oracle, config.s_max, config.r_max, config.cff_mode, &report.trace, config.seed, config.delta);
        break;
      case Algorithm::III:
        learn_alg3(oracle, config.s_max, config.r_max, config.delta, config.seed, &report.trace);
        break;
      case Algorithm::IV:
        learn_alg4(oracle, config.s_max, config.r_max, config.cff_mode, &report.trace, config.d);
        break;
      case Algorithm::V:
        learn_alg5(oracle, config.s_max, config.r_max, config.delta, config.seed, &report.trace);
        break;
    }
    finished = true;
  } catch (const BudgetExhausted& e) {
    report.budget_exhausted = true;
    report.error = e.what();
  } catch (const ContractError& e) {
    report.error = e.what();
  } catch (const LimitExceeded& e) {
    report.limit_exceeded = true;
    report.error = e.what();
  }
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  report.hypothesis = reduce(report.trace.found, oracle.n());
  report.terms_found = report.hypothesis.term_count();
  report.queries = oracle.query_count();
  report.queries_dedup = oracle.distinct_query_count();
  report.success = finished && (target == nullptr || equivalent(report.hypothesis, *target));
  return report;
}

}  // namespace mql
