#pragma once

// Exact learners for s-term r-MDNF from membership queries.
//
// Every learner takes upper bounds (s_max, r_max), grows a set h of known
// terms one round at a time, and stops after a round that finds no assignment
// with f = 1 and h = 0. A round that does find one hands it to find_term.
//
//   I   : zero one variable of each known term, every combination.
//   II  : rows of an (|V|, (#known, r_max))-CFF over the known variables V.
//   III : II with one random (r s, (s-1, r))-CFF drawn up front.
//   IV  : condition on the frequent variables of h, then search the read-k
//         remainder with CFF rows (learn_read); deterministic families.
//   V   : IV with d = 1 and random families.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "mql/boolean.hpp"
#include "mql/cff.hpp"
#include "mql/oracle.hpp"
#include "mql/random.hpp"

namespace mql {

enum class Algorithm { I = 1, II = 2, III = 3, IV = 4, V = 5 };

enum class CffMode { Exhaustive, Greedy, RandomVerified, Random };

std::string to_string(Algorithm a);
std::string to_string(CffMode m);
std::optional<CffMode> parse_cff_mode(std::string_view s);

struct LearnerConfig {
  Algorithm algorithm = Algorithm::I;
  std::size_t s_max = 0;
  std::size_t r_max = 0;
  double delta = 0.1;
  /// Frequency parameter; defaults to r_max for IV and 1 for V.
  std::optional<std::size_t> d;
  std::uint64_t seed = 0;
  CffMode cff_mode = CffMode::Exhaustive;
};

/// Per-round accounting.
struct RoundRecord {
  std::size_t known_terms = 0;
  std::uint64_t candidates = 0;         ///< size of the candidate set (I: product of term sizes)
  std::uint64_t candidate_queries = 0;  ///< oracle queries spent on candidates
  std::uint64_t local_rejections = 0;   ///< candidates skipped because h = 1 there
  std::uint64_t find_term_queries = 0;
  std::optional<Term> found;
};

/// Optional observer filled while a learner runs. On an exception it holds
/// the terms found up to that point.
struct LearnTrace {
  std::vector<RoundRecord> rounds;
  std::vector<Term> found;
};

/// Source of CFFs for the learners. Deterministic modes are cached by
/// parameters; random modes draw a fresh family per request from one seeded
/// stream.
class CffSource {
 public:
  CffSource(CffMode mode, std::uint64_t seed, double delta_per_family);

  /// A family usable over `ground_n` positions for (s, r). Random families
  /// for ground_n < s + r are drawn over s + r positions and projected.
  const CoverFreeFamily& get(std::size_t ground_n, std::size_t s, std::size_t r);

  CffMode mode() const noexcept { return mode_; }
  std::size_t families_built() const noexcept { return built_; }

 private:
  CffMode mode_;
  Prng rng_;
  double delta_;
  std::size_t built_ = 0;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, CoverFreeFamily> cache_;
  CoverFreeFamily scratch_;
};

Mdnf learn_alg1(QueryOracle& oracle, std::size_t s_max, std::size_t r_max, LearnTrace* trace = nullptr);

Mdnf learn_alg2(QueryOracle& oracle, std::size_t s_max, std::size_t r_max, CffMode mode = CffMode::Exhaustive,
                LearnTrace* trace = nullptr, std::uint64_t seed = 0, double delta = 0.1);

Mdnf learn_alg3(QueryOracle& oracle, std::size_t s_max, std::size_t r_max, double delta, std::uint64_t seed,
                LearnTrace* trace = nullptr);

/// One LearnRead pass with known terms h (read-k, over the oracle's view).
/// Returns an assignment where the oracle answered 1 and h is 0, if a row
/// produces one. Candidate counts are added to `record`.
std::optional<Assignment> learn_read(QueryOracle& oracle, const Mdnf& h, std::size_t rprime, std::size_t k,
                                     CffSource& cffs, RoundRecord* record = nullptr);

/// Integer frequency threshold: the least tau with tau^2 * d >= s_max (>= 1).
std::size_t frequency_threshold(std::size_t s_max, std::size_t d);

/// Conditions on the tau-frequent variables S of h: for every R within S of
/// size at most r_max, fixes R to 1 and S \ R to 0, runs learn_read on the
/// restricted view and lifts a hit back before find_term on the full oracle.
std::optional<Term> find_new_term_frequent(QueryOracle& oracle, const Mdnf& h, std::size_t s_max,
                                           std::size_t r_max, std::size_t d, CffSource& cffs,
                                           RoundRecord* record = nullptr);

Mdnf learn_alg4(QueryOracle& oracle, std::size_t s_max, std::size_t r_max, CffMode mode = CffMode::Exhaustive,
                LearnTrace* trace = nullptr, std::optional<std::size_t> d = std::nullopt);

Mdnf learn_alg5(QueryOracle& oracle, std::size_t s_max, std::size_t r_max, double delta, std::uint64_t seed,
                LearnTrace* trace = nullptr);

struct RunReport {
  Algorithm algorithm = Algorithm::I;
  std::size_t n = 0;
  std::size_t s_max = 0;
  std::size_t r_max = 0;
  double delta = 0;
  std::uint64_t seed = 0;
  CffMode cff_mode = CffMode::Exhaustive;
  std::uint64_t queries = 0;
  std::uint64_t queries_dedup = 0;
  std::size_t terms_found = 0;
  Mdnf hypothesis;
  bool success = false;
  bool budget_exhausted = false;
  bool limit_exceeded = false;
  std::string error;
  double elapsed_ms = 0;
  LearnTrace trace;
};

/// Runs the configured learner. Budget exhaustion and contract errors are
/// caught and recorded; the hypothesis then holds the terms found so far.
/// With `target` given, success means exact recovery; otherwise it means the
/// learner finished without error.
RunReport run_learner(const LearnerConfig& config, QueryOracle& oracle, const Mdnf* target = nullptr);

}  // namespace mql
