#include "mql/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "mql/cff.hpp"
#include "mql/error.hpp"
#include "mql/instances.hpp"
#include "mql/io.hpp"
#include "mql/learners.hpp"
#include "mql/oracle.hpp"
#include "mql/random.hpp"

namespace mql::cli {

namespace {

using io::json;

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void emit(const std::string& path, const json& doc, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << io::dump(doc);
  } else {
    io::write_json(path, doc);
  }
}

std::string join(const std::vector<Var>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

json bounds_json(std::size_t n, std::size_t s, std::size_t r, double delta) {
  if (s == 0 || r == 0) return nullptr;
  const BoundValues b = bound_values(n, s, r, delta);
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  return {{"note", "reference values, not certified bounds"},
          {"info", b.info},
          {"lower_s_dominant", opt(b.lower_s_dominant)},
          {"lower_r_dominant", opt(b.lower_r_dominant)},
          {"alg1", b.alg1},
          {"alg2", b.alg2},
          {"alg3", b.alg3},
          {"alg4", b.alg4},
          {"alg5", b.alg5}};
}

// ----------------------------------------------------------------------- gen

struct GenOptions {
  std::size_t n = 0, s = 0, r = 0;
  std::uint64_t seed = 0;
  bool hard = false;
  std::size_t ell = 0, t = 0;
  std::string out;
};

int do_gen(const GenOptions& o, std::ostream& out) {
  if (o.hard) {
    const InstancePair pair = hard_pair(o.ell, o.t, o.seed);
    json doc = io::pair_to_json(pair);
    doc["generator"] = io::generator_info(o.seed);
    doc["reference_guesses"] = hard_pair_reference(o.ell, o.t);
    emit(o.out, doc, out);
    if (!o.out.empty()) {
      out << "pair ell=" << o.ell << " t=" << o.t << " m=" << pair.k.size() << " hidden=" << pair.hidden.to_display()
          << " -> " << o.out << "\n";
    }
    return kOk;
  }
  const Mdnf f = random_instance(o.n, o.s, o.r, o.seed);
  json doc = io::instance_to_json(f);
  json gen = io::generator_info(o.seed);
  gen["s"] = o.s;
  gen["r"] = o.r;
  doc["generator"] = gen;
  emit(o.out, doc, out);
  if (!o.out.empty()) {
    out << "instance n=" << f.n() << " s=" << f.term_count() << " r=" << f.max_term_size() << " -> " << o.out
        << "\n";
  }
  return kOk;
}

// --------------------------------------------------------------------- learn

struct LearnOptions {
  int alg = 1;
  std::string instance;
  std::size_t s_max = 0, r_max = 0;
  double delta = 0.1;
  std::uint64_t seed = 0;
  std::string cff_mode = "exhaustive";
  std::optional<std::uint64_t> budget;
  std::string report;
  bool raw = false;
  bool timing = false;
  std::string pair_member = "g";
};

int do_learn(const LearnOptions& o, std::ostream& out) {
  const json doc = io::read_json(o.instance);
  Mdnf target;
  if (doc.is_object() && doc.contains("f") && doc.contains("g")) {
    if (o.pair_member != "f" && o.pair_member != "g") throw CLI::ValidationError("--pair-member must be f or g");
    target = io::instance_from_json(doc.at(o.pair_member), o.raw);
  } else {
    target = io::instance_from_json(doc, o.raw);
  }
  const auto mode = parse_cff_mode(o.cff_mode);
  if (!mode) throw CLI::ValidationError("unknown --cff-mode " + o.cff_mode);

  LearnerConfig config;
  config.algorithm = static_cast<Algorithm>(o.alg);
  config.s_max = o.s_max;
  config.r_max = o.r_max;
  config.delta = o.delta;
  config.seed = o.seed;
  config.cff_mode = *mode;

  QueryOracle oracle(target, o.budget);
  RunReport report = run_learner(config, oracle, &target);
  if (!o.timing) report.elapsed_ms = 0;

  json doc_out = io::report_to_json(report);
  doc_out["generator"] = io::generator_info(o.seed);
  doc_out["bounds"] = bounds_json(target.n(), o.s_max, o.r_max, o.delta);
  emit(o.report, doc_out, out);

  if (report.budget_exhausted || report.limit_exceeded) return kResource;
  return report.success ? kOk : kLearnerFailure;
}

// --------------------------------------------------------------------- bench

struct BenchOptions {
  std::string suite;
  std::string csv;
  unsigned threads = 0;
};

int do_bench(const BenchOptions& o, std::ostream& out) {
  const json suite = io::read_json(o.suite);
  const auto rows = run_suite(suite, o.threads);
  const std::string csv = bench_csv(rows);
  if (o.csv.empty() || o.csv == "-") {
    out << csv;
  } else {
    std::ofstream f(o.csv);
    if (!f) throw FormatError("cannot write " + o.csv);
    f << csv;
    std::size_t ok = 0;
    for (const auto& r : rows) ok += r.success ? 1 : 0;
    out << rows.size() << " cells, " << ok << " exact -> " << o.csv << "\n";
  }
  return kOk;
}

// ----------------------------------------------------------------------- cff

struct CffBuildOptions {
  std::size_t ground_n = 0, s = 0, r = 0;
  double delta = 0.1;
  std::uint64_t seed = 0;
  std::string mode = "exhaustive";
  std::string out;
};

int do_cff_build(const CffBuildOptions& o, std::ostream& out) {
  CoverFreeFamily family;
  if (o.mode == "exhaustive") {
    family = exhaustive_cff(o.ground_n, o.s, o.r);
  } else if (o.mode == "greedy") {
    family = greedy_cff(o.ground_n, o.s, o.r);
  } else if (o.mode == "random") {
    family = build_random_cff(o.ground_n, o.s, o.r, o.delta, o.seed);
  } else if (o.mode == "random-verified") {
    CffSource source(CffMode::RandomVerified, o.seed, o.delta);
    family = source.get(o.ground_n, o.s, o.r);
  } else {
    throw CLI::ValidationError("unknown --mode " + o.mode);
  }
  json doc = io::cff_to_json(family);
  json gen = io::generator_info(o.mode.starts_with("random") ? std::optional<std::uint64_t>(o.seed) : std::nullopt);
  gen["mode"] = o.mode;
  if (o.mode.starts_with("random")) gen["delta"] = o.delta;
  doc["generator"] = gen;
  emit(o.out, doc, out);
  if (!o.out.empty()) out << "cff rows=" << family.size() << " verified=" << family.verified << " -> " << o.out << "\n";
  return kOk;
}

int do_cff_verify(const std::string& in, std::ostream& out) {
  const CoverFreeFamily family = io::cff_from_json(io::read_json(in));
  const CffVerdict verdict = verify_cff(family);
  if (verdict.ok) {
    out << "PASS rows=" << family.size() << "\n";
    return kOk;
  }
  out << "FAIL tuple=" << join(verdict.counterexample->tuple) << " zeros=" << join(verdict.counterexample->zeros)
      << "\n";
  return kLearnerFailure;
}

}  // namespace

// ---------------------------------------------------------------- run_suite

std::vector<BenchRow> run_suite(const json& suite, unsigned threads) {
  auto list = [&](const char* key) {
    if (!suite.contains(key) || !suite.at(key).is_array()) {
      throw FormatError(std::string("suite field '") + key + "' must be an array");
    }
    return suite.at(key).get<std::vector<std::size_t>>();
  };
  const auto ns = list("n");
  const auto ss = list("s");
  const auto rs = list("r");
  const auto algs = list("algorithms");
  std::vector<std::uint64_t> seeds;
  if (suite.contains("seeds")) {
    seeds = suite.at("seeds").get<std::vector<std::uint64_t>>();
  } else {
    const auto start = suite.value("seed_start", std::uint64_t{0});
    const auto reps = suite.value("repetitions", std::uint64_t{1});
    for (std::uint64_t i = 0; i < reps; ++i) seeds.push_back(start + i);
  }
  const double delta = suite.value("delta", 0.1);
  const auto mode = parse_cff_mode(suite.value("cff_mode", std::string("exhaustive")));
  if (!mode) throw FormatError("unknown cff_mode in suite");
  for (auto a : algs) {
    if (a < 1 || a > 5) throw FormatError("algorithms must be in 1..5");
  }

  std::vector<BenchRow> rows;
  for (auto n : ns)
    for (auto s : ss)
      for (auto r : rs)
        for (auto a : algs)
          for (auto seed : seeds) {
            BenchRow row;
            row.alg = static_cast<int>(a);
            row.n = n;
            row.s = s;
            row.r = r;
            row.seed = seed;
            rows.push_back(row);
          }

  std::atomic<std::size_t> next{0};
  std::vector<std::string> errors(rows.size());
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      BenchRow& row = rows[i];
      try {
        const Mdnf target = random_instance(row.n, row.s, row.r, row.seed);
        LearnerConfig config;
        config.algorithm = static_cast<Algorithm>(row.alg);
        config.s_max = row.s;
        config.r_max = row.r;
        config.delta = delta;
        config.seed = row.seed;
        config.cff_mode = *mode;
        QueryOracle oracle(target);
        const RunReport report = run_learner(config, oracle, &target);
        row.queries = report.queries;
        row.queries_dedup = report.queries_dedup;
        row.success = report.success;
        if (row.s >= 1 && row.r >= 1) {
          const BoundValues b = bound_values(row.n, row.s, row.r, delta);
          row.bound_info = b.info;
          row.bound_lower = b.lower();
          row.bound_alg_ref = b.for_algorithm(row.alg);
        }
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const unsigned workers = std::max(1U, threads == 0 ? std::thread::hardware_concurrency() : threads);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!errors[i].empty()) {
      throw InfeasibleParameters("cell n=" + std::to_string(rows[i].n) + " s=" + std::to_string(rows[i].s) +
                                 " r=" + std::to_string(rows[i].r) + ": " + errors[i]);
    }
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << "# mqlearn bench; prng=" << Prng::kName << "; instance and learner seeded by the seed column\n";
  os << kBenchHeader << "\n";
  for (const auto& r : rows) {
    os << r.alg << ',' << r.n << ',' << r.s << ',' << r.r << ',' << r.seed << ',' << r.queries << ','
       << r.queries_dedup << ',' << (r.success ? "true" : "false") << ',' << fmt_double(r.bound_info) << ','
       << fmt_double(r.bound_lower) << ',' << fmt_double(r.bound_alg_ref) << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------- run

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact learning of monotone DNF from membership queries"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a random instance or a hard pair");
  gen_cmd->add_option("--n", gen.n, "number of variables");
  gen_cmd->add_option("--s", gen.s, "number of terms");
  gen_cmd->add_option("--r", gen.r, "maximum term size");
  gen_cmd->add_option("--seed", gen.seed, "generator seed");
  gen_cmd->add_flag("--hard", gen.hard, "emit a hard (f, g) pair");
  gen_cmd->add_option("--ell", gen.ell, "pair: number of variables");
  gen_cmd->add_option("--t", gen.t, "pair: block size");
  gen_cmd->add_option("--out", gen.out, "output file (stdout when omitted)");

  LearnOptions learn;
  auto* learn_cmd = app.add_subcommand("learn", "learn a hidden instance through a counting oracle");
  learn_cmd->add_option("--alg", learn.alg, "algorithm 1..5")->required()->check(CLI::Range(1, 5));
  learn_cmd->add_option("--instance", learn.instance, "instance or pair file")->required();
  learn_cmd->add_option("--s-max", learn.s_max, "upper bound on the number of terms")->required();
  learn_cmd->add_option("--r-max", learn.r_max, "upper bound on the term size")->required();
  learn_cmd->add_option("--delta", learn.delta, "failure probability (algorithms 3, 5)");
  learn_cmd->add_option("--seed", learn.seed, "learner seed");
  learn_cmd->add_option("--cff-mode", learn.cff_mode, "exhaustive | greedy | random-verified | random");
  learn_cmd->add_option("--budget", learn.budget, "maximum number of queries");
  learn_cmd->add_option("--report", learn.report, "report file (stdout when omitted)");
  learn_cmd->add_flag("--raw", learn.raw, "reduce an unreduced instance instead of rejecting it");
  learn_cmd->add_flag("--timing", learn.timing, "record wall time in the report");
  learn_cmd->add_option("--pair-member", learn.pair_member, "f or g when --instance is a pair file");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "run an experiment matrix");
  bench_cmd->add_option("--suite", bench.suite, "suite file")->required();
  bench_cmd->add_option("--csv", bench.csv, "CSV output (stdout when omitted)");
  bench_cmd->add_option("--threads", bench.threads, "worker threads (0 = hardware)");

  auto* cff_cmd = app.add_subcommand("cff", "build or verify cover-free families");
  cff_cmd->require_subcommand(1);
  CffBuildOptions build;
  auto* build_cmd = cff_cmd->add_subcommand("build", "build a family");
  build_cmd->add_option("--ground-n", build.ground_n, "ground set size")->required();
  build_cmd->add_option("--s", build.s, "zero positions")->required();
  build_cmd->add_option("--r", build.r, "one positions")->required();
  build_cmd->add_option("--delta", build.delta, "failure probability (random modes)");
  build_cmd->add_option("--seed", build.seed, "seed (random modes)");
  build_cmd->add_option("--mode", build.mode, "exhaustive | greedy | random | random-verified");
  build_cmd->add_option("--out", build.out, "output file (stdout when omitted)");
  std::string verify_in;
  auto* verify_cmd = cff_cmd->add_subcommand("verify", "check the covering property");
  verify_cmd->add_option("--in", verify_in, "family file")->required();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*gen_cmd) {
      if (!gen.hard && (gen_cmd->count("--n") == 0 || gen_cmd->count("--s") == 0 || gen_cmd->count("--r") == 0)) {
        err << "error: gen needs --n --s --r (or --hard --ell --t)\n";
        return kUsage;
      }
      if (gen.hard && (gen_cmd->count("--ell") == 0 || gen_cmd->count("--t") == 0)) {
        err << "error: gen --hard needs --ell and --t\n";
        return kUsage;
      }
      return do_gen(gen, out);
    }
    if (*learn_cmd) return do_learn(learn, out);
    if (*bench_cmd) return do_bench(bench, out);
    if (*build_cmd) return do_cff_build(build, out);
    if (*verify_cmd) return do_cff_verify(verify_in, out);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InfeasibleParameters& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ContractError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const LimitExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kResource;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace mql::cli
