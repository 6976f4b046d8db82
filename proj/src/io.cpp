#include "mql/io.hpp"

#include <fstream>
#include <sstream>

#include "mql/error.hpp"
#include "mql/random.hpp"

namespace mql::io {

namespace {

std::size_t get_count(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  const json& v = doc.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw FormatError(std::string("field '") + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

const json& get_array(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key) || !doc.at(key).is_array()) {
    throw FormatError(std::string("field '") + key + "' must be an array");
  }
  return doc.at(key);
}

Assignment row_from_string(const json& v, std::size_t n) {
  if (!v.is_string()) throw FormatError("rows must be 0/1 strings");
  const auto& s = v.get_ref<const std::string&>();
  if (s.size() != n) throw FormatError("row length differs from ground_n");
  return Assignment::from_string(s);
}

}  // namespace

json generator_info(std::optional<std::uint64_t> seed) {
  json g = {{"prng", std::string(Prng::kName)}};
  if (seed) g["seed"] = *seed;
  return g;
}

json instance_to_json(const Mdnf& f) {
  json terms = json::array();
  for (const auto& t : f.terms()) terms.push_back(t.vars());
  return {{"n", f.n()}, {"terms", terms}};
}

Mdnf instance_from_json(const json& doc, bool raw) {
  const std::size_t n = get_count(doc, "n");
  std::vector<Term> terms;
  for (const auto& t : get_array(doc, "terms")) {
    if (!t.is_array()) throw FormatError("each term must be an array of variable indices");
    std::vector<Var> vars;
    for (const auto& v : t) {
      if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<unsigned long long>() >= n) {
        throw FormatError("term variable must be an integer in [0, n)");
      }
      const auto var = v.get<Var>();
      if (!vars.empty() && vars.back() >= var) throw FormatError("term variables must be strictly increasing");
      vars.push_back(var);
    }
    terms.emplace_back(std::move(vars));
  }
  if (raw) return reduce(std::move(terms), n);
  try {
    return Mdnf::from_reduced(n, std::move(terms));
  } catch (const ContractError& e) {
    throw FormatError(std::string(e.what()) + " (pass --raw to reduce on load)");
  }
}

json cff_to_json(const CoverFreeFamily& family) {
  json rows = json::array();
  for (const auto& row : family.rows) rows.push_back(row.to_string());
  return {{"ground_n", family.ground_n},
          {"s", family.s},
          {"r", family.r},
          {"verified", family.verified},
          {"rows", rows}};
}

CoverFreeFamily cff_from_json(const json& doc) {
  CoverFreeFamily family;
  family.ground_n = get_count(doc, "ground_n");
  family.s = get_count(doc, "s");
  family.r = get_count(doc, "r");
  family.verified = doc.value("verified", false);
  for (const auto& row : get_array(doc, "rows")) family.rows.push_back(row_from_string(row, family.ground_n));
  return family;
}

json pair_to_json(const InstancePair& pair) {
  return {{"ell", pair.ell},
          {"t", pair.t},
          {"k_vector", pair.k},
          {"hidden_term", pair.hidden.vars()},
          {"f", instance_to_json(pair.f)},
          {"g", instance_to_json(pair.g)},
          {"witness", pair.witness.to_string()}};
}

InstancePair pair_from_json(const json& doc) {
  InstancePair pair;
  pair.ell = get_count(doc, "ell");
  pair.t = get_count(doc, "t");
  for (const auto& k : get_array(doc, "k_vector")) pair.k.push_back(k.get<std::size_t>());
  if (!doc.contains("f") || !doc.contains("g")) throw FormatError("pair needs 'f' and 'g'");
  pair.f = instance_from_json(doc.at("f"));
  pair.g = instance_from_json(doc.at("g"));
  if (doc.contains("hidden_term")) pair.hidden = Term(doc.at("hidden_term").get<std::vector<Var>>());
  if (doc.contains("witness")) pair.witness = row_from_string(doc.at("witness"), pair.ell);
  return pair;
}

json report_to_json(const RunReport& report) {
  json rounds = json::array();
  for (const auto& r : report.trace.rounds) {
    json round = {{"known_terms", r.known_terms},
                  {"candidates", r.candidates},
                  {"candidate_queries", r.candidate_queries},
                  {"local_rejections", r.local_rejections},
                  {"find_term_queries", r.find_term_queries}};
    round["found"] = r.found ? json(r.found->vars()) : json(nullptr);
    rounds.push_back(std::move(round));
  }
  json doc = {{"algorithm", static_cast<int>(report.algorithm)},
              {"n", report.n},
              {"s_max", report.s_max},
              {"r_max", report.r_max},
              {"delta", report.delta},
              {"seed", report.seed},
              {"cff_mode", to_string(report.cff_mode)},
              {"queries", report.queries},
              {"queries_dedup", report.queries_dedup},
              {"terms_found", report.terms_found},
              {"success", report.success},
              {"budget_exhausted", report.budget_exhausted},
              {"limit_exceeded", report.limit_exceeded},
              {"elapsed_ms", report.elapsed_ms},
              {"hypothesis", instance_to_json(report.hypothesis)},
              {"rounds", rounds}};
  if (!report.error.empty()) doc["error"] = report.error;
  return doc;
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

void write_json(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << dump(doc);
}

}  // namespace mql::io
