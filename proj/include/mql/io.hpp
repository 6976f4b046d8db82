#pragma once

// JSON documents exchanged by the CLI and tests.
//
//   instance : {"n": int, "terms": [[int, ...], ...]}  (0-based, increasing)
//   cff      : {"ground_n", "s", "r", "verified", "rows": ["0101...", ...]}
//   pair     : {"ell", "t", "k_vector", "f": instance, "g": instance, "witness"}
//   report   : see report_to_json
//
// Writers add a "generator" object naming the PRNG and seed when one was used;
// readers ignore unknown fields.

#include <filesystem>
#include <optional>

#include <json.hpp>

#include "mql/boolean.hpp"
#include "mql/cff.hpp"
#include "mql/instances.hpp"
#include "mql/learners.hpp"

namespace mql::io {

using nlohmann::json;

json generator_info(std::optional<std::uint64_t> seed);

json instance_to_json(const Mdnf& f);
/// Rejects malformed documents and, unless `raw`, unreduced term sets.
Mdnf instance_from_json(const json& doc, bool raw = false);

json cff_to_json(const CoverFreeFamily& family);
CoverFreeFamily cff_from_json(const json& doc);

json pair_to_json(const InstancePair& pair);
InstancePair pair_from_json(const json& doc);

json report_to_json(const RunReport& report);

json read_json(const std::filesystem::path& path);
/// Pretty-printed with a trailing newline.
void write_json(const std::filesystem::path& path, const json& doc);
std::string dump(const json& doc);

}  // namespace mql::io
