#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sl2lab/rational.hpp"

namespace sl2lab {

inline constexpr const char* kArtifactVersion = "1.0.0";

/// Flat key=value run configuration; every run embeds its resolved form.
struct RunConfig {
  std::vector<unsigned> tower{1, 2, 4, 8, 16};
  std::uint64_t budget_enumeration = 1'000'000;
  std::uint64_t budget_subset = 100'000'000;
  std::uint64_t budget_formula_nodes = 1'000'000;
  std::uint64_t budget_eval = 100'000'000;
  Rational epsilon{1, 2};
  std::uint64_t seed = 1;
  std::string out_dir;
  bool exclude_identity = true;
  bool json_output = false;
  bool parallel = true;

  static RunConfig from_file(const std::string& path);
  /// Applies one key=value override; unknown keys are input errors.
  void set(const std::string& key, const std::string& value);
  /// Stable one-line-per-key form used for hashing and embedding in outputs.
  std::string canonical() const;
  std::uint64_t hash() const;
};

std::uint64_t fnv1a(const std::string& text);
std::string hex64(std::uint64_t v);

/// Content-addressed result cache: one JSON record per (command, canonical
/// inputs, config) triple under <out>/cache/<key>.json.
std::string cache_key(const std::string& command, const std::string& canonical_inputs,
                      const RunConfig& config);
std::optional<std::string> cache_lookup(const std::string& out_dir, const std::string& key);
void cache_store(const std::string& out_dir, const std::string& key,
                 const std::string& record_json);  // write-temp-then-rename
std::vector<std::string> cache_list(const std::string& out_dir);
std::size_t cache_clear(const std::string& out_dir);

struct CommandResult {
  int exit_code = 0;      // 0 ok, 2 refusal, 3 budget exhausted, 4 input error
  std::string output;     // stdout payload
  std::string note;       // stderr side channel (cache hit/miss etc.)
};

/// Full CLI dispatch; args exclude the program name.
CommandResult run_command(const std::vector<std::string>& args);

}  // namespace sl2lab
