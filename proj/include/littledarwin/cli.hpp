#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "littledarwin/mutation.hpp"

namespace littledarwin {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNotGreen = 3;
inline constexpr int kExitCorruption = 4;

// Project-level configuration shared by all subcommands. Flat key/value on
// disk; every key can be overridden by a flag.
struct ProjectConfig {
  std::filesystem::path source_root;
  std::filesystem::path output_dir = "littledarwin-out";
  std::string build_command;
  std::filesystem::path build_dir;
  double timeout_s = 0;  // 0: max(60, 10 x green duration)
  std::vector<std::string> operators;  // operator names; empty enables all
  std::vector<std::string> include;    // globs over source-root-relative paths
  std::vector<std::string> exclude;
  std::vector<std::string> markers;    // compile-error markers; empty = defaults
  std::map<std::string, std::string> env_overrides;
  std::optional<double> sample_rate;
  std::string sample_strategy = "uniform";
  bool higher_order = false;
  uint64_t seed = 1;
  int jobs = 1;
};

// Shell-style tokenization of the build command (quotes and backslashes).
std::vector<std::string> split_command(const std::string& command);

// Glob over '/'-separated relative paths: '*' and '?' stay within one
// component, '**' crosses components.
bool glob_match(std::string_view pattern, std::string_view path);

// Source files under source_root passing the include/exclude filters,
// sorted by relative path.
std::vector<std::string> discover_sources(const ProjectConfig& cfg);

// ---- the mutant index (output of the mutation phase) ----------------------

struct IndexedHigherOrder {
  int mutant_id = 0;
  std::array<int, 2> constituents{};
  std::string operator_label;
  std::string before, after;
  uint32_t line = 0;
  std::vector<int32_t> node_ids;
  std::vector<Edit> edits;
};

struct IndexedManual {
  int mutant_id = 0;
  std::vector<uint32_t> lines;
  std::vector<Edit> edits;
};

struct IndexedFile {
  std::string path;
  int loc = 0;
  std::vector<Mutant> mutants;
  std::vector<IndexedHigherOrder> higher_order;
  std::vector<int> leftover_ids;
  std::vector<IndexedManual> manual;
};

struct MutantIndex {
  std::string source_root;
  uint64_t seed = 0;
  bool higher_order = false;
  std::vector<IndexedFile> files;

  nlohmann::json to_json() const;
  static MutantIndex from_json(const nlohmann::json& j);
  void store(const std::filesystem::path& path) const;
  static MutantIndex load(const std::filesystem::path& path);
};

std::filesystem::path index_path(const ProjectConfig& cfg);
std::filesystem::path results_path(const ProjectConfig& cfg);
std::filesystem::path mutant_file_path(const ProjectConfig& cfg,
                                       const std::string& source_rel,
                                       const std::string& mutant_id);

// ---- subcommands -----------------------------------------------------------

int cmd_mutate(const ProjectConfig& cfg, std::ostream& log);
int cmd_run(const ProjectConfig& cfg, std::ostream& log);
int cmd_report(const ProjectConfig& cfg, std::ostream& log);
int cmd_sample(const ProjectConfig& cfg, std::ostream& out, std::ostream& log);

struct SubsumeOptions {
  std::filesystem::path results;
  std::string patterns = "surefire";  // preset name or pattern-file path
  std::filesystem::path dot_out;
  std::filesystem::path json_out;
};
int cmd_subsume(const SubsumeOptions& opts, std::ostream& out,
                std::ostream& log);

int cmd_manual_import(const ProjectConfig& cfg,
                      const std::filesystem::path& dir, std::ostream& log);

}  // namespace littledarwin
