#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "littledarwin/executor.hpp"

namespace littledarwin {

// Mutation coverage: killed (including timeouts) over all non-invalid
// mutants.
struct CoverageSummary {
  long killed = 0;
  long total_valid = 0;

  std::optional<double> coverage() const {
    if (total_valid == 0) return std::nullopt;
    return static_cast<double>(killed) / static_cast<double>(total_valid);
  }
};

CoverageSummary compute_coverage(const std::vector<MutantStatus>& statuses);

// "57.9%" at one decimal place; "n/a" when there is no valid denominator.
std::string format_percent(const CoverageSummary& summary);

// One executed mutant: header metadata plus the classified outcome. The
// full build output lives in a separate text file named by output_ref,
// relative to the database directory.
struct MutantRecord {
  std::string mutant_id;  // "7", "ho_3", or "man_2"
  std::string operator_name;
  uint32_t line = 0;
  std::vector<int32_t> node_ids;
  std::string before;
  std::string after;
  MutantStatus status = MutantStatus::Survived;
  std::optional<int> exit_status;  // empty on timeout
  double duration_s = 0;
  std::string output_ref;
  std::vector<std::string> constituents;  // higher-order only
};

struct FileRecord {
  std::string path;
  std::vector<MutantRecord> mutants;
};

struct ResultsDatabase {
  nlohmann::json config = nlohmann::json::object();
  double green_duration_s = 0;
  uint64_t seed = 0;
  std::string started_at;
  std::string finished_at;
  std::vector<FileRecord> files;

  FileRecord& file_record(const std::string& path);
  const MutantRecord* find(const std::string& path,
                           const std::string& mutant_id) const;
  void upsert(const std::string& path, MutantRecord record);

  CoverageSummary file_coverage(const FileRecord& file) const;
  CoverageSummary project_coverage() const;

  nlohmann::json to_json() const;
  static ResultsDatabase from_json(const nlohmann::json& j);

  // Atomic store (temp file + rename) so an interrupted run never leaves a
  // truncated database behind.
  void store(const std::filesystem::path& results_json) const;
  static ResultsDatabase load(const std::filesystem::path& results_json);
};

// Build outputs are stored verbatim next to the database.
std::string output_ref_for(const std::string& source_path,
                           const std::string& mutant_id);
void write_output_file(const std::filesystem::path& base_dir,
                       const std::string& ref, const std::string& bytes);
std::string read_output_file(const std::filesystem::path& base_dir,
                             const std::string& ref);

}  // namespace littledarwin
