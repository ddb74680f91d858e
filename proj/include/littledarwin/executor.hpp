#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace littledarwin {

// How to run the target project's build + test suite. The build system must
// run the tests and exit non-zero when any test fails.
struct BuildConfig {
  std::vector<std::string> command;  // argv; command[0] resolved via PATH
  std::filesystem::path working_dir;
  double timeout_s = 0;
  std::map<std::string, std::string> env_overrides;
  // A mutant whose build output contains any of these substrings is invalid
  // (rejected by the compiler) rather than killed.
  std::vector<std::string> compile_error_markers = default_compile_error_markers();

  static std::vector<std::string> default_compile_error_markers() {
    return {"COMPILATION ERROR", "error: ", "cannot find symbol"};
  }
};

struct RunResult {
  int exit_status = 0;
  bool timed_out = false;
  std::string output;  // both streams, line-tagged "[out] " / "[err] "
  double duration_s = 0;
};

class NotGreen : public std::runtime_error {
 public:
  NotGreen(int exit_status, bool timed_out, std::string output)
      : std::runtime_error(timed_out
                               ? "green-suite check timed out"
                               : "green-suite check failed with exit status " +
                                     std::to_string(exit_status)),
        exit_status(exit_status),
        timed_out(timed_out),
        output(std::move(output)) {}

  int exit_status;
  bool timed_out;
  std::string output;
};

class RestoreFailure : public std::runtime_error {
 public:
  explicit RestoreFailure(const std::string& what) : std::runtime_error(what) {}
};

enum class MutantStatus : uint8_t { Killed, KilledTimeout, Survived, Invalid };

const char* status_name(MutantStatus status);
std::optional<MutantStatus> status_from_name(std::string_view name);

// Killed statuses (including timeouts) count toward the coverage numerator.
inline bool counts_as_killed(MutantStatus s) {
  return s == MutantStatus::Killed || s == MutantStatus::KilledTimeout;
}

// Classification order: compiler rejection first, then timeout, then the
// exit status (zero means every test passed, so the mutant survived).
MutantStatus classify(int exit_status, bool timed_out,
                      const std::string& output, const BuildConfig& cfg);

// Runs the build command once, capturing both output streams. Kills the
// whole process group after cfg.timeout_s.
RunResult run_command(const BuildConfig& cfg);

struct GreenResult {
  double duration_s = 0;
  std::string output;
};

// Runs the build once on pristine sources. Throws NotGreen unless the run
// exits zero within the timeout.
GreenResult verify_green(const BuildConfig& cfg);

struct MutantOutcome {
  std::string mutant_id;
  MutantStatus status = MutantStatus::Survived;
  std::optional<int> exit_status;  // empty on timeout
  bool timed_out = false;
  std::string build_output;
  double duration_s = 0;
};

// Backs up the file at source_abs_path, writes the mutant bytes in its
// place, runs the build, classifies, and restores the original bytes. The
// restore is unconditional; a failed or unverified restore throws
// RestoreFailure after attempting recovery.
MutantOutcome run_mutant(const BuildConfig& cfg,
                         const std::filesystem::path& source_abs_path,
                         const std::string& mutant_bytes,
                         const std::string& mutant_id);

// Order-independent content hash over every .java file under root;
// the workspace-integrity check compares it before and after a run.
uint64_t hash_source_tree(const std::filesystem::path& root);

}  // namespace littledarwin
