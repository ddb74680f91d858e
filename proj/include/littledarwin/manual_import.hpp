#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "littledarwin/source_file.hpp"

namespace littledarwin {

class AmbiguousMatch : public std::runtime_error {
 public:
  explicit AmbiguousMatch(const std::string& what) : std::runtime_error(what) {}
};
class NoMatch : public std::runtime_error {
 public:
  explicit NoMatch(const std::string& what) : std::runtime_error(what) {}
};
class IdenticalToSource : public std::runtime_error {
 public:
  explicit IdenticalToSource(const std::string& what)
      : std::runtime_error(what) {}
};

// An externally authored mutant matched to its corpus source file. Applying
// the derived edits to the source reproduces the (header-stripped) mutant
// bytes exactly.
struct ManualMutant {
  std::filesystem::path mutant_file;
  std::string matched_source;        // corpus-relative path
  std::vector<Edit> edits;           // line-based diff of source vs mutant
  std::vector<uint32_t> lines;       // 1-based source lines of each hunk
  std::string mutant_bytes;          // header-stripped content
};

// Line-based diff turned into byte-span edits on `source` such that
// splice(source, edits) == target. Empty when the inputs are equal.
std::vector<Edit> diff_to_edits(const SourceFile& source,
                                const std::string& target,
                                std::vector<uint32_t>* hunk_lines = nullptr);

// Matches one candidate to the corpus file with the longest matching path
// suffix (whole components; the file name must match). Throws
// AmbiguousMatch / NoMatch / IdenticalToSource.
ManualMutant match_candidate(const std::filesystem::path& candidate_rel,
                             const std::string& candidate_bytes,
                             const std::vector<SourceFile>& corpus);

struct ImportReport {
  std::vector<ManualMutant> imported;
  std::vector<std::string> errors;  // one message per skipped candidate
};

// Ingests every .java file under dir, matching each against the corpus.
// Failures are reported and skipped, never fatal.
ImportReport import_mutants(const std::filesystem::path& dir,
                            const std::vector<SourceFile>& corpus);

}  // namespace littledarwin
