#pragma once

#include <functional>
#include <string>
#include <vector>

#include "littledarwin/results.hpp"

namespace littledarwin {

std::string html_escape(std::string_view text);

// File name a source file's report page is written under.
std::string report_page_name(const std::string& source_path);

// One page per source file: every mutant's header fields, status, and the
// full captured build output. Output is deterministic for identical inputs.
std::string emit_file_report(
    const std::string& source_path, const std::vector<MutantRecord>& mutants,
    const std::function<std::string(const std::string&)>& load_output);

struct FileCoverageRow {
  std::string path;
  CoverageSummary summary;
};

// Project page: per-file coverage table plus pooled project totals.
std::string emit_project_report(const std::vector<FileCoverageRow>& rows,
                                const CoverageSummary& total,
                                double green_duration_s);

}  // namespace littledarwin
