#include "littledarwin/report_html.hpp"

#include <sstream>

namespace littledarwin {

namespace {

const char* kStyle =
    "body { font-family: sans-serif; margin: 2rem; color: #222; }\n"
    "h1 { border-bottom: 2px solid #ddd; padding-bottom: .4rem; }\n"
    "table { border-collapse: collapse; width: 100%; margin-top: 1rem; }\n"
    "th, td { text-align: left; padding: 6px 10px; border-bottom: 1px solid #ddd;"
    " vertical-align: top; }\n"
    "th { background: #333; color: #fff; }\n"
    "tr.killed, tr.killed-timeout { background: #e7f6e7; }\n"
    "tr.survived { background: #fbe9e9; }\n"
    "tr.invalid { background: #f2f2f2; color: #777; }\n"
    "pre { background: #f7f7f7; border: 1px solid #ddd; padding: 8px;"
    " max-height: 22em; overflow: auto; white-space: pre-wrap; }\n"
    "code { white-space: pre-wrap; }\n"
    ".total { font-weight: bold; }\n";

std::string status_cell(MutantStatus status, const std::optional<int>& exit_status) {
  std::string out = status_name(status);
  if (status == MutantStatus::KilledTimeout) {
    out += " (timeout)";
  } else if (exit_status) {
    out += " (exit " + std::to_string(*exit_status) + ")";
  }
  return out;
}

}  // namespace

std::string html_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string report_page_name(const std::string& source_path) {
  std::string name = source_path;
  for (char& c : name) {
    if (c == '/' || c == '\\') c = '_';
  }
  return name + ".html";
}

std::string emit_file_report(
    const std::string& source_path, const std::vector<MutantRecord>& mutants,
    const std::function<std::string(const std::string&)>& load_output) {
  std::ostringstream out;
  out << "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n"
      << "<title>" << html_escape(source_path) << "</title>\n"
      << "<style>\n" << kStyle << "</style>\n</head>\n<body>\n"
      << "<h1>" << html_escape(source_path) << "</h1>\n";
  if (mutants.empty()) {
    out << "<p>Zero mutants were executed for this file.</p>\n";
  } else {
    std::vector<MutantStatus> statuses;
    for (const MutantRecord& m : mutants) statuses.push_back(m.status);
    CoverageSummary summary = compute_coverage(statuses);
    out << "<p>" << mutants.size() << " mutants, " << summary.killed
        << " killed of " << summary.total_valid
        << " valid &mdash; coverage " << format_percent(summary) << "</p>\n";
    for (const MutantRecord& m : mutants) {
      out << "<h2 id=\"m" << html_escape(m.mutant_id) << "\">Mutant "
          << html_escape(m.mutant_id) << "</h2>\n"
          << "<table>\n"
          << "<tr class=\"" << status_name(m.status) << "\"><th>operator</th><td>"
          << html_escape(m.operator_name) << "</td></tr>\n"
          << "<tr><th>line</th><td>" << m.line << "</td></tr>\n"
          << "<tr><th>before</th><td><code>" << html_escape(m.before)
          << "</code></td></tr>\n"
          << "<tr><th>after</th><td><code>" << html_escape(m.after)
          << "</code></td></tr>\n"
          << "<tr><th>node ids</th><td>";
      for (size_t i = 0; i < m.node_ids.size(); ++i) {
        if (i > 0) out << ", ";
        out << m.node_ids[i];
      }
      out << "</td></tr>\n";
      if (!m.constituents.empty()) {
        out << "<tr><th>constituents</th><td>";
        for (size_t i = 0; i < m.constituents.size(); ++i) {
          if (i > 0) out << ", ";
          out << html_escape(m.constituents[i]);
        }
        out << "</td></tr>\n";
      }
      out << "<tr><th>status</th><td>"
          << html_escape(status_cell(m.status, m.exit_status)) << "</td></tr>\n"
          << "<tr><th>duration</th><td>" << m.duration_s << " s</td></tr>\n"
          << "</table>\n"
          << "<pre>" << html_escape(load_output(m.output_ref)) << "</pre>\n";
    }
  }
  out << "</body>\n</html>\n";
  return out.str();
}

std::string emit_project_report(const std::vector<FileCoverageRow>& rows,
                                const CoverageSummary& total,
                                double green_duration_s) {
  std::ostringstream out;
  out << "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n"
      << "<title>LittleDarwin Project Report</title>\n"
      << "<style>\n" << kStyle << "</style>\n</head>\n<body>\n"
      << "<h1>LittleDarwin Project Report</h1>\n"
      << "<p>Green suite duration: " << green_duration_s << " s</p>\n";
  if (rows.empty()) {
    out << "<p>No mutants were executed; coverage n/a.</p>\n";
  } else {
    out << "<table>\n<tr><th>Source file</th><th>Killed</th>"
        << "<th>Valid mutants</th><th>Coverage</th></tr>\n";
    for (const FileCoverageRow& row : rows) {
      out << "<tr><td><a href=\"" << html_escape(report_page_name(row.path))
          << "\">" << html_escape(row.path) << "</a></td><td>"
          << row.summary.killed << "</td><td>" << row.summary.total_valid
          << "</td><td>" << format_percent(row.summary) << "</td></tr>\n";
    }
    out << "<tr class=\"total\"><td>Project</td><td>" << total.killed
        << "</td><td>" << total.total_valid << "</td><td>"
        << format_percent(total) << "</td></tr>\n</table>\n";
  }
  out << "</body>\n</html>\n";
  return out.str();
}

}  // namespace littledarwin
