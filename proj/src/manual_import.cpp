#include "littledarwin/manual_import.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "littledarwin/mutation.hpp"

namespace littledarwin {

namespace {

// Line records keep their terminators so hunks splice back byte-exactly.
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start < text.size()) {
    size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start + 1));
    start = nl + 1;
  }
  return lines;
}

std::vector<std::string> path_components(const std::filesystem::path& p) {
  std::vector<std::string> out;
  for (const auto& part : p) {
    if (part != "." && !part.empty()) out.push_back(part.string());
  }
  return out;
}

// Number of trailing path components the two paths share.
size_t suffix_match_length(const std::vector<std::string>& a,
                           const std::vector<std::string>& b) {
  size_t n = 0;
  while (n < a.size() && n < b.size() &&
         a[a.size() - 1 - n] == b[b.size() - 1 - n]) {
    ++n;
  }
  return n;
}

}  // namespace

std::vector<Edit> diff_to_edits(const SourceFile& source,
                                const std::string& target,
                                std::vector<uint32_t>* hunk_lines) {
  std::string_view src(source.content());
  std::string_view dst(target);
  std::vector<std::string_view> a = split_lines(src);
  std::vector<std::string_view> b = split_lines(dst);

  size_t prefix = 0;
  while (prefix < a.size() && prefix < b.size() && a[prefix] == b[prefix]) {
    ++prefix;
  }
  size_t suffix = 0;
  while (suffix < a.size() - prefix && suffix < b.size() - prefix &&
         a[a.size() - 1 - suffix] == b[b.size() - 1 - suffix]) {
    ++suffix;
  }
  size_t am = a.size() - prefix - suffix;  // middle lengths
  size_t bm = b.size() - prefix - suffix;

  // byte offset of the start of line i in the source
  auto line_offset = [&](size_t i) -> uint32_t {
    if (i >= a.size()) return static_cast<uint32_t>(src.size());
    return static_cast<uint32_t>(a[i].data() - src.data());
  };

  struct Hunk {
    size_t a_from, a_to;  // source line range [from, to)
    size_t b_from, b_to;  // target line range
  };
  std::vector<Hunk> hunks;

  constexpr size_t kLcsCap = 1000;
  if (am == 0 && bm == 0) {
    // identical
  } else if (am > kLcsCap || bm > kLcsCap) {
    hunks.push_back({prefix, prefix + am, prefix, prefix + bm});
  } else {
    // LCS over the middle lines
    std::vector<std::vector<uint32_t>> lcs(am + 1,
                                           std::vector<uint32_t>(bm + 1, 0));
    for (size_t i = am; i-- > 0;) {
      for (size_t j = bm; j-- > 0;) {
        if (a[prefix + i] == b[prefix + j]) {
          lcs[i][j] = lcs[i + 1][j + 1] + 1;
        } else {
          lcs[i][j] = std::max(lcs[i + 1][j], lcs[i][j + 1]);
        }
      }
    }
    size_t i = 0;
    size_t j = 0;
    while (i < am || j < bm) {
      if (i < am && j < bm && a[prefix + i] == b[prefix + j]) {
        ++i;
        ++j;
        continue;
      }
      size_t hi = i;
      size_t hj = j;
      while (i < am || j < bm) {
        if (i < am && j < bm && a[prefix + i] == b[prefix + j]) break;
        if (i < am && (j >= bm || lcs[i + 1][j] >= lcs[i][j + 1])) {
          ++i;
        } else {
          ++j;
        }
      }
      hunks.push_back({prefix + hi, prefix + i, prefix + hj, prefix + j});
    }
  }

  std::vector<Edit> edits;
  for (const Hunk& h : hunks) {
    Edit e;
    e.span.start = line_offset(h.a_from);
    e.span.end = line_offset(h.a_to);
    std::string replacement;
    for (size_t j = h.b_from; j < h.b_to; ++j) replacement += b[j];
    e.replacement = std::move(replacement);
    if (hunk_lines) {
      hunk_lines->push_back(static_cast<uint32_t>(h.a_from) + 1);
    }
    edits.push_back(std::move(e));
  }
  return edits;
}

ManualMutant match_candidate(const std::filesystem::path& candidate_rel,
                             const std::string& candidate_bytes,
                             const std::vector<SourceFile>& corpus) {
  std::vector<std::string> cand = path_components(candidate_rel);
  size_t best = 0;
  std::vector<const SourceFile*> winners;
  for (const SourceFile& src : corpus) {
    size_t n = suffix_match_length(cand, path_components(src.path()));
    if (n == 0) continue;
    if (n > best) {
      best = n;
      winners.assign(1, &src);
    } else if (n == best) {
      winners.push_back(&src);
    }
  }
  if (winners.empty()) {
    throw NoMatch("no corpus file matches " + candidate_rel.string());
  }
  if (winners.size() > 1) {
    std::string msg = candidate_rel.string() + " matches ";
    for (size_t i = 0; i < winners.size(); ++i) {
      if (i > 0) msg += ", ";
      msg += winners[i]->path();
    }
    throw AmbiguousMatch(msg);
  }

  const SourceFile& source = *winners.front();
  ManualMutant mm;
  mm.mutant_file = candidate_rel;
  mm.matched_source = source.path();
  mm.mutant_bytes = std::string(strip_mutant_header(candidate_bytes));
  mm.edits = diff_to_edits(source, mm.mutant_bytes, &mm.lines);
  if (mm.edits.empty()) {
    throw IdenticalToSource(candidate_rel.string() +
                            " is identical to " + source.path());
  }
  return mm;
}

ImportReport import_mutants(const std::filesystem::path& dir,
                            const std::vector<SourceFile>& corpus) {
  ImportReport report;
  if (!std::filesystem::exists(dir)) {
    report.errors.push_back("manual mutant directory does not exist: " +
                            dir.string());
    return report;
  }
  std::vector<std::filesystem::path> candidates;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".java") {
      candidates.push_back(entry.path());
    }
  }
  std::sort(candidates.begin(), candidates.end());
  for (const auto& path : candidates) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
      report.imported.push_back(match_candidate(
          std::filesystem::relative(path, dir), buf.str(), corpus));
    } catch (const std::exception& e) {
      report.errors.push_back(e.what());
    }
  }
  return report;
}

}  // namespace littledarwin
