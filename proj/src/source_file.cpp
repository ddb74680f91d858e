#include "littledarwin/source_file.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace littledarwin {

SourceFile::SourceFile(std::string path, std::string content)
    : path_(std::move(path)), content_(std::move(content)) {
  line_index_.push_back(0);
  for (uint32_t i = 0; i < content_.size(); ++i) {
    if (content_[i] == '\n') line_index_.push_back(i + 1);
  }
}

SourceFile SourceFile::load(const std::filesystem::path& abs_path,
                            std::string relative_path) {
  std::ifstream in(abs_path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read file: " + abs_path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return SourceFile(std::move(relative_path), buf.str());
}

uint32_t SourceFile::line_of(uint32_t offset) const {
  auto it = std::upper_bound(line_index_.begin(), line_index_.end(), offset);
  return static_cast<uint32_t>(it - line_index_.begin());
}

std::string_view SourceFile::text(ByteSpan span) const {
  return std::string_view(content_).substr(span.start, span.length());
}

int SourceFile::loc() const {
  int count = 0;
  bool blank = true;
  for (char c : content_) {
    if (c == '\n') {
      if (!blank) ++count;
      blank = true;
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      blank = false;
    }
  }
  if (!blank) ++count;
  return count;
}

bool edits_conflict(const Edit& a, const Edit& b) {
  if (a.span.start == b.span.start) return true;
  return a.span.start < b.span.end && b.span.start < a.span.end;
}

std::string splice(const SourceFile& file, std::vector<Edit> edits) {
  return splice(file.content(), std::move(edits));
}

std::string splice(std::string_view content, std::vector<Edit> edits) {
  std::sort(edits.begin(), edits.end(), [](const Edit& a, const Edit& b) {
    return a.span.start < b.span.start;
  });
  for (size_t i = 0; i + 1 < edits.size(); ++i) {
    if (edits_conflict(edits[i], edits[i + 1])) {
      throw OverlappingEdits("edit spans overlap at byte " +
                             std::to_string(edits[i + 1].span.start));
    }
  }
  for (const Edit& e : edits) {
    if (e.span.end < e.span.start || e.span.end > content.size()) {
      throw std::out_of_range("edit span outside file content");
    }
  }
  std::string out;
  out.reserve(content.size());
  uint32_t cursor = 0;
  for (const Edit& e : edits) {
    out.append(content.substr(cursor, e.span.start - cursor));
    out.append(e.replacement);
    cursor = e.span.end;
  }
  out.append(content.substr(cursor));
  return out;
}

}  // namespace littledarwin
