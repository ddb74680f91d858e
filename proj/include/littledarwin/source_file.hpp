#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace littledarwin {

// Half-open byte range [start, end) into a source file.
struct ByteSpan {
  uint32_t start = 0;
  uint32_t end = 0;

  uint32_t length() const { return end - start; }
  bool contains(const ByteSpan& other) const {
    return start <= other.start && other.end <= end;
  }
  friend bool operator==(const ByteSpan&, const ByteSpan&) = default;
};

// One textual replacement. A zero-length span is a pure insertion.
struct Edit {
  ByteSpan span;
  std::string replacement;

  friend bool operator==(const Edit&, const Edit&) = default;
};

class OverlappingEdits : public std::runtime_error {
 public:
  explicit OverlappingEdits(const std::string& what) : std::runtime_error(what) {}
};

// A Java source file held in memory. Content is treated as raw bytes
// (UTF-8 on disk); all spans and offsets are byte offsets.
class SourceFile {
 public:
  SourceFile() = default;
  SourceFile(std::string path, std::string content);

  static SourceFile load(const std::filesystem::path& abs_path,
                         std::string relative_path);

  const std::string& path() const { return path_; }
  const std::string& content() const { return content_; }

  // line_index()[i] is the byte offset of the first byte of line i+1.
  // line_index()[0] is always 0.
  const std::vector<uint32_t>& line_index() const { return line_index_; }

  // 1-based line containing the given byte offset.
  uint32_t line_of(uint32_t offset) const;

  std::string_view text(ByteSpan span) const;

  // Non-blank source lines; the class-size measure used for weighted sampling.
  int loc() const;

 private:
  std::string path_;
  std::string content_;
  std::vector<uint32_t> line_index_;
};

// Two edits conflict when their spans intersect or start at the same byte
// (equal starts make the application order ambiguous).
bool edits_conflict(const Edit& a, const Edit& b);

// Applies the edits to the file content. Bytes outside the edit spans are
// preserved exactly; zero edits returns the content unchanged.
// Throws OverlappingEdits when any two spans conflict.
std::string splice(const SourceFile& file, std::vector<Edit> edits);
std::string splice(std::string_view content, std::vector<Edit> edits);

}  // namespace littledarwin
