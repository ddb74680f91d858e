#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "littledarwin/manual_import.hpp"
#include "littledarwin/mutation.hpp"

using namespace littledarwin;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("ld_import_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int n = 0;
    return n;
  }
};

void put(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << content;
}

const std::string kSourceA =
    "package a;\n"
    "class Foo {\n"
    "  int f(int x) {\n"
    "    return x + 1;\n"
    "  }\n"
    "}\n";

}  // namespace

TEST_SUITE("manual_import") {

TEST_CASE("diff_to_edits: one changed line round-trips through splice") {
  SourceFile source("a/Foo.java", kSourceA);
  std::string mutant = kSourceA;
  size_t pos = mutant.find("x + 1");
  mutant.replace(pos, 5, "x - 1");

  std::vector<uint32_t> lines;
  std::vector<Edit> edits = diff_to_edits(source, mutant, &lines);
  REQUIRE(edits.size() == 1);
  CHECK(lines == std::vector<uint32_t>{4});
  CHECK(splice(source, edits) == mutant);
}

TEST_CASE("diff_to_edits: multi-hunk changes and insertions round-trip") {
  SourceFile source("a/Foo.java", kSourceA);
  std::string mutant =
      "package a;\n"
      "class Foo {\n"
      "  int extra;\n"
      "  int f(int x) {\n"
      "    return x - 1;\n"
      "  }\n"
      "}\n";
  std::vector<Edit> edits = diff_to_edits(source, mutant, nullptr);
  CHECK(edits.size() >= 1);
  CHECK(splice(source, edits) == mutant);

  // deletion
  std::string shorter =
      "package a;\n"
      "class Foo {\n"
      "}\n";
  std::vector<Edit> del = diff_to_edits(source, shorter, nullptr);
  CHECK(splice(source, del) == shorter);

  // missing trailing newline on the mutant side
  std::string no_newline = kSourceA.substr(0, kSourceA.size() - 1);
  std::vector<Edit> trail = diff_to_edits(source, no_newline, nullptr);
  CHECK(splice(source, trail) == no_newline);
}

TEST_CASE("identical input yields no edits") {
  SourceFile source("a/Foo.java", kSourceA);
  CHECK(diff_to_edits(source, kSourceA, nullptr).empty());
}

TEST_CASE("match_candidate resolves by longest path suffix") {
  std::vector<SourceFile> corpus = {
      SourceFile("a/Foo.java", kSourceA),
      SourceFile("b/Foo.java", "class Foo { /* b */ }\n"),
      SourceFile("a/Bar.java", "class Bar {}\n"),
  };
  std::string mutant = kSourceA;
  mutant.replace(mutant.find("+"), 1, "-");

  ManualMutant mm = match_candidate("a/Foo.java", mutant, corpus);
  CHECK(mm.matched_source == "a/Foo.java");
  REQUIRE(!mm.edits.empty());
  SourceFile source("a/Foo.java", kSourceA);
  CHECK(splice(source, mm.edits) == mutant);
  CHECK(mm.lines == std::vector<uint32_t>{4});
}

TEST_CASE("a bare filename matching two corpus files is ambiguous") {
  std::vector<SourceFile> corpus = {
      SourceFile("a/Foo.java", kSourceA),
      SourceFile("b/Foo.java", "class Foo { /* b */ }\n"),
  };
  CHECK_THROWS_AS(match_candidate("Foo.java", "class Foo { int x; }\n", corpus),
                  AmbiguousMatch);
}

TEST_CASE("no matching corpus file raises NoMatch") {
  std::vector<SourceFile> corpus = {SourceFile("a/Foo.java", kSourceA)};
  CHECK_THROWS_AS(match_candidate("Qux.java", "class Qux {}\n", corpus),
                  NoMatch);
}

TEST_CASE("byte-identical candidates raise IdenticalToSource") {
  std::vector<SourceFile> corpus = {SourceFile("a/Foo.java", kSourceA)};
  CHECK_THROWS_AS(match_candidate("a/Foo.java", kSourceA, corpus),
                  IdenticalToSource);
}

TEST_CASE("an optional mutant header is ignored for diffing") {
  std::vector<SourceFile> corpus = {SourceFile("a/Foo.java", kSourceA)};
  std::string mutant = kSourceA;
  mutant.replace(mutant.find("+"), 1, "-");
  std::string with_header =
      "/* LittleDarwin mutant\n"
      "mutant_id: 9\n"
      "operator: AOR-B\n"
      "before: return x + 1;\n"
      "after: return x - 1;\n"
      "line: 4\n"
      "node_ids: 12\n"
      "*/\n" +
      mutant;
  ManualMutant mm = match_candidate("a/Foo.java", with_header, corpus);
  CHECK(mm.mutant_bytes == mutant);
  SourceFile source("a/Foo.java", kSourceA);
  CHECK(splice(source, mm.edits) == mutant);
}

TEST_CASE("import_mutants walks a directory, reporting failures per file") {
  TempDir dir;
  std::vector<SourceFile> corpus = {
      SourceFile("a/Foo.java", kSourceA),
      SourceFile("b/Foo.java", "class Foo { /* b */ }\n"),
      SourceFile("a/Bar.java", "class Bar {\n  int x;\n}\n"),
  };
  std::string good = kSourceA;
  good.replace(good.find("+"), 1, "-");
  put(dir.path / "a" / "Foo.java", good);          // matches a/Foo.java
  put(dir.path / "Foo.java", "class Foo {}\n");    // ambiguous
  put(dir.path / "Missing.java", "class M {}\n");  // no match
  put(dir.path / "a" / "Bar.java",
      "class Bar {\n  int x;\n}\n");  // identical

  ImportReport report = import_mutants(dir.path, corpus);
  REQUIRE(report.imported.size() == 1);
  CHECK(report.imported[0].matched_source == "a/Foo.java");
  CHECK(report.errors.size() == 3);
}

TEST_CASE("random single-line edits round-trip on a larger file") {
  std::string big;
  for (int i = 0; i < 60; ++i) {
    big += "    int line" + std::to_string(i) + " = " + std::to_string(i) +
           ";\n";
  }
  SourceFile source("Big.java", big);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::string mutant = big;
    int line = static_cast<int>(rng() % 60);
    std::string needle = "int line" + std::to_string(line) + " ";
    size_t pos = mutant.find(needle);
    REQUIRE(pos != std::string::npos);
    mutant.replace(pos, needle.size(), "long line" + std::to_string(line) + " ");
    std::vector<Edit> edits = diff_to_edits(source, mutant, nullptr);
    REQUIRE(edits.size() == 1);
    CHECK(splice(source, edits) == mutant);
  }
}

}  // TEST_SUITE
