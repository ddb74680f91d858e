#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "littledarwin/executor.hpp"

using namespace littledarwin;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("ld_exec_test_" + std::to_string(::getpid()) + "_" +
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

void write_script(const fs::path& path, const std::string& body) {
  std::ofstream out(path);
  out << "#!/bin/sh\n" << body;
  out.close();
  fs::permissions(path, fs::perms::owner_all, fs::perm_options::add);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

BuildConfig script_config(const TempDir& dir, const std::string& body,
                          double timeout = 20.0) {
  write_script(dir.path / "build.sh", body);
  BuildConfig cfg;
  cfg.command = {"./build.sh"};
  cfg.working_dir = dir.path;
  cfg.timeout_s = timeout;
  return cfg;
}

}  // namespace

TEST_SUITE("executor") {

TEST_CASE("classification: compiler markers win; timeout beats exit code") {
  BuildConfig cfg;
  cfg.command = {"true"};
  cfg.timeout_s = 1;

  CHECK(classify(1, false, "COMPILATION ERROR in Foo.java", cfg) ==
        MutantStatus::Invalid);
  CHECK(classify(0, false, "", cfg) == MutantStatus::Survived);
  CHECK(classify(137, true, "", cfg) == MutantStatus::KilledTimeout);
  CHECK(classify(1, false, "tests failed", cfg) == MutantStatus::Killed);
  CHECK(classify(1, false, "Foo.java:3: error: cannot find symbol", cfg) ==
        MutantStatus::Invalid);
  // marker check comes first even on timeouts
  CHECK(classify(137, true, "COMPILATION ERROR", cfg) == MutantStatus::Invalid);

  BuildConfig custom = cfg;
  custom.compile_error_markers = {"BOOM"};
  CHECK(classify(1, false, "COMPILATION ERROR", custom) ==
        MutantStatus::Killed);
  CHECK(classify(1, false, "BOOM", custom) == MutantStatus::Invalid);
}

TEST_CASE("status names round-trip") {
  for (MutantStatus s :
       {MutantStatus::Killed, MutantStatus::KilledTimeout,
        MutantStatus::Survived, MutantStatus::Invalid}) {
    CHECK(status_from_name(status_name(s)) == s);
  }
  CHECK(!status_from_name("bogus"));
}

TEST_CASE("run_command captures both streams with tags") {
  TempDir dir;
  BuildConfig cfg = script_config(
      dir, "echo out-line-1\necho err-line-1 1>&2\necho out-line-2\nexit 0\n");
  RunResult res = run_command(cfg);
  CHECK(res.exit_status == 0);
  CHECK(!res.timed_out);
  CHECK(res.output.find("[out] out-line-1\n") != std::string::npos);
  CHECK(res.output.find("[out] out-line-2\n") != std::string::npos);
  CHECK(res.output.find("[err] err-line-1\n") != std::string::npos);
  CHECK(res.duration_s > 0);
}

TEST_CASE("run_command reports the exit status") {
  TempDir dir;
  BuildConfig cfg = script_config(dir, "exit 3\n");
  RunResult res = run_command(cfg);
  CHECK(res.exit_status == 3);
  CHECK(!res.timed_out);
}

TEST_CASE("run_command kills the process group on timeout") {
  TempDir dir;
  BuildConfig cfg = script_config(dir, "echo started\nsleep 30\necho never\n",
                                  /*timeout=*/1.0);
  RunResult res = run_command(cfg);
  CHECK(res.timed_out);
  CHECK(res.output.find("started") != std::string::npos);
  CHECK(res.output.find("never") == std::string::npos);
  CHECK(res.duration_s < 10.0);
}

TEST_CASE("environment overrides reach the subprocess") {
  TempDir dir;
  BuildConfig cfg = script_config(dir, "echo marker=$LD_TEST_MARKER\n");
  cfg.env_overrides["LD_TEST_MARKER"] = "xyzzy";
  RunResult res = run_command(cfg);
  CHECK(res.output.find("marker=xyzzy") != std::string::npos);
}

TEST_CASE("sentinel bytes are retained byte-complete") {
  TempDir dir;
  std::string sentinel = "SENTINEL-\x01\x02-\xc3\xa9-7f3a9";
  BuildConfig cfg =
      script_config(dir, "printf '%s\\n' 'SENTINEL-\x01\x02-\xc3\xa9-7f3a9'\n");
  RunResult res = run_command(cfg);
  CHECK(res.output.find(sentinel) != std::string::npos);
}

TEST_CASE("empty command or non-positive timeout are rejected") {
  BuildConfig cfg;
  cfg.timeout_s = 5;
  CHECK_THROWS_AS(run_command(cfg), std::invalid_argument);
  cfg.command = {"true"};
  cfg.timeout_s = 0;
  CHECK_THROWS_AS(run_command(cfg), std::invalid_argument);
}

TEST_CASE("verify_green succeeds on exit 0 and measures duration") {
  TempDir dir;
  BuildConfig cfg = script_config(dir, "exit 0\n");
  GreenResult green = verify_green(cfg);
  CHECK(green.duration_s > 0);
}

TEST_CASE("verify_green throws NotGreen on failure") {
  TempDir dir;
  BuildConfig cfg = script_config(dir, "echo red tests 1>&2\nexit 1\n");
  try {
    verify_green(cfg);
    FAIL("expected NotGreen");
  } catch (const NotGreen& e) {
    CHECK(e.exit_status == 1);
    CHECK(!e.timed_out);
    CHECK(e.output.find("red tests") != std::string::npos);
  }
}

TEST_CASE("verify_green throws NotGreen on timeout") {
  TempDir dir;
  BuildConfig cfg = script_config(dir, "sleep 30\n", /*timeout=*/1.0);
  try {
    verify_green(cfg);
    FAIL("expected NotGreen");
  } catch (const NotGreen& e) {
    CHECK(e.timed_out);
  }
}

TEST_CASE("run_mutant splices, classifies and restores byte-identically") {
  TempDir dir;
  fs::path source = dir.path / "Foo.java";
  std::string original = "class Foo { int f() { return 1 + 2; } }\n";
  std::ofstream(source) << original;

  // build result depends on the live file content
  BuildConfig cfg = script_config(
      dir, "grep -q 'MUTATED' Foo.java && exit 1\nexit 0\n");

  SUBCASE("killed when the build fails") {
    MutantOutcome out =
        run_mutant(cfg, source, "class Foo { /* MUTATED */ }\n", "1");
    CHECK(out.status == MutantStatus::Killed);
    CHECK(out.exit_status == 1);
    CHECK(slurp(source) == original);
  }

  SUBCASE("survived when the build passes") {
    MutantOutcome out = run_mutant(cfg, source, "class Foo { }\n", "2");
    CHECK(out.status == MutantStatus::Survived);
    CHECK(out.exit_status == 0);
    CHECK(slurp(source) == original);
  }

  SUBCASE("killed-timeout when the build hangs") {
    BuildConfig slow = script_config(dir, "sleep 30\n", /*timeout=*/1.0);
    MutantOutcome out = run_mutant(slow, source, "mutant", "3");
    CHECK(out.status == MutantStatus::KilledTimeout);
    CHECK(!out.exit_status.has_value());
    CHECK(out.timed_out);
    CHECK(slurp(source) == original);
  }

  SUBCASE("invalid when a compile marker appears") {
    BuildConfig bad = script_config(
        dir, "echo 'Foo.java:1: error: something'\nexit 1\n");
    MutantOutcome out = run_mutant(bad, source, "mutant", "4");
    CHECK(out.status == MutantStatus::Invalid);
    CHECK(slurp(source) == original);
  }
}

TEST_CASE("run_mutant restores the file even when exec fails") {
  TempDir dir;
  fs::path source = dir.path / "Foo.java";
  std::string original = "original\n";
  std::ofstream(source) << original;
  BuildConfig cfg;
  cfg.command = {"/nonexistent-binary-zzz"};
  cfg.working_dir = dir.path;
  cfg.timeout_s = 5;
  MutantOutcome out = run_mutant(cfg, source, "mutant", "1");
  // exec failure -> exit 127 -> killed; the file must be restored
  CHECK(out.status == MutantStatus::Killed);
  CHECK(slurp(source) == original);
}

TEST_CASE("run_mutant fails loudly when the source cannot be written") {
  TempDir dir;
  fs::path missing_parent = dir.path / "ghost" / "Foo.java";
  BuildConfig cfg;
  cfg.command = {"true"};
  cfg.working_dir = dir.path;
  cfg.timeout_s = 5;
  CHECK_THROWS(run_mutant(cfg, missing_parent, "mutant", "1"));
}

TEST_CASE("hash_source_tree detects content changes and restores") {
  TempDir dir;
  fs::create_directories(dir.path / "src");
  std::ofstream(dir.path / "src" / "A.java") << "class A {}\n";
  std::ofstream(dir.path / "src" / "B.java") << "class B {}\n";
  uint64_t before = hash_source_tree(dir.path);

  std::ofstream(dir.path / "src" / "A.java") << "class A { int x; }\n";
  uint64_t changed = hash_source_tree(dir.path);
  CHECK(changed != before);

  std::ofstream(dir.path / "src" / "A.java") << "class A {}\n";
  CHECK(hash_source_tree(dir.path) == before);

  // non-.java files do not contribute
  std::ofstream(dir.path / "src" / "notes.txt") << "scratch\n";
  CHECK(hash_source_tree(dir.path) == before);
}

}  // TEST_SUITE
