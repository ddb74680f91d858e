#include "littledarwin/executor.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <fstream>
#include <sstream>

namespace littledarwin {

namespace {

using Clock = std::chrono::steady_clock;

// Accumulates one stream, emitting complete lines into the shared buffer
// with a stream tag.
struct TaggedLineBuffer {
  const char* tag;
  std::string partial;

  void feed(std::string_view chunk, std::string& out) {
    for (char c : chunk) {
      partial += c;
      if (c == '\n') {
        out += tag;
        out += partial;
        partial.clear();
      }
    }
  }
  void flush(std::string& out) {
    if (!partial.empty()) {
      out += tag;
      out += partial;
      partial.clear();
    }
  }
};

std::string read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool write_file_bytes(const std::filesystem::path& path,
                      const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return false;
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  return static_cast<bool>(out);
}

}  // namespace

const char* status_name(MutantStatus status) {
  switch (status) {
    case MutantStatus::Killed: return "killed";
    case MutantStatus::KilledTimeout: return "killed-timeout";
    case MutantStatus::Survived: return "survived";
    case MutantStatus::Invalid: return "invalid";
  }
  return "?";
}

std::optional<MutantStatus> status_from_name(std::string_view name) {
  if (name == "killed") return MutantStatus::Killed;
  if (name == "killed-timeout") return MutantStatus::KilledTimeout;
  if (name == "survived") return MutantStatus::Survived;
  if (name == "invalid") return MutantStatus::Invalid;
  return std::nullopt;
}

MutantStatus classify(int exit_status, bool timed_out,
                      const std::string& output, const BuildConfig& cfg) {
  for (const std::string& marker : cfg.compile_error_markers) {
    if (!marker.empty() && output.find(marker) != std::string::npos) {
      return MutantStatus::Invalid;
    }
  }
  if (timed_out) return MutantStatus::KilledTimeout;
  return exit_status == 0 ? MutantStatus::Survived : MutantStatus::Killed;
}

RunResult run_command(const BuildConfig& cfg) {
  if (cfg.command.empty()) throw std::invalid_argument("empty build command");
  if (!(cfg.timeout_s > 0)) throw std::invalid_argument("timeout must be > 0");

  int out_pipe[2];
  int err_pipe[2];
  if (pipe(out_pipe) != 0 || pipe(err_pipe) != 0) {
    throw std::runtime_error("pipe() failed");
  }

  auto start = Clock::now();
  pid_t pid = fork();
  if (pid < 0) throw std::runtime_error("fork() failed");
  if (pid == 0) {
    setpgid(0, 0);
    dup2(out_pipe[1], STDOUT_FILENO);
    dup2(err_pipe[1], STDERR_FILENO);
    close(out_pipe[0]);
    close(out_pipe[1]);
    close(err_pipe[0]);
    close(err_pipe[1]);
    if (!cfg.working_dir.empty() &&
        chdir(cfg.working_dir.c_str()) != 0) {
      fprintf(stderr, "cannot chdir to %s\n", cfg.working_dir.c_str());
      _exit(127);
    }
    for (const auto& [key, value] : cfg.env_overrides) {
      setenv(key.c_str(), value.c_str(), 1);
    }
    std::vector<char*> argv;
    argv.reserve(cfg.command.size() + 1);
    for (const std::string& arg : cfg.command) {
      argv.push_back(const_cast<char*>(arg.c_str()));
    }
    argv.push_back(nullptr);
    execvp(argv[0], argv.data());
    fprintf(stderr, "exec failed: %s: %s\n", argv[0], strerror(errno));
    _exit(127);
  }

  close(out_pipe[1]);
  close(err_pipe[1]);

  RunResult result;
  TaggedLineBuffer out_buf{"[out] ", {}};
  TaggedLineBuffer err_buf{"[err] ", {}};
  bool out_open = true;
  bool err_open = true;
  bool killed = false;
  auto deadline = start + std::chrono::duration_cast<Clock::duration>(
                              std::chrono::duration<double>(cfg.timeout_s));
  // A detached grandchild can hold the pipes open past the kill; stop
  // draining after a grace period.
  Clock::time_point drain_deadline;
  char chunk[4096];

  while (out_open || err_open) {
    struct pollfd fds[2];
    nfds_t nfds = 0;
    if (out_open) fds[nfds++] = {out_pipe[0], POLLIN, 0};
    if (err_open) fds[nfds++] = {err_pipe[0], POLLIN, 0};

    int wait_ms;
    if (!killed) {
      auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
                           deadline - Clock::now())
                           .count();
      wait_ms = remaining > 0 ? static_cast<int>(std::min<long long>(
                                    remaining, 1000))
                              : 0;
    } else {
      if (Clock::now() >= drain_deadline) break;
      wait_ms = 200;
    }
    int rc = poll(fds, nfds, wait_ms);
    if (rc < 0 && errno != EINTR) break;

    if (!killed && Clock::now() >= deadline) {
      kill(-pid, SIGKILL);
      result.timed_out = true;
      killed = true;
      drain_deadline = Clock::now() + std::chrono::seconds(5);
    }
    if (rc <= 0) continue;

    for (nfds_t i = 0; i < nfds; ++i) {
      if (!(fds[i].revents & (POLLIN | POLLHUP))) continue;
      bool is_out = fds[i].fd == out_pipe[0];
      ssize_t n = read(fds[i].fd, chunk, sizeof(chunk));
      if (n > 0) {
        (is_out ? out_buf : err_buf)
            .feed(std::string_view(chunk, static_cast<size_t>(n)),
                  result.output);
      } else if (n == 0 || (n < 0 && errno != EINTR && errno != EAGAIN)) {
        close(fds[i].fd);
        (is_out ? out_open : err_open) = false;
      }
    }
  }
  out_buf.flush(result.output);
  err_buf.flush(result.output);

  int wstatus = 0;
  while (waitpid(pid, &wstatus, 0) < 0 && errno == EINTR) {
  }
  if (WIFEXITED(wstatus)) {
    result.exit_status = WEXITSTATUS(wstatus);
  } else if (WIFSIGNALED(wstatus)) {
    result.exit_status = 128 + WTERMSIG(wstatus);
  } else {
    result.exit_status = -1;
  }
  result.duration_s =
      std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

GreenResult verify_green(const BuildConfig& cfg) {
  RunResult res = run_command(cfg);
  if (res.timed_out || res.exit_status != 0) {
    throw NotGreen(res.exit_status, res.timed_out, std::move(res.output));
  }
  return GreenResult{res.duration_s, std::move(res.output)};
}

MutantOutcome run_mutant(const BuildConfig& cfg,
                         const std::filesystem::path& source_abs_path,
                         const std::string& mutant_bytes,
                         const std::string& mutant_id) {
  std::string original = read_file_bytes(source_abs_path);

  struct Restorer {
    const std::filesystem::path& path;
    const std::string& bytes;
    bool done = false;
    ~Restorer() {
      if (!done) write_file_bytes(path, bytes);
    }
  } restorer{source_abs_path, original};

  if (!write_file_bytes(source_abs_path, mutant_bytes)) {
    restorer.done = true;
    throw std::runtime_error("cannot write mutant to " +
                             source_abs_path.string());
  }

  RunResult res;
  try {
    res = run_command(cfg);
  } catch (...) {
    // restorer puts the original back; surface the build failure
    if (write_file_bytes(source_abs_path, original)) restorer.done = true;
    throw;
  }

  if (!write_file_bytes(source_abs_path, original)) {
    throw RestoreFailure("cannot restore " + source_abs_path.string());
  }
  restorer.done = true;
  std::string check = read_file_bytes(source_abs_path);
  if (check != original) {
    throw RestoreFailure("restored content of " + source_abs_path.string() +
                         " does not match the backup");
  }

  MutantOutcome outcome;
  outcome.mutant_id = mutant_id;
  outcome.timed_out = res.timed_out;
  if (!res.timed_out) outcome.exit_status = res.exit_status;
  outcome.status = classify(res.exit_status, res.timed_out, res.output, cfg);
  outcome.build_output = std::move(res.output);
  outcome.duration_s = res.duration_s;
  return outcome;
}

uint64_t hash_source_tree(const std::filesystem::path& root) {
  std::vector<std::filesystem::path> files;
  if (std::filesystem::exists(root)) {
    for (const auto& entry :
         std::filesystem::recursive_directory_iterator(root)) {
      if (entry.is_regular_file() && entry.path().extension() == ".java") {
        files.push_back(entry.path());
      }
    }
  }
  std::sort(files.begin(), files.end());
  uint64_t hash = 1469598103934665603ull;  // FNV-1a
  auto mix = [&hash](std::string_view bytes) {
    for (unsigned char c : bytes) {
      hash ^= c;
      hash *= 1099511628211ull;
    }
  };
  for (const auto& path : files) {
    mix(path.string());
    mix("\0");
    mix(read_file_bytes(path));
  }
  return hash;
}

}  // namespace littledarwin
