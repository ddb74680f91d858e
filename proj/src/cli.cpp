#include "littledarwin/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "littledarwin/executor.hpp"
#include "littledarwin/higher_order.hpp"
#include "littledarwin/manual_import.hpp"
#include "littledarwin/report_html.hpp"
#include "littledarwin/results.hpp"
#include "littledarwin/sampler.hpp"
#include "littledarwin/subsumption.hpp"

namespace littledarwin {

namespace fs = std::filesystem;

// ---- small utilities --------------------------------------------------------

std::vector<std::string> split_command(const std::string& command) {
  std::vector<std::string> out;
  std::string cur;
  bool in_token = false;
  char quote = '\0';
  for (size_t i = 0; i < command.size(); ++i) {
    char c = command[i];
    if (quote != '\0') {
      if (c == quote) {
        quote = '\0';
      } else if (c == '\\' && quote == '"' && i + 1 < command.size()) {
        cur += command[++i];
      } else {
        cur += c;
      }
      continue;
    }
    if (c == '\'' || c == '"') {
      quote = c;
      in_token = true;
      continue;
    }
    if (c == '\\' && i + 1 < command.size()) {
      cur += command[++i];
      in_token = true;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (in_token) {
        out.push_back(cur);
        cur.clear();
        in_token = false;
      }
      continue;
    }
    cur += c;
    in_token = true;
  }
  if (in_token) out.push_back(cur);
  return out;
}

bool glob_match(std::string_view pattern, std::string_view path) {
  if (pattern.empty()) return path.empty();
  if (pattern.size() >= 2 && pattern[0] == '*' && pattern[1] == '*') {
    std::string_view rest = pattern.substr(2);
    if (!rest.empty() && rest[0] == '/') {
      if (glob_match(rest.substr(1), path)) return true;  // zero components
    }
    if (glob_match(rest, path)) return true;
    for (size_t i = 0; i < path.size(); ++i) {
      if (glob_match(pattern, path.substr(i + 1))) return true;
    }
    return false;
  }
  char c = pattern[0];
  if (c == '*') {
    if (glob_match(pattern.substr(1), path)) return true;
    return !path.empty() && path[0] != '/' &&
           glob_match(pattern, path.substr(1));
  }
  if (path.empty()) return false;
  if (c == '?') {
    return path[0] != '/' && glob_match(pattern.substr(1), path.substr(1));
  }
  return c == path[0] && glob_match(pattern.substr(1), path.substr(1));
}

std::vector<std::string> discover_sources(const ProjectConfig& cfg) {
  std::vector<std::string> out;
  if (!fs::exists(cfg.source_root)) return out;
  for (const auto& entry : fs::recursive_directory_iterator(cfg.source_root)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".java") {
      continue;
    }
    std::string rel =
        fs::relative(entry.path(), cfg.source_root).generic_string();
    if (!cfg.include.empty()) {
      bool keep = false;
      for (const std::string& pat : cfg.include) {
        if (glob_match(pat, rel)) keep = true;
      }
      if (!keep) continue;
    }
    bool dropped = false;
    for (const std::string& pat : cfg.exclude) {
      if (glob_match(pat, rel)) dropped = true;
    }
    if (!dropped) out.push_back(rel);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

uint64_t fnv1a(std::string_view bytes) {
  uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string now_iso8601() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

nlohmann::json edits_to_json(const std::vector<Edit>& edits) {
  nlohmann::json out = nlohmann::json::array();
  for (const Edit& e : edits) {
    out.push_back({{"start", e.span.start},
                   {"end", e.span.end},
                   {"replacement", e.replacement}});
  }
  return out;
}

std::vector<Edit> edits_from_json(const nlohmann::json& j) {
  std::vector<Edit> out;
  for (const auto& je : j) {
    Edit e;
    e.span.start = je.at("start").get<uint32_t>();
    e.span.end = je.at("end").get<uint32_t>();
    e.replacement = je.at("replacement").get<std::string>();
    out.push_back(std::move(e));
  }
  return out;
}

void write_text_file(const fs::path& path, std::string_view bytes) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string dump_json(const nlohmann::json& j) {
  return j.dump(2, ' ', false, nlohmann::json::error_handler_t::replace);
}

std::optional<std::string> validate_operators(
    const std::vector<std::string>& names) {
  for (const std::string& name : names) {
    if (!operator_from_name(name)) return "unknown operator: " + name;
  }
  return std::nullopt;
}

std::set<OperatorKind> enabled_operators(const ProjectConfig& cfg) {
  std::set<OperatorKind> out;
  if (cfg.operators.empty()) {
    out.insert(all_operators().begin(), all_operators().end());
  } else {
    for (const std::string& name : cfg.operators) {
      out.insert(*operator_from_name(name));
    }
  }
  return out;
}

nlohmann::json config_echo(const ProjectConfig& cfg) {
  return {
      {"source_root", cfg.source_root.generic_string()},
      {"output_dir", cfg.output_dir.generic_string()},
      {"build_command", cfg.build_command},
      {"build_dir", cfg.build_dir.generic_string()},
      {"timeout_s", cfg.timeout_s},
      {"operators", cfg.operators},
      {"include", cfg.include},
      {"exclude", cfg.exclude},
      {"sample_rate", cfg.sample_rate ? nlohmann::json(*cfg.sample_rate)
                                      : nlohmann::json()},
      {"sample_strategy", cfg.sample_strategy},
      {"higher_order", cfg.higher_order},
      {"seed", cfg.seed},
      {"jobs", cfg.jobs},
  };
}

}  // namespace

// ---- index serialization ----------------------------------------------------

nlohmann::json MutantIndex::to_json() const {
  nlohmann::json j;
  j["source_root"] = source_root;
  j["seed"] = seed;
  j["higher_order"] = higher_order;
  j["files"] = nlohmann::json::array();
  for (const IndexedFile& f : files) {
    nlohmann::json jf;
    jf["path"] = f.path;
    jf["loc"] = f.loc;
    jf["mutants"] = nlohmann::json::array();
    for (const Mutant& m : f.mutants) {
      jf["mutants"].push_back({
          {"mutant_id", m.mutant_id},
          {"operator", operator_name(m.op)},
          {"line", m.line},
          {"node_ids", m.node_ids},
          {"before", m.before},
          {"after", m.after},
          {"edits", edits_to_json(m.edits)},
      });
    }
    jf["higher_order"] = nlohmann::json::array();
    for (const IndexedHigherOrder& h : f.higher_order) {
      jf["higher_order"].push_back({
          {"mutant_id", h.mutant_id},
          {"constituents", h.constituents},
          {"operator", h.operator_label},
          {"line", h.line},
          {"node_ids", h.node_ids},
          {"before", h.before},
          {"after", h.after},
          {"edits", edits_to_json(h.edits)},
      });
    }
    jf["leftovers"] = f.leftover_ids;
    jf["manual"] = nlohmann::json::array();
    for (const IndexedManual& m : f.manual) {
      jf["manual"].push_back({
          {"mutant_id", m.mutant_id},
          {"lines", m.lines},
          {"edits", edits_to_json(m.edits)},
      });
    }
    j["files"].push_back(std::move(jf));
  }
  return j;
}

MutantIndex MutantIndex::from_json(const nlohmann::json& j) {
  MutantIndex index;
  index.source_root = j.value("source_root", "");
  index.seed = j.value("seed", 0ull);
  index.higher_order = j.value("higher_order", false);
  for (const auto& jf : j.value("files", nlohmann::json::array())) {
    IndexedFile f;
    f.path = jf.at("path").get<std::string>();
    f.loc = jf.value("loc", 0);
    for (const auto& jm : jf.value("mutants", nlohmann::json::array())) {
      Mutant m;
      m.mutant_id = jm.at("mutant_id").get<int>();
      auto op = operator_from_name(jm.at("operator").get<std::string>());
      if (!op) throw std::runtime_error("unknown operator in index");
      m.op = *op;
      m.line = jm.at("line").get<uint32_t>();
      m.node_ids = jm.at("node_ids").get<std::vector<int32_t>>();
      m.before = jm.at("before").get<std::string>();
      m.after = jm.at("after").get<std::string>();
      m.edits = edits_from_json(jm.at("edits"));
      m.source_path = f.path;
      f.mutants.push_back(std::move(m));
    }
    for (const auto& jh : jf.value("higher_order", nlohmann::json::array())) {
      IndexedHigherOrder h;
      h.mutant_id = jh.at("mutant_id").get<int>();
      auto cons = jh.at("constituents").get<std::vector<int>>();
      if (cons.size() == 2) h.constituents = {cons[0], cons[1]};
      h.operator_label = jh.at("operator").get<std::string>();
      h.line = jh.at("line").get<uint32_t>();
      h.node_ids = jh.at("node_ids").get<std::vector<int32_t>>();
      h.before = jh.at("before").get<std::string>();
      h.after = jh.at("after").get<std::string>();
      h.edits = edits_from_json(jh.at("edits"));
      f.higher_order.push_back(std::move(h));
    }
    f.leftover_ids = jf.value("leftovers", std::vector<int>{});
    for (const auto& jm : jf.value("manual", nlohmann::json::array())) {
      IndexedManual m;
      m.mutant_id = jm.at("mutant_id").get<int>();
      m.lines = jm.at("lines").get<std::vector<uint32_t>>();
      m.edits = edits_from_json(jm.at("edits"));
      f.manual.push_back(std::move(m));
    }
    index.files.push_back(std::move(f));
  }
  return index;
}

void MutantIndex::store(const fs::path& path) const {
  write_text_file(path, dump_json(to_json()) + "\n");
}

MutantIndex MutantIndex::load(const fs::path& path) {
  return from_json(nlohmann::json::parse(read_text_file(path)));
}

fs::path index_path(const ProjectConfig& cfg) {
  return cfg.output_dir / "mutants.json";
}
fs::path results_path(const ProjectConfig& cfg) {
  return cfg.output_dir / "results.json";
}
fs::path mutant_file_path(const ProjectConfig& cfg,
                          const std::string& source_rel,
                          const std::string& mutant_id) {
  return cfg.output_dir / "mutated" / source_rel / (mutant_id + ".java");
}

// ---- mutate phase -----------------------------------------------------------

int cmd_mutate(const ProjectConfig& cfg, std::ostream& log) {
  if (!fs::is_directory(cfg.source_root)) {
    log << "error: source root is not a directory: "
        << cfg.source_root.string() << "\n";
    return kExitConfigError;
  }
  if (auto err = validate_operators(cfg.operators)) {
    log << "error: " << *err << "\n";
    return kExitConfigError;
  }
  std::set<OperatorKind> enabled = enabled_operators(cfg);

  fs::remove_all(cfg.output_dir / "mutated");
  fs::remove(index_path(cfg));

  MutantIndex index;
  index.source_root = cfg.source_root.generic_string();
  index.seed = cfg.seed;
  index.higher_order = cfg.higher_order;

  size_t total = 0;
  size_t total_ho = 0;
  size_t skipped = 0;
  for (const std::string& rel : discover_sources(cfg)) {
    SourceFile file = SourceFile::load(cfg.source_root / rel, rel);
    SyntaxTree tree;
    try {
      tree = parse_source(file);
    } catch (const ParseError& e) {
      log << "warning: skipping unparsable file: " << e.what() << "\n";
      ++skipped;
      continue;
    }
    IndexedFile record;
    record.path = rel;
    record.loc = file.loc();
    record.mutants = enumerate_all(tree, file, enabled);
    for (const Mutant& m : record.mutants) {
      write_text_file(mutant_file_path(cfg, rel, std::to_string(m.mutant_id)),
                      render_mutant(file, m));
    }
    total += record.mutants.size();
    if (cfg.higher_order) {
      PairingResult pairing =
          pair_mutants(record.mutants, cfg.seed ^ fnv1a(rel));
      for (const HigherOrderMutant& h : pairing.pairs) {
        write_text_file(
            mutant_file_path(cfg, rel, "ho_" + std::to_string(h.mutant_id)),
            render_higher_order(file, h));
        IndexedHigherOrder ih;
        ih.mutant_id = h.mutant_id;
        ih.constituents = h.constituents;
        ih.operator_label = h.operator_label;
        ih.before = h.before;
        ih.after = h.after;
        ih.line = h.line;
        ih.node_ids = h.node_ids;
        ih.edits = h.edits;
        record.higher_order.push_back(std::move(ih));
      }
      record.leftover_ids = pairing.leftover_ids;
      total_ho += record.higher_order.size();
    }
    index.files.push_back(std::move(record));
  }
  index.store(index_path(cfg));
  log << "generated " << total << " mutants";
  if (cfg.higher_order) log << " and " << total_ho << " higher-order mutants";
  log << " across " << index.files.size() << " files";
  if (skipped > 0) log << " (" << skipped << " files skipped)";
  log << "\n";
  return kExitOk;
}

// ---- run phase --------------------------------------------------------------

namespace {

struct ScheduleEntry {
  std::string path;  // source-relative
  std::string id;    // "1", "ho_1", "man_1"
  MutantRecord meta;
};

std::vector<ScheduleEntry> build_schedule(const MutantIndex& index,
                                          const ProjectConfig& cfg) {
  std::vector<ScheduleEntry> out;
  auto from_fo = [](const std::string& path, const Mutant& m) {
    ScheduleEntry e;
    e.path = path;
    e.id = std::to_string(m.mutant_id);
    e.meta.mutant_id = e.id;
    e.meta.operator_name = operator_name(m.op);
    e.meta.line = m.line;
    e.meta.node_ids = m.node_ids;
    e.meta.before = m.before;
    e.meta.after = m.after;
    return e;
  };
  for (const IndexedFile& f : index.files) {
    if (cfg.higher_order) {
      for (const IndexedHigherOrder& h : f.higher_order) {
        ScheduleEntry e;
        e.path = f.path;
        e.id = "ho_" + std::to_string(h.mutant_id);
        e.meta.mutant_id = e.id;
        e.meta.operator_name = h.operator_label;
        e.meta.line = h.line;
        e.meta.node_ids = h.node_ids;
        e.meta.before = h.before;
        e.meta.after = h.after;
        e.meta.constituents = {std::to_string(h.constituents[0]),
                               std::to_string(h.constituents[1])};
        out.push_back(std::move(e));
      }
      for (int leftover : f.leftover_ids) {
        for (const Mutant& m : f.mutants) {
          if (m.mutant_id == leftover) {
            out.push_back(from_fo(f.path, m));
            break;
          }
        }
      }
    } else {
      for (const Mutant& m : f.mutants) out.push_back(from_fo(f.path, m));
    }
    for (const IndexedManual& m : f.manual) {
      ScheduleEntry e;
      e.path = f.path;
      e.id = "man_" + std::to_string(m.mutant_id);
      e.meta.mutant_id = e.id;
      e.meta.operator_name = "Manual";
      e.meta.line = m.lines.empty() ? 0 : m.lines.front();
      out.push_back(std::move(e));
    }
  }
  return out;
}

std::vector<ScheduleEntry> apply_sampling(std::vector<ScheduleEntry> schedule,
                                          const MutantIndex& index,
                                          const ProjectConfig& cfg,
                                          std::ostream& log) {
  if (!cfg.sample_rate || schedule.empty()) return schedule;
  SampleSpec spec;
  spec.rate = *cfg.sample_rate;
  spec.seed = cfg.seed;
  spec.strategy = cfg.sample_strategy == "weighted" ? SampleStrategy::Weighted
                                                    : SampleStrategy::Uniform;
  std::vector<size_t> picked;
  if (spec.strategy == SampleStrategy::Uniform) {
    picked = sample_uniform_indices(schedule.size(), spec);
  } else {
    std::map<std::string, int> loc;
    for (const IndexedFile& f : index.files) loc[f.path] = f.loc;
    std::vector<double> weights;
    weights.reserve(schedule.size());
    for (const ScheduleEntry& e : schedule) {
      auto it = loc.find(e.path);
      if (it == loc.end()) throw MissingWeight("no LOC for " + e.path);
      weights.push_back(static_cast<double>(it->second));
    }
    picked = sample_weighted_indices(weights, spec);
  }
  std::vector<ScheduleEntry> out;
  out.reserve(picked.size());
  for (size_t i : picked) out.push_back(std::move(schedule[i]));
  log << "sampling selected " << out.size() << " of " << schedule.size()
      << " mutants\n";
  return out;
}

fs::path backup_dir(const ProjectConfig& cfg) {
  return cfg.output_dir / "backup";
}

// Restores sidecar backups left behind by an interrupted run.
void recover_workspace(const ProjectConfig& cfg, std::ostream& log) {
  fs::path dir = backup_dir(cfg);
  if (!fs::exists(dir)) return;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    fs::path rel = fs::relative(entry.path(), dir);
    fs::path target = cfg.source_root / rel;
    log << "recovering " << target.string()
        << " from an interrupted run\n";
    write_text_file(target, read_text_file(entry.path()));
  }
  fs::remove_all(dir);
}

void copy_tree(const fs::path& from, const fs::path& to,
               const fs::path& skip) {
  fs::create_directories(to);
  for (const auto& entry : fs::directory_iterator(from)) {
    if (!skip.empty() && fs::equivalent(entry.path(), skip)) continue;
    const fs::path dst = to / entry.path().filename();
    if (entry.is_directory()) {
      copy_tree(entry.path(), dst, skip);
    } else if (entry.is_regular_file()) {
      fs::copy_file(entry.path(), dst,
                    fs::copy_options::overwrite_existing);
    }
  }
}

void emit_reports(const ProjectConfig& cfg, const ResultsDatabase& db,
                  std::ostream& log) {
  fs::path reports = cfg.output_dir / "reports";
  fs::create_directories(reports);
  auto load_output = [&](const std::string& ref) {
    try {
      return read_output_file(cfg.output_dir, ref);
    } catch (const std::exception&) {
      return std::string("(missing build output: " + ref + ")");
    }
  };
  std::vector<FileCoverageRow> rows;
  for (const FileRecord& f : db.files) {
    write_text_file(reports / report_page_name(f.path),
                    emit_file_report(f.path, f.mutants, load_output));
    rows.push_back({f.path, db.file_coverage(f)});
  }
  std::sort(rows.begin(), rows.end(),
            [](const FileCoverageRow& a, const FileCoverageRow& b) {
              return a.path < b.path;
            });
  write_text_file(
      reports / "index.html",
      emit_project_report(rows, db.project_coverage(), db.green_duration_s));
  log << "reports written to " << reports.string() << "\n";
}

struct RunStats {
  std::map<MutantStatus, int> counts;
  int resumed = 0;
};

}  // namespace

int cmd_run(const ProjectConfig& cfg, std::ostream& log) {
  if (!fs::is_directory(cfg.source_root)) {
    log << "error: source root is not a directory: "
        << cfg.source_root.string() << "\n";
    return kExitConfigError;
  }
  std::vector<std::string> argv = split_command(cfg.build_command);
  if (argv.empty()) {
    log << "error: no build command configured\n";
    return kExitConfigError;
  }
  if (cfg.build_dir.empty() || !fs::is_directory(cfg.build_dir)) {
    log << "error: build directory is not a directory: "
        << cfg.build_dir.string() << "\n";
    return kExitConfigError;
  }
  if (cfg.jobs < 1) {
    log << "error: jobs must be >= 1\n";
    return kExitConfigError;
  }
  if (!fs::exists(index_path(cfg))) {
    log << "error: no mutant index at " << index_path(cfg).string()
        << " (run mutate first)\n";
    return kExitConfigError;
  }
  MutantIndex index = MutantIndex::load(index_path(cfg));

  recover_workspace(cfg, log);
  uint64_t pre_hash = hash_source_tree(cfg.source_root);

  BuildConfig build;
  build.command = argv;
  build.working_dir = cfg.build_dir;
  build.timeout_s = cfg.timeout_s > 0 ? cfg.timeout_s : 3600.0;
  build.env_overrides = cfg.env_overrides;
  if (!cfg.markers.empty()) build.compile_error_markers = cfg.markers;

  log << "verifying green suite...\n";
  GreenResult green;
  try {
    green = verify_green(build);
  } catch (const NotGreen& e) {
    log << "error: " << e.what() << "\n";
    log << e.output;
    return kExitNotGreen;
  }
  log << "green suite passed in " << green.duration_s << " s\n";
  if (cfg.timeout_s <= 0) {
    build.timeout_s = std::max(60.0, 10.0 * green.duration_s);
    log << "per-mutant timeout set to " << build.timeout_s << " s\n";
  }

  ResultsDatabase db;
  if (fs::exists(results_path(cfg))) {
    db = ResultsDatabase::load(results_path(cfg));
  } else {
    db.started_at = now_iso8601();
  }
  db.config = config_echo(cfg);
  db.seed = cfg.seed;
  db.green_duration_s = green.duration_s;

  std::vector<ScheduleEntry> schedule = build_schedule(index, cfg);
  schedule = apply_sampling(std::move(schedule), index, cfg, log);

  std::vector<ScheduleEntry> pending;
  RunStats stats;
  for (ScheduleEntry& e : schedule) {
    if (db.find(e.path, e.id) != nullptr) {
      ++stats.resumed;
    } else {
      pending.push_back(std::move(e));
    }
  }
  if (stats.resumed > 0) {
    log << "resuming: " << stats.resumed
        << " mutants already have outcomes\n";
  }
  log << "executing " << pending.size() << " mutants\n";

  std::mutex db_mutex;
  auto record_outcome = [&](const ScheduleEntry& entry,
                            const MutantOutcome& outcome) {
    std::lock_guard<std::mutex> lock(db_mutex);
    MutantRecord rec = entry.meta;
    rec.status = outcome.status;
    rec.exit_status = outcome.exit_status;
    rec.duration_s = outcome.duration_s;
    rec.output_ref = output_ref_for(entry.path, entry.id);
    write_output_file(cfg.output_dir, rec.output_ref, outcome.build_output);
    db.upsert(entry.path, std::move(rec));
    db.finished_at = now_iso8601();
    db.store(results_path(cfg));
    ++stats.counts[outcome.status];
    log << "  " << entry.path << ":" << entry.id << " -> "
        << status_name(outcome.status) << "\n";
  };

  int exit_code = kExitOk;
  if (cfg.jobs == 1) {
    for (const ScheduleEntry& entry : pending) {
      fs::path target = cfg.source_root / entry.path;
      std::string mutant_bytes =
          read_text_file(mutant_file_path(cfg, entry.path, entry.id));
      fs::path sidecar = backup_dir(cfg) / entry.path;
      write_text_file(sidecar, read_text_file(target));
      try {
        MutantOutcome outcome =
            run_mutant(build, target, mutant_bytes, entry.id);
        record_outcome(entry, outcome);
      } catch (const RestoreFailure& e) {
        log << "fatal: " << e.what() << "\n";
        return kExitCorruption;
      }
      fs::remove(sidecar);
    }
    fs::remove_all(backup_dir(cfg));
  } else {
    // isolated workspace copies; the primary tree is never touched
    fs::path source_in_build = fs::weakly_canonical(cfg.source_root);
    fs::path build_root = fs::weakly_canonical(cfg.build_dir);
    std::string rel_check =
        fs::relative(source_in_build, build_root).generic_string();
    if (rel_check.rfind("..", 0) == 0) {
      log << "error: --jobs > 1 requires the source root inside the build "
             "directory\n";
      return kExitConfigError;
    }
    fs::path workspaces = cfg.output_dir / "workspaces";
    fs::remove_all(workspaces);
    std::vector<fs::path> clones;
    fs::path skip = fs::weakly_canonical(cfg.output_dir);
    for (int i = 0; i < cfg.jobs; ++i) {
      fs::path clone = workspaces / ("w" + std::to_string(i));
      copy_tree(build_root, clone, skip);
      clones.push_back(clone);
    }
    std::atomic<size_t> next{0};
    std::atomic<bool> corrupted{false};
    std::vector<std::thread> workers;
    for (int w = 0; w < cfg.jobs; ++w) {
      workers.emplace_back([&, w]() {
        BuildConfig worker_build = build;
        worker_build.working_dir = clones[static_cast<size_t>(w)];
        for (;;) {
          size_t i = next.fetch_add(1);
          if (i >= pending.size() || corrupted.load()) return;
          const ScheduleEntry& entry = pending[i];
          fs::path target = clones[static_cast<size_t>(w)] /
                            fs::relative(source_in_build / entry.path,
                                         build_root);
          try {
            std::string mutant_bytes =
                read_text_file(mutant_file_path(cfg, entry.path, entry.id));
            MutantOutcome outcome =
                run_mutant(worker_build, target, mutant_bytes, entry.id);
            record_outcome(entry, outcome);
          } catch (const std::exception& e) {
            std::lock_guard<std::mutex> lock(db_mutex);
            log << "fatal: " << e.what() << "\n";
            corrupted.store(true);
            return;
          }
        }
      });
    }
    for (std::thread& t : workers) t.join();
    fs::remove_all(workspaces);
    if (corrupted.load()) return kExitCorruption;
  }

  uint64_t post_hash = hash_source_tree(cfg.source_root);
  if (post_hash != pre_hash) {
    log << "fatal: source tree changed during the run (workspace corruption)\n";
    return kExitCorruption;
  }

  db.finished_at = now_iso8601();
  db.store(results_path(cfg));
  emit_reports(cfg, db, log);

  CoverageSummary total = db.project_coverage();
  log << "killed: " << stats.counts[MutantStatus::Killed]
      << ", killed-timeout: " << stats.counts[MutantStatus::KilledTimeout]
      << ", survived: " << stats.counts[MutantStatus::Survived]
      << ", invalid: " << stats.counts[MutantStatus::Invalid] << "\n";
  log << "mutation coverage: " << format_percent(total) << " ("
      << total.killed << "/" << total.total_valid << ")\n";
  return exit_code;
}

int cmd_report(const ProjectConfig& cfg, std::ostream& log) {
  if (!fs::exists(results_path(cfg))) {
    log << "error: no results database at " << results_path(cfg).string()
        << "\n";
    return kExitConfigError;
  }
  ResultsDatabase db = ResultsDatabase::load(results_path(cfg));
  emit_reports(cfg, db, log);
  log << "project coverage: " << format_percent(db.project_coverage()) << "\n";
  return kExitOk;
}

int cmd_sample(const ProjectConfig& cfg, std::ostream& out, std::ostream& log) {
  if (!fs::exists(index_path(cfg))) {
    log << "error: no mutant index at " << index_path(cfg).string() << "\n";
    return kExitConfigError;
  }
  if (!cfg.sample_rate) {
    log << "error: sample requires --rate\n";
    return kExitConfigError;
  }
  if (cfg.sample_strategy != "uniform" && cfg.sample_strategy != "weighted") {
    log << "error: unknown sampling strategy: " << cfg.sample_strategy << "\n";
    return kExitConfigError;
  }
  MutantIndex index = MutantIndex::load(index_path(cfg));
  std::vector<ScheduleEntry> schedule = build_schedule(index, cfg);
  if (schedule.empty()) {
    log << "error: the mutant set is empty\n";
    return kExitError;
  }
  schedule = apply_sampling(std::move(schedule), index, cfg, log);
  nlohmann::json j;
  j["selected"] = nlohmann::json::array();
  for (const ScheduleEntry& e : schedule) {
    j["selected"].push_back({{"path", e.path}, {"mutant_id", e.id}});
  }
  out << dump_json(j) << "\n";
  return kExitOk;
}

int cmd_subsume(const SubsumeOptions& opts, std::ostream& out,
                std::ostream& log) {
  if (!fs::exists(opts.results)) {
    log << "error: no results database at " << opts.results.string() << "\n";
    return kExitConfigError;
  }
  ResultsDatabase db = ResultsDatabase::load(opts.results);
  std::vector<TestNamePattern> patterns;
  try {
    if (fs::exists(opts.patterns)) {
      patterns = load_patterns_file(opts.patterns);
    } else {
      patterns = preset_patterns(opts.patterns);
    }
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  ExtractionReport report;
  KillMatrix matrix = extract_kill_matrix(db, opts.results.parent_path(),
                                          patterns, &report);
  for (const std::string& id : report.timeout_unattributed) {
    log << "warning: " << id
        << " was killed by timeout; no test attribution, excluded\n";
  }
  for (const std::string& id : report.no_tests_extracted) {
    log << "warning: no failing tests extracted from the output of " << id
        << "\n";
  }
  SubsumptionGraph graph = build_graph(matrix);
  std::string dot = export_dot(graph, matrix);
  if (!opts.dot_out.empty()) {
    write_text_file(opts.dot_out, dot);
    log << "subsumption graph written to " << opts.dot_out.string() << "\n";
  }
  if (!opts.json_out.empty()) {
    write_text_file(opts.json_out,
                    dump_json(subsumption_json(graph, matrix)) + "\n");
    log << "subsumption analysis written to " << opts.json_out.string()
        << "\n";
  }
  if (opts.dot_out.empty() && opts.json_out.empty()) out << dot;
  log << matrix.mutant_ids.size() << " mutants in the kill matrix, "
      << graph.groups.size() << " groups, " << graph.edges.size()
      << " edges\n";
  return kExitOk;
}

int cmd_manual_import(const ProjectConfig& cfg, const fs::path& dir,
                      std::ostream& log) {
  if (!fs::is_directory(cfg.source_root)) {
    log << "error: source root is not a directory: "
        << cfg.source_root.string() << "\n";
    return kExitConfigError;
  }
  if (!fs::is_directory(dir)) {
    log << "error: manual mutant directory does not exist: " << dir.string()
        << "\n";
    return kExitConfigError;
  }
  std::vector<SourceFile> corpus;
  for (const std::string& rel : discover_sources(cfg)) {
    corpus.push_back(SourceFile::load(cfg.source_root / rel, rel));
  }
  ImportReport report = import_mutants(dir, corpus);
  for (const std::string& err : report.errors) {
    log << "warning: " << err << "\n";
  }

  MutantIndex index;
  if (fs::exists(index_path(cfg))) index = MutantIndex::load(index_path(cfg));
  if (index.source_root.empty()) {
    index.source_root = cfg.source_root.generic_string();
    index.seed = cfg.seed;
  }

  for (const ManualMutant& mm : report.imported) {
    IndexedFile* record = nullptr;
    for (IndexedFile& f : index.files) {
      if (f.path == mm.matched_source) record = &f;
    }
    if (record == nullptr) {
      IndexedFile f;
      f.path = mm.matched_source;
      for (const SourceFile& src : corpus) {
        if (src.path() == mm.matched_source) f.loc = src.loc();
      }
      index.files.push_back(std::move(f));
      record = &index.files.back();
    }
    int next_id = 1;
    for (const IndexedManual& m : record->manual) {
      next_id = std::max(next_id, m.mutant_id + 1);
    }
    IndexedManual im;
    im.mutant_id = next_id;
    im.lines = mm.lines;
    im.edits = mm.edits;

    const SourceFile* source = nullptr;
    for (const SourceFile& src : corpus) {
      if (src.path() == mm.matched_source) source = &src;
    }
    std::string id = "man_" + std::to_string(next_id);
    std::string before;
    std::string after;
    if (!mm.edits.empty() && source != nullptr) {
      before = std::string(source->text(mm.edits.front().span));
      after = mm.edits.front().replacement;
      while (!before.empty() && before.back() == '\n') before.pop_back();
      while (!after.empty() && after.back() == '\n') after.pop_back();
    }
    std::string header(kMutantHeaderMagic);
    header += "\n";
    header += "mutant_id: " + id + "\n";
    header += "operator: Manual\n";
    header += "before: " + sanitize_header_text(before) + "\n";
    header += "after: " + sanitize_header_text(after) + "\n";
    header += "line: " +
              std::to_string(mm.lines.empty() ? 0 : mm.lines.front()) + "\n";
    header += "node_ids: \n";
    header += "*/\n";
    write_text_file(mutant_file_path(cfg, mm.matched_source, id),
                    header + mm.mutant_bytes);
    record->manual.push_back(std::move(im));
    log << "imported " << mm.mutant_file.string() << " -> "
        << mm.matched_source << ":" << id << "\n";
  }
  index.store(index_path(cfg));
  log << "imported " << report.imported.size() << " manual mutants ("
      << report.errors.size() << " skipped)\n";
  return report.imported.empty() && !report.errors.empty() ? kExitError
                                                           : kExitOk;
}

}  // namespace littledarwin
