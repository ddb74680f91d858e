#include "littledarwin/results.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace littledarwin {

CoverageSummary compute_coverage(const std::vector<MutantStatus>& statuses) {
  CoverageSummary s;
  for (MutantStatus status : statuses) {
    if (status == MutantStatus::Invalid) continue;
    ++s.total_valid;
    if (counts_as_killed(status)) ++s.killed;
  }
  return s;
}

std::string format_percent(const CoverageSummary& summary) {
  auto cov = summary.coverage();
  if (!cov) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f%%", *cov * 100.0);
  return buf;
}

FileRecord& ResultsDatabase::file_record(const std::string& path) {
  for (FileRecord& f : files) {
    if (f.path == path) return f;
  }
  files.push_back(FileRecord{path, {}});
  return files.back();
}

const MutantRecord* ResultsDatabase::find(const std::string& path,
                                          const std::string& mutant_id) const {
  for (const FileRecord& f : files) {
    if (f.path != path) continue;
    for (const MutantRecord& m : f.mutants) {
      if (m.mutant_id == mutant_id) return &m;
    }
  }
  return nullptr;
}

void ResultsDatabase::upsert(const std::string& path, MutantRecord record) {
  FileRecord& f = file_record(path);
  for (MutantRecord& m : f.mutants) {
    if (m.mutant_id == record.mutant_id) {
      m = std::move(record);
      return;
    }
  }
  f.mutants.push_back(std::move(record));
}

CoverageSummary ResultsDatabase::file_coverage(const FileRecord& file) const {
  std::vector<MutantStatus> statuses;
  statuses.reserve(file.mutants.size());
  for (const MutantRecord& m : file.mutants) statuses.push_back(m.status);
  return compute_coverage(statuses);
}

CoverageSummary ResultsDatabase::project_coverage() const {
  CoverageSummary total;
  for (const FileRecord& f : files) {
    CoverageSummary s = file_coverage(f);
    total.killed += s.killed;
    total.total_valid += s.total_valid;
  }
  return total;
}

nlohmann::json ResultsDatabase::to_json() const {
  nlohmann::json j;
  j["project"] = {
      {"config", config},
      {"green_duration_s", green_duration_s},
      {"seed", seed},
      {"started_at", started_at},
      {"finished_at", finished_at},
  };
  j["files"] = nlohmann::json::array();
  for (const FileRecord& f : files) {
    nlohmann::json jf;
    jf["path"] = f.path;
    jf["mutants"] = nlohmann::json::array();
    for (const MutantRecord& m : f.mutants) {
      nlohmann::json jm;
      jm["mutant_id"] = m.mutant_id;
      jm["operator"] = m.operator_name;
      jm["line"] = m.line;
      jm["node_ids"] = m.node_ids;
      jm["before"] = m.before;
      jm["after"] = m.after;
      jm["status"] = status_name(m.status);
      if (m.exit_status) {
        jm["exit_status"] = *m.exit_status;
      } else {
        jm["exit_status"] = "timeout";
      }
      jm["duration_s"] = m.duration_s;
      jm["output_ref"] = m.output_ref;
      if (!m.constituents.empty()) jm["constituents"] = m.constituents;
      jf["mutants"].push_back(std::move(jm));
    }
    j["files"].push_back(std::move(jf));
  }
  return j;
}

ResultsDatabase ResultsDatabase::from_json(const nlohmann::json& j) {
  ResultsDatabase db;
  const auto& project = j.at("project");
  db.config = project.value("config", nlohmann::json::object());
  db.green_duration_s = project.value("green_duration_s", 0.0);
  db.seed = project.value("seed", 0ull);
  db.started_at = project.value("started_at", "");
  db.finished_at = project.value("finished_at", "");
  for (const auto& jf : j.value("files", nlohmann::json::array())) {
    FileRecord f;
    f.path = jf.at("path").get<std::string>();
    for (const auto& jm : jf.value("mutants", nlohmann::json::array())) {
      MutantRecord m;
      m.mutant_id = jm.at("mutant_id").get<std::string>();
      m.operator_name = jm.at("operator").get<std::string>();
      m.line = jm.at("line").get<uint32_t>();
      m.node_ids = jm.at("node_ids").get<std::vector<int32_t>>();
      m.before = jm.at("before").get<std::string>();
      m.after = jm.at("after").get<std::string>();
      auto status = status_from_name(jm.at("status").get<std::string>());
      if (!status) {
        throw std::runtime_error("unknown status in results database");
      }
      m.status = *status;
      if (jm.at("exit_status").is_number_integer()) {
        m.exit_status = jm.at("exit_status").get<int>();
      }
      m.duration_s = jm.at("duration_s").get<double>();
      m.output_ref = jm.at("output_ref").get<std::string>();
      if (jm.contains("constituents")) {
        m.constituents = jm.at("constituents").get<std::vector<std::string>>();
      }
      f.mutants.push_back(std::move(m));
    }
    db.files.push_back(std::move(f));
  }
  return db;
}

void ResultsDatabase::store(const std::filesystem::path& results_json) const {
  std::filesystem::create_directories(results_json.parent_path());
  std::filesystem::path tmp = results_json;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << to_json().dump(2) << "\n";
  }
  std::filesystem::rename(tmp, results_json);
}

ResultsDatabase ResultsDatabase::load(const std::filesystem::path& results_json) {
  std::ifstream in(results_json, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + results_json.string());
  nlohmann::json j;
  in >> j;
  return from_json(j);
}

std::string output_ref_for(const std::string& source_path,
                           const std::string& mutant_id) {
  return "outputs/" + source_path + "/" + mutant_id + ".txt";
}

void write_output_file(const std::filesystem::path& base_dir,
                       const std::string& ref, const std::string& bytes) {
  std::filesystem::path path = base_dir / ref;
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

std::string read_output_file(const std::filesystem::path& base_dir,
                             const std::string& ref) {
  std::ifstream in(base_dir / ref, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read " + (base_dir / ref).string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace littledarwin
