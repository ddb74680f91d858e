#include "littledarwin/subsumption.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

namespace littledarwin {

std::vector<TestNamePattern> preset_patterns(const std::string& name) {
  if (name == "surefire") {
    // testFoo(com.example.AClassTest)  Time elapsed: 0.01 sec  <<< FAILURE!
    // Failed tests:   testFoo(com.example.AClassTest): expected ...
    return {
        {R"(([\w$]+)\(([\w.$]+)\).*<<< *(?:FAILURE|ERROR)!?)", 2, 1},
        {R"(^(?:Failed tests|Tests in error):\s+([\w$]+)\(([\w.$]+)\))", 2, 1},
    };
  }
  if (name == "gradle") {
    // com.example.AClassTest > testFoo FAILED
    return {{R"(([\w.$]+) > ([\w$]+) FAILED)", 1, 2}};
  }
  if (name == "plain") {
    // FAILED: com.example.AClassTest.testFoo
    return {{R"(FAILED:\s+([\w.$#]+))", 0, 1}};
  }
  throw std::invalid_argument("unknown test-name pattern preset: " + name);
}

std::vector<TestNamePattern> load_patterns_file(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  nlohmann::json j;
  in >> j;
  std::vector<TestNamePattern> out;
  for (const auto& item : j) {
    TestNamePattern p;
    p.regex = item.at("regex").get<std::string>();
    p.class_group = item.value("class_group", 0);
    p.method_group = item.value("method_group", 1);
    out.push_back(std::move(p));
  }
  return out;
}

namespace {

std::set<std::string> extract_test_names(
    const std::string& output, const std::vector<TestNamePattern>& patterns) {
  std::set<std::string> names;
  std::vector<std::regex> compiled;
  compiled.reserve(patterns.size());
  for (const TestNamePattern& p : patterns) compiled.emplace_back(p.regex);

  std::istringstream lines(output);
  std::string line;
  while (std::getline(lines, line)) {
    for (size_t i = 0; i < patterns.size(); ++i) {
      std::smatch m;
      if (!std::regex_search(line, m, compiled[i])) continue;
      const TestNamePattern& p = patterns[i];
      if (p.method_group <= 0 ||
          static_cast<size_t>(p.method_group) >= m.size()) {
        continue;
      }
      std::string name = m[static_cast<size_t>(p.method_group)].str();
      if (p.class_group > 0 && static_cast<size_t>(p.class_group) < m.size()) {
        name = m[static_cast<size_t>(p.class_group)].str() + "." + name;
      }
      names.insert(std::move(name));
    }
  }
  return names;
}

}  // namespace

KillMatrix extract_kill_matrix(const ResultsDatabase& db,
                               const std::filesystem::path& base_dir,
                               const std::vector<TestNamePattern>& patterns,
                               ExtractionReport* report) {
  struct Row {
    std::string id;
    std::set<std::string> tests;
  };
  std::vector<Row> rows;
  std::set<std::string> universe;

  for (const FileRecord& f : db.files) {
    for (const MutantRecord& m : f.mutants) {
      std::string key = f.path + ":" + m.mutant_id;
      switch (m.status) {
        case MutantStatus::Invalid:
          break;
        case MutantStatus::KilledTimeout:
          if (report) report->timeout_unattributed.push_back(key);
          break;
        case MutantStatus::Survived:
          rows.push_back({key, {}});
          break;
        case MutantStatus::Killed: {
          std::string output = read_output_file(base_dir, m.output_ref);
          std::set<std::string> names = extract_test_names(output, patterns);
          if (names.empty() && report) {
            report->no_tests_extracted.push_back(key);
          }
          for (const std::string& n : names) universe.insert(n);
          rows.push_back({key, std::move(names)});
          break;
        }
      }
    }
  }

  KillMatrix matrix;
  matrix.tests.assign(universe.begin(), universe.end());
  for (Row& row : rows) {
    matrix.mutant_ids.push_back(row.id);
    std::vector<bool> bits(matrix.tests.size(), false);
    for (size_t t = 0; t < matrix.tests.size(); ++t) {
      if (row.tests.count(matrix.tests[t])) bits[t] = true;
    }
    matrix.kills.push_back(std::move(bits));
  }
  return matrix;
}

bool dynamically_subsumes(size_t a, size_t b, const KillMatrix& matrix) {
  bool a_killed = false;
  for (size_t t = 0; t < matrix.tests.size(); ++t) {
    if (matrix.kills[a][t]) {
      a_killed = true;
      if (!matrix.kills[b][t]) return false;
    }
  }
  return a_killed;
}

int SubsumptionGraph::group_of(size_t mutant_index) const {
  for (size_t g = 0; g < groups.size(); ++g) {
    const auto& members = groups[g].members;
    if (std::find(members.begin(), members.end(), mutant_index) !=
        members.end()) {
      return static_cast<int>(g);
    }
  }
  return -1;
}

SubsumptionGraph build_graph(const KillMatrix& matrix) {
  std::map<std::set<size_t>, std::vector<size_t>> by_kill_set;
  for (size_t m = 0; m < matrix.mutant_ids.size(); ++m) {
    std::set<size_t> ks = matrix.kill_set(m);
    if (ks.empty()) continue;  // survived or unattributed: not in the graph
    by_kill_set[ks].push_back(m);
  }
  SubsumptionGraph graph;
  for (auto& [ks, members] : by_kill_set) {
    SubsumptionGroup group;
    group.members = members;
    std::sort(group.members.begin(), group.members.end());
    group.kill_set = ks;
    graph.groups.push_back(std::move(group));
  }
  // deterministic group order: by first member index
  std::sort(graph.groups.begin(), graph.groups.end(),
            [](const SubsumptionGroup& a, const SubsumptionGroup& b) {
              return a.members.front() < b.members.front();
            });
  std::vector<bool> has_incoming(graph.groups.size(), false);
  for (size_t a = 0; a < graph.groups.size(); ++a) {
    for (size_t b = 0; b < graph.groups.size(); ++b) {
      if (a == b) continue;
      const auto& ka = graph.groups[a].kill_set;
      const auto& kb = graph.groups[b].kill_set;
      if (ka.size() < kb.size() &&
          std::includes(kb.begin(), kb.end(), ka.begin(), ka.end())) {
        graph.edges.emplace_back(a, b);
        has_incoming[b] = true;
      }
    }
  }
  std::sort(graph.edges.begin(), graph.edges.end());
  for (size_t g = 0; g < graph.groups.size(); ++g) {
    graph.groups[g].subsuming = !has_incoming[g];
  }
  return graph;
}

std::string export_dot(const SubsumptionGraph& graph,
                       const KillMatrix& matrix) {
  std::ostringstream out;
  out << "digraph subsumption {\n";
  out << "  rankdir=TB;\n";
  out << "  node [shape=ellipse];\n";
  for (size_t g = 0; g < graph.groups.size(); ++g) {
    const SubsumptionGroup& group = graph.groups[g];
    out << "  g" << g << " [label=\"";
    for (size_t i = 0; i < group.members.size(); ++i) {
      if (i > 0) out << ", ";
      out << matrix.mutant_ids[group.members[i]];
    }
    out << "\\nkills " << group.kill_set.size() << "\"";
    if (group.subsuming) out << ", peripheries=2, style=bold";
    out << "];\n";
  }
  for (const auto& [a, b] : graph.edges) {
    out << "  g" << a << " -> g" << b << ";\n";
  }
  out << "}\n";
  return out.str();
}

nlohmann::json subsumption_json(const SubsumptionGraph& graph,
                                const KillMatrix& matrix) {
  nlohmann::json mutants = nlohmann::json::array();
  for (size_t m = 0; m < matrix.mutant_ids.size(); ++m) {
    nlohmann::json jm;
    jm["mutant"] = matrix.mutant_ids[m];
    int g = graph.group_of(m);
    std::vector<std::string> killing_tests;
    for (size_t t = 0; t < matrix.tests.size(); ++t) {
      if (matrix.kills[m][t]) killing_tests.push_back(matrix.tests[t]);
    }
    jm["killed_by"] = killing_tests;
    jm["subsuming"] = g >= 0 && graph.groups[static_cast<size_t>(g)].subsuming;
    std::vector<std::string> subsumed_by;
    std::vector<std::string> subsumes;
    if (g >= 0) {
      size_t gi = static_cast<size_t>(g);
      // mutual subsumption within the group
      for (size_t other : graph.groups[gi].members) {
        if (other == m) continue;
        subsumed_by.push_back(matrix.mutant_ids[other]);
        subsumes.push_back(matrix.mutant_ids[other]);
      }
      for (const auto& [a, b] : graph.edges) {
        if (a == gi) {
          for (size_t other : graph.groups[b].members) {
            subsumes.push_back(matrix.mutant_ids[other]);
          }
        }
        if (b == gi) {
          for (size_t other : graph.groups[a].members) {
            subsumed_by.push_back(matrix.mutant_ids[other]);
          }
        }
      }
    }
    jm["subsumes"] = subsumes;
    jm["subsumed_by"] = subsumed_by;
    mutants.push_back(std::move(jm));
  }
  nlohmann::json j;
  j["tests"] = matrix.tests;
  j["mutants"] = std::move(mutants);
  nlohmann::json groups = nlohmann::json::array();
  for (const SubsumptionGroup& g : graph.groups) {
    nlohmann::json jg;
    std::vector<std::string> members;
    for (size_t m : g.members) members.push_back(matrix.mutant_ids[m]);
    jg["members"] = members;
    std::vector<std::string> tests;
    for (size_t t : g.kill_set) tests.push_back(matrix.tests[t]);
    jg["kill_set"] = tests;
    jg["subsuming"] = g.subsuming;
    groups.push_back(std::move(jg));
  }
  j["groups"] = std::move(groups);
  return j;
}

}  // namespace littledarwin
