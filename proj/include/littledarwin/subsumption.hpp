#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "littledarwin/results.hpp"

namespace littledarwin {

// Mutant-by-test kill matrix. kills[m][t] is true when test t fails under
// mutant m. Survived mutants keep an all-false row; timeout-killed mutants
// carry no test attribution and are excluded before the matrix is built.
struct KillMatrix {
  std::vector<std::string> mutant_ids;
  std::vector<std::string> tests;
  std::vector<std::vector<bool>> kills;

  std::set<size_t> kill_set(size_t mutant) const {
    std::set<size_t> out;
    for (size_t t = 0; t < tests.size(); ++t) {
      if (kills[mutant][t]) out.insert(t);
    }
    return out;
  }
};

// How to recover failing-test names from retained build output. The regex is
// applied line by line; class_group/method_group are capture indices
// (class_group 0 means the method group already holds the full name).
struct TestNamePattern {
  std::string regex;
  int class_group = 0;
  int method_group = 1;
};

// Named presets for common runner output shapes ("surefire", "gradle",
// "plain"). Throws std::invalid_argument for unknown names.
std::vector<TestNamePattern> preset_patterns(const std::string& name);

std::vector<TestNamePattern> load_patterns_file(const std::filesystem::path&);

struct ExtractionReport {
  std::vector<std::string> timeout_unattributed;  // excluded, no test list
  std::vector<std::string> no_tests_extracted;    // killed but nothing matched
};

// Recovers per-test kills from every killed mutant's retained output.
// base_dir anchors the database's output refs.
KillMatrix extract_kill_matrix(const ResultsDatabase& db,
                               const std::filesystem::path& base_dir,
                               const std::vector<TestNamePattern>& patterns,
                               ExtractionReport* report = nullptr);

// Dynamic mutant subsumption: A subsumes B iff A is killed and every test
// that kills A also kills B.
bool dynamically_subsumes(size_t a, size_t b, const KillMatrix& matrix);

struct SubsumptionGroup {
  std::vector<size_t> members;   // matrix indices, ascending
  std::set<size_t> kill_set;     // non-empty by construction
  bool subsuming = false;        // no incoming edge
};

// DAG over kill-set-equivalence groups. Edge A -> B means group A
// dynamically subsumes group B (A's kill set is a strict subset of B's).
struct SubsumptionGraph {
  std::vector<SubsumptionGroup> groups;
  std::vector<std::pair<size_t, size_t>> edges;

  int group_of(size_t mutant_index) const;  // -1 when not in any group
};

SubsumptionGraph build_graph(const KillMatrix& matrix);

// Deterministic DOT rendering; subsuming groups are drawn doubled.
std::string export_dot(const SubsumptionGraph& graph, const KillMatrix& matrix);

// Per-mutant answers: subsuming?, which tests kill it, which mutants subsume
// it, which mutants it subsumes.
nlohmann::json subsumption_json(const SubsumptionGraph& graph,
                                const KillMatrix& matrix);

}  // namespace littledarwin
