#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "littledarwin/mutation.hpp"

namespace littledarwin {

// Second-order mutant: exactly two first-order constituents of the same
// source file with disjoint edit spans.
struct HigherOrderMutant {
  int mutant_id = 0;
  std::array<int, 2> constituents{};  // first-order mutant ids
  std::vector<Edit> edits;            // both edits, span order
  std::string operator_label;        // constituent operator names joined by '+'
  std::string before;
  std::string after;
  uint32_t line = 0;  // line of the first edit in span order
  std::vector<int32_t> node_ids;  // both constituents' node ids
  std::string source_path;
};

struct PairingResult {
  std::vector<HigherOrderMutant> pairs;
  std::vector<int> leftover_ids;  // first-order ids that found no partner
};

// Seeded-random maximal pairing of first-order mutants with pairwise
// disjoint edit spans. All mutants must belong to one source file. The same
// seed yields the same pairing.
PairingResult pair_mutants(const std::vector<Mutant>& mutants, uint64_t seed);

// Same contract as render_mutant with both edits applied; the header lists
// both constituent ids. Throws OverlappingEdits if the edits conflict.
std::string render_higher_order(const SourceFile& file,
                                const HigherOrderMutant& hom);

}  // namespace littledarwin
