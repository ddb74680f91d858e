#include "littledarwin/higher_order.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace littledarwin {

PairingResult pair_mutants(const std::vector<Mutant>& mutants, uint64_t seed) {
  for (const Mutant& m : mutants) {
    if (m.source_path != mutants.front().source_path) {
      throw std::invalid_argument("pairing requires mutants of one file");
    }
    if (m.edits.size() != 1) {
      throw std::invalid_argument("higher-order pairing needs first-order mutants");
    }
  }
  std::vector<size_t> order(mutants.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  for (size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng() % i]);
  }

  PairingResult result;
  std::vector<bool> taken(mutants.size(), false);
  int next_id = 1;
  for (size_t a = 0; a < order.size(); ++a) {
    if (taken[order[a]]) continue;
    const Mutant& first = mutants[order[a]];
    for (size_t b = a + 1; b < order.size(); ++b) {
      if (taken[order[b]]) continue;
      const Mutant& second = mutants[order[b]];
      if (edits_conflict(first.edits[0], second.edits[0])) continue;
      taken[order[a]] = true;
      taken[order[b]] = true;

      HigherOrderMutant hom;
      hom.mutant_id = next_id++;
      const Mutant* lo = &first;
      const Mutant* hi = &second;
      if (hi->edits[0].span.start < lo->edits[0].span.start) std::swap(lo, hi);
      hom.constituents = {lo->mutant_id, hi->mutant_id};
      hom.edits = {lo->edits[0], hi->edits[0]};
      hom.operator_label = std::string(operator_name(lo->op)) + "+" +
                           std::string(operator_name(hi->op));
      hom.before = lo->before + " | " + hi->before;
      hom.after = lo->after + " | " + hi->after;
      hom.line = lo->line;
      hom.node_ids = lo->node_ids;
      hom.node_ids.insert(hom.node_ids.end(), hi->node_ids.begin(),
                          hi->node_ids.end());
      hom.source_path = lo->source_path;
      result.pairs.push_back(std::move(hom));
      break;
    }
  }
  for (size_t i = 0; i < mutants.size(); ++i) {
    if (!taken[i]) result.leftover_ids.push_back(mutants[i].mutant_id);
  }
  std::sort(result.leftover_ids.begin(), result.leftover_ids.end());
  return result;
}

std::string render_higher_order(const SourceFile& file,
                                const HigherOrderMutant& hom) {
  if (hom.edits.size() != 2) {
    throw std::invalid_argument("higher-order mutant must have exactly 2 edits");
  }
  std::string out(kMutantHeaderMagic);
  out += "\n";
  out += "mutant_id: ho_" + std::to_string(hom.mutant_id) + "\n";
  out += "operator: " + hom.operator_label + "\n";
  out += "before: " + sanitize_header_text(hom.before) + "\n";
  out += "after: " + sanitize_header_text(hom.after) + "\n";
  out += "line: " + std::to_string(hom.line) + "\n";
  std::string ids;
  for (size_t i = 0; i < hom.node_ids.size(); ++i) {
    if (i > 0) ids += ",";
    ids += std::to_string(hom.node_ids[i]);
  }
  out += "node_ids: " + ids + "\n";
  out += "constituents: " + std::to_string(hom.constituents[0]) + "," +
         std::to_string(hom.constituents[1]) + "\n";
  out += "*/\n";
  out += splice(file, hom.edits);
  return out;
}

}  // namespace littledarwin
