#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace littledarwin {

class EmptyInput : public std::runtime_error {
 public:
  EmptyInput() : std::runtime_error("cannot sample from an empty mutant set") {}
};

class MissingWeight : public std::runtime_error {
 public:
  explicit MissingWeight(const std::string& what) : std::runtime_error(what) {}
};

enum class SampleStrategy : uint8_t { Uniform, Weighted };

struct SampleSpec {
  double rate = 1.0;  // fraction in (0, 1]
  SampleStrategy strategy = SampleStrategy::Uniform;
  uint64_t seed = 0;
};

// Target cardinality: round-half-up(rate * n).
size_t sample_target_count(double rate, size_t n);

// Selects round-half-up(rate*n) distinct indices from [0, n), equiprobably,
// without replacement. Deterministic under the seed; returned in ascending
// order. Throws EmptyInput when n == 0.
std::vector<size_t> sample_uniform_indices(size_t n, const SampleSpec& spec);

// Weighted sampling without replacement: each successive draw picks among
// the remaining indices with probability proportional to its weight.
// Weights must be positive. Throws EmptyInput / MissingWeight.
std::vector<size_t> sample_weighted_indices(const std::vector<double>& weights,
                                            const SampleSpec& spec);

// Typed wrappers matching the mutant-level contracts. `class_sizes` maps a
// source path to the LOC of the class that contains the mutant.
template <typename T, typename PathOf>
std::vector<T> sample_uniform(const std::vector<T>& mutants,
                              const SampleSpec& spec, PathOf) {
  std::vector<T> out;
  for (size_t i : sample_uniform_indices(mutants.size(), spec)) {
    out.push_back(mutants[i]);
  }
  return out;
}

template <typename T, typename PathOf>
std::vector<T> sample_weighted(const std::vector<T>& mutants,
                               const SampleSpec& spec,
                               const std::map<std::string, int>& class_sizes,
                               PathOf path_of) {
  if (mutants.empty()) throw EmptyInput();
  std::vector<double> weights;
  weights.reserve(mutants.size());
  for (const T& m : mutants) {
    auto it = class_sizes.find(path_of(m));
    if (it == class_sizes.end()) {
      throw MissingWeight("no recorded class size for " + path_of(m));
    }
    weights.push_back(static_cast<double>(it->second));
  }
  std::vector<T> out;
  for (size_t i : sample_weighted_indices(weights, spec)) {
    out.push_back(mutants[i]);
  }
  return out;
}

}  // namespace littledarwin
