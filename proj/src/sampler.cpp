#include "littledarwin/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace littledarwin {

namespace {

void check_rate(double rate) {
  if (!(rate > 0.0) || rate > 1.0) {
    throw std::invalid_argument("sampling rate must be in (0, 1]");
  }
}

// Unbiased integer in [0, bound) from the engine's raw output.
uint64_t uniform_below(std::mt19937_64& rng, uint64_t bound) {
  uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

// Uniform double in [0, 1) with 53-bit resolution.
double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

size_t sample_target_count(double rate, size_t n) {
  check_rate(rate);
  return static_cast<size_t>(std::floor(rate * static_cast<double>(n) + 0.5));
}

std::vector<size_t> sample_uniform_indices(size_t n, const SampleSpec& spec) {
  check_rate(spec.rate);
  if (n == 0) throw EmptyInput();
  size_t target = sample_target_count(spec.rate, n);
  std::vector<size_t> pool(n);
  for (size_t i = 0; i < n; ++i) pool[i] = i;
  std::mt19937_64 rng(spec.seed);
  for (size_t i = 0; i < target; ++i) {
    size_t j = i + static_cast<size_t>(uniform_below(rng, n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(target);
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::vector<size_t> sample_weighted_indices(const std::vector<double>& weights,
                                            const SampleSpec& spec) {
  check_rate(spec.rate);
  if (weights.empty()) throw EmptyInput();
  for (double w : weights) {
    if (!(w > 0.0)) throw MissingWeight("non-positive sampling weight");
  }
  size_t n = weights.size();
  size_t target = sample_target_count(spec.rate, n);
  std::mt19937_64 rng(spec.seed);
  std::vector<size_t> remaining(n);
  for (size_t i = 0; i < n; ++i) remaining[i] = i;
  std::vector<size_t> chosen;
  chosen.reserve(target);
  for (size_t draw = 0; draw < target; ++draw) {
    double total = 0.0;
    for (size_t i : remaining) total += weights[i];
    double u = uniform_unit(rng) * total;
    size_t pick = remaining.size() - 1;
    double acc = 0.0;
    for (size_t k = 0; k < remaining.size(); ++k) {
      acc += weights[remaining[k]];
      if (u < acc) {
        pick = k;
        break;
      }
    }
    chosen.push_back(remaining[pick]);
    remaining.erase(remaining.begin() + static_cast<ptrdiff_t>(pick));
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace littledarwin
