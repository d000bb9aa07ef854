#pragma once

#include <cstdint>

#include "robotkit/suite.hpp"

namespace robot {

enum class Strategy : uint8_t { kKmSt = 0, kBeSt = 1, kGini = 2, kRandom = 3 };

std::string strategy_name(Strategy s);
Strategy strategy_from_name(const std::string& name);

struct SelectionRequest {
  Strategy strategy = Strategy::kBeSt;
  size_t n = 0;       // selection budget
  size_t k = 10;      // KM-ST section count
  uint64_t rng_seed = 0;

  void validate(size_t suite_size) const;
};

// K-multisection sampling over the FOL range: the range [min,max] splits into
// k equal-width bins and each bin contributes floor(n/k) uniformly sampled
// cases. The n mod k extra slots go to bins in descending-FOL order; bins
// with too few members yield what they have and the shortfall refills
// uniformly from the unselected remainder. Returns exactly n cases.
TestSuite km_st(const TestSuite& suite, size_t k, size_t n, uint64_t rng_seed);

// Bi-end selection: top ceil(n/2) plus bottom floor(n/2) of the FOL-descending
// ranking (ties keep original suite order).
TestSuite be_st(const TestSuite& suite, size_t n);

// Top n by Gini impurity, descending, stable ties.
TestSuite gini_select(const TestSuite& suite, size_t n);

// Seeded uniform sample of n cases without replacement.
TestSuite random_select(const TestSuite& suite, size_t n, uint64_t rng_seed);

TestSuite select(const TestSuite& suite, const SelectionRequest& req);

}  // namespace robot
