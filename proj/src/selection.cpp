#include "robotkit/selection.hpp"

#include <algorithm>
#include <numeric>

#include "robotkit/errors.hpp"
#include "robotkit/rng.hpp"

namespace robot {

namespace {

void require_scored(const TestSuite& suite, const char* op) {
  if (!suite.scored()) {
    throw StateError(std::string(op) + ": suite must be scored first");
  }
}

void check_budget(size_t n, size_t suite_size, const char* op) {
  if (n == 0) throw ArgumentError(std::string(op) + ": n must be positive");
  if (n > suite_size) {
    throw ArgumentError(std::string(op) + ": budget " + std::to_string(n) +
                        " exceeds suite size " + std::to_string(suite_size));
  }
}

TestSuite take(const TestSuite& suite, const std::vector<size_t>& indices) {
  std::vector<TestCase> cases;
  cases.reserve(indices.size());
  for (size_t i : indices) cases.push_back(suite.cases[i]);
  return suite.with_cases(std::move(cases));
}

// Indices sorted by key descending; equal keys keep original order.
std::vector<size_t> rank_desc(const TestSuite& suite, float MetricRecord::* key) {
  std::vector<size_t> order(suite.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return (*suite.cases[a].metrics).*key > (*suite.cases[b].metrics).*key;
  });
  return order;
}

}  // namespace

std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kKmSt: return "km-st";
    case Strategy::kBeSt: return "be-st";
    case Strategy::kGini: return "gini";
    case Strategy::kRandom: return "random";
  }
  return "?";
}

Strategy strategy_from_name(const std::string& name) {
  if (name == "km-st") return Strategy::kKmSt;
  if (name == "be-st") return Strategy::kBeSt;
  if (name == "gini") return Strategy::kGini;
  if (name == "random") return Strategy::kRandom;
  throw ConfigError("unknown strategy '" + name +
                    "' (expected km-st, be-st, gini or random)");
}

void SelectionRequest::validate(size_t suite_size) const {
  check_budget(n, suite_size, "select");
  if (strategy == Strategy::kKmSt && k < 1) {
    throw ConfigError("select: KM-ST needs k >= 1");
  }
}

TestSuite km_st(const TestSuite& suite, size_t k, size_t n, uint64_t rng_seed) {
  require_scored(suite, "km_st");
  check_budget(n, suite.size(), "km_st");
  if (k < 1) throw ConfigError("km_st: k must be >= 1");

  float lo = suite.cases[0].metrics->fol;
  float hi = lo;
  for (const TestCase& c : suite.cases) {
    lo = std::min(lo, c.metrics->fol);
    hi = std::max(hi, c.metrics->fol);
  }
  // Degenerate range: everything lands in one bin.
  const size_t bins = (hi > lo) ? k : 1;
  const double width = (static_cast<double>(hi) - lo) / static_cast<double>(bins);

  std::vector<std::vector<size_t>> members(bins);
  for (size_t i = 0; i < suite.size(); ++i) {
    size_t b = 0;
    if (bins > 1) {
      b = static_cast<size_t>((suite.cases[i].metrics->fol - lo) / width);
      if (b >= bins) b = bins - 1;  // the max value closes the last bin
    }
    members[b].push_back(i);
  }

  std::vector<size_t> quota(bins, n / bins);
  // Extra slots go to high-FOL bins first.
  for (size_t e = 0; e < n % bins; ++e) quota[bins - 1 - e] += 1;

  Rng rng(rng_seed);
  std::vector<uint8_t> chosen(suite.size(), 0);
  std::vector<size_t> result;
  result.reserve(n);
  for (size_t b = bins; b-- > 0;) {
    const size_t want = std::min(quota[b], members[b].size());
    for (size_t pick : rng.sample_without_replacement(members[b].size(), want)) {
      result.push_back(members[b][pick]);
      chosen[members[b][pick]] = 1;
    }
  }
  // Refill shortfall from the unselected remainder.
  if (result.size() < n) {
    std::vector<size_t> rest;
    for (size_t i = 0; i < suite.size(); ++i) {
      if (!chosen[i]) rest.push_back(i);
    }
    for (size_t pick : rng.sample_without_replacement(rest.size(), n - result.size())) {
      result.push_back(rest[pick]);
    }
  }
  return take(suite, result);
}

TestSuite be_st(const TestSuite& suite, size_t n) {
  require_scored(suite, "be_st");
  check_budget(n, suite.size(), "be_st");
  const std::vector<size_t> order = rank_desc(suite, &MetricRecord::fol);
  const size_t top = (n + 1) / 2;
  const size_t bottom = n / 2;
  std::vector<size_t> result(order.begin(), order.begin() + top);
  result.insert(result.end(), order.end() - bottom, order.end());
  return take(suite, result);
}

TestSuite gini_select(const TestSuite& suite, size_t n) {
  require_scored(suite, "gini_select");
  check_budget(n, suite.size(), "gini_select");
  const std::vector<size_t> order = rank_desc(suite, &MetricRecord::gini);
  return take(suite, {order.begin(), order.begin() + n});
}

TestSuite random_select(const TestSuite& suite, size_t n, uint64_t rng_seed) {
  if (suite.cases.empty()) throw ArgumentError("random_select: empty suite");
  check_budget(n, suite.size(), "random_select");
  Rng rng(rng_seed);
  std::vector<size_t> picks = rng.sample_without_replacement(suite.size(), n);
  std::sort(picks.begin(), picks.end());
  return take(suite, picks);
}

TestSuite select(const TestSuite& suite, const SelectionRequest& req) {
  req.validate(suite.size());
  switch (req.strategy) {
    case Strategy::kKmSt: return km_st(suite, req.k, req.n, req.rng_seed);
    case Strategy::kBeSt: return be_st(suite, req.n);
    case Strategy::kGini: return gini_select(suite, req.n);
    case Strategy::kRandom: return random_select(suite, req.n, req.rng_seed);
  }
  throw ConfigError("select: unknown strategy");
}

}  // namespace robot
