#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "robotkit/attacks.hpp"
#include "robotkit/dataset.hpp"
#include "robotkit/fuzzer.hpp"
#include "robotkit/model.hpp"
#include "robotkit/selection.hpp"
#include "robotkit/suite.hpp"
#include "robotkit/train.hpp"

namespace robot {

// Accuracy on an adversarial validation suite, overall and per attack.
struct RobustnessReport {
  double er = 0.0;
  std::map<std::string, double> per_attack;
  std::optional<double> clean_accuracy;
  size_t n_adv = 0;
};

enum class Generator : uint8_t { kAttackPool = 0, kFuzz = 1 };

enum class RobotStatus : uint8_t {
  kSatisfied = 0,
  kBudgetExhausted = 1,
  kAccuracyFloorViolated = 2,
};

std::string status_name(RobotStatus s);

struct RobotConfig {
  double requirement_r = 0.5;
  int max_iterations = 3;
  Generator generator = Generator::kAttackPool;
  SelectionRequest selection;
  TrainConfig retrain;
  double accuracy_floor = 0.0;
  // Generation parameters (attack pool or fuzzer) for each iteration.
  float epsilon = 0.3f;
  Norm norm = Norm::kLinf;
  FuzzConfig fuzz;
  uint64_t rng_seed = 0;
  int threads = 1;

  void validate() const;
};

struct RobotHistoryEntry {
  int iter = 0;
  RobustnessReport report;
  size_t suite_size = 0;      // selected cases added this iteration
  std::string strategy;
  int64_t wall_ms = 0;
};

struct RobotResult {
  MlpModel model;
  std::vector<RobotHistoryEntry> history;
  RobotStatus status = RobotStatus::kBudgetExhausted;
};

// Frozen adversarial validation suite: n_each seeded samples per attack.
// Cases keep their seed's ground-truth label so ER comparisons across
// models stay paired.
TestSuite build_validation_suite(const MlpModel& model, const LabeledDataset& data,
                                 const std::vector<AttackConfig>& attack_cfgs,
                                 size_t n_each, uint64_t rng_seed, int threads = 1);

// Fraction of validation cases the model still classifies correctly.
RobustnessReport empirical_robustness(const MlpModel& model, const TestSuite& d_v,
                                      int threads = 1);

// Warm-start continued training on base_data plus the selected cases
// (labeled with their seeds' ground truth).
MlpModel retrain(const MlpModel& model, const LabeledDataset& base_data,
                 const TestSuite& selected, const TrainConfig& cfg);

// Test-retrain loop: generate, select, retrain until ER meets the
// requirement, the iteration budget runs out, or clean accuracy falls
// through the floor. Returns the best-ER model seen.
RobotResult robot(const MlpModel& f0, const LabeledDataset& train_data,
                  const LabeledDataset& clean_eval, const TestSuite& d_v,
                  const RobotConfig& cfg);

}  // namespace robot
