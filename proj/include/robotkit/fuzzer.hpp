#pragma once

#include <cstdint>
#include <vector>

#include "robotkit/dataset.hpp"
#include "robotkit/gradient.hpp"
#include "robotkit/model.hpp"
#include "robotkit/suite.hpp"

namespace robot {

struct FuzzConfig {
  float epsilon = 0.3f;        // fuzz region radius (cfg.norm ball)
  double xi = 1e-18;           // small-FOL acceptance threshold
  int k = 5;                   // labels in the optimization objective
  double lambda = 1.0;         // FOL weight in the objective
  int iters = 3;               // perturbation steps per popped seed
  float learning_rate = 0.1f;
  Norm norm = Norm::kLinf;     // ball norm for distance checks
  uint64_t rng_seed = 0;
  int push_cap = 20;           // worklist budget per original seed
  bool record_trace = false;   // capture FOL_m acceptance chains (tests)

  void validate(const MlpModel& model) const;
};

struct FuzzStats {
  uint64_t seeds_processed = 0;
  uint64_t perturbation_steps = 0;
  uint64_t accepted_high_fol = 0;
  uint64_t accepted_low_fol = 0;
  uint64_t label_flips = 0;
};

// One high-branch acceptance along a seed's chain (only with record_trace).
struct FuzzTraceEvent {
  uint32_t seed_index = 0;
  double fol_m = 0.0;
};

struct FuzzOutcome {
  TestSuite cases;
  FuzzStats stats;
  std::vector<FuzzTraceEvent> trace;
};

// Gradient-guided fuzzing in two directions: perturbations are accepted when
// their first-order loss keeps rising (strong cases) or falls below xi
// (converged cases); accepted inputs go back on the worklist and label
// flips inside the ball are emitted. Seeds fuzz independently with RNG
// streams derived from (rng_seed, seed position); the merge is in seed
// order, so the outcome is identical for every thread count.
FuzzOutcome fol_fuzz(const MlpModel& model, const LabeledDataset& seeds,
                     const FuzzConfig& cfg, int threads = 1);

// Eq.-7-style objective used by the fuzzer (probability margin plus the L2
// first-order-loss term weighted by cfg.lambda).
ObjectiveResult fuzz_objective(const MlpModel& model, const Tensor& x_prime, int y,
                               const FuzzConfig& cfg);

}  // namespace robot
