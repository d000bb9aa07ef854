#pragma once

#include <cstdint>
#include <vector>

#include "robotkit/dataset.hpp"
#include "robotkit/model.hpp"
#include "robotkit/suite.hpp"

namespace robot {

enum class AttackKind : uint8_t { kFgsm = 0, kPgd = 1 };

struct AttackConfig {
  AttackKind kind = AttackKind::kFgsm;
  float epsilon = 0.3f;
  int steps = 10;            // PGD only
  float step_size = 0.05f;   // PGD only; defaults to epsilon / 6 in make_pgd
  Norm norm = Norm::kLinf;
  uint64_t rng_seed = 0;     // PGD random start
  bool random_start = true;  // PGD only

  void validate() const;
};

AttackConfig make_fgsm(float epsilon, Norm norm = Norm::kLinf);
AttackConfig make_pgd(float epsilon, Norm norm = Norm::kLinf, uint64_t seed = 0);

// x' = clip(x + epsilon * sign(grad J), 0, 1); sign(0) contributes nothing.
Tensor fgsm(const MlpModel& model, const Tensor& x, int y, float epsilon);

// Iterated projected sign-gradient ascent from a random point in the ball
// (seeded). The result stays inside the epsilon-ball around the ORIGINAL x
// and inside [0,1]^d.
Tensor pgd(const MlpModel& model, const Tensor& x, int y, const AttackConfig& cfg);

// Runs cfg's attack on the samples at `indices` (the whole dataset when
// empty). Per-sample RNG streams derive from (cfg.rng_seed, dataset index),
// so results are identical for any thread count.
TestSuite attack_dataset(const MlpModel& model, const LabeledDataset& data,
                         const AttackConfig& cfg, const std::vector<size_t>& indices = {},
                         int threads = 1);

}  // namespace robot
