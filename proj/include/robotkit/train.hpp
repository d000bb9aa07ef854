#pragma once

#include <cstdint>

#include "robotkit/dataset.hpp"
#include "robotkit/model.hpp"

namespace robot {

struct TrainConfig {
  int epochs = 10;
  int batch_size = 32;
  float learning_rate = 0.1f;
  uint64_t rng_seed = 0;

  void validate(size_t dataset_size) const;
};

// Mini-batch SGD with seeded shuffling. Returns a trained copy; the input
// model is untouched. Deterministic for a fixed rng_seed (single-threaded
// reference path). epochs == 0 returns the model unchanged.
MlpModel train(const MlpModel& model, const LabeledDataset& data, const TrainConfig& cfg);

}  // namespace robot
