#pragma once

#include <cstdint>

#include "robotkit/dataset.hpp"

namespace robot {

// Synthetic digits-like image classes: each class is a fixed arrangement of
// soft blobs on a rows x cols grid; samples add a seeded shift, intensity
// scale and pixel noise. Useful for demos and for desk-scale experiments
// when no real IDX dataset is at hand.
struct SynthSpec {
  int rows = 28;
  int cols = 28;
  int num_classes = 10;  // at most 10 (two lines per parallel class)
  float blob_sigma = 2.2f;
  float noise_sigma = 0.12f;
  float jitter = 0.9f;
  int max_shift = 2;
};

// n samples drawn from the class prototypes defined by `seed`. Disjoint
// sample ranges come from different `sample_offset`s over the same
// prototypes, so train/test splits share one distribution.
LabeledDataset make_synthetic_digits(size_t n, uint64_t seed, uint64_t sample_offset = 0,
                                     const SynthSpec& spec = {});

}  // namespace robot
