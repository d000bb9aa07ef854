#pragma once

#include <cstdint>
#include <vector>

#include "robotkit/tensor.hpp"

namespace robot {

// Labeled classification dataset: inputs [n x d] with entries in [0,1],
// labels in [0, num_classes).
struct LabeledDataset {
  Tensor inputs;                 // [n x d]
  std::vector<uint16_t> labels;  // n entries
  int num_classes = 0;

  LabeledDataset() = default;
  LabeledDataset(Tensor inputs, std::vector<uint16_t> labels, int num_classes);

  size_t size() const { return labels.size(); }
  int dim() const { return inputs.rank() == 2 ? inputs.dim(1) : 0; }

  // Copy of row i as a flat input vector.
  Tensor input(size_t i) const;
  const float* input_ptr(size_t i) const {
    return inputs.data() + i * static_cast<size_t>(dim());
  }

  // Rows at the given indices, in order.
  LabeledDataset subset(const std::vector<size_t>& indices) const;
  // This dataset followed by `extra` (dims and class counts must match).
  LabeledDataset concat(const LabeledDataset& extra) const;

  // Throws if shapes, ranges or pixel bounds are violated.
  void validate() const;
};

}  // namespace robot
