#include "robotkit/dataset.hpp"

#include <string>

#include "robotkit/errors.hpp"

namespace robot {

LabeledDataset::LabeledDataset(Tensor in, std::vector<uint16_t> lab, int classes)
    : inputs(std::move(in)), labels(std::move(lab)), num_classes(classes) {
  validate();
}

void LabeledDataset::validate() const {
  if (inputs.rank() != 2) throw ShapeError("dataset inputs must be rank-2 [n x d]");
  if (inputs.dim(0) != static_cast<int>(labels.size())) {
    throw CountMismatchError("dataset has " + std::to_string(inputs.dim(0)) +
                             " inputs but " + std::to_string(labels.size()) + " labels");
  }
  if (labels.empty()) throw ArgumentError("dataset must contain at least one sample");
  if (num_classes < 2) throw ArgumentError("dataset needs at least two classes");
  for (uint16_t y : labels) {
    if (y >= num_classes) {
      throw IndexError("label " + std::to_string(y) + " out of range for " +
                       std::to_string(num_classes) + " classes");
    }
  }
  for (int64_t i = 0; i < inputs.numel(); ++i) {
    float v = inputs[i];
    if (!(v >= 0.0f && v <= 1.0f)) {
      throw ArgumentError("dataset pixel " + std::to_string(v) + " outside [0,1]");
    }
  }
}

Tensor LabeledDataset::input(size_t i) const {
  const int d = dim();
  std::vector<float> row(input_ptr(i), input_ptr(i) + d);
  return Tensor({d}, std::move(row));
}

LabeledDataset LabeledDataset::subset(const std::vector<size_t>& indices) const {
  const int d = dim();
  std::vector<float> data;
  data.reserve(indices.size() * static_cast<size_t>(d));
  std::vector<uint16_t> lab;
  lab.reserve(indices.size());
  for (size_t i : indices) {
    if (i >= size()) throw IndexError("subset index out of range");
    data.insert(data.end(), input_ptr(i), input_ptr(i) + d);
    lab.push_back(labels[i]);
  }
  return LabeledDataset(Tensor({static_cast<int>(indices.size()), d}, std::move(data)),
                        std::move(lab), num_classes);
}

LabeledDataset LabeledDataset::concat(const LabeledDataset& extra) const {
  if (extra.dim() != dim()) throw ShapeError("concat: input dims differ");
  if (extra.num_classes != num_classes) throw ShapeError("concat: class counts differ");
  std::vector<float> data(inputs.vec());
  data.insert(data.end(), extra.inputs.vec().begin(), extra.inputs.vec().end());
  std::vector<uint16_t> lab(labels);
  lab.insert(lab.end(), extra.labels.begin(), extra.labels.end());
  const int total = static_cast<int>(lab.size());
  return LabeledDataset(Tensor({total, dim()}, std::move(data)), std::move(lab),
                        num_classes);
}

}  // namespace robot
