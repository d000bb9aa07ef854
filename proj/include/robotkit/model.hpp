#pragma once

#include <cstdint>
#include <vector>

#include "robotkit/dataset.hpp"
#include "robotkit/tensor.hpp"

namespace robot {

enum class Activation : uint8_t { kRelu = 0, kIdentity = 1 };

struct DenseLayer {
  Tensor weights;  // [out x in], row-major
  Tensor bias;     // [out]
  Activation activation = Activation::kIdentity;

  int in() const { return weights.dim(1); }
  int out() const { return weights.dim(0); }
};

// Dense feed-forward classifier. Layers chain dimensionally and the last
// layer is Identity: the network emits logits, softmax is applied separately.
// Immutable in use; training works on a private copy.
class MlpModel {
 public:
  MlpModel() = default;
  MlpModel(std::vector<DenseLayer> layers);

  // Glorot-uniform weights, zero biases, ReLU hidden layers, Identity head.
  // dims = {input, hidden..., num_classes}.
  static MlpModel glorot(const std::vector<int>& dims, uint64_t seed);

  int input_dim() const { return input_dim_; }
  int num_classes() const { return num_classes_; }
  const std::vector<DenseLayer>& layers() const { return layers_; }
  std::vector<DenseLayer>& layers() { return layers_; }

  bool same_bits(const MlpModel& other) const;

 private:
  std::vector<DenseLayer> layers_;
  int input_dim_ = 0;
  int num_classes_ = 0;
};

// Logits for a single input of length model.input_dim().
Tensor forward(const MlpModel& model, const Tensor& x);

// Numerically stable softmax (max subtraction, 64-bit internals).
Tensor softmax(const Tensor& logits);

// Categorical cross-entropy -ln(probs[y] + 1e-12).
float cross_entropy(const Tensor& probs, int y);

// Argmax of the logits; ties break to the lowest class index.
int predict(const MlpModel& model, const Tensor& x);

// Fraction of correctly predicted samples. threads == 1 is the serial
// reference path.
double accuracy(const MlpModel& model, const LabeledDataset& data, int threads = 1);

// Mean cross-entropy loss over the dataset.
double mean_loss(const MlpModel& model, const LabeledDataset& data, int threads = 1);

}  // namespace robot
