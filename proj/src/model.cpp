#include "robotkit/model.hpp"

#include <cmath>
#include <string>

#include "robotkit/errors.hpp"
#include "robotkit/rng.hpp"
#include "robotkit/threading.hpp"

namespace robot {

namespace {
constexpr double kLogFloor = 1e-12;
}

MlpModel::MlpModel(std::vector<DenseLayer> layers) : layers_(std::move(layers)) {
  if (layers_.empty()) throw ShapeError("model needs at least one layer");
  for (size_t i = 0; i < layers_.size(); ++i) {
    const DenseLayer& l = layers_[i];
    if (l.weights.rank() != 2) throw ShapeError("layer weights must be rank-2");
    if (l.bias.rank() != 1 || l.bias.dim(0) != l.out()) {
      throw ShapeError("layer bias length must equal the output width");
    }
    if (i > 0 && layers_[i - 1].out() != l.in()) {
      throw ShapeError("layer " + std::to_string(i) + " input width " +
                       std::to_string(l.in()) + " does not chain with previous output " +
                       std::to_string(layers_[i - 1].out()));
    }
  }
  if (layers_.back().activation != Activation::kIdentity) {
    throw ShapeError("last layer must use Identity activation (logits)");
  }
  input_dim_ = layers_.front().in();
  num_classes_ = layers_.back().out();
  if (num_classes_ < 2) throw ShapeError("model needs at least 2 classes");
}

MlpModel MlpModel::glorot(const std::vector<int>& dims, uint64_t seed) {
  if (dims.size() < 2) throw ShapeError("glorot: need at least input and output dims");
  std::vector<DenseLayer> layers;
  for (size_t i = 0; i + 1 < dims.size(); ++i) {
    const int fan_in = dims[i];
    const int fan_out = dims[i + 1];
    Rng rng = Rng::for_stream(seed, i);
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    std::vector<float> w(static_cast<size_t>(fan_in) * fan_out);
    for (auto& v : w) v = static_cast<float>(rng.uniform(-limit, limit));
    DenseLayer layer;
    layer.weights = Tensor::matrix(fan_out, fan_in, std::move(w));
    layer.bias = Tensor({fan_out});
    layer.activation =
        (i + 2 < dims.size()) ? Activation::kRelu : Activation::kIdentity;
    layers.push_back(std::move(layer));
  }
  return MlpModel(std::move(layers));
}

bool MlpModel::same_bits(const MlpModel& other) const {
  if (layers_.size() != other.layers_.size()) return false;
  for (size_t i = 0; i < layers_.size(); ++i) {
    if (layers_[i].activation != other.layers_[i].activation) return false;
    if (!layers_[i].weights.same_bits(other.layers_[i].weights)) return false;
    if (!layers_[i].bias.same_bits(other.layers_[i].bias)) return false;
  }
  return true;
}

Tensor forward(const MlpModel& model, const Tensor& x) {
  if (x.rank() != 1 || x.dim(0) != model.input_dim()) {
    throw ShapeError("forward: input length " + std::to_string(x.numel()) +
                     " does not match model input dim " +
                     std::to_string(model.input_dim()));
  }
  std::vector<float> act(x.vec());
  std::vector<float> next;
  for (const DenseLayer& layer : model.layers()) {
    const int out = layer.out();
    const int in = layer.in();
    next.assign(static_cast<size_t>(out), 0.0f);
    const float* w = layer.weights.data();
    for (int o = 0; o < out; ++o) {
      const float* row = w + static_cast<size_t>(o) * in;
      double acc = layer.bias[o];
      for (int i = 0; i < in; ++i) acc += static_cast<double>(row[i]) * act[i];
      float z = static_cast<float>(acc);
      next[o] = (layer.activation == Activation::kRelu && z < 0.0f) ? 0.0f : z;
    }
    act.swap(next);
  }
  Tensor logits = Tensor::vector(std::move(act));
  logits.ensure_finite("forward logits");
  return logits;
}

Tensor softmax(const Tensor& logits) {
  logits.ensure_finite("softmax input");
  const int64_t c = logits.numel();
  double mx = logits[0];
  for (int64_t i = 1; i < c; ++i) mx = std::max<double>(mx, logits[i]);
  std::vector<double> e(static_cast<size_t>(c));
  double sum = 0.0;
  for (int64_t i = 0; i < c; ++i) {
    e[static_cast<size_t>(i)] = std::exp(static_cast<double>(logits[i]) - mx);
    sum += e[static_cast<size_t>(i)];
  }
  std::vector<float> p(static_cast<size_t>(c));
  for (int64_t i = 0; i < c; ++i) {
    p[static_cast<size_t>(i)] = static_cast<float>(e[static_cast<size_t>(i)] / sum);
  }
  return Tensor::vector(std::move(p));
}

float cross_entropy(const Tensor& probs, int y) {
  if (y < 0 || y >= probs.numel()) {
    throw IndexError("cross_entropy: label " + std::to_string(y) +
                     " out of range for " + std::to_string(probs.numel()) + " classes");
  }
  return static_cast<float>(-std::log(static_cast<double>(probs[y]) + kLogFloor));
}

int predict(const MlpModel& model, const Tensor& x) {
  Tensor logits = forward(model, x);
  int best = 0;
  for (int i = 1; i < logits.numel(); ++i) {
    if (logits[i] > logits[best]) best = i;  // ties keep the lowest index
  }
  return best;
}

double accuracy(const MlpModel& model, const LabeledDataset& data, int threads) {
  if (data.size() == 0) throw ArgumentError("accuracy: empty dataset");
  const int64_t n = static_cast<int64_t>(data.size());
  std::vector<uint8_t> correct(static_cast<size_t>(n), 0);
  parallel_for(n, threads, [&](int64_t i) {
    correct[static_cast<size_t>(i)] =
        predict(model, data.input(static_cast<size_t>(i))) == data.labels[static_cast<size_t>(i)];
  });
  int64_t hits = 0;
  for (uint8_t c : correct) hits += c;
  return static_cast<double>(hits) / static_cast<double>(n);
}

double mean_loss(const MlpModel& model, const LabeledDataset& data, int threads) {
  if (data.size() == 0) throw ArgumentError("mean_loss: empty dataset");
  const int64_t n = static_cast<int64_t>(data.size());
  std::vector<double> losses(static_cast<size_t>(n), 0.0);
  parallel_for(n, threads, [&](int64_t i) {
    const size_t s = static_cast<size_t>(i);
    losses[s] = cross_entropy(softmax(forward(model, data.input(s))), data.labels[s]);
  });
  double sum = 0.0;
  for (double l : losses) sum += l;
  return sum / static_cast<double>(n);
}

}  // namespace robot
