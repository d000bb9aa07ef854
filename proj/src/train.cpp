#include "robotkit/train.hpp"

#include <cmath>
#include <string>

#include "robotkit/errors.hpp"
#include "robotkit/gradient.hpp"
#include "robotkit/rng.hpp"

namespace robot {

void TrainConfig::validate(size_t dataset_size) const {
  if (epochs < 0) throw ConfigError("train: epochs must be >= 0");
  if (batch_size <= 0) throw ConfigError("train: batch_size must be positive");
  if (static_cast<size_t>(batch_size) > dataset_size) {
    throw ConfigError("train: batch_size " + std::to_string(batch_size) +
                      " exceeds dataset size " + std::to_string(dataset_size));
  }
  if (!(learning_rate > 0.0f)) throw ConfigError("train: learning_rate must be positive");
}

MlpModel train(const MlpModel& model, const LabeledDataset& data, const TrainConfig& cfg) {
  cfg.validate(data.size());
  if (data.dim() != model.input_dim()) {
    throw ShapeError("train: dataset dim does not match model input dim");
  }
  if (data.num_classes > model.num_classes()) {
    throw ShapeError("train: dataset has more classes than the model");
  }
  MlpModel m = model;
  const size_t n = data.size();

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    Rng rng = Rng::for_stream(cfg.rng_seed, static_cast<uint64_t>(epoch));
    const std::vector<size_t> order = rng.permutation(n);
    for (size_t start = 0; start < n; start += static_cast<size_t>(cfg.batch_size)) {
      const size_t end = std::min(n, start + static_cast<size_t>(cfg.batch_size));
      ParamGrads grads(m);
      for (size_t bi = start; bi < end; ++bi) {
        const size_t idx = order[bi];
        ForwardCache cache = forward_cached(m, data.input_ptr(idx));
        std::vector<double> dz(cache.act.back().size());
        {
          // fused softmax/cross-entropy cotangent
          double mx = cache.act.back()[0];
          for (float v : cache.act.back()) mx = std::max(mx, static_cast<double>(v));
          double sum = 0.0;
          for (size_t i = 0; i < dz.size(); ++i) {
            dz[i] = std::exp(static_cast<double>(cache.act.back()[i]) - mx);
            sum += dz[i];
          }
          for (double& v : dz) v /= sum;
          dz[data.labels[idx]] -= 1.0;
        }
        backward_params(m, cache, std::move(dz), grads);
      }
      grads.add_scaled_to(m, -static_cast<double>(cfg.learning_rate) /
                                 static_cast<double>(end - start));
    }
  }
  return m;
}

}  // namespace robot
