#pragma once

#include <vector>

#include "robotkit/model.hpp"
#include "robotkit/suite.hpp"
#include "robotkit/tensor.hpp"

namespace robot {

// Per-layer activations from one forward pass, kept for backprop.
// Activations are stored in f32 so the cached pass is bit-identical to
// forward(); the backward sweep accumulates in f64.
struct ForwardCache {
  std::vector<std::vector<float>> act;  // act[0] = input, act[L] = logits
  std::vector<std::vector<float>> pre;  // pre-activation z per layer
};

ForwardCache forward_cached(const MlpModel& model, const float* x);

// Backpropagates a logits cotangent to the input. dz has num_classes entries.
std::vector<double> backward_to_input(const MlpModel& model, const ForwardCache& cache,
                                      std::vector<double> dz);

// Accumulated parameter gradients (training substrate).
struct ParamGrads {
  std::vector<std::vector<double>> dw;
  std::vector<std::vector<double>> db;

  explicit ParamGrads(const MlpModel& model);
  void add_scaled_to(MlpModel& model, double scale) const;
};

// Accumulates one sample's parameter gradients of the cross-entropy loss.
void backward_params(const MlpModel& model, const ForwardCache& cache,
                     std::vector<double> dz, ParamGrads& grads);

// Gradient of J(softmax(forward(model, x)), y) w.r.t. x, by exact
// backpropagation with the fused softmax/cross-entropy output cotangent.
Tensor input_gradient(const MlpModel& model, const Tensor& x, int y);

// f64 variant used by second-order finite differencing and the metrics.
std::vector<double> input_gradient_f64(const MlpModel& model, const Tensor& x, int y);

struct ObjectiveResult {
  double value = 0.0;
  Tensor gradient;
};

// Probability-margin objective plus a first-order-loss regularizer:
//   obj = sum_{i=2..k} P(c_i) - P(c_1) + lambda * FOL(x)
// with c_1..c_k ranked by descending softmax probability at x (ties to the
// lowest class index). The FOL term uses the closed form for `norm` with the
// ball radius `epsilon`; its gradient needs Hessian-vector products, obtained
// by forward-differencing the input gradient (h = 1e-3).
ObjectiveResult grad_objective(const MlpModel& model, const Tensor& x, int y, int k,
                               double lambda, Norm norm, double epsilon);

}  // namespace robot
