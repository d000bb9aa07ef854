#include "robotkit/gradient.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "robotkit/errors.hpp"

namespace robot {

namespace {

constexpr double kHvpStep = 1e-3;

// f64 softmax of cached f32 logits.
std::vector<double> softmax_f64(const std::vector<float>& logits) {
  double mx = logits[0];
  for (float v : logits) mx = std::max(mx, static_cast<double>(v));
  std::vector<double> p(logits.size());
  double sum = 0.0;
  for (size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp(static_cast<double>(logits[i]) - mx);
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  return p;
}

std::vector<double> fused_ce_cotangent(const ForwardCache& cache, int y) {
  std::vector<double> dz = softmax_f64(cache.act.back());
  dz[static_cast<size_t>(y)] -= 1.0;
  return dz;
}

void check_input(const MlpModel& model, const Tensor& x, int y) {
  if (x.rank() != 1 || x.dim(0) != model.input_dim()) {
    throw ShapeError("input_gradient: input length does not match model input dim");
  }
  if (y < 0 || y >= model.num_classes()) {
    throw IndexError("input_gradient: label " + std::to_string(y) + " out of range");
  }
}

std::vector<double> gradient_at(const MlpModel& model, const float* x, int y) {
  ForwardCache cache = forward_cached(model, x);
  return backward_to_input(model, cache, fused_ce_cotangent(cache, y));
}

}  // namespace

ForwardCache forward_cached(const MlpModel& model, const float* x) {
  ForwardCache cache;
  cache.act.reserve(model.layers().size() + 1);
  cache.pre.reserve(model.layers().size());
  cache.act.emplace_back(x, x + model.input_dim());
  for (const DenseLayer& layer : model.layers()) {
    const int out = layer.out();
    const int in = layer.in();
    const std::vector<float>& prev = cache.act.back();
    std::vector<float> z(static_cast<size_t>(out));
    const float* w = layer.weights.data();
    for (int o = 0; o < out; ++o) {
      const float* row = w + static_cast<size_t>(o) * in;
      double acc = layer.bias[o];
      for (int i = 0; i < in; ++i) acc += static_cast<double>(row[i]) * prev[static_cast<size_t>(i)];
      z[static_cast<size_t>(o)] = static_cast<float>(acc);
    }
    cache.pre.push_back(z);
    if (layer.activation == Activation::kRelu) {
      for (float& v : z) v = std::max(v, 0.0f);
    }
    cache.act.push_back(std::move(z));
  }
  return cache;
}

std::vector<double> backward_to_input(const MlpModel& model, const ForwardCache& cache,
                                      std::vector<double> dz) {
  const auto& layers = model.layers();
  for (size_t li = layers.size(); li-- > 0;) {
    const DenseLayer& layer = layers[li];
    const int out = layer.out();
    const int in = layer.in();
    // dz is w.r.t. the layer's pre-activation already for the top layer;
    // deeper layers apply the ReLU mask of their own pre-activation below.
    std::vector<double> da(static_cast<size_t>(in), 0.0);
    const float* w = layer.weights.data();
    for (int o = 0; o < out; ++o) {
      const double d = dz[static_cast<size_t>(o)];
      if (d == 0.0) continue;
      const float* row = w + static_cast<size_t>(o) * in;
      for (int i = 0; i < in; ++i) da[static_cast<size_t>(i)] += d * row[i];
    }
    if (li > 0) {
      const std::vector<float>& z_prev = cache.pre[li - 1];
      if (layers[li - 1].activation == Activation::kRelu) {
        for (int i = 0; i < in; ++i) {
          if (z_prev[static_cast<size_t>(i)] <= 0.0f) da[static_cast<size_t>(i)] = 0.0;
        }
      }
    }
    dz = std::move(da);
  }
  return dz;
}

ParamGrads::ParamGrads(const MlpModel& model) {
  for (const DenseLayer& layer : model.layers()) {
    dw.emplace_back(static_cast<size_t>(layer.weights.numel()), 0.0);
    db.emplace_back(static_cast<size_t>(layer.bias.numel()), 0.0);
  }
}

void ParamGrads::add_scaled_to(MlpModel& model, double scale) const {
  auto& layers = model.layers();
  for (size_t li = 0; li < layers.size(); ++li) {
    float* w = layers[li].weights.data();
    for (size_t i = 0; i < dw[li].size(); ++i) {
      w[i] = static_cast<float>(w[i] + scale * dw[li][i]);
    }
    float* b = layers[li].bias.data();
    for (size_t i = 0; i < db[li].size(); ++i) {
      b[i] = static_cast<float>(b[i] + scale * db[li][i]);
    }
  }
}

void backward_params(const MlpModel& model, const ForwardCache& cache,
                     std::vector<double> dz, ParamGrads& grads) {
  const auto& layers = model.layers();
  for (size_t li = layers.size(); li-- > 0;) {
    const DenseLayer& layer = layers[li];
    const int out = layer.out();
    const int in = layer.in();
    const std::vector<float>& a_prev = cache.act[li];
    std::vector<double>& dwl = grads.dw[li];
    std::vector<double>& dbl = grads.db[li];
    for (int o = 0; o < out; ++o) {
      const double d = dz[static_cast<size_t>(o)];
      dbl[static_cast<size_t>(o)] += d;
      if (d == 0.0) continue;
      double* dwrow = dwl.data() + static_cast<size_t>(o) * in;
      for (int i = 0; i < in; ++i) dwrow[i] += d * a_prev[static_cast<size_t>(i)];
    }
    if (li == 0) break;
    std::vector<double> da(static_cast<size_t>(in), 0.0);
    const float* w = layer.weights.data();
    for (int o = 0; o < out; ++o) {
      const double d = dz[static_cast<size_t>(o)];
      if (d == 0.0) continue;
      const float* row = w + static_cast<size_t>(o) * in;
      for (int i = 0; i < in; ++i) da[static_cast<size_t>(i)] += d * row[i];
    }
    if (layers[li - 1].activation == Activation::kRelu) {
      const std::vector<float>& z_prev = cache.pre[li - 1];
      for (int i = 0; i < in; ++i) {
        if (z_prev[static_cast<size_t>(i)] <= 0.0f) da[static_cast<size_t>(i)] = 0.0;
      }
    }
    dz = std::move(da);
  }
}

Tensor input_gradient(const MlpModel& model, const Tensor& x, int y) {
  check_input(model, x, y);
  std::vector<double> g = gradient_at(model, x.data(), y);
  std::vector<float> out(g.size());
  for (size_t i = 0; i < g.size(); ++i) out[i] = static_cast<float>(g[i]);
  Tensor t = Tensor::vector(std::move(out));
  t.ensure_finite("input_gradient");
  return t;
}

std::vector<double> input_gradient_f64(const MlpModel& model, const Tensor& x, int y) {
  check_input(model, x, y);
  return gradient_at(model, x.data(), y);
}

ObjectiveResult grad_objective(const MlpModel& model, const Tensor& x, int y, int k,
                               double lambda, Norm norm, double epsilon) {
  if (k < 2 || k > model.num_classes()) {
    throw ConfigError("grad_objective: k must be in [2, num_classes], got " +
                      std::to_string(k));
  }
  if (lambda < 0.0) throw ConfigError("grad_objective: lambda must be >= 0");
  check_input(model, x, y);

  ForwardCache cache = forward_cached(model, x.data());
  std::vector<double> p = softmax_f64(cache.act.back());
  const int c = model.num_classes();

  // Rank classes by descending probability; ties keep the lowest index.
  std::vector<int> order(static_cast<size_t>(c));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return p[static_cast<size_t>(a)] > p[static_cast<size_t>(b)]; });

  double margin = -p[static_cast<size_t>(order[0])];
  std::vector<double> dp(static_cast<size_t>(c), 0.0);
  dp[static_cast<size_t>(order[0])] = -1.0;
  for (int i = 1; i < k; ++i) {
    margin += p[static_cast<size_t>(order[i])];
    dp[static_cast<size_t>(order[i])] = 1.0;
  }

  // Pull the probability cotangent through the softmax Jacobian.
  double dot = 0.0;
  for (int j = 0; j < c; ++j) dot += dp[static_cast<size_t>(j)] * p[static_cast<size_t>(j)];
  std::vector<double> dz(static_cast<size_t>(c));
  for (int j = 0; j < c; ++j) {
    dz[static_cast<size_t>(j)] = p[static_cast<size_t>(j)] * (dp[static_cast<size_t>(j)] - dot);
  }
  std::vector<double> grad = backward_to_input(model, cache, std::move(dz));

  double value = margin;
  if (lambda > 0.0) {
    const std::vector<double> g = gradient_at(model, x.data(), y);
    double norm2 = 0.0, norm1 = 0.0;
    for (double v : g) {
      norm2 += v * v;
      norm1 += std::abs(v);
    }
    norm2 = std::sqrt(norm2);
    const double fol = (norm == Norm::kL2) ? epsilon * norm2 : epsilon * norm1;
    value += lambda * fol;

    // Direction whose Hessian-vector product differentiates the closed form:
    // g/||g||_2 for the L2 form, sign(g) for the L1 norm in the Linf form.
    std::vector<double> dir(g.size(), 0.0);
    double dir_len = 0.0;
    if (norm == Norm::kL2) {
      if (norm2 > 1e-12) {
        for (size_t i = 0; i < g.size(); ++i) dir[i] = g[i] / norm2;
        dir_len = 1.0;
      }
    } else {
      double sq = 0.0;
      for (size_t i = 0; i < g.size(); ++i) {
        dir[i] = (g[i] > 0.0) - (g[i] < 0.0);
        sq += dir[i] * dir[i];
      }
      if (sq > 0.0) {
        dir_len = std::sqrt(sq);
        for (double& v : dir) v /= dir_len;
      }
    }
    if (dir_len > 0.0) {
      Tensor shifted = x;
      for (int64_t i = 0; i < shifted.numel(); ++i) {
        shifted[i] = static_cast<float>(shifted[i] + kHvpStep * dir[static_cast<size_t>(i)]);
      }
      const std::vector<double> g2 = gradient_at(model, shifted.data(), y);
      const double scale = lambda * epsilon * dir_len / kHvpStep;
      for (size_t i = 0; i < grad.size(); ++i) grad[i] += scale * (g2[i] - g[i]);
    }
  }

  ObjectiveResult res;
  res.value = value;
  std::vector<float> gf(grad.size());
  for (size_t i = 0; i < grad.size(); ++i) gf[i] = static_cast<float>(grad[i]);
  res.gradient = Tensor::vector(std::move(gf));
  res.gradient.ensure_finite("grad_objective");
  return res;
}

}  // namespace robot
