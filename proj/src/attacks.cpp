#include "robotkit/attacks.hpp"

#include <cmath>

#include "robotkit/errors.hpp"
#include "robotkit/gradient.hpp"
#include "robotkit/rng.hpp"
#include "robotkit/threading.hpp"

namespace robot {

namespace {

inline float clamp01(float v) { return v < 0.0f ? 0.0f : (v > 1.0f ? 1.0f : v); }

void check_box(const Tensor& x) {
  for (int64_t i = 0; i < x.numel(); ++i) {
    if (!(x[i] >= 0.0f && x[i] <= 1.0f)) {
      throw ArgumentError("attack input must lie in [0,1]^d");
    }
  }
}

// Projects p onto the epsilon ball around origin_x, then onto [0,1]^d.
// The box clamp never grows the ball distance, so the order is safe.
void project(Tensor& p, const Tensor& origin_x, float epsilon, Norm norm) {
  if (norm == Norm::kLinf) {
    for (int64_t i = 0; i < p.numel(); ++i) {
      const float lo = origin_x[i] - epsilon;
      const float hi = origin_x[i] + epsilon;
      float v = p[i] < lo ? lo : (p[i] > hi ? hi : p[i]);
      p[i] = clamp01(v);
    }
    return;
  }
  double sq = 0.0;
  for (int64_t i = 0; i < p.numel(); ++i) {
    const double d = static_cast<double>(p[i]) - origin_x[i];
    sq += d * d;
  }
  const double dist = std::sqrt(sq);
  if (dist > epsilon) {
    const double scale = epsilon / dist;
    for (int64_t i = 0; i < p.numel(); ++i) {
      p[i] = static_cast<float>(origin_x[i] + scale * (static_cast<double>(p[i]) - origin_x[i]));
    }
  }
  for (int64_t i = 0; i < p.numel(); ++i) p[i] = clamp01(p[i]);
}

Tensor random_ball_point(const Tensor& x, float epsilon, Norm norm, Rng& rng) {
  Tensor p = x;
  if (norm == Norm::kLinf) {
    for (int64_t i = 0; i < p.numel(); ++i) {
      p[i] = clamp01(static_cast<float>(p[i] + rng.uniform(-epsilon, epsilon)));
    }
    return p;
  }
  // Direction uniform on the sphere, radius epsilon * u^(1/d).
  const int64_t d = p.numel();
  std::vector<double> dir(static_cast<size_t>(d));
  double sq = 0.0;
  for (auto& v : dir) {
    v = rng.normal();
    sq += v * v;
  }
  const double len = std::sqrt(sq);
  const double radius = epsilon * std::pow(rng.uniform(), 1.0 / static_cast<double>(d));
  if (len > 0.0) {
    for (int64_t i = 0; i < d; ++i) {
      p[i] = clamp01(static_cast<float>(p[i] + radius * dir[static_cast<size_t>(i)] / len));
    }
  }
  return p;
}

// L2 companion of the sign-gradient step: one gradient step of length
// epsilon, so the declared-norm ball containment holds for L2 suites too.
Tensor fgm_l2(const MlpModel& model, const Tensor& x, int y, float epsilon) {
  Tensor g = input_gradient(model, x, y);
  double sq = 0.0;
  for (int64_t i = 0; i < g.numel(); ++i) sq += static_cast<double>(g[i]) * g[i];
  const double len = std::sqrt(sq);
  Tensor out = x;
  if (len > 0.0) {
    for (int64_t i = 0; i < out.numel(); ++i) {
      out[i] = clamp01(static_cast<float>(out[i] + epsilon * g[i] / len));
    }
  }
  return out;
}

Tensor pgd_with_rng(const MlpModel& model, const Tensor& x, int y,
                    const AttackConfig& cfg, Rng rng) {
  Tensor cur = cfg.random_start ? random_ball_point(x, cfg.epsilon, cfg.norm, rng) : x;
  for (int step = 0; step < cfg.steps; ++step) {
    Tensor g = input_gradient(model, cur, y);
    if (cfg.norm == Norm::kLinf) {
      for (int64_t i = 0; i < cur.numel(); ++i) {
        const float s = (g[i] > 0.0f) ? 1.0f : (g[i] < 0.0f ? -1.0f : 0.0f);
        cur[i] += cfg.step_size * s;
      }
    } else {
      double sq = 0.0;
      for (int64_t i = 0; i < g.numel(); ++i) sq += static_cast<double>(g[i]) * g[i];
      const double len = std::sqrt(sq);
      if (len > 0.0) {
        for (int64_t i = 0; i < cur.numel(); ++i) {
          cur[i] = static_cast<float>(cur[i] + cfg.step_size * g[i] / len);
        }
      }
    }
    project(cur, x, cfg.epsilon, cfg.norm);
  }
  cur.ensure_finite("pgd output");
  return cur;
}

}  // namespace

void AttackConfig::validate() const {
  if (!(epsilon > 0.0f)) throw ConfigError("attack: epsilon must be positive");
  if (kind == AttackKind::kPgd) {
    if (steps < 1) throw ConfigError("attack: PGD needs steps >= 1");
    if (!(step_size > 0.0f)) throw ConfigError("attack: step_size must be positive");
    if (step_size > epsilon) {
      throw ConfigError("attack: PGD step_size must not exceed epsilon");
    }
  }
}

AttackConfig make_fgsm(float epsilon, Norm norm) {
  AttackConfig cfg;
  cfg.kind = AttackKind::kFgsm;
  cfg.epsilon = epsilon;
  cfg.norm = norm;
  cfg.validate();
  return cfg;
}

AttackConfig make_pgd(float epsilon, Norm norm, uint64_t seed) {
  AttackConfig cfg;
  cfg.kind = AttackKind::kPgd;
  cfg.epsilon = epsilon;
  cfg.steps = 10;
  cfg.step_size = epsilon / 6.0f;
  cfg.norm = norm;
  cfg.rng_seed = seed;
  cfg.validate();
  return cfg;
}

Tensor fgsm(const MlpModel& model, const Tensor& x, int y, float epsilon) {
  if (!(epsilon > 0.0f)) throw ConfigError("fgsm: epsilon must be positive");
  check_box(x);
  Tensor g = input_gradient(model, x, y);
  Tensor out = x;
  for (int64_t i = 0; i < out.numel(); ++i) {
    const float s = (g[i] > 0.0f) ? 1.0f : (g[i] < 0.0f ? -1.0f : 0.0f);
    out[i] = clamp01(out[i] + epsilon * s);
  }
  return out;
}

Tensor pgd(const MlpModel& model, const Tensor& x, int y, const AttackConfig& cfg) {
  if (cfg.kind != AttackKind::kPgd) throw ConfigError("pgd: config kind is not PGD");
  cfg.validate();
  check_box(x);
  return pgd_with_rng(model, x, y, cfg, Rng(cfg.rng_seed));
}

TestSuite attack_dataset(const MlpModel& model, const LabeledDataset& data,
                         const AttackConfig& cfg, const std::vector<size_t>& indices,
                         int threads) {
  cfg.validate();
  std::vector<size_t> idx = indices;
  if (idx.empty()) {
    idx.resize(data.size());
    for (size_t i = 0; i < data.size(); ++i) idx[i] = i;
  }
  TestSuite suite;
  suite.norm = cfg.norm;
  suite.epsilon = cfg.epsilon;
  suite.input_dim = static_cast<uint32_t>(data.dim());
  suite.num_classes = static_cast<uint16_t>(model.num_classes());
  suite.cases.resize(idx.size());
  const char* tag = cfg.kind == AttackKind::kFgsm ? "fgsm" : "pgd";

  parallel_for(static_cast<int64_t>(idx.size()), threads, [&](int64_t i) {
    const size_t di = idx[static_cast<size_t>(i)];
    const Tensor x = data.input(di);
    const int y = data.labels[di];
    Tensor adv;
    if (cfg.kind == AttackKind::kFgsm) {
      adv = cfg.norm == Norm::kLinf ? fgsm(model, x, y, cfg.epsilon)
                                    : fgm_l2(model, x, y, cfg.epsilon);
    } else {
      adv = pgd_with_rng(model, x, y, cfg, Rng::for_stream(cfg.rng_seed, di));
    }
    TestCase& tc = suite.cases[static_cast<size_t>(i)];
    tc.seed_index = static_cast<uint32_t>(di);
    tc.ground_truth = static_cast<uint16_t>(y);
    tc.predicted = static_cast<uint16_t>(predict(model, adv));
    tc.x_t = std::move(adv);
    tc.x_0 = x;
    tc.source = tag;
  });
  return suite;
}

}  // namespace robot
