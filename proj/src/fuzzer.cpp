#include "robotkit/fuzzer.hpp"

#include <string>

#include "robotkit/errors.hpp"
#include "robotkit/metrics.hpp"
#include "robotkit/rng.hpp"
#include "robotkit/threading.hpp"

namespace robot {

namespace {

inline float clamp01(float v) { return v < 0.0f ? 0.0f : (v > 1.0f ? 1.0f : v); }

struct SeedResult {
  std::vector<TestCase> cases;
  FuzzStats stats;
  std::vector<FuzzTraceEvent> trace;
};

// Fuzzes one original seed's whole worklist chain.
SeedResult fuzz_seed(const MlpModel& model, const Tensor& seed, int y,
                     uint32_t seed_index, const FuzzConfig& cfg, Rng rng) {
  SeedResult res;
  res.stats.seeds_processed = 1;

  // Flip test label: pinned to the original seed's prediction for the whole
  // chain so every emitted case is adversarial for this seed.
  const int c1 = predict(model, seed);
  double fol_m = fol_l2(model, seed, y, cfg.epsilon);

  std::vector<Tensor> worklist{seed};
  std::vector<Tensor> emitted;
  // Worklist budget: pops + queued never exceed push_cap, so the chain
  // performs at most push_cap * iters perturbation steps.
  int queued_total = 1;

  while (!worklist.empty()) {
    Tensor x = std::move(worklist.back());
    worklist.pop_back();
    Tensor x_prime = std::move(x);

    for (int iter = 0; iter < cfg.iters; ++iter) {
      const ObjectiveResult obj = fuzz_objective(model, x_prime, y, cfg);
      const float coeff =
          cfg.learning_rate * static_cast<float>(rng.uniform(0.5, 1.5));
      for (int64_t i = 0; i < x_prime.numel(); ++i) {
        x_prime[i] = clamp01(x_prime[i] + coeff * obj.gradient[i]);
      }
      res.stats.perturbation_steps += 1;

      const int c_prime = predict(model, x_prime);
      const double dist_to_seed = distance(x_prime, seed, cfg.norm);
      const double fol = fol_l2(model, x_prime, y, cfg.epsilon);
      const bool in_ball = dist_to_seed <= cfg.epsilon;

      bool accepted = false;
      if (fol >= fol_m && in_ball) {
        fol_m = fol;
        res.stats.accepted_high_fol += 1;
        accepted = true;
        if (cfg.record_trace) res.trace.push_back({seed_index, fol_m});
      }
      if (fol < cfg.xi && in_ball) {
        res.stats.accepted_low_fol += 1;
        accepted = true;
      }
      if (!accepted) continue;

      if (queued_total < cfg.push_cap) {
        worklist.push_back(x_prime);
        ++queued_total;
      }
      if (c_prime != c1) {
        bool duplicate = false;
        for (const Tensor& e : emitted) {
          if (e.same_bits(x_prime)) {
            duplicate = true;
            break;
          }
        }
        if (!duplicate) {
          emitted.push_back(x_prime);
          TestCase tc;
          tc.seed_index = seed_index;
          tc.ground_truth = static_cast<uint16_t>(y);
          tc.predicted = static_cast<uint16_t>(c_prime);
          tc.x_t = x_prime;
          tc.x_0 = seed;
          tc.source = "fuzz";
          res.cases.push_back(std::move(tc));
          res.stats.label_flips += 1;
        }
      }
    }
  }
  return res;
}

}  // namespace

void FuzzConfig::validate(const MlpModel& model) const {
  if (!(epsilon > 0.0f)) throw ConfigError("fuzz: epsilon must be positive");
  if (!(xi > 0.0)) throw ConfigError("fuzz: xi must be positive");
  if (k < 2 || k > model.num_classes()) {
    throw ConfigError("fuzz: k must be in [2, num_classes], got " + std::to_string(k));
  }
  if (lambda < 0.0) throw ConfigError("fuzz: lambda must be >= 0");
  if (iters < 0) throw ConfigError("fuzz: iters must be >= 0");
  if (!(learning_rate > 0.0f)) throw ConfigError("fuzz: learning_rate must be positive");
  if (push_cap < 1) throw ConfigError("fuzz: push_cap must be >= 1");
}

ObjectiveResult fuzz_objective(const MlpModel& model, const Tensor& x_prime, int y,
                               const FuzzConfig& cfg) {
  // The FOL term uses the L2 closed form regardless of the ball norm.
  return grad_objective(model, x_prime, y, cfg.k, cfg.lambda, Norm::kL2, cfg.epsilon);
}

FuzzOutcome fol_fuzz(const MlpModel& model, const LabeledDataset& seeds,
                     const FuzzConfig& cfg, int threads) {
  cfg.validate(model);
  if (seeds.dim() != model.input_dim()) {
    throw ShapeError("fuzz: seed dim does not match model input dim");
  }

  const int64_t n = static_cast<int64_t>(seeds.size());
  std::vector<SeedResult> results(static_cast<size_t>(n));
  parallel_for(n, threads, [&](int64_t i) {
    const size_t s = static_cast<size_t>(i);
    results[s] = fuzz_seed(model, seeds.input(s), seeds.labels[s],
                           static_cast<uint32_t>(s), cfg,
                           Rng::for_stream(cfg.rng_seed, static_cast<uint64_t>(i)));
  });

  FuzzOutcome out;
  out.cases.norm = cfg.norm;
  out.cases.epsilon = cfg.epsilon;
  out.cases.input_dim = static_cast<uint32_t>(seeds.dim());
  out.cases.num_classes = static_cast<uint16_t>(model.num_classes());
  for (SeedResult& r : results) {
    for (TestCase& c : r.cases) out.cases.cases.push_back(std::move(c));
    out.stats.seeds_processed += r.stats.seeds_processed;
    out.stats.perturbation_steps += r.stats.perturbation_steps;
    out.stats.accepted_high_fol += r.stats.accepted_high_fol;
    out.stats.accepted_low_fol += r.stats.accepted_low_fol;
    out.stats.label_flips += r.stats.label_flips;
    out.trace.insert(out.trace.end(), r.trace.begin(), r.trace.end());
  }
  return out;
}

}  // namespace robot
