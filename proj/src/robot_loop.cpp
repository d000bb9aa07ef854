#include "robotkit/robot_loop.hpp"

#include <chrono>

#include "robotkit/errors.hpp"
#include "robotkit/metrics.hpp"
#include "robotkit/rng.hpp"
#include "robotkit/threading.hpp"

namespace robot {

namespace {

int64_t elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - since)
      .count();
}

// Attack-pool generator: one FGSM plus one PGD sweep over the training
// seeds, with iteration-specific PGD start streams.
TestSuite generate_pool(const MlpModel& model, const LabeledDataset& data,
                        const RobotConfig& cfg, int iter) {
  AttackConfig fgsm_cfg = make_fgsm(cfg.epsilon, cfg.norm);
  AttackConfig pgd_cfg = make_pgd(cfg.epsilon, cfg.norm,
                                  cfg.rng_seed + 7919ULL * static_cast<uint64_t>(iter));
  TestSuite pool = attack_dataset(model, data, fgsm_cfg, {}, cfg.threads);
  TestSuite pgd_pool = attack_dataset(model, data, pgd_cfg, {}, cfg.threads);
  for (TestCase& c : pgd_pool.cases) pool.cases.push_back(std::move(c));
  return pool;
}

}  // namespace

std::string status_name(RobotStatus s) {
  switch (s) {
    case RobotStatus::kSatisfied: return "satisfied";
    case RobotStatus::kBudgetExhausted: return "budget_exhausted";
    case RobotStatus::kAccuracyFloorViolated: return "accuracy_floor_violated";
  }
  return "?";
}

void RobotConfig::validate() const {
  if (!(requirement_r > 0.0 && requirement_r <= 1.0)) {
    throw ConfigError("robot: requirement_r must be in (0, 1]");
  }
  if (max_iterations < 1) throw ConfigError("robot: max_iterations must be >= 1");
  if (accuracy_floor < 0.0 || accuracy_floor > 1.0) {
    throw ConfigError("robot: accuracy_floor must be in [0, 1]");
  }
  if (!(epsilon > 0.0f)) throw ConfigError("robot: epsilon must be positive");
}

TestSuite build_validation_suite(const MlpModel& model, const LabeledDataset& data,
                                 const std::vector<AttackConfig>& attack_cfgs,
                                 size_t n_each, uint64_t rng_seed, int threads) {
  if (attack_cfgs.empty()) throw ArgumentError("build_validation_suite: no attacks given");
  TestSuite d_v;
  d_v.input_dim = static_cast<uint32_t>(data.dim());
  d_v.num_classes = static_cast<uint16_t>(model.num_classes());
  for (size_t ai = 0; ai < attack_cfgs.size(); ++ai) {
    const AttackConfig& cfg = attack_cfgs[ai];
    cfg.validate();
    if (ai == 0) {
      d_v.norm = cfg.norm;
      d_v.epsilon = cfg.epsilon;
    }
    if (n_each == 0) continue;
    Rng rng = Rng::for_stream(rng_seed, ai);
    std::vector<size_t> picks =
        rng.sample_without_replacement(data.size(), std::min(n_each, data.size()));
    TestSuite part = attack_dataset(model, data, cfg, picks, threads);
    for (TestCase& c : part.cases) d_v.cases.push_back(std::move(c));
  }
  return d_v;
}

RobustnessReport empirical_robustness(const MlpModel& model, const TestSuite& d_v,
                                      int threads) {
  if (d_v.cases.empty()) throw ArgumentError("empirical_robustness: empty validation suite");
  const int64_t n = static_cast<int64_t>(d_v.cases.size());
  std::vector<uint8_t> correct(static_cast<size_t>(n), 0);
  parallel_for(n, threads, [&](int64_t i) {
    const TestCase& c = d_v.cases[static_cast<size_t>(i)];
    correct[static_cast<size_t>(i)] = predict(model, c.x_t) == c.ground_truth;
  });

  RobustnessReport report;
  report.n_adv = d_v.cases.size();
  std::map<std::string, std::pair<int64_t, int64_t>> buckets;  // hits, total
  int64_t hits = 0;
  for (int64_t i = 0; i < n; ++i) {
    const std::string& tag = d_v.cases[static_cast<size_t>(i)].source;
    auto& b = buckets[tag.empty() ? "suite" : tag];
    b.first += correct[static_cast<size_t>(i)];
    b.second += 1;
    hits += correct[static_cast<size_t>(i)];
  }
  report.er = static_cast<double>(hits) / static_cast<double>(n);
  for (const auto& [tag, b] : buckets) {
    report.per_attack[tag] = static_cast<double>(b.first) / static_cast<double>(b.second);
  }
  return report;
}

MlpModel retrain(const MlpModel& model, const LabeledDataset& base_data,
                 const TestSuite& selected, const TrainConfig& cfg) {
  if (selected.cases.empty()) {
    return train(model, base_data, cfg);
  }
  return train(model, base_data.concat(selected.as_dataset()), cfg);
}

RobotResult robot(const MlpModel& f0, const LabeledDataset& train_data,
                  const LabeledDataset& clean_eval, const TestSuite& d_v,
                  const RobotConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();

  RobotResult result;
  result.model = f0;
  MlpModel current = f0;
  LabeledDataset data = train_data;

  RobustnessReport report = empirical_robustness(f0, d_v, cfg.threads);
  report.clean_accuracy = accuracy(f0, clean_eval, cfg.threads);
  double best_er = report.er;
  result.history.push_back({0, report, 0, strategy_name(cfg.selection.strategy),
                            elapsed_ms(t0)});
  if (report.er >= cfg.requirement_r) {
    result.status = RobotStatus::kSatisfied;
    return result;
  }

  for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
    const auto iter_start = std::chrono::steady_clock::now();

    TestSuite pool;
    if (cfg.generator == Generator::kAttackPool) {
      pool = generate_pool(current, data, cfg, iter);
    } else {
      FuzzConfig fz = cfg.fuzz;
      fz.epsilon = cfg.epsilon;
      fz.norm = cfg.norm;
      fz.rng_seed = cfg.rng_seed + 104729ULL * static_cast<uint64_t>(iter);
      pool = fol_fuzz(current, data, fz, cfg.threads).cases;
    }

    TestSuite selected;
    if (!pool.cases.empty()) {
      pool = score_suite(current, std::move(pool), Norm::kL2, cfg.epsilon, cfg.threads);
      SelectionRequest req = cfg.selection;
      req.n = std::min(req.n, pool.size());
      req.rng_seed = cfg.selection.rng_seed + static_cast<uint64_t>(iter);
      selected = req.n > 0 ? select(pool, req) : pool.with_cases({});
    }

    // Cumulative augmentation: the selected cases join the training set
    // for this and every later iteration.
    if (!selected.cases.empty()) {
      data = data.concat(selected.as_dataset());
    }
    current = train(current, data, cfg.retrain);

    RobustnessReport r = empirical_robustness(current, d_v, cfg.threads);
    r.clean_accuracy = accuracy(current, clean_eval, cfg.threads);
    result.history.push_back({iter, r, selected.cases.size(),
                              strategy_name(cfg.selection.strategy),
                              elapsed_ms(iter_start)});

    if (r.er > best_er) {
      best_er = r.er;
      result.model = current;
    }
    if (*r.clean_accuracy < cfg.accuracy_floor) {
      result.status = RobotStatus::kAccuracyFloorViolated;
      return result;
    }
    if (r.er >= cfg.requirement_r) {
      result.status = RobotStatus::kSatisfied;
      return result;
    }
  }
  result.status = RobotStatus::kBudgetExhausted;
  return result;
}

}  // namespace robot
