#include "robotkit/metrics.hpp"

#include <cmath>
#include <string>

#include "robotkit/errors.hpp"
#include "robotkit/gradient.hpp"
#include "robotkit/threading.hpp"

namespace robot {

double zol(const MlpModel& model, const Tensor& x_t, int y) {
  return cross_entropy(softmax(forward(model, x_t)), y);
}

double fol_l2(const MlpModel& model, const Tensor& x_t, int y, double epsilon) {
  if (!(epsilon > 0.0)) throw ArgumentError("fol_l2: epsilon must be positive");
  const std::vector<double> g = input_gradient_f64(model, x_t, y);
  double sq = 0.0;
  for (double v : g) sq += v * v;
  return epsilon * std::sqrt(sq);
}

double fol_linf(const MlpModel& model, const Tensor& x_t, const Tensor& x_0, int y,
                double epsilon) {
  if (!(epsilon > 0.0)) throw ArgumentError("fol_linf: epsilon must be positive");
  if (x_0.empty()) throw ArgumentError("fol_linf: seed x_0 is required");
  if (x_0.numel() != x_t.numel()) throw ShapeError("fol_linf: seed/test length mismatch");
  const double drift = distance(x_t, x_0, Norm::kLinf);
  if (drift > epsilon + 1e-6) {
    throw ArgumentError("fol_linf: test case drifted " + std::to_string(drift) +
                        " from its seed, outside the epsilon ball " +
                        std::to_string(epsilon));
  }
  const std::vector<double> g = input_gradient_f64(model, x_t, y);
  double l1 = 0.0;
  double inner = 0.0;
  for (size_t i = 0; i < g.size(); ++i) {
    l1 += std::abs(g[i]);
    inner += (static_cast<double>(x_t[static_cast<int64_t>(i)]) -
              x_0[static_cast<int64_t>(i)]) * g[i];
  }
  return epsilon * l1 - inner;
}

double gini(const Tensor& probs) {
  double sq = 0.0;
  for (int64_t i = 0; i < probs.numel(); ++i) {
    sq += static_cast<double>(probs[i]) * probs[i];
  }
  return 1.0 - sq;
}

TestSuite score_suite(const MlpModel& model, TestSuite suite, Norm norm, double epsilon,
                      int threads) {
  if (norm == Norm::kLinf) {
    for (const TestCase& c : suite.cases) {
      if (c.x_0.empty()) {
        throw ArgumentError("score_suite: Linf scoring needs every case's seed x_0");
      }
    }
  }
  parallel_for(static_cast<int64_t>(suite.cases.size()), threads, [&](int64_t i) {
    TestCase& c = suite.cases[static_cast<size_t>(i)];
    MetricRecord r;
    r.norm = norm;
    r.epsilon = static_cast<float>(epsilon);
    r.zol = static_cast<float>(zol(model, c.x_t, c.ground_truth));
    const double f = (norm == Norm::kL2)
                         ? fol_l2(model, c.x_t, c.ground_truth, epsilon)
                         : fol_linf(model, c.x_t, c.x_0, c.ground_truth, epsilon);
    r.fol = static_cast<float>(std::max(0.0, f));
    r.gini = static_cast<float>(gini(softmax(forward(model, c.x_t))));
    c.predicted = static_cast<uint16_t>(predict(model, c.x_t));
    c.metrics = r;
  });
  return suite;
}

}  // namespace robot
