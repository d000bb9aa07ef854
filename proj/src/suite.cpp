#include "robotkit/suite.hpp"

#include <cmath>

#include "robotkit/errors.hpp"

namespace robot {

std::string norm_name(Norm n) { return n == Norm::kLinf ? "linf" : "l2"; }

Norm norm_from_name(const std::string& name) {
  if (name == "linf") return Norm::kLinf;
  if (name == "l2") return Norm::kL2;
  throw ConfigError("unknown norm '" + name + "' (expected linf or l2)");
}

double distance(const Tensor& a, const Tensor& b, Norm norm) {
  if (a.numel() != b.numel()) throw ShapeError("distance: length mismatch");
  if (norm == Norm::kLinf) {
    double mx = 0.0;
    for (int64_t i = 0; i < a.numel(); ++i) {
      mx = std::max(mx, std::abs(static_cast<double>(a[i]) - b[i]));
    }
    return mx;
  }
  double sq = 0.0;
  for (int64_t i = 0; i < a.numel(); ++i) {
    const double d = static_cast<double>(a[i]) - b[i];
    sq += d * d;
  }
  return std::sqrt(sq);
}

bool TestSuite::scored() const {
  if (cases.empty()) return false;
  for (const TestCase& c : cases) {
    if (!c.metrics.has_value()) return false;
  }
  return true;
}

LabeledDataset TestSuite::as_dataset() const {
  if (cases.empty()) throw ArgumentError("as_dataset: empty suite");
  const int d = static_cast<int>(input_dim);
  std::vector<float> data;
  data.reserve(cases.size() * static_cast<size_t>(d));
  std::vector<uint16_t> labels;
  labels.reserve(cases.size());
  for (const TestCase& c : cases) {
    data.insert(data.end(), c.x_t.vec().begin(), c.x_t.vec().end());
    labels.push_back(c.ground_truth);
  }
  return LabeledDataset(Tensor({static_cast<int>(cases.size()), d}, std::move(data)),
                        std::move(labels), num_classes);
}

TestSuite TestSuite::with_cases(std::vector<TestCase> selected) const {
  TestSuite out = *this;
  out.cases = std::move(selected);
  return out;
}

}  // namespace robot
