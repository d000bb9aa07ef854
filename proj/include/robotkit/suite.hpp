#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "robotkit/dataset.hpp"
#include "robotkit/tensor.hpp"

namespace robot {

enum class Norm : uint8_t { kLinf = 0, kL2 = 1 };

std::string norm_name(Norm n);
Norm norm_from_name(const std::string& name);

// Distance between two equal-length vectors under the given norm.
double distance(const Tensor& a, const Tensor& b, Norm norm);

// Loss-based scores of one test case.
struct MetricRecord {
  float zol = 0.0f;
  float fol = 0.0f;
  float gini = 0.0f;
  Norm norm = Norm::kL2;
  float epsilon = 0.0f;
};

// A generated test input together with the seed it was perturbed from.
struct TestCase {
  uint32_t seed_index = 0;   // index into the originating dataset
  uint16_t ground_truth = 0; // seed's true label
  uint16_t predicted = 0;    // model label on x_t when generated/scored
  Tensor x_t;                // the test input
  Tensor x_0;                // the seed input
  std::optional<MetricRecord> metrics;
  std::string source;        // generator tag ("fgsm", "pgd", "fuzz"); not persisted
};

// Ordered collection of test cases sharing one ball norm and radius.
struct TestSuite {
  Norm norm = Norm::kLinf;
  float epsilon = 0.0f;
  uint32_t input_dim = 0;
  uint16_t num_classes = 0;
  std::vector<TestCase> cases;

  size_t size() const { return cases.size(); }
  bool scored() const;

  // Inputs + ground-truth labels as a dataset (for retraining).
  LabeledDataset as_dataset() const;
  // Suite with the same header and the given cases.
  TestSuite with_cases(std::vector<TestCase> selected) const;
};

}  // namespace robot
