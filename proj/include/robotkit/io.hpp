#pragma once

#include <string>

#include "robotkit/dataset.hpp"
#include "robotkit/model.hpp"
#include "robotkit/suite.hpp"

namespace robot {

// IDX image/label pair (big-endian magic + dims, unsigned byte payload).
// Pixels scale to [0,1] by /255; image and label counts must agree.
LabeledDataset load_idx(const std::string& images_path, const std::string& labels_path);

// Writes a dataset as an IDX pair (inverse of load_idx for byte pixels).
void save_idx(const LabeledDataset& data, const std::string& images_path,
              const std::string& labels_path, int rows, int cols);

// Label-first CSV rows: label,v1,...,vd. Values with max > 1 are treated as
// raw 0-255 and scaled; values already in [0,1] pass through.
LabeledDataset load_csv(const std::string& path, int num_classes);

// Model checkpoint: "ROBOTMDL" magic, length-prefixed JSON header, then each
// layer's weights and bias as little-endian f32, row-major, in layer order.
// Round-trips are bit-exact.
void save_checkpoint(const MlpModel& model, const std::string& path);
MlpModel load_checkpoint(const std::string& path);

// Test-suite archive: "ROBOTSTE" magic, fixed-width little-endian header and
// records (seed_index, labels, scores, x_t, x_0). Round-trips are bit-exact.
void save_suite(const TestSuite& suite, const std::string& path);
TestSuite load_suite(const std::string& path);

}  // namespace robot
