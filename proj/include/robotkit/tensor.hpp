#pragma once

#include <cstdint>
#include <vector>

namespace robot {

// Shape-tagged flat array of 32-bit floats, row-major. The single numeric
// carrier for inputs, gradients, weights and biases.
class Tensor {
 public:
  Tensor() = default;
  // Zero-initialized tensor of the given shape.
  explicit Tensor(std::vector<int> shape);
  Tensor(std::vector<int> shape, std::vector<float> data);

  static Tensor vector(std::vector<float> data);
  static Tensor matrix(int rows, int cols, std::vector<float> data);

  const std::vector<int>& shape() const { return shape_; }
  int64_t numel() const { return static_cast<int64_t>(data_.size()); }
  bool empty() const { return data_.empty(); }

  float* data() { return data_.data(); }
  const float* data() const { return data_.data(); }
  std::vector<float>& vec() { return data_; }
  const std::vector<float>& vec() const { return data_; }

  float operator[](int64_t i) const { return data_[static_cast<size_t>(i)]; }
  float& operator[](int64_t i) { return data_[static_cast<size_t>(i)]; }

  // Row-major 2-D access; valid only for rank-2 tensors.
  float at(int r, int c) const { return data_[static_cast<size_t>(r) * shape_[1] + c]; }
  float& at(int r, int c) { return data_[static_cast<size_t>(r) * shape_[1] + c]; }

  int dim(int i) const { return shape_[static_cast<size_t>(i)]; }
  int rank() const { return static_cast<int>(shape_.size()); }

  bool all_finite() const;
  // Throws ShapeError naming `what` if any entry is NaN/Inf.
  void ensure_finite(const char* what) const;
  // Bit-level equality (shape and payload).
  bool same_bits(const Tensor& other) const;

 private:
  std::vector<int> shape_;
  std::vector<float> data_;
};

}  // namespace robot
