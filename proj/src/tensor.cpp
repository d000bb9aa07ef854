#include "robotkit/tensor.hpp"

#include <cmath>
#include <cstring>
#include <string>

#include "robotkit/errors.hpp"

namespace robot {

namespace {

int64_t checked_numel(const std::vector<int>& shape) {
  if (shape.empty()) throw ShapeError("tensor shape must have at least one dimension");
  int64_t n = 1;
  for (int d : shape) {
    if (d <= 0) throw ShapeError("tensor dimensions must be positive, got " + std::to_string(d));
    n *= d;
  }
  return n;
}

}  // namespace

Tensor::Tensor(std::vector<int> shape) : shape_(std::move(shape)) {
  data_.assign(static_cast<size_t>(checked_numel(shape_)), 0.0f);
}

Tensor::Tensor(std::vector<int> shape, std::vector<float> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (checked_numel(shape_) != static_cast<int64_t>(data_.size())) {
    throw ShapeError("tensor data length " + std::to_string(data_.size()) +
                     " does not match shape product");
  }
}

Tensor Tensor::vector(std::vector<float> data) {
  const int n = static_cast<int>(data.size());
  return Tensor({n}, std::move(data));
}

Tensor Tensor::matrix(int rows, int cols, std::vector<float> data) {
  return Tensor({rows, cols}, std::move(data));
}

bool Tensor::all_finite() const {
  for (float v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void Tensor::ensure_finite(const char* what) const {
  if (!all_finite()) {
    throw ShapeError(std::string(what) + ": tensor contains NaN or Inf");
  }
}

bool Tensor::same_bits(const Tensor& other) const {
  if (shape_ != other.shape_) return false;
  if (data_.size() != other.data_.size()) return false;
  if (data_.empty()) return true;
  return std::memcmp(data_.data(), other.data_.data(),
                     data_.size() * sizeof(float)) == 0;
}

}  // namespace robot
