#include "robotkit/synth.hpp"

#include <cmath>
#include <vector>

#include "robotkit/errors.hpp"
#include "robotkit/rng.hpp"

namespace robot {

namespace {

struct Blob {
  double cy, cx, sigma, amplitude;
};

// GF(4) multiplication with elements {0, 1, a, a+1} encoded as 0..3.
int gf4_mul(int p, int q) {
  static constexpr int table[4][4] = {
      {0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};
  return table[p][q];
}

// Classes are lines of the affine plane AG(2,4) drawn on a 4x4 grid of blob
// sites: two lines from the same parallel class are disjoint, any other two
// share exactly one site. Every class is geometrically equivalent, so no
// class is systematically easier to attack or rank than another. The seed
// permutes which sites the plane coordinates map to.
std::vector<std::vector<Blob>> class_prototypes(uint64_t seed, const SynthSpec& spec) {
  const int grid = 4;
  const double pitch_y = static_cast<double>(spec.rows) / (grid + 1);
  const double pitch_x = static_cast<double>(spec.cols) / (grid + 1);

  Rng rng = Rng::for_stream(seed, 0xB10B0000ULL);
  const std::vector<size_t> site_of = rng.permutation(static_cast<size_t>(grid * grid));

  std::vector<std::vector<int>> codes;
  for (int m = 0; m < 4 && static_cast<int>(codes.size()) < spec.num_classes; ++m) {
    for (int b = 0; b < 2 && static_cast<int>(codes.size()) < spec.num_classes; ++b) {
      std::vector<int> code;
      for (int x = 0; x < 4; ++x) code.push_back((gf4_mul(m, x) ^ b) * grid + x);
      codes.push_back(code);
    }
  }
  for (int b = 0; b < 2 && static_cast<int>(codes.size()) < spec.num_classes; ++b) {
    std::vector<int> code;  // vertical lines x = b
    for (int y = 0; y < 4; ++y) code.push_back(y * grid + b);
    codes.push_back(code);
  }

  std::vector<std::vector<Blob>> protos(static_cast<size_t>(spec.num_classes));
  for (int c = 0; c < spec.num_classes; ++c) {
    for (int cell : codes[static_cast<size_t>(c)]) {
      const int site = static_cast<int>(site_of[static_cast<size_t>(cell)]);
      Blob b;
      b.cy = pitch_y * (site / grid + 1);
      b.cx = pitch_x * (site % grid + 1);
      b.sigma = spec.blob_sigma;
      b.amplitude = 0.8;
      protos[static_cast<size_t>(c)].push_back(b);
    }
  }
  return protos;
}

}  // namespace

LabeledDataset make_synthetic_digits(size_t n, uint64_t seed, uint64_t sample_offset,
                                     const SynthSpec& spec) {
  if (n == 0) throw ArgumentError("make_synthetic_digits: n must be positive");
  const auto protos = class_prototypes(seed, spec);
  const int dim = spec.rows * spec.cols;
  std::vector<float> data(n * static_cast<size_t>(dim));
  std::vector<uint16_t> labels(n);

  for (size_t s = 0; s < n; ++s) {
    Rng rng = Rng::for_stream(seed, 0x5A3D1E00000000ULL + sample_offset + s);
    const int label = static_cast<int>(rng.uniform_int(static_cast<uint64_t>(spec.num_classes)));
    labels[s] = static_cast<uint16_t>(label);

    // Per-sample variation: global shift + per-blob jitter and amplitude
    // scale, so each class spans a thick manifold rather than one template.
    const double dy = rng.uniform(-static_cast<double>(spec.max_shift), spec.max_shift);
    const double dx = rng.uniform(-static_cast<double>(spec.max_shift), spec.max_shift);
    std::vector<Blob> blobs = protos[static_cast<size_t>(label)];
    for (Blob& b : blobs) {
      b.cy += dy + spec.jitter * rng.normal();
      b.cx += dx + spec.jitter * rng.normal();
    }

    float* img = data.data() + s * static_cast<size_t>(dim);
    for (int y = 0; y < spec.rows; ++y) {
      for (int x = 0; x < spec.cols; ++x) {
        double v = 0.0;
        for (const Blob& b : blobs) {
          const double ry = y - b.cy;
          const double rx = x - b.cx;
          v += b.amplitude * std::exp(-(ry * ry + rx * rx) / (2.0 * b.sigma * b.sigma));
        }
        v += spec.noise_sigma * rng.normal();
        img[y * spec.cols + x] = static_cast<float>(std::min(1.0, std::max(0.0, v)));
      }
    }
  }
  return LabeledDataset(Tensor({static_cast<int>(n), dim}, std::move(data)),
                        std::move(labels), spec.num_classes);
}

}  // namespace robot
