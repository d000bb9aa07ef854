// Writes a synthetic digits-like dataset as an IDX image/label pair, so the
// toolkit can be exercised end to end without external data.

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "robotkit/errors.hpp"
#include "robotkit/io.hpp"
#include "robotkit/synth.hpp"

int main(int argc, char** argv) {
  CLI::App app{"synthetic IDX dataset generator"};
  size_t count = 5000;
  uint64_t seed = 1;
  uint64_t offset = 0;
  std::string images = "images-idx3-ubyte";
  std::string labels = "labels-idx1-ubyte";
  app.add_option("--n", count, "number of samples")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "prototype + sampling seed");
  app.add_option("--sample-offset", offset,
                 "sample stream offset (disjoint ranges give disjoint splits)");
  app.add_option("--images", images, "output IDX image file");
  app.add_option("--labels", labels, "output IDX label file");
  CLI11_PARSE(app, argc, argv);

  try {
    robot::LabeledDataset data = robot::make_synthetic_digits(count, seed, offset);
    robot::save_idx(data, images, labels, 28, 28);
    std::cout << "wrote " << count << " samples to " << images << " / " << labels << "\n";
  } catch (const robot::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
