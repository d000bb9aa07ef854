#include "robotkit/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "robotkit/errors.hpp"

namespace robot {

namespace {

constexpr char kModelMagic[8] = {'R', 'O', 'B', 'O', 'T', 'M', 'D', 'L'};
constexpr char kSuiteMagic[8] = {'R', 'O', 'B', 'O', 'T', 'S', 'T', 'E'};
constexpr uint32_t kSuiteVersion = 1;
constexpr uint32_t kIdxImagesMagic = 0x00000803;
constexpr uint32_t kIdxLabelsMagic = 0x00000801;

std::vector<uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  in.seekg(0, std::ios::end);
  const std::streamoff size = in.tellg();
  in.seekg(0, std::ios::beg);
  std::vector<uint8_t> buf(static_cast<size_t>(size));
  if (size > 0) in.read(reinterpret_cast<char*>(buf.data()), size);
  if (!in) throw ParseError("error reading file: " + path);
  return buf;
}

// Sequential little-endian reader with truncation diagnostics.
struct Reader {
  const std::vector<uint8_t>& buf;
  size_t pos = 0;
  std::string name;

  const uint8_t* need(size_t n) {
    if (pos + n > buf.size()) {
      throw TruncatedFileError(name + ": expected " + std::to_string(pos + n) +
                               " bytes, file has only " + std::to_string(buf.size()));
    }
    const uint8_t* p = buf.data() + pos;
    pos += n;
    return p;
  }
  uint8_t u8() { return *need(1); }
  uint16_t u16le() {
    const uint8_t* p = need(2);
    return static_cast<uint16_t>(p[0] | (p[1] << 8));
  }
  uint32_t u32le() {
    const uint8_t* p = need(4);
    return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
           (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
  }
  uint32_t u32be() {
    const uint8_t* p = need(4);
    return (static_cast<uint32_t>(p[0]) << 24) | (static_cast<uint32_t>(p[1]) << 16) |
           (static_cast<uint32_t>(p[2]) << 8) | static_cast<uint32_t>(p[3]);
  }
  float f32le() {
    const uint32_t bits = u32le();
    float v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
  }
  void f32le_block(float* dst, size_t count) {
    const uint8_t* p = need(count * 4);
    for (size_t i = 0; i < count; ++i) {
      uint32_t bits = static_cast<uint32_t>(p[4 * i]) |
                      (static_cast<uint32_t>(p[4 * i + 1]) << 8) |
                      (static_cast<uint32_t>(p[4 * i + 2]) << 16) |
                      (static_cast<uint32_t>(p[4 * i + 3]) << 24);
      std::memcpy(dst + i, &bits, sizeof(float));
    }
  }
};

struct Writer {
  std::ofstream out;

  explicit Writer(const std::string& path) : out(path, std::ios::binary) {
    if (!out) throw ParseError("cannot open file for writing: " + path);
  }
  void bytes(const void* p, size_t n) { out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n)); }
  void u8(uint8_t v) { bytes(&v, 1); }
  void u16le(uint16_t v) {
    const uint8_t b[2] = {static_cast<uint8_t>(v), static_cast<uint8_t>(v >> 8)};
    bytes(b, 2);
  }
  void u32le(uint32_t v) {
    const uint8_t b[4] = {static_cast<uint8_t>(v), static_cast<uint8_t>(v >> 8),
                          static_cast<uint8_t>(v >> 16), static_cast<uint8_t>(v >> 24)};
    bytes(b, 4);
  }
  void u32be(uint32_t v) {
    const uint8_t b[4] = {static_cast<uint8_t>(v >> 24), static_cast<uint8_t>(v >> 16),
                          static_cast<uint8_t>(v >> 8), static_cast<uint8_t>(v)};
    bytes(b, 4);
  }
  void f32le(float v) {
    uint32_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    u32le(bits);
  }
  void f32le_block(const float* src, size_t count) {
    for (size_t i = 0; i < count; ++i) f32le(src[i]);
  }
  void close(const std::string& path) {
    out.flush();
    if (!out) throw ParseError("error writing file: " + path);
  }
};

std::string activation_name(Activation a) {
  return a == Activation::kRelu ? "relu" : "identity";
}

Activation activation_from(const std::string& s, const std::string& path) {
  if (s == "relu") return Activation::kRelu;
  if (s == "identity") return Activation::kIdentity;
  throw ParseError(path + ": unknown activation '" + s + "'");
}

}  // namespace

LabeledDataset load_idx(const std::string& images_path, const std::string& labels_path) {
  const std::vector<uint8_t> ibuf = read_file(images_path);
  Reader ir{ibuf, 0, images_path};
  const uint32_t imagic = ir.u32be();
  if (imagic != kIdxImagesMagic) {
    throw BadMagicError(images_path + ": bad IDX image magic " + std::to_string(imagic));
  }
  const uint32_t n = ir.u32be();
  const uint32_t rows = ir.u32be();
  const uint32_t cols = ir.u32be();
  const size_t pixels = static_cast<size_t>(n) * rows * cols;
  const uint8_t* pix = ir.need(pixels);

  const std::vector<uint8_t> lbuf = read_file(labels_path);
  Reader lr{lbuf, 0, labels_path};
  const uint32_t lmagic = lr.u32be();
  if (lmagic != kIdxLabelsMagic) {
    throw BadMagicError(labels_path + ": bad IDX label magic " + std::to_string(lmagic));
  }
  const uint32_t n_labels = lr.u32be();
  const uint8_t* lab = lr.need(n_labels);
  if (n != n_labels) {
    throw CountMismatchError("IDX pair holds " + std::to_string(n) + " images but " +
                             std::to_string(n_labels) + " labels");
  }

  std::vector<float> data(pixels);
  for (size_t i = 0; i < pixels; ++i) data[i] = static_cast<float>(pix[i]) / 255.0f;
  std::vector<uint16_t> labels(lab, lab + n_labels);
  int num_classes = 2;
  for (uint16_t y : labels) num_classes = std::max(num_classes, y + 1);
  return LabeledDataset(
      Tensor({static_cast<int>(n), static_cast<int>(rows * cols)}, std::move(data)),
      std::move(labels), num_classes);
}

void save_idx(const LabeledDataset& data, const std::string& images_path,
              const std::string& labels_path, int rows, int cols) {
  if (rows * cols != data.dim()) throw ShapeError("save_idx: rows*cols must equal dim");
  Writer iw(images_path);
  iw.u32be(kIdxImagesMagic);
  iw.u32be(static_cast<uint32_t>(data.size()));
  iw.u32be(static_cast<uint32_t>(rows));
  iw.u32be(static_cast<uint32_t>(cols));
  for (int64_t i = 0; i < data.inputs.numel(); ++i) {
    iw.u8(static_cast<uint8_t>(std::lround(data.inputs[i] * 255.0f)));
  }
  iw.close(images_path);

  Writer lw(labels_path);
  lw.u32be(kIdxLabelsMagic);
  lw.u32be(static_cast<uint32_t>(data.size()));
  for (uint16_t y : data.labels) lw.u8(static_cast<uint8_t>(y));
  lw.close(labels_path);
}

LabeledDataset load_csv(const std::string& path, int num_classes) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::vector<float> values;
  std::vector<uint16_t> labels;
  int dim = -1;
  std::string line;
  size_t lineno = 0;
  float max_value = 0.0f;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<float> row;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (p < end) {
      const char* cell_end = std::find(p, end, ',');
      float v = 0.0f;
      auto [ptr, ec] = std::from_chars(p, cell_end, v);
      if (ec != std::errc() || ptr != cell_end) {
        throw ParseError(path + ":" + std::to_string(lineno) + ": non-numeric cell '" +
                         std::string(p, cell_end) + "'");
      }
      row.push_back(v);
      p = cell_end + (cell_end < end ? 1 : 0);
    }
    if (row.size() < 2) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": row needs a label and data");
    }
    const float label_f = row[0];
    if (label_f < 0.0f || label_f != std::floor(label_f)) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": label must be a non-negative integer");
    }
    const int label = static_cast<int>(label_f);
    if (label >= num_classes) {
      throw IndexError(path + ":" + std::to_string(lineno) + ": label " +
                       std::to_string(label) + " out of range for " +
                       std::to_string(num_classes) + " classes");
    }
    if (dim == -1) {
      dim = static_cast<int>(row.size()) - 1;
    } else if (static_cast<int>(row.size()) - 1 != dim) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": inconsistent row width");
    }
    labels.push_back(static_cast<uint16_t>(label));
    for (size_t i = 1; i < row.size(); ++i) {
      values.push_back(row[i]);
      max_value = std::max(max_value, row[i]);
    }
  }
  if (labels.empty()) throw ParseError(path + ": no data rows");
  if (max_value > 1.0f) {
    for (float& v : values) v /= 255.0f;
  }
  const int rows = static_cast<int>(labels.size());
  return LabeledDataset(Tensor({rows, dim}, std::move(values)), std::move(labels),
                        num_classes);
}

void save_checkpoint(const MlpModel& model, const std::string& path) {
  nlohmann::json header;
  header["input_dim"] = model.input_dim();
  header["num_classes"] = model.num_classes();
  nlohmann::json layers = nlohmann::json::array();
  for (const DenseLayer& l : model.layers()) {
    layers.push_back({{"in", l.in()}, {"out", l.out()}, {"activation", activation_name(l.activation)}});
  }
  header["layers"] = layers;
  const std::string hs = header.dump();

  Writer w(path);
  w.bytes(kModelMagic, sizeof kModelMagic);
  w.u32le(static_cast<uint32_t>(hs.size()));
  w.bytes(hs.data(), hs.size());
  for (const DenseLayer& l : model.layers()) {
    w.f32le_block(l.weights.data(), static_cast<size_t>(l.weights.numel()));
    w.f32le_block(l.bias.data(), static_cast<size_t>(l.bias.numel()));
  }
  w.close(path);
}

MlpModel load_checkpoint(const std::string& path) {
  const std::vector<uint8_t> buf = read_file(path);
  Reader r{buf, 0, path};
  const uint8_t* magic = r.need(sizeof kModelMagic);
  if (std::memcmp(magic, kModelMagic, sizeof kModelMagic) != 0) {
    throw BadMagicError(path + ": not a model checkpoint (bad magic)");
  }
  const uint32_t hlen = r.u32le();
  const uint8_t* hp = r.need(hlen);
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(hp, hp + hlen);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": bad checkpoint header: " + e.what());
  }

  std::vector<DenseLayer> layers;
  for (const auto& lj : header.at("layers")) {
    const int in = lj.at("in").get<int>();
    const int out = lj.at("out").get<int>();
    if (in <= 0 || out <= 0) throw ParseError(path + ": non-positive layer dims");
    DenseLayer layer;
    std::vector<float> w(static_cast<size_t>(in) * out);
    r.f32le_block(w.data(), w.size());
    layer.weights = Tensor::matrix(out, in, std::move(w));
    std::vector<float> b(static_cast<size_t>(out));
    r.f32le_block(b.data(), b.size());
    layer.bias = Tensor::vector(std::move(b));
    layer.activation = activation_from(lj.at("activation").get<std::string>(), path);
    layers.push_back(std::move(layer));
  }
  MlpModel model(std::move(layers));
  if (model.input_dim() != header.at("input_dim").get<int>() ||
      model.num_classes() != header.at("num_classes").get<int>()) {
    throw ParseError(path + ": header dims disagree with layer shapes");
  }
  return model;
}

void save_suite(const TestSuite& suite, const std::string& path) {
  const bool scored = suite.scored();
  uint8_t metric_variant = 0;
  if (scored) {
    metric_variant = suite.cases[0].metrics->norm == Norm::kL2 ? 1 : 2;
  }
  Writer w(path);
  w.bytes(kSuiteMagic, sizeof kSuiteMagic);
  w.u32le(kSuiteVersion);
  w.u8(static_cast<uint8_t>(suite.norm));
  w.f32le(suite.epsilon);
  w.u8(metric_variant);
  w.u32le(static_cast<uint32_t>(suite.cases.size()));
  w.u32le(suite.input_dim);
  w.u32le(suite.num_classes);
  for (const TestCase& c : suite.cases) {
    if (c.x_t.numel() != static_cast<int64_t>(suite.input_dim) ||
        c.x_0.numel() != static_cast<int64_t>(suite.input_dim)) {
      throw ShapeError("save_suite: case length does not match suite input_dim");
    }
    w.u32le(c.seed_index);
    w.u16le(c.ground_truth);
    w.u16le(c.predicted);
    w.f32le(scored ? c.metrics->fol : 0.0f);
    w.f32le(scored ? c.metrics->zol : 0.0f);
    w.f32le(scored ? c.metrics->gini : 0.0f);
    w.f32le_block(c.x_t.data(), suite.input_dim);
    w.f32le_block(c.x_0.data(), suite.input_dim);
  }
  w.close(path);
}

TestSuite load_suite(const std::string& path) {
  const std::vector<uint8_t> buf = read_file(path);
  Reader r{buf, 0, path};
  const uint8_t* magic = r.need(sizeof kSuiteMagic);
  if (std::memcmp(magic, kSuiteMagic, sizeof kSuiteMagic) != 0) {
    throw BadMagicError(path + ": not a test-suite archive (bad magic)");
  }
  const uint32_t version = r.u32le();
  if (version != kSuiteVersion) {
    throw ParseError(path + ": unsupported suite version " + std::to_string(version));
  }
  TestSuite suite;
  const uint8_t norm_byte = r.u8();
  if (norm_byte > 1) throw ParseError(path + ": bad norm byte");
  suite.norm = static_cast<Norm>(norm_byte);
  suite.epsilon = r.f32le();
  const uint8_t metric_variant = r.u8();
  if (metric_variant > 2) throw ParseError(path + ": bad metric variant");
  const uint32_t count = r.u32le();
  suite.input_dim = r.u32le();
  suite.num_classes = static_cast<uint16_t>(r.u32le());

  const int d = static_cast<int>(suite.input_dim);
  suite.cases.reserve(count);
  for (uint32_t i = 0; i < count; ++i) {
    TestCase c;
    c.seed_index = r.u32le();
    c.ground_truth = r.u16le();
    c.predicted = r.u16le();
    const float fol = r.f32le();
    const float zol_v = r.f32le();
    const float gini_v = r.f32le();
    std::vector<float> xt(static_cast<size_t>(d));
    r.f32le_block(xt.data(), xt.size());
    c.x_t = Tensor::vector(std::move(xt));
    std::vector<float> x0(static_cast<size_t>(d));
    r.f32le_block(x0.data(), x0.size());
    c.x_0 = Tensor::vector(std::move(x0));
    if (metric_variant != 0) {
      MetricRecord m;
      m.fol = fol;
      m.zol = zol_v;
      m.gini = gini_v;
      m.norm = metric_variant == 1 ? Norm::kL2 : Norm::kLinf;
      m.epsilon = suite.epsilon;
      c.metrics = m;
    }
    suite.cases.push_back(std::move(c));
  }
  if (r.pos != buf.size()) {
    throw ParseError(path + ": trailing bytes after the last record");
  }
  return suite;
}

}  // namespace robot
