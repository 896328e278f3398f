#include "vvrf/dataset.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

namespace vvrf {

namespace {

constexpr char kMagic[4] = {'V', 'V', 'R', 'F'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void writeScalar(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T readScalar(std::istream& in, const std::string& what) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw IoError("dataset: truncated file while reading " + what);
  return value;
}

}  // namespace

void Dataset::validate() const {
  if (inputs.size() != outputs.size())
    throw DimensionError("Dataset: input/output counts differ");
  for (const auto& f : inputs)
    if (f.size() != p) throw DimensionError("Dataset: input grid size mismatch");
  for (const auto& f : outputs)
    if (f.size() != p) throw DimensionError("Dataset: output grid size mismatch");
}

void writeDataset(const Dataset& data, const std::filesystem::path& path) {
  data.validate();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("dataset: cannot open " + path.string() + " for writing");
  out.write(kMagic, 4);
  writeScalar<std::uint32_t>(out, kVersion);
  writeScalar<std::uint32_t>(out, static_cast<std::uint32_t>(data.p));
  writeScalar<std::uint64_t>(out, static_cast<std::uint64_t>(data.sampleCount()));
  for (Index i = 0; i < data.sampleCount(); ++i) {
    out.write(reinterpret_cast<const char*>(data.inputs[i].values().data()),
              sizeof(double) * data.p);
    out.write(reinterpret_cast<const char*>(data.outputs[i].values().data()),
              sizeof(double) * data.p);
  }
  out.write(data.provenance.data(), static_cast<std::streamsize>(data.provenance.size()));
  if (!out) throw IoError("dataset: write failed for " + path.string());
}

Dataset readDataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("dataset: cannot open " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw IoError("dataset: bad magic in " + path.string());
  const auto version = readScalar<std::uint32_t>(in, "version");
  if (version != kVersion)
    throw IoError("dataset: unsupported version " + std::to_string(version));
  Dataset data;
  data.p = readScalar<std::uint32_t>(in, "grid size");
  const auto n = readScalar<std::uint64_t>(in, "sample count");
  data.inputs.reserve(n);
  data.outputs.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    Vector u(data.p), y(data.p);
    in.read(reinterpret_cast<char*>(u.data()), sizeof(double) * data.p);
    in.read(reinterpret_cast<char*>(y.data()), sizeof(double) * data.p);
    if (!in) throw IoError("dataset: truncated record " + std::to_string(i));
    data.inputs.emplace_back(std::move(u));
    data.outputs.emplace_back(std::move(y));
  }
  std::ostringstream footer;
  footer << in.rdbuf();
  data.provenance = footer.str();
  return data;
}

void writeDatasetSummaryCsv(const Dataset& data, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("dataset summary: cannot open " + path.string());
  out << "index,input_l2_norm_sq,output_l2_norm_sq,input_mean,output_mean\n";
  for (Index i = 0; i < data.sampleCount(); ++i) {
    out << i << ',' << l2NormSq(data.inputs[i]) << ',' << l2NormSq(data.outputs[i]) << ','
        << data.inputs[i].mean() << ',' << data.outputs[i].mean() << '\n';
  }
  if (!out) throw IoError("dataset summary: write failed for " + path.string());
}

}  // namespace vvrf
