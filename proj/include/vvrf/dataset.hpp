#pragma once

#include "vvrf/common.hpp"
#include "vvrf/grid.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace vvrf {

// Paired input/output fields on a common grid plus a UTF-8 provenance
// footer (JSON echo of the generator config and seeds).
struct Dataset {
  Index p = 0;
  std::vector<GridFunction> inputs;
  std::vector<GridFunction> outputs;
  std::string provenance;

  Index sampleCount() const { return static_cast<Index>(inputs.size()); }
  void validate() const;
};

// Binary dataset format, little-endian:
//   magic "VVRF", version u32, p u32, n u64,
//   n records of 2*p float64 (input field then output field),
//   UTF-8 provenance footer running to end of file.
void writeDataset(const Dataset& data, const std::filesystem::path& path);
Dataset readDataset(const std::filesystem::path& path);

// Per-sample summary statistics (index, input/output L2 norms and means).
void writeDatasetSummaryCsv(const Dataset& data, const std::filesystem::path& path);

}  // namespace vvrf
