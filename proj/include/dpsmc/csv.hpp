// Copyright 2026 The dpsmc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPSMC_CSV_HPP
#define DPSMC_CSV_HPP

#include <filesystem>
#include <string>
#include <vector>

namespace dpsmc {

/// Full-precision decimal rendering of a double (%.17g).
std::string format_full(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Column index for a header name; throws IoError if absent.
  std::size_t column(const std::string& name) const;
};

/// Reads a numeric CSV with a header line. Lines starting with '#' are
/// skipped. Throws IoError on missing files or malformed numbers.
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace dpsmc

#endif  // DPSMC_CSV_HPP
