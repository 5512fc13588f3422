// Copyright 2026 The bellstab Authors
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

#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "bellstab/bellstab.h"

namespace bellstab::cli {

/// Shortest form that survives a text round trip to ~1e-15 relative.
std::string format_number(double v);

std::string time_series_csv(const std::vector<bs_record>& records);
std::vector<bs_record> parse_time_series_csv(const std::string& text);

struct SweepCell {
  double nbar;
  double omega_ratio;
  bool ok;
  double fidelity;
  double chsh;
};

std::string sweep_csv(const std::vector<SweepCell>& cells);
std::string truncation_csv(const std::vector<bs_truncation_row>& rows);

using SummaryLines = std::vector<std::pair<std::string, std::string>>;
std::string summary_text(const SummaryLines& lines);

std::string time_series_svg(const std::vector<bs_record>& records);
std::string sweep_svg(const std::vector<double>& nbar, const std::vector<double>& omega_ratio,
                      const std::vector<SweepCell>& cells);

/// Stages files and moves them into place together. If any write or rename
/// fails, everything this batch produced is removed.
class OutputBatch {
 public:
  explicit OutputBatch(std::filesystem::path dir);
  void add(std::string name, std::string content);
  std::vector<std::filesystem::path> commit();

 private:
  std::filesystem::path dir_;
  std::vector<std::pair<std::string, std::string>> files_;
};

}  // namespace bellstab::cli
