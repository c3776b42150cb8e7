// Copyright 2026 The spinnet Authors
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
#include <vector>

#include "spinnet/dynamics.hpp"

namespace spinnet {

struct CsvOptions {
  bool include_amplitudes = false;
  int significant_digits = 12;
};

/// Header "time,p_<label>..." (plus "re_<label>,im_<label>" pairs when
/// amplitudes are requested), one row per time point.
std::string trajectory_csv(const Trajectory& trajectory, const CsvOptions& options = {});
void emit_trajectory_csv(const Trajectory& trajectory, const std::filesystem::path& path,
                         const CsvOptions& options = {});

/// Same field names as the CSV: {"time": [...], "p_<label>": [...], ...}.
std::string trajectory_json(const Trajectory& trajectory, const CsvOptions& options = {});

struct ParsedCsv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
ParsedCsv parse_csv(const std::string& text);

/// Fixed-format decimal with the given number of significant digits.
std::string format_number(double value, int significant_digits = 12);

struct PlotSeries {
  std::string label;
  std::size_t column = 0;
  bool dashed = false;
};

/// Population-vs-time curves as a standalone SVG document.
std::string trajectory_svg(const Trajectory& trajectory, const std::vector<PlotSeries>& series,
                           const std::string& title);

/// Writes text to a file, creating parent directories. Errors name the path.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace spinnet
