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
#include "spinnet/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "spinnet/errors.hpp"

namespace spinnet {

std::string format_number(double value, int significant_digits) {
  if (value == 0.0) value = 0.0;  // folds -0 into 0
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*g", significant_digits, value);
  return buffer;
}

std::string trajectory_csv(const Trajectory& trajectory, const CsvOptions& options) {
  std::string out = "time";
  for (const auto& label : trajectory.basis_labels) out += ",p_" + label;
  if (options.include_amplitudes) {
    for (const auto& label : trajectory.basis_labels) out += ",re_" + label + ",im_" + label;
  }
  out += '\n';
  const auto dim = static_cast<Eigen::Index>(trajectory.basis_labels.size());
  for (std::size_t k = 0; k < trajectory.size(); ++k) {
    const auto row = static_cast<Eigen::Index>(k);
    out += format_number(trajectory.times[k], options.significant_digits);
    for (Eigen::Index j = 0; j < dim; ++j) {
      out += ',';
      out += format_number(trajectory.populations(row, j), options.significant_digits);
    }
    if (options.include_amplitudes) {
      for (Eigen::Index j = 0; j < dim; ++j) {
        const Complex a = trajectory.states(j, row);
        out += ',';
        out += format_number(a.real(), options.significant_digits);
        out += ',';
        out += format_number(a.imag(), options.significant_digits);
      }
    }
    out += '\n';
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
      throw Error("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
    }
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("cannot open '" + path.string() + "' for writing");
  file << text;
  file.flush();
  if (!file) throw Error("failed while writing '" + path.string() + "'");
}

void emit_trajectory_csv(const Trajectory& trajectory, const std::filesystem::path& path,
                         const CsvOptions& options) {
  write_text_file(path, trajectory_csv(trajectory, options));
}

std::string trajectory_json(const Trajectory& trajectory, const CsvOptions& options) {
  // Numbers go through format_number so JSON and CSV carry identical digits.
  auto column = [&](auto&& value_at) {
    std::string out = "[";
    for (std::size_t k = 0; k < trajectory.size(); ++k) {
      if (k) out += ',';
      out += format_number(value_at(static_cast<Eigen::Index>(k)), options.significant_digits);
    }
    return out + "]";
  };
  std::string out = "{\n  \"time\": ";
  out += column([&](Eigen::Index k) { return trajectory.times[static_cast<std::size_t>(k)]; });
  for (std::size_t j = 0; j < trajectory.basis_labels.size(); ++j) {
    const auto c = static_cast<Eigen::Index>(j);
    out += ",\n  " + nlohmann::json("p_" + trajectory.basis_labels[j]).dump() + ": ";
    out += column([&](Eigen::Index k) { return trajectory.populations(k, c); });
  }
  if (options.include_amplitudes) {
    for (std::size_t j = 0; j < trajectory.basis_labels.size(); ++j) {
      const auto c = static_cast<Eigen::Index>(j);
      out += ",\n  " + nlohmann::json("re_" + trajectory.basis_labels[j]).dump() + ": ";
      out += column([&](Eigen::Index k) { return trajectory.states(c, k).real(); });
      out += ",\n  " + nlohmann::json("im_" + trajectory.basis_labels[j]).dump() + ": ";
      out += column([&](Eigen::Index k) { return trajectory.states(c, k).imag(); });
    }
  }
  return out + "\n}\n";
}

ParsedCsv parse_csv(const std::string& text) {
  ParsedCsv parsed;
  std::istringstream in(text);
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  if (!std::getline(in, line)) return parsed;
  parsed.header = split(line);
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    std::vector<double> row;
    for (const auto& cell : split(line)) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw Error("csv line " + std::to_string(line_number) + ": bad number '" + cell + "'");
      }
    }
    if (row.size() != parsed.header.size()) {
      throw Error("csv line " + std::to_string(line_number) + ": expected " +
                  std::to_string(parsed.header.size()) + " cells");
    }
    parsed.rows.push_back(std::move(row));
  }
  return parsed;
}

std::string trajectory_svg(const Trajectory& trajectory, const std::vector<PlotSeries>& series,
                           const std::string& title) {
  constexpr double width = 640, height = 400, left = 60, right = 20, top = 40, bottom = 50;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  const double t_max = trajectory.times.empty() ? 1.0 : trajectory.times.back();
  auto x = [&](double t) { return left + plot_w * (t_max > 0 ? t / t_max : 0.0); };
  auto y = [&](double p) { return top + plot_h * (1.0 - std::clamp(p, 0.0, 1.0)); };
  static const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\">"
      << title << "</text>\n";
  svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\""
      << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int tick = 0; tick <= 4; ++tick) {
    const double p = tick / 4.0;
    svg << "<text x=\"" << left - 6 << "\" y=\"" << y(p) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << format_number(p, 3) << "</text>\n";
    const double t = t_max * tick / 4.0;
    svg << "<text x=\"" << x(t) << "\" y=\"" << top + plot_h + 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << format_number(t, 4) << "</text>\n";
  }
  svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 10
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">time</text>\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    const auto& line = series[s];
    svg << "<polyline fill=\"none\" stroke=\"" << colours[s % 5] << "\" stroke-width=\"1.2\"";
    if (line.dashed) svg << " stroke-dasharray=\"6,4\"";
    svg << " points=\"";
    for (std::size_t k = 0; k < trajectory.size(); ++k) {
      if (k) svg << ' ';
      svg << format_number(x(trajectory.times[k]), 6) << ','
          << format_number(y(trajectory.populations(static_cast<Eigen::Index>(k),
                                                    static_cast<Eigen::Index>(line.column))),
                           6);
    }
    svg << "\"/>\n";
    svg << "<text x=\"" << left + plot_w - 8 << "\" y=\"" << top + 16 + 14 * s
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\""
        << colours[s % 5] << "\">" << line.label << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace spinnet
