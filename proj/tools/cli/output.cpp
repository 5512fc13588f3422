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

#include "output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace bellstab::cli {

namespace fs = std::filesystem;

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

namespace {

constexpr const char* kTimeSeriesHeader = "t_us,fidelity,chsh,photon_number,p_gg,p_ee,p_odd";

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::runtime_error("malformed number '" + s + "'");
  return v;
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

// Perceptually ordered ramp from dark blue through teal to yellow.
std::string ramp(double x) {
  static constexpr double stops[][3] = {
      {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}};
  x = std::clamp(x, 0.0, 1.0) * 4.0;
  const int i = std::min(static_cast<int>(x), 3);
  const double f = x - i;
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                static_cast<int>(std::lround(stops[i][0] + f * (stops[i + 1][0] - stops[i][0]))),
                static_cast<int>(std::lround(stops[i][1] + f * (stops[i + 1][1] - stops[i][1]))),
                static_cast<int>(std::lround(stops[i][2] + f * (stops[i + 1][2] - stops[i][2]))));
  return buf;
}

struct Panel {
  double x0, y0, width, height;
  double tmin, tmax, vmin, vmax;
  double px(double t) const { return x0 + (t - tmin) / (tmax - tmin) * width; }
  double py(double v) const { return y0 + height - (v - vmin) / (vmax - vmin) * height; }
};

void draw_axes(std::ostringstream& svg, const Panel& p, const std::string& ylabel,
               const std::vector<double>& yticks, bool xlabels) {
  svg << "<rect x=\"" << p.x0 << "\" y=\"" << p.y0 << "\" width=\"" << p.width
      << "\" height=\"" << p.height << "\" fill=\"none\" stroke=\"#333\"/>\n";
  for (double v : yticks) {
    svg << "<text x=\"" << p.x0 - 6 << "\" y=\"" << fmt("%.1f", p.py(v) + 4)
        << "\" text-anchor=\"end\" font-size=\"11\">" << fmt("%g", v) << "</text>\n";
  }
  const int nticks = 5;
  for (int k = 0; k <= nticks; ++k) {
    const double t = p.tmin + (p.tmax - p.tmin) * k / nticks;
    const double x = p.px(t);
    svg << "<line x1=\"" << fmt("%.1f", x) << "\" y1=\"" << p.y0 + p.height << "\" x2=\""
        << fmt("%.1f", x) << "\" y2=\"" << p.y0 + p.height + 4 << "\" stroke=\"#333\"/>\n";
    if (xlabels) {
      svg << "<text x=\"" << fmt("%.1f", x) << "\" y=\"" << p.y0 + p.height + 16
          << "\" text-anchor=\"middle\" font-size=\"11\">" << fmt("%g", t) << "</text>\n";
    }
  }
  svg << "<text transform=\"translate(" << p.x0 - 42 << "," << p.y0 + p.height / 2
      << ") rotate(-90)\" text-anchor=\"middle\" font-size=\"12\">" << ylabel << "</text>\n";
}

void draw_series(std::ostringstream& svg, const Panel& p, const std::vector<bs_record>& records,
                 double bs_record::*field, const char* colour) {
  svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
  for (const auto& r : records) {
    svg << fmt("%.2f", p.px(r.t)) << "," << fmt("%.2f", p.py(r.*field)) << " ";
  }
  svg << "\"/>\n";
}

void draw_hline(std::ostringstream& svg, const Panel& p, double v, const char* colour,
                const char* dash, const std::string& label) {
  const double y = p.py(v);
  svg << "<line x1=\"" << p.x0 << "\" y1=\"" << fmt("%.2f", y) << "\" x2=\"" << p.x0 + p.width
      << "\" y2=\"" << fmt("%.2f", y) << "\" stroke=\"" << colour
      << "\" stroke-width=\"1.2\" stroke-dasharray=\"" << dash << "\"/>\n";
  svg << "<text x=\"" << p.x0 + p.width - 4 << "\" y=\"" << fmt("%.1f", y - 4)
      << "\" text-anchor=\"end\" font-size=\"10\" fill=\"" << colour << "\">" << label
      << "</text>\n";
}

}  // namespace

std::string time_series_csv(const std::vector<bs_record>& records) {
  std::string out = kTimeSeriesHeader;
  out += '\n';
  for (const auto& r : records) {
    out += format_number(r.t) + ',' + format_number(r.fidelity) + ',' + format_number(r.chsh) +
           ',' + format_number(r.photon_number) + ',' + format_number(r.p_gg) + ',' +
           format_number(r.p_ee) + ',' + format_number(r.p_odd) + '\n';
  }
  return out;
}

std::vector<bs_record> parse_time_series_csv(const std::string& text) {
  std::stringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kTimeSeriesHeader) {
    throw std::runtime_error("time-series CSV: unexpected header");
  }
  std::vector<bs_record> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 7) throw std::runtime_error("time-series CSV: expected 7 columns");
    out.push_back({to_double(f[0]), to_double(f[1]), to_double(f[2]), to_double(f[3]),
                   to_double(f[4]), to_double(f[5]), to_double(f[6])});
  }
  return out;
}

std::string sweep_csv(const std::vector<SweepCell>& cells) {
  std::string out = "nbar,omega_nbar_over_kappa,fidelity,chsh\n";
  for (const auto& c : cells) {
    out += format_number(c.nbar) + ',' + format_number(c.omega_ratio) + ',' +
           (c.ok ? format_number(c.fidelity) : "nan") + ',' +
           (c.ok ? format_number(c.chsh) : "nan") + '\n';
  }
  return out;
}

std::string truncation_csv(const std::vector<bs_truncation_row>& rows) {
  std::string out = "ncav,valid,below_recommended,fidelity,chsh,note\n";
  for (const auto& r : rows) {
    std::string note = r.note ? r.note : "";
    std::replace(note.begin(), note.end(), ',', ';');
    out += std::to_string(r.ncav) + ',' + (r.valid ? "1" : "0") + ',' +
           (r.below_recommended ? "1" : "0") + ',' +
           (r.valid ? format_number(r.fidelity) : "nan") + ',' +
           (r.valid ? format_number(r.chsh) : "nan") + ',' + note + '\n';
  }
  return out;
}

std::string summary_text(const SummaryLines& lines) {
  std::string out;
  for (const auto& [k, v] : lines) out += k + ": " + v + '\n';
  return out;
}

std::string time_series_svg(const std::vector<bs_record>& records) {
  const double tmax = records.empty() ? 1.0 : std::max(records.back().t, 1e-12);
  const Panel top{70, 30, 600, 200, 0.0, tmax, 0.0, 1.0};
  const Panel bottom{70, 270, 600, 200, 0.0, tmax, 0.0, 3.0};
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"520\" "
         "font-family=\"sans-serif\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  draw_axes(svg, top, "fidelity", {0.0, 0.25, 0.5, 0.75, 1.0}, false);
  draw_axes(svg, bottom, "CHSH", {0.0, 1.0, 2.0, 3.0}, true);
  draw_hline(svg, bottom, 2.0, "green", "8,3,2,3", "2");
  draw_hline(svg, bottom, 2.0 * std::sqrt(2.0), "#888", "4,3", "2&#8730;2");
  draw_series(svg, top, records, &bs_record::fidelity, "#1f4e9c");
  draw_series(svg, bottom, records, &bs_record::chsh, "#b2182b");
  svg << "<text x=\"" << bottom.x0 + bottom.width / 2 << "\" y=\"510\" text-anchor=\"middle\" "
         "font-size=\"12\">time (&#181;s)</text>\n</svg>\n";
  return svg.str();
}

std::string sweep_svg(const std::vector<double>& nbar, const std::vector<double>& omega_ratio,
                      const std::vector<SweepCell>& cells) {
  const double x0 = 80, y0 = 30, w = 520, h = 400;
  const double cw = w / std::max<std::size_t>(nbar.size(), 1);
  const double ch = h / std::max<std::size_t>(omega_ratio.size(), 1);
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"490\" "
         "font-family=\"sans-serif\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& c : cells) {
    const auto i = std::find(nbar.begin(), nbar.end(), c.nbar) - nbar.begin();
    const auto j = std::find(omega_ratio.begin(), omega_ratio.end(), c.omega_ratio) -
                   omega_ratio.begin();
    const double x = x0 + i * cw;
    const double y = y0 + h - (j + 1) * ch;
    svg << "<rect x=\"" << fmt("%.2f", x) << "\" y=\"" << fmt("%.2f", y) << "\" width=\""
        << fmt("%.2f", cw) << "\" height=\"" << fmt("%.2f", ch) << "\" fill=\""
        << (c.ok ? ramp(c.fidelity) : std::string("#ccc")) << "\"><title>nbar="
        << format_number(c.nbar) << " omega/kappa=" << format_number(c.omega_ratio)
        << " F=" << (c.ok ? fmt("%.4f", c.fidelity) : std::string("n/a")) << "</title></rect>\n";
    if (c.ok) {
      svg << "<text x=\"" << fmt("%.1f", x + cw / 2) << "\" y=\"" << fmt("%.1f", y + ch / 2 + 4)
          << "\" text-anchor=\"middle\" font-size=\"10\" fill=\""
          << (c.fidelity > 0.7 ? "black" : "white") << "\">" << fmt("%.2f", c.fidelity)
          << "</text>\n";
    }
  }
  for (std::size_t i = 0; i < nbar.size(); ++i) {
    svg << "<text x=\"" << fmt("%.1f", x0 + (i + 0.5) * cw) << "\" y=\"" << y0 + h + 16
        << "\" text-anchor=\"middle\" font-size=\"11\">" << fmt("%g", nbar[i]) << "</text>\n";
  }
  for (std::size_t j = 0; j < omega_ratio.size(); ++j) {
    svg << "<text x=\"" << x0 - 6 << "\" y=\"" << fmt("%.1f", y0 + h - (j + 0.5) * ch + 4)
        << "\" text-anchor=\"end\" font-size=\"11\">" << fmt("%g", omega_ratio[j])
        << "</text>\n";
  }
  svg << "<text x=\"" << x0 + w / 2 << "\" y=\"" << y0 + h + 36
      << "\" text-anchor=\"middle\" font-size=\"12\">n&#772;</text>\n";
  svg << "<text transform=\"translate(" << x0 - 45 << "," << y0 + h / 2
      << ") rotate(-90)\" text-anchor=\"middle\" font-size=\"12\">"
         "&#937;n&#772; / &#954;</text>\n";
  const double lx = x0 + w + 30;
  for (int k = 0; k < 50; ++k) {
    svg << "<rect x=\"" << lx << "\" y=\"" << fmt("%.2f", y0 + h - (k + 1) * h / 50)
        << "\" width=\"20\" height=\"" << fmt("%.2f", h / 50 + 0.5) << "\" fill=\""
        << ramp((k + 0.5) / 50) << "\"/>\n";
  }
  svg << "<text x=\"" << lx + 26 << "\" y=\"" << y0 + h << "\" font-size=\"11\">0</text>\n";
  svg << "<text x=\"" << lx + 26 << "\" y=\"" << y0 + 10 << "\" font-size=\"11\">1</text>\n";
  svg << "<text x=\"" << lx + 10 << "\" y=\"" << y0 - 10
      << "\" text-anchor=\"middle\" font-size=\"11\">fidelity</text>\n</svg>\n";
  return svg.str();
}

OutputBatch::OutputBatch(fs::path dir) : dir_(std::move(dir)) {}

void OutputBatch::add(std::string name, std::string content) {
  files_.emplace_back(std::move(name), std::move(content));
}

std::vector<fs::path> OutputBatch::commit() {
  std::vector<fs::path> staged;
  std::vector<fs::path> placed;
  auto cleanup = [&] {
    std::error_code ec;
    for (const auto& p : staged) fs::remove(p, ec);
    for (const auto& p : placed) fs::remove(p, ec);
  };
  try {
    fs::create_directories(dir_);
    for (const auto& [name, content] : files_) {
      const fs::path tmp = dir_ / ("." + name + ".tmp");
      staged.push_back(tmp);
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out.write(content.data(), static_cast<std::streamsize>(content.size()));
      out.close();
      if (!out) throw std::runtime_error("failed to write " + tmp.string());
    }
    for (std::size_t k = 0; k < files_.size(); ++k) {
      const fs::path target = dir_ / files_[k].first;
      fs::rename(staged[k], target);
      placed.push_back(target);
    }
  } catch (const std::exception& e) {
    cleanup();
    throw std::runtime_error(std::string("writing outputs to ") + dir_.string() + ": " +
                             e.what());
  }
  return placed;
}

}  // namespace bellstab::cli
