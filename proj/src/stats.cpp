#include "ga/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "ga/png.hpp"

namespace ga {

namespace {

constexpr int kRealBins = 20;  // lambda2 lives in (0, 2]

int real_bin(double value) {
  int bin = static_cast<int>(std::floor(value / 2.0 * kRealBins));
  return std::clamp(bin, 0, kRealBins - 1);
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string svg_histogram(const std::string& title, const std::vector<std::pair<std::string, int>>& bars) {
  constexpr int kWidth = 640, kHeight = 360, kMarginLeft = 40, kMarginBottom = 40, kMarginTop = 30;
  int max_count = 1;
  for (const auto& [label, c] : bars) max_count = std::max(max_count, c);
  const double plot_w = kWidth - kMarginLeft - 10;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const double bar_w = plot_w / std::max<size_t>(1, bars.size());

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">"
      << title << "</text>\n";
  for (size_t i = 0; i < bars.size(); ++i) {
    const double h = plot_h * bars[i].second / max_count;
    const double x = kMarginLeft + bar_w * static_cast<double>(i);
    const double y = kMarginTop + plot_h - h;
    char rect[256];
    std::snprintf(rect, sizeof rect,
                  "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
                  "fill=\"steelblue\" stroke=\"white\"/>\n",
                  x, y, std::max(1.0, bar_w - 1.0), h);
    svg << rect;
    if (bars.size() <= 24 || i % 4 == 0) {
      char text[256];
      std::snprintf(text, sizeof text,
                    "<text x=\"%.2f\" y=\"%d\" text-anchor=\"middle\" font-size=\"9\">%s</text>\n",
                    x + bar_w / 2, kHeight - kMarginBottom + 14, bars[i].first.c_str());
      svg << text;
    }
  }
  char axis[128];
  std::snprintf(axis, sizeof axis,
                "<text x=\"%d\" y=\"%d\" font-size=\"10\">max %d</text>\n", kMarginLeft,
                kMarginTop - 6, max_count);
  svg << axis;
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace

const FamilyStats* SplitStatsReport::family(const std::string& name) const {
  for (const FamilyStats& f : families)
    if (f.family == name) return &f;
  return nullptr;
}

SplitStatsReport emit_stats(const std::filesystem::path& manifest_path, bool write_files) {
  const Manifest manifest = read_manifest(manifest_path);
  SplitStatsReport report;
  report.task = task_from_name(manifest.header.at("task").get<std::string>());
  report.split = split_from_name(manifest.header.at("split").get<std::string>());
  report.sample_count = static_cast<int>(manifest.records.size());

  const bool real_valued = report.task == Task::spectral;
  std::map<std::string, FamilyStats> by_family;
  double total = 0.0;

  for (const ManifestRecord& r : manifest.records) {
    std::string family = r.metadata.value("family", "");
    if (family.empty()) family = r.metadata.value("method", "all");
    FamilyStats& f = by_family[family];
    if (f.count == 0) {
      f.family = family;
      f.min_value = std::numeric_limits<double>::infinity();
      f.max_value = -std::numeric_limits<double>::infinity();
      if (real_valued) f.real_hist.assign(kRealBins, 0);
    }
    const double value = r.label.get<double>();
    ++f.count;
    f.mean += value;
    f.min_value = std::min(f.min_value, value);
    f.max_value = std::max(f.max_value, value);
    total += value;
    if (real_valued)
      ++f.real_hist[static_cast<size_t>(real_bin(value))];
    else
      ++f.int_hist[static_cast<int>(std::llround(value))];
  }

  for (auto& [name, f] : by_family) {
    if (f.count > 0) f.mean /= f.count;
    report.families.push_back(f);
  }
  std::sort(report.families.begin(), report.families.end(),
            [](const FamilyStats& a, const FamilyStats& b) { return a.family < b.family; });
  if (report.sample_count > 0) report.overall_mean = total / report.sample_count;

  if (write_files) {
    const std::filesystem::path dir = manifest_path.parent_path();
    std::ostringstream text;
    text << "task=" << task_name(report.task) << " split=" << split_name(report.split)
         << " samples=" << report.sample_count << " label_mean=" << fmt(report.overall_mean)
         << "\n\n";
    text << "family            count      mean       min       max\n";
    for (const FamilyStats& f : report.families) {
      char line[256];
      std::snprintf(line, sizeof line, "%-16s %6d %9s %9s %9s\n", f.family.c_str(), f.count,
                    fmt(f.mean).c_str(), fmt(f.min_value).c_str(), fmt(f.max_value).c_str());
      text << line;
      if (!f.int_hist.empty()) {
        text << "  hist:";
        for (const auto& [value, count] : f.int_hist) text << " " << value << ":" << count;
        text << "\n";
      } else {
        text << "  hist(0..2, 20 bins):";
        for (int c : f.real_hist) text << " " << c;
        text << "\n";
      }
    }
    const std::string body = text.str();
    write_file_atomic(dir / "stats.txt", std::vector<uint8_t>(body.begin(), body.end()));

    if (report.task == Task::bridge || report.task == Task::spectral) {
      for (const FamilyStats& f : report.families) {
        std::vector<std::pair<std::string, int>> bars;
        if (!f.int_hist.empty()) {
          const int max_key = f.int_hist.rbegin()->first;
          for (int k = 0; k <= max_key; ++k) {
            const auto it = f.int_hist.find(k);
            bars.emplace_back(std::to_string(k), it == f.int_hist.end() ? 0 : it->second);
          }
        } else {
          for (int b = 0; b < kRealBins; ++b) {
            char label[32];
            std::snprintf(label, sizeof label, "%.1f", 2.0 * b / kRealBins);
            bars.emplace_back(label, f.real_hist[static_cast<size_t>(b)]);
          }
        }
        const std::string svg = svg_histogram(
            std::string(task_name(report.task)) + " " + split_name(report.split) + " " + f.family,
            bars);
        write_file_atomic(dir / ("hist_" + f.family + ".svg"),
                          std::vector<uint8_t>(svg.begin(), svg.end()));
      }
    }
  }
  return report;
}

}  // namespace ga
