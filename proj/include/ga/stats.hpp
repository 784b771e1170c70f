#ifndef GA_STATS_HPP
#define GA_STATS_HPP

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "ga/dataset.hpp"

namespace ga {

struct FamilyStats {
  std::string family;
  int count = 0;
  double mean = 0.0;
  double min_value = 0.0;
  double max_value = 0.0;
  std::map<int, int> int_hist;  // bridge counts / class labels
  std::vector<int> real_hist;   // lambda2, 20 bins over (0, 2]
};

struct SplitStatsReport {
  Task task = Task::topology;
  Split split = Split::train;
  int sample_count = 0;
  double overall_mean = 0.0;
  std::vector<FamilyStats> families;  // sorted by family name

  const FamilyStats* family(const std::string& name) const;
};

// Label statistics grouped by generator family. For the regression tasks
// (bridge, spectral) writes stats.txt plus one SVG histogram per family
// beside the manifest when write_files is set.
SplitStatsReport emit_stats(const std::filesystem::path& manifest_path, bool write_files);

}  // namespace ga

#endif  // GA_STATS_HPP
