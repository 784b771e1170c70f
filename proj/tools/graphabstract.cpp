// Command-line front end: dataset generation, verification, statistics, and
// single-graph rendering.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ga/dataset.hpp"
#include "ga/png.hpp"
#include "ga/render.hpp"
#include "ga/stats.hpp"

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string default_out_dir() {
  if (const char* env = std::getenv("GRAPHABSTRACT_OUT"); env && *env) return env;
  return "out";
}

std::vector<ga::LayoutAlgorithm> parse_layouts(const std::string& csv) {
  std::vector<ga::LayoutAlgorithm> layouts;
  if (csv == "none") return layouts;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) layouts.push_back(ga::layout_algorithm_from_name(item));
  }
  return layouts;
}

uint64_t file_hash(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  uint64_t h = 0xcbf29ce484222325ull;
  char buf[4096];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ull;
    }
  }
  return h;
}

struct CommonOptions {
  std::string out = default_out_dir();
  std::vector<std::string> tasks;
  std::vector<std::string> splits;
};

int cmd_generate(const CommonOptions& common, uint64_t seed, const std::string& layouts_csv,
                 int resolution, const std::vector<std::string>& corpus_files, int workers,
                 int count_override) {
  std::vector<ga::LayoutAlgorithm> layouts;
  try {
    layouts = parse_layouts(layouts_csv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  std::vector<ga::SplitSpec> table = ga::default_split_table(seed);
  std::vector<ga::SplitSpec> selected;
  for (const ga::SplitSpec& spec : table) {
    if (!common.tasks.empty() &&
        std::find(common.tasks.begin(), common.tasks.end(), ga::task_name(spec.task)) ==
            common.tasks.end())
      continue;
    if (!common.splits.empty() &&
        std::find(common.splits.begin(), common.splits.end(), ga::split_name(spec.split)) ==
            common.splits.end())
      continue;
    selected.push_back(spec);
    if (count_override > 0) selected.back().count = count_override;
  }
  if (selected.empty()) {
    std::cerr << "error: no (task, split) pairs selected\n";
    return 2;
  }

  bool need_corpus = false;
  for (const ga::SplitSpec& spec : selected) need_corpus |= spec.task == ga::Task::symmetry;

  std::optional<ga::BaseGraphCorpus> corpus;
  if (need_corpus) {
    ga::Rng corpus_rng(ga::derive_seed(seed, {ga::hash_str64("corpus")}));
    if (corpus_files.empty()) {
      std::cerr << "warning: no --corpus files given; using the synthetic fallback corpus\n";
      corpus = ga::BaseGraphCorpus::synthetic_fallback(corpus_rng);
    } else {
      std::vector<fs::path> paths(corpus_files.begin(), corpus_files.end());
      corpus = ga::BaseGraphCorpus::from_edge_lists(paths, corpus_rng);
    }
  }

  ga::BuildOptions options;
  options.out_root = common.out;
  options.layouts = layouts;
  options.resolution = resolution;
  options.workers = workers;

  std::printf("%-10s %-14s %7s %9s %9s\n", "task", "split", "count", "range", "elapsed");
  std::unordered_map<std::string, std::vector<std::pair<uint64_t, fs::path>>> task_hashes;
  for (const ga::SplitSpec& spec : selected) {
    const auto start = Clock::now();
    ga::Manifest manifest;
    try {
      manifest = ga::build_split(spec, corpus ? &*corpus : nullptr, options);
    } catch (const std::exception& e) {
      std::cerr << "error: build failed for " << ga::task_name(spec.task) << "/"
                << ga::split_name(spec.split) << ": " << e.what() << "\n";
      return 1;
    }
    char range[32];
    std::snprintf(range, sizeof range, "%d-%d", spec.node_lo, spec.node_hi);
    std::printf("%-10s %-14s %7d %9s %8.1fs\n", ga::task_name(spec.task),
                ga::split_name(spec.split), spec.count, range, seconds_since(start));
    std::fflush(stdout);
    for (const ga::ManifestRecord& r : manifest.records) {
      const fs::path p = manifest.path.parent_path() / r.graph_path;
      task_hashes[ga::task_name(spec.task)].emplace_back(file_hash(p), p);
    }
  }

  // No graph file may repeat byte-for-byte across the splits of a task.
  for (auto& [task, hashes] : task_hashes) {
    std::sort(hashes.begin(), hashes.end());
    for (size_t i = 1; i < hashes.size(); ++i) {
      if (hashes[i].first == hashes[i - 1].first) {
        std::ifstream a(hashes[i - 1].second, std::ios::binary), b(hashes[i].second, std::ios::binary);
        std::stringstream sa, sb;
        sa << a.rdbuf();
        sb << b.rdbuf();
        if (sa.str() == sb.str()) {
          std::cerr << "error: byte-identical graphs across " << task << " splits: "
                    << hashes[i - 1].second << " and " << hashes[i].second << "\n";
          return 1;
        }
      }
    }
  }
  return 0;
}

int cmd_verify(const CommonOptions& common) {
  std::vector<fs::path> manifests = ga::find_manifests(common.out);
  std::vector<fs::path> filtered;
  for (const fs::path& m : manifests) {
    const ga::Manifest manifest = ga::read_manifest(m);
    const std::string task = manifest.header.at("task").get<std::string>();
    const std::string split = manifest.header.at("split").get<std::string>();
    if (!common.tasks.empty() &&
        std::find(common.tasks.begin(), common.tasks.end(), task) == common.tasks.end())
      continue;
    if (!common.splits.empty() &&
        std::find(common.splits.begin(), common.splits.end(), split) == common.splits.end())
      continue;
    filtered.push_back(m);
  }
  if (filtered.empty()) {
    std::cerr << "error: no manifests found under " << common.out << "\n";
    return 2;
  }

  int total = 0, failed = 0;
  for (const fs::path& m : filtered) {
    const ga::VerifyReport report = ga::verify_dataset(m);
    total += report.checked;
    failed += report.failed;
    std::printf("%-60s checked=%d failed=%d\n", m.string().c_str(), report.checked,
                report.failed);
    for (const std::string& f : report.failures) std::printf("  %s\n", f.c_str());
  }
  std::printf("total checked=%d failed=%d\n", total, failed);
  return failed == 0 ? 0 : 1;
}

int cmd_stats(const CommonOptions& common) {
  std::vector<fs::path> manifests = ga::find_manifests(common.out);
  int processed = 0;
  for (const fs::path& m : manifests) {
    const ga::Manifest manifest = ga::read_manifest(m);
    const std::string task = manifest.header.at("task").get<std::string>();
    const std::string split = manifest.header.at("split").get<std::string>();
    if (!common.tasks.empty() &&
        std::find(common.tasks.begin(), common.tasks.end(), task) == common.tasks.end())
      continue;
    if (!common.splits.empty() &&
        std::find(common.splits.begin(), common.splits.end(), split) == common.splits.end())
      continue;
    try {
      const ga::SplitStatsReport report = ga::emit_stats(m, /*write_files=*/true);
      std::printf("%-10s %-14s samples=%d label_mean=%.6g\n", task.c_str(), split.c_str(),
                  report.sample_count, report.overall_mean);
      ++processed;
    } catch (const std::exception& e) {
      std::cerr << "error: stats failed for " << m << ": " << e.what() << "\n";
      return 1;
    }
  }
  if (processed == 0) {
    std::cerr << "error: no manifests found under " << common.out << "\n";
    return 2;
  }
  return 0;
}

int cmd_render(const std::string& graph_file, const std::string& layout_name,
               const std::string& out_path, int resolution, uint64_t seed) {
  try {
    std::ifstream in(graph_file);
    if (!in) {
      std::cerr << "error: cannot open " << graph_file << "\n";
      return 1;
    }
    nlohmann::json j;
    in >> j;
    ga::EdgeList edges;
    for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    const ga::Graph g(j.at("num_nodes").get<int>(), std::move(edges));

    const ga::LayoutAlgorithm algo = ga::layout_algorithm_from_name(layout_name);
    const ga::Layout layout = ga::compute_layout(algo, g, seed);
    if (ga::degenerate_layout(layout))
      std::cerr << "warning: degenerate layout (most nodes coincide); rendering anyway\n";

    ga::RenderSpec spec;
    spec.resolution = resolution;
    ga::write_png(out_path, ga::render_image(g, layout, spec));
    std::printf("wrote %s (%dx%d)\n", out_path.c_str(), resolution, resolution);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GraphAbstract benchmark toolkit"};
  app.require_subcommand(1);

  CommonOptions common;
  uint64_t seed = 0;
  std::string layouts_csv = "kamada_kawai,forceatlas2,spectral";  // circular is opt-in
  int resolution = 224;
  std::vector<std::string> corpus_files;
  int workers = 1;
  int count_override = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", common.out, "Output directory (or $GRAPHABSTRACT_OUT)");
    sub->add_option("--task", common.tasks,
                    "Task filter: topology, symmetry, spectral, bridge (repeatable)");
    sub->add_option("--split", common.splits,
                    "Split filter: train, val, test_id, test_near_ood, test_far_ood (repeatable)");
  };

  CLI::App* generate = app.add_subcommand("generate", "Build datasets with verified labels");
  add_common(generate);
  generate->add_option("--seed", seed, "Root seed (default 0)")
      ->check(CLI::Range(static_cast<uint64_t>(0), (uint64_t{1} << 32) - 1));
  generate->add_option("--layouts", layouts_csv,
                       "Comma-separated layouts; 'circular' is opt-in, 'none' skips images");
  generate->add_option("--resolution", resolution, "Image resolution (default 224)");
  generate->add_option("--corpus", corpus_files, "Edge-list files for real base graphs");
  generate->add_option("--workers", workers, "Worker threads (identical output for any count)");
  generate->add_option("--count", count_override,
                       "Override the per-split sample count (testing/debug)");

  CLI::App* verify = app.add_subcommand("verify", "Re-verify every stored label");
  add_common(verify);

  CLI::App* stats = app.add_subcommand("stats", "Label statistics and histograms");
  add_common(stats);

  std::string graph_file, layout_name = "kamada_kawai", out_path = "graph.png";
  CLI::App* render = app.add_subcommand("render", "Render one graph JSON file to PNG");
  render->add_option("graph", graph_file, "Graph JSON file")->required();
  render->add_option("--layout", layout_name, "Layout algorithm");
  render->add_option("--out", out_path, "Output PNG path");
  render->add_option("--resolution", resolution, "Image resolution");
  render->add_option("--seed", seed, "Layout seed (forceatlas2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (generate->parsed())
      return cmd_generate(common, seed, layouts_csv, resolution, corpus_files, workers,
                          count_override);
    if (verify->parsed()) return cmd_verify(common);
    if (stats->parsed()) return cmd_stats(common);
    if (render->parsed()) return cmd_render(graph_file, layout_name, out_path, resolution, seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
