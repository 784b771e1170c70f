#include <fstream>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"

#include "ga/dataset.hpp"
#include "ga/stats.hpp"

using namespace ga;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::path(GA_TEST_TMP) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<uint8_t> slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string s = ss.str();
  return std::vector<uint8_t>(s.begin(), s.end());
}

}  // namespace

TEST_CASE("default split table matches the published counts and ranges") {
  const auto table = default_split_table(0);
  REQUIRE(table.size() == 20);
  auto find = [&](Task t, Split s) -> const SplitSpec& {
    for (const SplitSpec& spec : table)
      if (spec.task == t && spec.split == s) return spec;
    throw std::runtime_error("missing spec");
  };
  CHECK(find(Task::topology, Split::train).count == 3000);
  CHECK(find(Task::topology, Split::train).node_lo == 20);
  CHECK(find(Task::topology, Split::train).node_hi == 50);
  CHECK(find(Task::topology, Split::val).count == 300);
  CHECK(find(Task::topology, Split::test_id).count == 300);
  CHECK(find(Task::topology, Split::test_near_ood).node_lo == 40);
  CHECK(find(Task::topology, Split::test_near_ood).node_hi == 100);
  CHECK(find(Task::topology, Split::test_far_ood).node_lo == 60);
  CHECK(find(Task::topology, Split::test_far_ood).node_hi == 150);

  CHECK(find(Task::symmetry, Split::train).count == 2000);
  CHECK(find(Task::symmetry, Split::train).node_lo == 30);
  CHECK(find(Task::symmetry, Split::train).node_hi == 60);
  CHECK(find(Task::symmetry, Split::val).count == 200);
  CHECK(find(Task::symmetry, Split::test_id).count == 600);
  CHECK(find(Task::symmetry, Split::test_near_ood).count == 600);
  CHECK(find(Task::symmetry, Split::test_near_ood).node_lo == 50);
  CHECK(find(Task::symmetry, Split::test_far_ood).count == 600);
  CHECK(find(Task::symmetry, Split::test_far_ood).node_lo == 70);
  CHECK(find(Task::symmetry, Split::test_far_ood).node_hi == 150);

  CHECK(find(Task::spectral, Split::train).count == 3000);
  CHECK(find(Task::spectral, Split::val).count == 300);
  CHECK(find(Task::bridge, Split::train).count == 2500);
  CHECK(find(Task::bridge, Split::val).count == 250);
  CHECK(find(Task::bridge, Split::test_far_ood).count == 250);
}

TEST_CASE("sub-seeds are distinct across splits and indices") {
  SplitSpec a{Task::topology, Split::train, 10, 20, 50, 0};
  SplitSpec b = a;
  b.split = Split::test_id;
  CHECK(sample_sub_seed(a, 0, 0) != sample_sub_seed(b, 0, 0));
  CHECK(sample_sub_seed(a, 0, 0) != sample_sub_seed(a, 1, 0));
  CHECK(sample_sub_seed(a, 0, 0) != sample_sub_seed(a, 0, 1));
}

TEST_CASE("build_split writes a verifiable balanced topology split") {
  const fs::path dir = fresh_dir("topo_build");
  SplitSpec spec{Task::topology, Split::val, 12, 20, 40, 5};
  BuildOptions options;
  options.out_root = dir;
  options.layouts = {LayoutAlgorithm::circular};
  options.resolution = 64;

  const Manifest manifest = build_split(spec, nullptr, options);
  CHECK(manifest.records.size() == 12);

  // 6-way class balance: 12 samples -> 2 per class.
  std::map<int, int> class_counts;
  for (const ManifestRecord& r : manifest.records) ++class_counts[r.label.get<int>()];
  for (int c = 0; c < 6; ++c) CHECK(class_counts[c] == 2);

  const VerifyReport report = verify_dataset(manifest.path);
  CHECK(report.checked == 12);
  CHECK(report.failed == 0);

  // Regenerating one sample in isolation reproduces the stored graph file.
  const LabeledSample sample = generate_sample(spec, 7, nullptr);
  nlohmann::json expected;
  {
    std::ifstream in(dir / "topology/val/graphs/000007.json");
    in >> expected;
  }
  CHECK(expected.at("num_nodes").get<int>() == sample.graph.num_nodes());
  CHECK(expected.at("metadata") == sample.metadata);
}

TEST_CASE("tampered graphs and out-of-range nodes are flagged") {
  const fs::path dir = fresh_dir("tamper");
  SplitSpec spec{Task::bridge, Split::val, 5, 20, 40, 6};
  BuildOptions options;
  options.out_root = dir;
  options.layouts = {};
  const Manifest manifest = build_split(spec, nullptr, options);
  CHECK(verify_dataset(manifest.path).failed == 0);

  // Remove a bridge edge by hand: detection is guaranteed because the graph
  // disconnects or its bridge count changes.
  const fs::path victim = dir / "bridge/val/graphs/000003.json";  // bottleneck: always has a bridge
  nlohmann::json j;
  {
    std::ifstream in(victim);
    in >> j;
  }
  EdgeList edges;
  for (const auto& e : j["edges"]) edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  const Graph g(j["num_nodes"].get<int>(), edges);
  const BridgeReport bridges = find_bridges(g);
  REQUIRE(bridges.count > 0);
  nlohmann::json kept = nlohmann::json::array();
  for (const auto& [u, v] : g.edges())
    if (std::make_pair(u, v) != bridges.bridges.front()) kept.push_back({u, v});
  j["edges"] = kept;
  std::ofstream(victim) << j.dump() << "\n";
  const VerifyReport tampered = verify_dataset(manifest.path);
  CHECK(tampered.failed > 0);

  // Rewrite with an out-of-range node count.
  nlohmann::json j2;
  {
    std::ifstream in(dir / "bridge/val/graphs/000001.json");
    in >> j2;
  }
  j2["num_nodes"] = 500;
  std::ofstream(dir / "bridge/val/graphs/000001.json") << j2.dump() << "\n";
  const VerifyReport range_violation = verify_dataset(manifest.path);
  CHECK(range_violation.failed >= 2);
}

TEST_CASE("symmetry split: labels verified, witnesses stored, 2-way balance") {
  const fs::path dir = fresh_dir("sym_build");
  Rng corpus_rng(derive_seed(9, {hash_str64("corpus")}));
  const BaseGraphCorpus corpus = BaseGraphCorpus::synthetic_fallback(corpus_rng);
  SplitSpec spec{Task::symmetry, Split::val, 8, 30, 60, 9};
  BuildOptions options;
  options.out_root = dir;
  options.layouts = {};
  const Manifest manifest = build_split(spec, &corpus, options);

  int symmetric = 0;
  for (const ManifestRecord& r : manifest.records) {
    if (r.label.get<int>() == 1) {
      ++symmetric;
      CHECK(r.metadata.contains("witness"));
    }
  }
  CHECK(symmetric == 4);
  CHECK(verify_dataset(manifest.path).failed == 0);
}

TEST_CASE("spectral split labels recompute within 1e-6") {
  const fs::path dir = fresh_dir("spec_build");
  SplitSpec spec{Task::spectral, Split::val, 8, 20, 40, 11};
  BuildOptions options;
  options.out_root = dir;
  options.layouts = {};
  const Manifest manifest = build_split(spec, nullptr, options);
  CHECK(verify_dataset(manifest.path).failed == 0);
  for (const ManifestRecord& r : manifest.records) {
    const double label = r.label.get<double>();
    CHECK(label > 0.0);
    CHECK(label <= 2.0);
  }
}

TEST_CASE("worker count does not change any byte") {
  const fs::path dir1 = fresh_dir("workers1");
  const fs::path dir4 = fresh_dir("workers4");
  SplitSpec spec{Task::topology, Split::val, 10, 20, 40, 13};
  BuildOptions options;
  options.layouts = {LayoutAlgorithm::circular};
  options.resolution = 64;

  options.out_root = dir1;
  options.workers = 1;
  build_split(spec, nullptr, options);
  options.out_root = dir4;
  options.workers = 4;
  build_split(spec, nullptr, options);

  int compared = 0;
  for (const auto& entry : fs::recursive_directory_iterator(dir1)) {
    if (!entry.is_regular_file()) continue;
    const fs::path rel = fs::relative(entry.path(), dir1);
    CHECK(slurp(entry.path()) == slurp(dir4 / rel));
    ++compared;
  }
  CHECK(compared > 10);
}

TEST_CASE("stats aggregate labels per family with consistent bucket sums") {
  const fs::path dir = fresh_dir("stats");
  SplitSpec spec{Task::bridge, Split::val, 10, 20, 40, 15};
  BuildOptions options;
  options.out_root = dir;
  options.layouts = {};
  const Manifest manifest = build_split(spec, nullptr, options);

  const SplitStatsReport report = emit_stats(manifest.path, /*write_files=*/true);
  CHECK(report.sample_count == 10);
  int total = 0;
  for (const FamilyStats& f : report.families) {
    for (const auto& [value, count] : f.int_hist) total += count;
  }
  CHECK(total == 10);
  CHECK(fs::exists(dir / "bridge/val/stats.txt"));
  int svg_count = 0;
  for (const auto& entry : fs::directory_iterator(dir / "bridge/val"))
    if (entry.path().extension() == ".svg") ++svg_count;
  CHECK(svg_count == static_cast<int>(report.families.size()));
}
