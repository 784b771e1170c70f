#ifndef GA_DATASET_HPP
#define GA_DATASET_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ga/graph.hpp"
#include "ga/layout.hpp"
#include "ga/symmetry_generators.hpp"

namespace ga {

inline constexpr const char* kToolkitVersion = "0.1.0";

enum class Task { topology, symmetry, spectral, bridge };
enum class Split { train, val, test_id, test_near_ood, test_far_ood };

const char* task_name(Task t);
const char* split_name(Split s);
Task task_from_name(const std::string& name);
Split split_from_name(const std::string& name);

struct SplitSpec {
  Task task = Task::topology;
  Split split = Split::train;
  int count = 0;
  int node_lo = 0;
  int node_hi = 0;
  uint64_t seed = 0;
};

// The built-in split table: per task, five splits with their counts and
// node-count ranges (train-scale for train/val/test_id, 40-100 and 60-150
// style shifts for the OOD tests).
std::vector<SplitSpec> default_split_table(uint64_t seed);

struct LabeledSample {
  Graph graph;
  nlohmann::json label;  // class id / symmetry bit / lambda2 / bridge count
  nlohmann::json metadata;
};

// Pure function of the spec fields: generates sample `index` of a split,
// including per-attempt retries. Exposed so single samples can be
// regenerated in isolation.
LabeledSample generate_sample(const SplitSpec& spec, int index, const BaseGraphCorpus* corpus);

// Sub-seed for one sample attempt: hash(seed, task, split, index, attempt).
uint64_t sample_sub_seed(const SplitSpec& spec, int index, int attempt);

struct BuildOptions {
  std::filesystem::path out_root;  // split dir becomes out_root/<task>/<split>
  std::vector<LayoutAlgorithm> layouts{LayoutAlgorithm::kamada_kawai,
                                       LayoutAlgorithm::forceatlas2, LayoutAlgorithm::spectral};
  int resolution = 224;
  int workers = 1;
};

struct ManifestRecord {
  std::string id;
  std::string graph_path;                       // relative to the manifest dir
  std::map<std::string, std::string> images;    // layout name -> relative path
  nlohmann::json label;
  nlohmann::json metadata;
};

struct Manifest {
  nlohmann::json header;
  std::vector<ManifestRecord> records;
  std::filesystem::path path;
};

// Generates, labels, renders and writes one split. Deterministic: the same
// spec and options produce byte-identical files for any worker count.
Manifest build_split(const SplitSpec& spec, const BaseGraphCorpus* corpus,
                     const BuildOptions& options);

Manifest read_manifest(const std::filesystem::path& manifest_path);

struct VerifyReport {
  int checked = 0;
  int failed = 0;
  std::vector<std::string> failures;  // "<id>: reason"
};

// Recomputes every label from the stored graph (symmetry verdicts by full
// search, lambda2 within 1e-6, bridge counts exactly), checks node ranges,
// connectivity, dense unique ids, and referenced files.
VerifyReport verify_dataset(const std::filesystem::path& manifest_path);

// All manifest.jsonl files under a root, sorted.
std::vector<std::filesystem::path> find_manifests(const std::filesystem::path& root);

}  // namespace ga

#endif  // GA_DATASET_HPP
