#include "ga/dataset.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ga/automorphism.hpp"
#include "ga/errors.hpp"
#include "ga/png.hpp"
#include "ga/render.hpp"
#include "ga/spectral.hpp"
#include "ga/spectral_generators.hpp"
#include "ga/topo_generators.hpp"

namespace ga {

const char* task_name(Task t) {
  switch (t) {
    case Task::topology: return "topology";
    case Task::symmetry: return "symmetry";
    case Task::spectral: return "spectral";
    case Task::bridge: return "bridge";
  }
  return "unknown";
}

const char* split_name(Split s) {
  switch (s) {
    case Split::train: return "train";
    case Split::val: return "val";
    case Split::test_id: return "test_id";
    case Split::test_near_ood: return "test_near_ood";
    case Split::test_far_ood: return "test_far_ood";
  }
  return "unknown";
}

Task task_from_name(const std::string& name) {
  for (Task t : {Task::topology, Task::symmetry, Task::spectral, Task::bridge})
    if (name == task_name(t)) return t;
  throw std::invalid_argument("unknown task: " + name);
}

Split split_from_name(const std::string& name) {
  for (Split s : {Split::train, Split::val, Split::test_id, Split::test_near_ood,
                  Split::test_far_ood})
    if (name == split_name(s)) return s;
  throw std::invalid_argument("unknown split: " + name);
}

std::vector<SplitSpec> default_split_table(uint64_t seed) {
  struct Row {
    Task task;
    int train, val, test;
  };
  // Counts per task; node ranges: train-scale for train/val/test_id,
  // then the Near-OOD and Far-OOD shifts.
  const Row rows[] = {
      {Task::topology, 3000, 300, 300},
      {Task::symmetry, 2000, 200, 600},
      {Task::spectral, 3000, 300, 300},
      {Task::bridge, 2500, 250, 250},
  };
  std::vector<SplitSpec> table;
  for (const Row& r : rows) {
    const bool symmetry = r.task == Task::symmetry;
    const int id_lo = symmetry ? 30 : 20, id_hi = symmetry ? 60 : 50;
    const int near_lo = symmetry ? 50 : 40, near_hi = 100;
    const int far_lo = symmetry ? 70 : 60, far_hi = 150;
    table.push_back({r.task, Split::train, r.train, id_lo, id_hi, seed});
    table.push_back({r.task, Split::val, r.val, id_lo, id_hi, seed});
    table.push_back({r.task, Split::test_id, r.test, id_lo, id_hi, seed});
    table.push_back({r.task, Split::test_near_ood, r.test, near_lo, near_hi, seed});
    table.push_back({r.task, Split::test_far_ood, r.test, far_lo, far_hi, seed});
  }
  return table;
}

uint64_t sample_sub_seed(const SplitSpec& spec, int index, int attempt) {
  return derive_seed(spec.seed,
                     {hash_str64(task_name(spec.task)), hash_str64(split_name(spec.split)),
                      static_cast<uint64_t>(index), static_cast<uint64_t>(attempt)});
}

namespace {

constexpr TopoFamily kTopologyFamilies[] = {TopoFamily::cyclic,     TopoFamily::geometric,
                                            TopoFamily::community,  TopoFamily::hierarchical,
                                            TopoFamily::bottleneck, TopoFamily::multicore};
// Bridge task reuses the non-cyclic families.
constexpr TopoFamily kBridgeFamilies[] = {TopoFamily::geometric, TopoFamily::community,
                                          TopoFamily::hierarchical, TopoFamily::bottleneck,
                                          TopoFamily::multicore};
constexpr SpectralFamily kSpectralFamilies[] = {SpectralFamily::sbm_dumbbell,
                                                SpectralFamily::sbm_multi,
                                                SpectralFamily::geometric_evolution,
                                                SpectralFamily::configuration};

LabeledSample generate_sample_attempt(const SplitSpec& spec, int index, int attempt,
                                      const BaseGraphCorpus* corpus) {
  const uint64_t sub_seed = sample_sub_seed(spec, index, attempt);
  Rng rng(sub_seed);
  LabeledSample sample;

  switch (spec.task) {
    case Task::topology: {
      const TopoFamily family = kTopologyFamilies[index % 6];
      const int n = rng.uniform_int(spec.node_lo, spec.node_hi);
      GenResult gen = generate_topology(family, n, rng);
      sample.graph = std::move(gen.graph);
      sample.label = index % 6;
      sample.metadata = std::move(gen.meta);
      break;
    }
    case Task::bridge: {
      const TopoFamily family = kBridgeFamilies[index % 5];
      const int n = rng.uniform_int(spec.node_lo, spec.node_hi);
      GenResult gen = generate_bridge_topology(family, n, rng);
      BridgeReport bridges = find_bridges(gen.graph);
      sample.graph = std::move(gen.graph);
      sample.label = bridges.count;
      sample.metadata = std::move(gen.meta);
      break;
    }
    case Task::spectral: {
      const SpectralFamily family = kSpectralFamilies[index % 4];
      const int n = rng.uniform_int(spec.node_lo, spec.node_hi);
      const double mu = sample_mu(rng).mu;
      GenResult gen = generate_spectral(family, n, mu, rng);
      const double lambda2 = spectral_gap(gen.graph).lambda2;
      if (!(lambda2 > 0.0))
        throw GenerationError("spectral sample: lambda2 is zero (disconnected leak)");
      sample.graph = std::move(gen.graph);
      sample.label = lambda2;
      sample.metadata = std::move(gen.meta);
      break;
    }
    case Task::symmetry: {
      if (corpus == nullptr)
        throw std::invalid_argument("symmetry task needs a base-graph corpus");
      const bool want_symmetric = index % 2 == 0;
      SymmetrySample sym =
          gen_symmetry_sample(want_symmetric, spec.node_lo, spec.node_hi, *corpus, rng);
      sample.graph = std::move(sym.graph);
      sample.label = sym.symmetric ? 1 : 0;
      sample.metadata = std::move(sym.meta);
      sample.metadata["n"] = sample.graph.num_nodes();
      break;
    }
  }
  sample.metadata["sub_seed"] = sub_seed;
  sample.metadata["attempt"] = attempt;
  return sample;
}

}  // namespace

LabeledSample generate_sample(const SplitSpec& spec, int index, const BaseGraphCorpus* corpus) {
  constexpr int kMaxAttempts = 64;
  std::string last_error;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    try {
      return generate_sample_attempt(spec, index, attempt, corpus);
    } catch (const GenerationError& e) {
      last_error = e.what();
    } catch (const UndecidedError& e) {
      last_error = e.what();
    }
  }
  throw GenerationError(std::string("generate_sample: retries exhausted for ") +
                        task_name(spec.task) + "/" + split_name(spec.split) + " index " +
                        std::to_string(index) + ": " + last_error);
}

namespace {

std::string sample_id(int index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%06d", index);
  return buf;
}

double round_10_significant(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return std::strtod(buf, nullptr);
}

nlohmann::json graph_file_json(const LabeledSample& sample) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [u, v] : sample.graph.edges()) edges.push_back({u, v});
  return nlohmann::json{{"num_nodes", sample.graph.num_nodes()},
                        {"edges", std::move(edges)},
                        {"label", sample.label},
                        {"metadata", sample.metadata}};
}

std::vector<uint8_t> to_bytes(const std::string& s) {
  return std::vector<uint8_t>(s.begin(), s.end());
}

}  // namespace

Manifest build_split(const SplitSpec& spec, const BaseGraphCorpus* corpus,
                     const BuildOptions& options) {
  namespace fs = std::filesystem;
  if (spec.node_lo < 5 || spec.node_hi > 300 || spec.node_lo > spec.node_hi)
    throw std::invalid_argument("build_split: node range must satisfy 5 <= lo <= hi <= 300");
  if (spec.count < 0) throw std::invalid_argument("build_split: negative count");
  const fs::path split_dir = options.out_root / task_name(spec.task) / split_name(spec.split);
  fs::create_directories(split_dir / "graphs");
  if (!options.layouts.empty()) fs::create_directories(split_dir / "images");

  Manifest manifest;
  manifest.path = split_dir / "manifest.jsonl";
  manifest.records.resize(static_cast<size_t>(spec.count));

  nlohmann::json layout_names = nlohmann::json::array();
  for (LayoutAlgorithm a : options.layouts) layout_names.push_back(layout_algorithm_name(a));
  manifest.header = nlohmann::json{{"type", "header"},
                                   {"toolkit_version", kToolkitVersion},
                                   {"task", task_name(spec.task)},
                                   {"split", split_name(spec.split)},
                                   {"count", spec.count},
                                   {"node_range", {spec.node_lo, spec.node_hi}},
                                   {"seed", spec.seed},
                                   {"layouts", layout_names},
                                   {"resolution", options.resolution}};

  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto work = [&]() {
    while (!failed.load(std::memory_order_relaxed)) {
      const int index = next.fetch_add(1);
      if (index >= spec.count) break;
      try {
        LabeledSample sample = generate_sample(spec, index, corpus);
        const uint64_t sub_seed = sample.metadata.at("sub_seed").get<uint64_t>();
        const std::string id = sample_id(index);

        const std::string graph_rel = "graphs/" + id + ".json";
        write_file_atomic(split_dir / graph_rel, to_bytes(graph_file_json(sample).dump() + "\n"));

        ManifestRecord record;
        record.id = id;
        record.graph_path = graph_rel;
        record.label = spec.task == Task::spectral
                           ? nlohmann::json(round_10_significant(sample.label.get<double>()))
                           : sample.label;
        record.metadata = sample.metadata;

        RenderSpec render_spec;
        render_spec.resolution = options.resolution;
        for (LayoutAlgorithm algo : options.layouts) {
          const char* name = layout_algorithm_name(algo);
          const uint64_t layout_seed = derive_seed(sub_seed, {hash_str64(name)});
          const Layout layout = compute_layout(algo, sample.graph, layout_seed);
          const std::string image_rel = std::string("images/") + id + "_" + name + ".png";
          write_png(split_dir / image_rel, render_image(sample.graph, layout, render_spec));
          record.images[name] = image_rel;
        }
        manifest.records[static_cast<size_t>(index)] = std::move(record);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        break;
      }
    }
  };

  const int workers = std::max(1, options.workers);
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);

  // Manifest is written once, in index order, after all samples landed.
  std::string lines = manifest.header.dump() + "\n";
  for (const ManifestRecord& r : manifest.records) {
    nlohmann::json record{{"id", r.id},
                          {"graph", r.graph_path},
                          {"images", r.images},
                          {"label", r.label},
                          {"metadata", r.metadata}};
    lines += record.dump() + "\n";
  }
  write_file_atomic(manifest.path, to_bytes(lines));
  return manifest;
}

Manifest read_manifest(const std::filesystem::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw std::runtime_error("cannot open manifest: " + manifest_path.string());
  Manifest manifest;
  manifest.path = manifest_path;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line);
    if (!have_header) {
      if (j.value("type", "") != "header")
        throw std::runtime_error("manifest missing header line: " + manifest_path.string());
      manifest.header = std::move(j);
      have_header = true;
      continue;
    }
    ManifestRecord r;
    r.id = j.at("id").get<std::string>();
    r.graph_path = j.at("graph").get<std::string>();
    for (const auto& [k, v] : j.at("images").items()) r.images[k] = v.get<std::string>();
    r.label = j.at("label");
    r.metadata = j.at("metadata");
    manifest.records.push_back(std::move(r));
  }
  if (!have_header) throw std::runtime_error("empty manifest: " + manifest_path.string());
  return manifest;
}

namespace {

Graph graph_from_json(const nlohmann::json& j) {
  EdgeList edges;
  for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  return Graph(j.at("num_nodes").get<int>(), std::move(edges));
}

const char* kTopologyFamilyNames[] = {"cyclic",       "geometric",  "community",
                                      "hierarchical", "bottleneck", "multicore"};

}  // namespace

VerifyReport verify_dataset(const std::filesystem::path& manifest_path) {
  namespace fs = std::filesystem;
  const Manifest manifest = read_manifest(manifest_path);
  const fs::path dir = manifest_path.parent_path();
  const Task task = task_from_name(manifest.header.at("task").get<std::string>());
  const int node_lo = manifest.header.at("node_range")[0].get<int>();
  const int node_hi = manifest.header.at("node_range")[1].get<int>();

  VerifyReport report;
  auto fail = [&report](const std::string& id, const std::string& reason) {
    ++report.failed;
    report.failures.push_back(id + ": " + reason);
  };

  if (static_cast<int>(manifest.records.size()) != manifest.header.at("count").get<int>())
    fail("<manifest>", "record count does not match header");

  for (size_t i = 0; i < manifest.records.size(); ++i) {
    const ManifestRecord& r = manifest.records[i];
    ++report.checked;
    if (r.id != sample_id(static_cast<int>(i))) {
      fail(r.id, "ids not dense/ordered");
      continue;
    }
    const fs::path graph_path = dir / r.graph_path;
    if (!fs::exists(graph_path)) {
      fail(r.id, "graph file missing");
      continue;
    }
    bool images_ok = true;
    for (const auto& [layout, rel] : r.images) {
      if (!fs::exists(dir / rel)) {
        fail(r.id, "image missing: " + layout);
        images_ok = false;
      }
    }
    if (!images_ok) continue;

    nlohmann::json gj;
    try {
      std::ifstream in(graph_path);
      in >> gj;
    } catch (const std::exception& e) {
      fail(r.id, std::string("graph parse error: ") + e.what());
      continue;
    }

    Graph g;
    try {
      g = graph_from_json(gj);
    } catch (const std::exception& e) {
      fail(r.id, std::string("invalid graph: ") + e.what());
      continue;
    }

    if (g.num_nodes() < node_lo || g.num_nodes() > node_hi) {
      fail(r.id, "node count " + std::to_string(g.num_nodes()) + " outside [" +
                     std::to_string(node_lo) + ", " + std::to_string(node_hi) + "]");
      continue;
    }
    if (!is_connected(g)) {
      fail(r.id, "graph is disconnected");
      continue;
    }

    // Manifest label mirrors the graph file's label (10 significant digits
    // for the real-valued task, exact otherwise).
    if (task == Task::spectral) {
      const double manifest_label = r.label.get<double>();
      const double stored = gj.at("label").get<double>();
      if (std::abs(manifest_label - stored) > 1e-9 * std::max(1.0, std::abs(stored))) {
        fail(r.id, "manifest label drifts from the stored graph label");
        continue;
      }
    } else if (r.label != gj.at("label")) {
      fail(r.id, "manifest label differs from the stored graph label");
      continue;
    }

    switch (task) {
      case Task::topology: {
        const int label = gj.at("label").get<int>();
        if (label < 0 || label > 5) {
          fail(r.id, "topology label out of range");
          break;
        }
        const std::string family = gj.at("metadata").value("family", "");
        if (family != kTopologyFamilyNames[label])
          fail(r.id, "family tag '" + family + "' does not match label " + std::to_string(label));
        break;
      }
      case Task::bridge: {
        const int label = gj.at("label").get<int>();
        const int actual = find_bridges(g).count;
        if (label != actual)
          fail(r.id, "bridge count " + std::to_string(label) + " != recomputed " +
                         std::to_string(actual));
        break;
      }
      case Task::spectral: {
        const double label = gj.at("label").get<double>();
        const double actual = spectral_gap(g).lambda2;
        if (std::abs(label - actual) > 1e-6)
          fail(r.id, "lambda2 " + std::to_string(label) + " differs from recomputed " +
                         std::to_string(actual));
        else if (!(actual > 0.0))
          fail(r.id, "lambda2 not positive");
        break;
      }
      case Task::symmetry: {
        const int label = gj.at("label").get<int>();
        SymmetryVerdict verdict;
        try {
          verdict = find_nontrivial_automorphism(g);
        } catch (const UndecidedError&) {
          fail(r.id, "symmetry verdict undecided on re-verification");
          break;
        }
        if (verdict.symmetric != (label == 1)) {
          fail(r.id, "symmetry label does not match recomputed verdict");
          break;
        }
        if (label == 1) {
          if (!gj.at("metadata").contains("witness")) {
            fail(r.id, "symmetric sample missing witness");
            break;
          }
          std::vector<int> witness =
              gj.at("metadata").at("witness").get<std::vector<int>>();
          bool identity = true;
          for (size_t v = 0; v < witness.size(); ++v)
            identity = identity && witness[v] == static_cast<int>(v);
          if (identity || !verify_automorphism(g, witness))
            fail(r.id, "stored witness is not a non-identity automorphism");
        }
        break;
      }
    }
  }
  return report;
}

std::vector<std::filesystem::path> find_manifests(const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  std::vector<fs::path> out;
  if (!fs::exists(root)) return out;
  for (const auto& entry : fs::recursive_directory_iterator(root))
    if (entry.is_regular_file() && entry.path().filename() == "manifest.jsonl")
      out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ga
