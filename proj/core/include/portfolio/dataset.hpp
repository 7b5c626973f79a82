#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "portfolio/apsp.hpp"
#include "portfolio/graph.hpp"
#include "portfolio/lp.hpp"
#include "portfolio/lp_gen.hpp"
#include "portfolio/simplex.hpp"

namespace portfolio {

struct GraphDatasetEntry {
    WeightedGraph graph;
    RunRecord record;
};

// Shortest round-trip decimal form; identical bytes for identical doubles.
std::string double_to_string(double v);

std::uint64_t fnv1a64(const std::string& bytes);
std::string hash_hex(const std::string& bytes);

std::string read_text_file(const std::filesystem::path& path);   // throws IoError
void write_text_file(const std::filesystem::path& path, const std::string& text);

// JSON-lines datasets: one {"instance": ..., "record": ...} object per line.
void append_lp_entries(const std::filesystem::path& path,
                       const std::vector<LpDatasetEntry>& entries);
std::vector<LpDatasetEntry> read_lp_dataset(const std::filesystem::path& path);
void append_graph_entries(const std::filesystem::path& path,
                          const std::vector<GraphDatasetEntry>& entries);
std::vector<GraphDatasetEntry> read_graph_dataset(const std::filesystem::path& path);
// Instance ids already present (resume support); empty when the file is absent.
std::set<std::string> existing_instance_ids(const std::filesystem::path& path);

// Feature matrix with labels, persisted as CSV plus a JSON sidecar
// ("<path>.meta.json") recording {schema_id, label_columns, dataset_tag}.
struct FeatureTable {
    std::string schema_id;
    std::string dataset_tag;
    std::vector<std::string> ids;
    Matrix features;
    std::vector<std::string> label_names;
    Matrix labels;
};

void write_feature_csv(const std::filesystem::path& path, const FeatureTable& table);
FeatureTable read_feature_csv(const std::filesystem::path& path);

struct Manifest {
    std::string tool_version;
    std::string created_utc;
    std::string config_hash;
    std::vector<std::pair<std::string, std::string>> artifacts;  // path, content hash
};

void write_manifest(const std::filesystem::path& path, const Manifest& manifest);
Manifest read_manifest(const std::filesystem::path& path);

}  // namespace portfolio
