#include "portfolio/dataset.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "portfolio/features.hpp"

namespace portfolio {

std::string double_to_string(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hash_hex(const std::string& bytes) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return std::string(buf);
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("short write to " + path.string());
}

namespace {

void append_lines(const std::filesystem::path& path, const std::vector<std::string>& lines) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out) throw IoError("cannot append to " + path.string());
    for (const std::string& l : lines) out << l << '\n';
    if (!out) throw IoError("short write to " + path.string());
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::vector<std::string> lines;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) lines.push_back(line);
    return lines;
}

}  // namespace

void append_lp_entries(const std::filesystem::path& path,
                       const std::vector<LpDatasetEntry>& entries) {
    std::vector<std::string> lines;
    lines.reserve(entries.size());
    for (const LpDatasetEntry& e : entries) {
        nlohmann::json j;
        j["instance"] = nlohmann::json::parse(lp_to_json(e.instance));
        j["record"] = nlohmann::json::parse(solve_record_to_json(e.record));
        lines.push_back(j.dump());
    }
    append_lines(path, lines);
}

std::vector<LpDatasetEntry> read_lp_dataset(const std::filesystem::path& path) {
    std::vector<LpDatasetEntry> out;
    for (const std::string& line : read_lines(path)) {
        const nlohmann::json j = nlohmann::json::parse(line);
        LpDatasetEntry e;
        e.instance = lp_from_json(j.at("instance").dump());
        e.record = solve_record_from_json(j.at("record").dump());
        out.push_back(std::move(e));
    }
    return out;
}

void append_graph_entries(const std::filesystem::path& path,
                          const std::vector<GraphDatasetEntry>& entries) {
    std::vector<std::string> lines;
    lines.reserve(entries.size());
    for (const GraphDatasetEntry& e : entries) {
        nlohmann::json j;
        j["instance"] = nlohmann::json::parse(graph_to_json(e.graph));
        j["record"] = nlohmann::json::parse(run_record_to_json(e.record));
        lines.push_back(j.dump());
    }
    append_lines(path, lines);
}

std::vector<GraphDatasetEntry> read_graph_dataset(const std::filesystem::path& path) {
    std::vector<GraphDatasetEntry> out;
    for (const std::string& line : read_lines(path)) {
        const nlohmann::json j = nlohmann::json::parse(line);
        GraphDatasetEntry e;
        e.graph = graph_from_json(j.at("instance").dump());
        e.record = run_record_from_json(j.at("record").dump());
        out.push_back(std::move(e));
    }
    return out;
}

std::set<std::string> existing_instance_ids(const std::filesystem::path& path) {
    std::set<std::string> ids;
    if (!std::filesystem::exists(path)) return ids;
    for (const std::string& line : read_lines(path)) {
        const nlohmann::json j = nlohmann::json::parse(line);
        ids.insert(j.at("instance").at("id").get<std::string>());
    }
    return ids;
}

void write_feature_csv(const std::filesystem::path& path, const FeatureTable& table) {
    const FeatureSchema& schema = feature_schema(table.schema_id);
    if (schema.size() != table.features.cols())
        throw SchemaMismatchError("feature table does not match schema " + table.schema_id);

    std::ostringstream csv;
    csv << "id";
    for (const std::string& name : schema.names) csv << ',' << name;
    for (const std::string& name : table.label_names) csv << ',' << name;
    csv << '\n';
    for (std::size_t i = 0; i < table.ids.size(); ++i) {
        csv << table.ids[i];
        for (std::size_t j = 0; j < table.features.cols(); ++j)
            csv << ',' << double_to_string(table.features(i, j));
        for (std::size_t j = 0; j < table.labels.cols(); ++j)
            csv << ',' << double_to_string(table.labels(i, j));
        csv << '\n';
    }
    write_text_file(path, csv.str());

    nlohmann::json meta;
    meta["schema_id"] = table.schema_id;
    meta["label_columns"] = table.label_names;
    meta["dataset_tag"] = table.dataset_tag;
    meta["rows"] = table.ids.size();
    write_text_file(path.string() + ".meta.json", meta.dump(2) + "\n");
}

FeatureTable read_feature_csv(const std::filesystem::path& path) {
    const nlohmann::json meta = nlohmann::json::parse(read_text_file(path.string() + ".meta.json"));
    FeatureTable table;
    table.schema_id = meta.at("schema_id").get<std::string>();
    table.label_names = meta.at("label_columns").get<std::vector<std::string>>();
    table.dataset_tag = meta.at("dataset_tag").get<std::string>();

    const FeatureSchema& schema = feature_schema(table.schema_id);
    const std::size_t f = schema.size();
    const std::size_t l = table.label_names.size();

    const std::vector<std::string> lines = read_lines(path);
    if (lines.empty()) throw IoError("empty feature csv: " + path.string());
    const std::size_t rows = lines.size() - 1;
    table.features = Matrix(rows, f);
    table.labels = Matrix(rows, l);
    for (std::size_t r = 0; r < rows; ++r) {
        std::stringstream ss(lines[r + 1]);
        std::string cell;
        if (!std::getline(ss, cell, ',')) throw IoError("bad csv row");
        table.ids.push_back(cell);
        for (std::size_t j = 0; j < f + l; ++j) {
            if (!std::getline(ss, cell, ',')) throw IoError("truncated csv row");
            double v = 0.0;
            const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (res.ec != std::errc()) throw IoError("bad number in csv: " + cell);
            if (j < f)
                table.features(r, j) = v;
            else
                table.labels(r, j - f) = v;
        }
    }
    return table;
}

void write_manifest(const std::filesystem::path& path, const Manifest& manifest) {
    nlohmann::json j;
    j["tool_version"] = manifest.tool_version;
    j["created_utc"] = manifest.created_utc;
    j["config_hash"] = manifest.config_hash;
    nlohmann::json arts = nlohmann::json::object();
    for (const auto& [p, h] : manifest.artifacts) arts[p] = h;
    j["artifacts"] = arts;
    write_text_file(path, j.dump(2) + "\n");
}

Manifest read_manifest(const std::filesystem::path& path) {
    const nlohmann::json j = nlohmann::json::parse(read_text_file(path));
    Manifest m;
    m.tool_version = j.at("tool_version").get<std::string>();
    m.created_utc = j.at("created_utc").get<std::string>();
    m.config_hash = j.at("config_hash").get<std::string>();
    for (const auto& [k, v] : j.at("artifacts").items())
        m.artifacts.emplace_back(k, v.get<std::string>());
    return m;
}

}  // namespace portfolio
