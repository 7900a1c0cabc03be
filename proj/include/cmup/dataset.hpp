#pragma once

// CSV tables, JSON summaries, and the reproducibility manifest written next
// to every dataset.  Numbers are serialized with 17 significant digits so a
// file round-trips the exact doubles that produced it.

#include <cstddef>
#include <ctime>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "cmup/config.hpp"
#include "cmup/errors.hpp"
#include "cmup/format.hpp"
#include "cmup/version.hpp"

namespace cmup::io {

using json = nlohmann::json;

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
        if (header_.empty()) throw domain_error("CsvTable: empty header");
    }

    void add_row(std::vector<std::string> cells) {
        if (cells.size() != header_.size())
            throw domain_error("CsvTable: row has " + std::to_string(cells.size()) +
                               " cells, header has " + std::to_string(header_.size()));
        rows_.push_back(std::move(cells));
    }

    std::size_t row_count() const { return rows_.size(); }
    const std::vector<std::string>& header() const { return header_; }

    std::string render() const {
        std::string out = join(header_);
        for (const auto& row : rows_) {
            out += '\n';
            out += join(row);
        }
        out += '\n';
        return out;
    }

private:
    static std::string join(const std::vector<std::string>& cells) {
        std::string line;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) line += ',';
            line += cells[i];
        }
        return line;
    }

    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

inline std::string cell(double v) { return format_sig17(v); }

struct RunManifest {
    std::string command_line;
    ToleranceConfig tolerance_config;
    std::string artifact_version;
    std::string timestamp; // ISO-8601 UTC; the one field excluded from determinism
    std::vector<std::string> notes;
};

inline std::string iso8601_utc_now() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline RunManifest make_manifest(std::string command_line, const ToleranceConfig& cfg,
                                 std::vector<std::string> notes = {}) {
    RunManifest m;
    m.command_line = std::move(command_line);
    m.tolerance_config = cfg;
    m.artifact_version = artifact_version;
    m.timestamp = iso8601_utc_now();
    m.notes = std::move(notes);
    return m;
}

inline json manifest_json(const RunManifest& m) {
    json tc;
    tc["series_tail_tol"] = m.tolerance_config.series_tail_tol;
    tc["root_tol"] = m.tolerance_config.root_tol;
    tc["quad_nodes"] = m.tolerance_config.quad_nodes;
    tc["quad_panels"] = m.tolerance_config.quad_panels;
    tc["a_max"] = m.tolerance_config.a_max;
    tc["a_small_max"] = m.tolerance_config.a_small_max;
    json j;
    j["command_line"] = m.command_line;
    j["tolerance_config"] = tc;
    j["artifact_version"] = m.artifact_version;
    j["timestamp"] = m.timestamp;
    if (!m.notes.empty()) j["notes"] = m.notes;
    return j;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline void write_manifest(const std::string& path, const RunManifest& m) {
    write_text_file(path, manifest_json(m).dump(2) + "\n");
}

} // namespace cmup::io
