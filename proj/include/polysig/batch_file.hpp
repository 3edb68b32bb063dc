#pragma once

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "polysig/error.hpp"
#include "polysig/gram.hpp"
#include "polysig/paths.hpp"

/// Path batch files.
///
/// JSON batch: {"dim": d, "paths": [[[v, ...], ...], ...], "times": [[t, ...], ...]}
/// with "times" optional (uniform [0, 1] per path when absent).
/// CSV single path: one row per time point, one column per coordinate, with an
/// optional header line; a header whose first cell is "t" marks a time column.
namespace polysig::io {

inline PathBatch parse_batch_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("batch file is not valid JSON: ") + e.what());
    }
    try {
        if (!doc.is_object() || !doc.contains("dim") || !doc.contains("paths"))
            throw InputError("batch file needs \"dim\" and \"paths\" members");
        const auto dim = doc.at("dim").get<long long>();
        if (dim < 1) throw InputError("batch file \"dim\" must be >= 1");
        const auto& paths = doc.at("paths");
        if (!paths.is_array()) throw InputError("batch file \"paths\" must be an array");
        const nlohmann::json* times = doc.contains("times") && !doc.at("times").is_null() ? &doc.at("times") : nullptr;
        if (times && (!times->is_array() || times->size() != paths.size()))
            throw InputError("batch file \"times\" must have one entry per path");

        PathBatch out;
        out.reserve(paths.size());
        for (std::size_t k = 0; k < paths.size(); ++k) {
            const auto rows = paths[k].get<std::vector<std::vector<double>>>();
            if (rows.size() < 2) throw InputError("path " + std::to_string(k) + " has fewer than 2 points");
            for (const auto& r : rows)
                if (r.size() != static_cast<std::size_t>(dim))
                    throw InputError("path " + std::to_string(k) + " has a row with " + std::to_string(r.size()) +
                                     " entries, expected " + std::to_string(dim));
            std::vector<double> t;
            if (times) {
                t = (*times)[k].get<std::vector<double>>();
                if (t.size() != rows.size())
                    throw InputError("path " + std::to_string(k) + ": times and values differ in length");
            }
            out.push_back(make_path(std::move(t), rows));
        }
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed batch file: ") + e.what());
    }
}

inline std::string batch_to_json(const PathBatch& batch) {
    if (batch.empty()) throw InputError("cannot write an empty batch");
    nlohmann::json doc;
    doc["dim"] = batch.front().dim();
    doc["paths"] = nlohmann::json::array();
    doc["times"] = nlohmann::json::array();
    for (const auto& p : batch) {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < p.points(); ++i) {
            const auto v = p.value(i);
            rows.push_back(std::vector<double>(v.begin(), v.end()));
        }
        doc["paths"].push_back(std::move(rows));
        doc["times"].push_back(p.times());
    }
    return doc.dump();
}

inline PiecewiseLinearPath parse_path_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    bool first = true, has_time = false;
    std::vector<double> times;
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) {
            const auto b = cell.find_first_not_of(" \t");
            const auto e = cell.find_last_not_of(" \t");
            cells.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
        }
        if (first) {
            first = false;
            std::size_t pos = 0;
            bool numeric = true;
            try {
                (void)std::stod(cells.front(), &pos);
                numeric = pos == cells.front().size();
            } catch (const std::exception&) {
                numeric = false;
            }
            if (!numeric) {
                has_time = cells.front() == "t";
                continue;
            }
        }
        std::vector<double> vals;
        for (const auto& c : cells) {
            std::size_t pos = 0;
            double v = 0.0;
            try {
                v = std::stod(c, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos == 0 || pos != c.size())
                throw InputError("CSV line " + std::to_string(line_no) + ": '" + c + "' is not a number");
            vals.push_back(v);
        }
        if (has_time) {
            if (vals.size() < 2) throw InputError("CSV line " + std::to_string(line_no) + ": no coordinates after t");
            times.push_back(vals.front());
            vals.erase(vals.begin());
        }
        rows.push_back(std::move(vals));
    }
    return make_path(std::move(times), rows);
}

inline std::string read_text(const std::string& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw InputError("cannot open '" + file + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Reads a JSON batch, or a CSV single path when the name ends in ".csv".
inline PathBatch load_batch(const std::string& file) {
    const std::string text = read_text(file);
    if (file.size() >= 4 && file.compare(file.size() - 4, 4, ".csv") == 0) return {parse_path_csv(text)};
    return parse_batch_json(text);
}

inline PiecewiseLinearPath load_single_path(const std::string& file) {
    PathBatch b = load_batch(file);
    if (b.size() != 1)
        throw InputError("'" + file + "' holds " + std::to_string(b.size()) + " paths, expected exactly one");
    return std::move(b.front());
}

}  // namespace polysig::io
