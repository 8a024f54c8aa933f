#pragma once

#include <charconv>
#include <cstddef>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pfcm/dataset.hpp"
#include "pfcm/errors.hpp"

namespace pfcm {

struct CsvOptions {
    char delimiter = ',';
    std::set<std::string> missing_tokens = {"", "?", "NaN"};
    // Column to drop as a class label: none, a 0-based index, or negative
    // counting from the end (-1 = last column).
    std::optional<int> label_column;
};

// Shortest round-tripping decimal representation.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, delim)) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == delim) cells.push_back("");
    return cells;
}

inline bool parse_double(const std::string& s, double& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    const auto res = std::from_chars(first, last, out);
    return res.ec == std::errc{} && res.ptr == last;
}

}  // namespace detail

struct LoadedCsv {
    DataSet data;
    std::vector<std::string> labels;  // dropped label column, empty when none
    std::vector<std::string> header;  // empty when the file had none
};

// Reads a delimiter-separated numeric table. A first row containing any cell
// that is neither numeric nor a missing token is treated as a header. Cells
// matching a missing token become mask=false with placeholder 0.0.
inline LoadedCsv load_csv(const std::string& path, const CsvOptions& opts = {}) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");

    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (detail::trim(line).empty()) continue;
        rows.push_back(detail::split(line, opts.delimiter));
    }
    if (rows.empty()) throw DataError("'" + path + "' contains no data");

    LoadedCsv out;
    std::size_t first_row = 0;
    {
        bool header = false;
        for (const auto& cell : rows[0]) {
            double ignored;
            if (!opts.missing_tokens.count(cell) && !detail::parse_double(cell, ignored))
                header = true;
        }
        if (header) {
            out.header = rows[0];
            first_row = 1;
        }
    }
    if (first_row >= rows.size()) throw DataError("'" + path + "' has a header but no rows");

    const std::size_t width = rows[first_row].size();
    std::optional<std::size_t> label_idx;
    if (opts.label_column) {
        const int raw = *opts.label_column;
        const long resolved = raw >= 0 ? raw : static_cast<long>(width) + raw;
        if (resolved < 0 || resolved >= static_cast<long>(width))
            throw ConfigError("label column " + std::to_string(raw) + " out of range for " +
                              std::to_string(width) + " columns");
        label_idx = static_cast<std::size_t>(resolved);
    }
    const std::size_t s = width - (label_idx ? 1 : 0);
    const std::size_t n = rows.size() - first_row;
    if (s == 0) throw DataError("'" + path + "': no feature columns left");

    Matrix values(n, s);
    Mask mask(n, s, true);
    for (std::size_t r = 0; r < n; ++r) {
        const auto& cells = rows[first_row + r];
        if (cells.size() != width)
            throw DataError("'" + path + "' row " + std::to_string(first_row + r + 1) + " has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(width));
        std::size_t j = 0;
        for (std::size_t cidx = 0; cidx < width; ++cidx) {
            if (label_idx && cidx == *label_idx) {
                out.labels.push_back(cells[cidx]);
                continue;
            }
            if (opts.missing_tokens.count(cells[cidx])) {
                mask.set(r, j, false);
                values(r, j) = 0.0;
            } else {
                double v;
                if (!detail::parse_double(cells[cidx], v))
                    throw DataError("'" + path + "' row " + std::to_string(first_row + r + 1) +
                                    " column " + std::to_string(cidx + 1) +
                                    ": cannot parse '" + cells[cidx] + "'");
                values(r, j) = v;
            }
            ++j;
        }
    }
    out.data = DataSet(std::move(values), std::move(mask));
    return out;
}

// Writes the dataset back in the same format; missing cells serialize as "?".
// An optional trailing label column and header may be supplied.
inline void save_csv(const std::string& path, const DataSet& data,
                     const std::vector<std::string>& header = {},
                     const std::vector<std::string>& labels = {}, char delimiter = ',') {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    if (!header.empty()) {
        for (std::size_t j = 0; j < header.size(); ++j)
            out << (j ? std::string(1, delimiter) : "") << header[j];
        out << '\n';
    }
    for (std::size_t k = 0; k < data.n(); ++k) {
        for (std::size_t j = 0; j < data.s(); ++j) {
            if (j) out << delimiter;
            if (data.mask.observed(k, j))
                out << format_double(data.values(k, j));
            else
                out << '?';
        }
        if (!labels.empty()) out << delimiter << labels[k];
        out << '\n';
    }
    if (!out) throw DataError("failed writing '" + path + "'");
}

}  // namespace pfcm
