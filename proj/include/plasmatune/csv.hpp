#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "plasmatune/errors.hpp"
#include "plasmatune/units.hpp"

namespace plasmatune {

/// Comma-separated table with a mandatory header row. Column names carry
/// their units, e.g. "frequency_hz". Numbers are written with 17 significant
/// digits so a re-read reproduces them exactly.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
        if (header_.empty()) throw InvalidArgument("CSV table needs at least one column");
    }

    class Row {
    public:
        Row& operator<<(double v) { return add(format_number(v)); }
        Row& operator<<(const std::string& s) { return add(s); }
        Row& operator<<(const char* s) { return add(s); }

    private:
        friend class CsvTable;
        explicit Row(std::vector<std::string>& cells) : cells_(cells) {}
        Row& add(std::string s) {
            cells_.push_back(std::move(s));
            return *this;
        }
        std::vector<std::string>& cells_;
    };

    Row row() {
        rows_.emplace_back();
        return Row(rows_.back());
    }

    std::string str() const {
        std::ostringstream os;
        write_line(os, header_);
        for (const auto& r : rows_) {
            if (r.size() != header_.size()) throw InvalidArgument("CSV row width does not match header");
            write_line(os, r);
        }
        return os.str();
    }

    void save(const std::string& path) const {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write CSV file '" + path + "'");
        out << str();
        if (!out) throw Error("write to '" + path + "' failed");
    }

    std::size_t size() const { return rows_.size(); }

private:
    static void write_line(std::ostream& os, const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) os << ',';
            os << cells[i];
        }
        os << '\n';
    }

    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Minimal reader for tables written by CsvTable (no quoting).
struct CsvData {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        throw InvalidArgument("CSV has no column '" + name + "'");
    }
};

inline CsvData read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open CSV file '" + path + "'");
    auto split = [](const std::string& line) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream is(line);
        while (std::getline(is, cell, ',')) cells.push_back(cell);
        return cells;
    };
    CsvData data;
    std::string line;
    if (!std::getline(in, line)) throw ParseError("CSV file is empty", 1);
    data.header = split(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        data.rows.push_back(split(line));
    }
    return data;
}

} // namespace plasmatune
