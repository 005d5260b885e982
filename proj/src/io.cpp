#include "triobose/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace triobose::io {

Cell Cell::of(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("table cells must be finite");
    Cell c;
    c.kind = Kind::number;
    c.num = v;
    return c;
}

Cell Cell::of(std::string s) {
    Cell c;
    c.kind = Kind::text;
    c.text = std::move(s);
    return c;
}

Cell Cell::none() { return Cell{}; }

void Table::add_row(std::vector<Cell> cells) {
    if (cells.size() != columns.size())
        throw std::invalid_argument("row width does not match the header");
    rows.push_back(std::move(cells));
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string to_csv(const Table& t) {
    std::string out;
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        if (c) out += ',';
        out += csv_escape(t.columns[c]);
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            switch (row[c].kind) {
                case Cell::Kind::number: out += format_number(row[c].num); break;
                case Cell::Kind::text: out += csv_escape(row[c].text); break;
                case Cell::Kind::blank: break;
            }
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& t, const nlohmann::ordered_json& config) {
    nlohmann::ordered_json doc;
    doc["config"] = config;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t c = 0; c < row.size(); ++c) {
            switch (row[c].kind) {
                case Cell::Kind::number: obj[t.columns[c]] = row[c].num; break;
                case Cell::Kind::text: obj[t.columns[c]] = row[c].text; break;
                case Cell::Kind::blank: obj[t.columns[c]] = nullptr; break;
            }
        }
        doc["rows"].push_back(std::move(obj));
    }
    return doc.dump(2) + "\n";
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        std::cout.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << content;
    if (!f) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace triobose::io
