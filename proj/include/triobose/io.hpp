#pragma once

// Table serialization for the command-line front end. One rectangular table
// per run, written either as CSV (comma separated, '.' decimal point, header
// row, LF endings, 12 significant digits) or as a JSON object with the run
// configuration echoed under "config" and the table under "rows". Both
// writers are byte deterministic for identical inputs.

#include "json.hpp"

#include <string>
#include <vector>

namespace triobose::io {

struct Cell {
    enum class Kind { number, text, blank };
    Kind kind = Kind::blank;
    double num = 0.0;
    std::string text;

    static Cell of(double v);       // throws std::invalid_argument on non-finite v
    static Cell of(std::string s);
    static Cell none();
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;  // each row exactly columns.size() wide

    void add_row(std::vector<Cell> cells);  // validates the width
};

// 12-significant-digit representation used by the CSV writer; "%.12g" with
// the C locale's '.' decimal point.
std::string format_number(double v);

std::string to_csv(const Table& t);
std::string to_json(const Table& t, const nlohmann::ordered_json& config);

// Writes to the given path, or to stdout when the path is empty.
void write_output(const std::string& path, const std::string& content);

}  // namespace triobose::io
