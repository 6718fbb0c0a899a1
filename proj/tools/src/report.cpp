#include "nnconv/study/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace nnconv::study {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Cell text_cell(std::string v) { return {Cell::Type::text, std::move(v)}; }
Cell num_cell(double v) { return {Cell::Type::number, fmt17(v)}; }
Cell int_cell(long long v) { return {Cell::Type::integer, std::to_string(v)}; }
Cell bool_cell(bool v) { return {Cell::Type::boolean, v ? "true" : "false"}; }

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) {
            out += ',';
        }
        out += table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) {
                out += ',';
            }
            out += row[c].value;
        }
        out += '\n';
    }
    return out;
}

namespace {

void append_json_string(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"':
                out += "\\\"";
                break;
            case '\\':
                out += "\\\\";
                break;
            default:
                out += c;
        }
    }
    out += '"';
}

}  // namespace

std::string to_json(const Table& table) {
    std::string out = "[\n";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        out += "  {";
        const auto& row = table.rows[r];
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) {
                out += ", ";
            }
            append_json_string(out, table.columns[c]);
            out += ": ";
            if (row[c].type == Cell::Type::text) {
                append_json_string(out, row[c].value);
            } else {
                out += row[c].value;
            }
        }
        out += r + 1 < table.rows.size() ? "},\n" : "}\n";
    }
    out += "]\n";
    return out;
}

void write_report(const Table& table, const std::string& path, const std::string& format) {
    if (format != "csv" && format != "json") {
        throw std::invalid_argument("write_report: format must be csv or json");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("write_report: cannot open '" + path + "'");
    }
    out << (format == "csv" ? to_csv(table) : to_json(table));
}

}  // namespace nnconv::study
