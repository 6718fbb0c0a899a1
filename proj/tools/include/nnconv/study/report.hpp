#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nnconv::study {

/// One typed cell, already rendered: CSV writes text verbatim, JSON quotes
/// only text cells. Floating-point values go through fmt17 so that report
/// files are byte-identical across runs.
struct Cell {
    enum class Type { text, number, boolean, integer };
    Type type;
    std::string value;
};

Cell text_cell(std::string v);
Cell num_cell(double v);
Cell int_cell(long long v);
Cell bool_cell(bool v);

/// 17-significant-digit rendering; round-trips doubles exactly.
std::string fmt17(double v);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string to_csv(const Table& table);
std::string to_json(const Table& table);

/// Writes the rendered table to path in the given format ("csv" | "json").
void write_report(const Table& table, const std::string& path, const std::string& format);

}  // namespace nnconv::study
