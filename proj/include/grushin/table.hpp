#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace grushin {

using Cell = std::variant<double, std::string>;

// Rows of named columns, the carrier for every CSV the CLI writes.
struct SweepTable {
    std::vector<std::string> headers;
    std::vector<std::vector<Cell>> rows;

    // Every row has headers.size() cells and every numeric cell is finite.
    void validate() const;
    void add_row(std::vector<Cell> row);
    std::size_t column(const std::string& name) const;  // throws std::out_of_range
    double number(std::size_t row, const std::string& name) const;
};

// 17 significant digits, scientific.
std::string format_number(double value);

void write_csv(const SweepTable& table, std::ostream& out);
// Throws IoError when the file cannot be written.
void emit_csv(const SweepTable& table, const std::filesystem::path& path);

// Cells that parse completely as a double become numbers, others strings.
SweepTable read_csv(std::istream& in);
SweepTable read_csv(const std::filesystem::path& path);  // throws IoError

struct PlotSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

// Minimal SVG line plot, one polyline per series.
void emit_svg(const std::filesystem::path& path, const std::string& title, const std::string& x_label,
              const std::string& y_label, const std::vector<PlotSeries>& series);

}  // namespace grushin
