#include "grushin/table.hpp"

#include "grushin/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace grushin {

void SweepTable::validate() const {
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != headers.size()) {
            throw InvalidProblem("table row " + std::to_string(r) + " has " +
                                 std::to_string(rows[r].size()) + " cells, expected " +
                                 std::to_string(headers.size()));
        }
        for (const Cell& c : rows[r]) {
            if (const double* v = std::get_if<double>(&c); v && !std::isfinite(*v)) {
                throw InvalidProblem("table row " + std::to_string(r) + " has a non-finite entry");
            }
        }
    }
}

void SweepTable::add_row(std::vector<Cell> row) {
    if (row.size() != headers.size()) throw InvalidProblem("row width does not match headers");
    rows.push_back(std::move(row));
}

std::size_t SweepTable::column(const std::string& name) const {
    const auto it = std::find(headers.begin(), headers.end(), name);
    if (it == headers.end()) throw std::out_of_range("no column named " + name);
    return static_cast<std::size_t>(it - headers.begin());
}

double SweepTable::number(std::size_t row, const std::string& name) const {
    const Cell& c = rows.at(row).at(column(name));
    if (const double* v = std::get_if<double>(&c)) return *v;
    throw std::invalid_argument("column " + name + " is not numeric");
}

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.16e", value);
    return buf;
}

namespace {

std::string quote_field(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::string> split_record(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

Cell parse_cell(const std::string& text) {
    if (text.empty()) return text;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != nullptr && *end == '\0') return v;
    return text;
}

}  // namespace

void write_csv(const SweepTable& table, std::ostream& out) {
    table.validate();
    for (std::size_t i = 0; i < table.headers.size(); ++i) {
        if (i) out << ',';
        out << quote_field(table.headers[i]);
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            if (const double* v = std::get_if<double>(&row[i])) {
                out << format_number(*v);
            } else {
                out << quote_field(std::get<std::string>(row[i]));
            }
        }
        out << '\n';
    }
}

void emit_csv(const SweepTable& table, const std::filesystem::path& path) {
    table.validate();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    write_csv(table, out);
    out.flush();
    if (!out) throw IoError("failed writing " + path.string());
}

SweepTable read_csv(std::istream& in) {
    SweepTable table;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_record(line);
        if (header) {
            table.headers = std::move(fields);
            header = false;
            continue;
        }
        std::vector<Cell> row;
        row.reserve(fields.size());
        for (const auto& f : fields) row.push_back(parse_cell(f));
        if (row.size() != table.headers.size()) {
            throw InvalidProblem("CSV record has " + std::to_string(row.size()) + " fields, header has " +
                                 std::to_string(table.headers.size()));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

SweepTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    return read_csv(in);
}

void emit_svg(const std::filesystem::path& path, const std::string& title, const std::string& x_label,
              const std::string& y_label, const std::vector<PlotSeries>& series) {
    constexpr double width = 640.0, height = 420.0, margin = 60.0;
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    }
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    if (!(ymax > ymin)) ymax = ymin + 1.0;
    if (!std::isfinite(xmin)) xmin = 0.0, xmax = 1.0;
    if (!std::isfinite(ymin)) ymin = 0.0, ymax = 1.0;

    auto px = [&](double x) { return margin + (x - xmin) / (xmax - xmin) * (width - 2 * margin); };
    auto py = [&](double y) { return height - margin - (y - ymin) / (ymax - ymin) * (height - 2 * margin); };
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

    std::ostringstream svg;
    char buf[128];
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title << "</text>\n";
    svg << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin << "\" y2=\""
        << height - margin << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\"" << height - margin
        << "\" stroke=\"black\"/>\n";
    std::snprintf(buf, sizeof buf, "%.4g", xmin);
    svg << "<text x=\"" << margin << "\" y=\"" << height - margin + 18 << "\" font-size=\"11\">" << buf << "</text>\n";
    std::snprintf(buf, sizeof buf, "%.4g", xmax);
    svg << "<text x=\"" << width - margin << "\" y=\"" << height - margin + 18
        << "\" text-anchor=\"end\" font-size=\"11\">" << buf << "</text>\n";
    std::snprintf(buf, sizeof buf, "%.4g", ymin);
    svg << "<text x=\"" << margin - 4 << "\" y=\"" << height - margin << "\" text-anchor=\"end\" font-size=\"11\">" << buf
        << "</text>\n";
    std::snprintf(buf, sizeof buf, "%.4g", ymax);
    svg << "<text x=\"" << margin - 4 << "\" y=\"" << margin + 4 << "\" text-anchor=\"end\" font-size=\"11\">" << buf
        << "</text>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"" << height - 16 << "\" text-anchor=\"middle\" font-size=\"13\">"
        << x_label << "</text>\n";
    svg << "<text x=\"16\" y=\"" << height / 2 << "\" transform=\"rotate(-90 16 " << height / 2
        << ")\" text-anchor=\"middle\" font-size=\"13\">" << y_label << "</text>\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = colors[k % std::size(colors)];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(s.x[i]), py(s.y[i]));
            svg << buf;
        }
        svg << "\"/>\n";
        svg << "<text x=\"" << width - margin - 4 << "\" y=\"" << margin + 14 * (k + 1)
            << "\" text-anchor=\"end\" font-size=\"11\" fill=\"" << color << "\">" << s.name << "</text>\n";
    }
    svg << "</svg>\n";

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << svg.str();
    if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace grushin
