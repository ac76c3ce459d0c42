#include "cvar/dataset_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace cvar {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, delim)) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == delim) cells.push_back("");
    return cells;
}

bool looks_numeric(const std::string& cell) {
    if (cell.empty()) return false;
    char* end = nullptr;
    std::strtod(cell.c_str(), &end);
    return end == cell.c_str() + cell.size();
}

}  // namespace

Dataset load_dataset(const std::string& path, const LoadOptions& opts) {
    std::ifstream in(path);
    if (!in) throw ParseError("load_dataset: cannot open " + path);

    std::vector<std::string> names;
    std::vector<std::vector<double>> rows;
    std::string line;
    int line_no = 0;
    size_t width = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        auto cells = split(line, opts.delimiter);
        if (names.empty() && rows.empty() && opts.header) {
            names = cells;
            width = cells.size();
            continue;
        }
        if (width == 0) width = cells.size();
        if (cells.size() != width)
            throw RaggedRows("load_dataset: line " + std::to_string(line_no) + " has " +
                             std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(width));
        std::vector<double> row;
        row.reserve(cells.size());
        for (size_t c = 0; c < cells.size(); ++c) {
            if (!looks_numeric(cells[c]))
                throw NonNumericCell("load_dataset: line " + std::to_string(line_no) +
                                     ", column " + std::to_string(c + 1) +
                                     ": cannot parse '" + cells[c] + "'");
            row.push_back(std::stod(cells[c]));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("load_dataset: " + path + " holds no data rows");

    if (names.empty())
        for (size_t c = 0; c < width; ++c) names.push_back("v" + std::to_string(c + 1));

    std::vector<int> keep;
    if (!opts.columns.empty()) {
        for (const auto& want : opts.columns) {
            auto it = std::find(names.begin(), names.end(), want);
            if (it == names.end())
                throw ParseError("load_dataset: column '" + want + "' not in header");
            keep.push_back(static_cast<int>(it - names.begin()));
        }
    } else {
        for (size_t c = 0; c < width; ++c) keep.push_back(static_cast<int>(c));
    }

    Dataset data;
    data.values.resize(static_cast<int>(rows.size()), static_cast<int>(keep.size()));
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t c = 0; c < keep.size(); ++c)
            data.values(static_cast<int>(r), static_cast<int>(c)) =
                rows[r][static_cast<size_t>(keep[c])];
    for (int c : keep) data.names.push_back(names[static_cast<size_t>(c)]);
    return data;
}

namespace {

void write_matrix(std::ostream& out, const Matrix& M) {
    out.precision(6);
    for (int i = 0; i < M.rows(); ++i) {
        for (int j = 0; j < M.cols(); ++j) {
            if (j) out << ",";
            out << M(i, j);
        }
        out << "\n";
    }
}

}  // namespace

void save_dataset_csv(const std::string& path, const Dataset& data) {
    std::ofstream out(path);
    if (!out) throw ParseError("save_dataset_csv: cannot open " + path + " for writing");
    for (size_t c = 0; c < data.names.size(); ++c) {
        if (c) out << ",";
        out << data.names[c];
    }
    out << "\n";
    write_matrix(out, data.values);
}

void save_matrix_csv(const std::string& path, const Matrix& M) {
    std::ofstream out(path);
    if (!out) throw ParseError("save_matrix_csv: cannot open " + path + " for writing");
    write_matrix(out, M);
}

}  // namespace cvar
