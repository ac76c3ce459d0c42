#ifndef CVAR_DATASET_IO_HPP
#define CVAR_DATASET_IO_HPP

#include <string>
#include <vector>

#include "cvar/acf.hpp"

namespace cvar {

struct LoadOptions {
    char delimiter = ',';
    bool header = true;
    /// Optional column subset, by header name; empty keeps every column.
    std::vector<std::string> columns;
};

/// Read a delimited numeric table; rows in file order are taken as time
/// order. Blank lines are ignored, errors report 1-based line numbers.
Dataset load_dataset(const std::string& path, const LoadOptions& opts = {});

/// Write a Dataset back out with a header row, 6 significant digits.
void save_dataset_csv(const std::string& path, const Dataset& data);

/// Write a bare matrix as CSV with 6 significant digits.
void save_matrix_csv(const std::string& path, const Matrix& M);

}  // namespace cvar

#endif
