#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cloud/continuous.hpp"

// Delimiter-separated ingestion and emission. Accepted delimiters: comma,
// tab, semicolon, or runs of spaces (the cause-effect benchmark format);
// auto-detection picks the first of these that splits the first data line
// into more than one field.

namespace cloud::io {

// Carries a human-readable message naming the offending row/column.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CsvData {
    std::vector<std::string> column_names;          // empty when no header row
    std::vector<std::vector<double>> columns;
    std::uint64_t rows = 0;
};

// delimiter '\0' means auto-detect. A header row is assumed when the first
// line has a non-numeric field. Empty lines are skipped. Ragged rows and
// non-numeric data cells raise io_error.
CsvData read_table(const std::string& path, char delimiter = '\0');

// Column reference: a header name, else a 0-based index.
std::size_t resolve_column(const CsvData& data, const std::string& ref);

enum class ColumnType { Auto, Discrete, Continuous };

// Auto rule: discrete iff every value is integral and the distinct count is
// at most max_distinct.
ColumnType resolve_type(std::span<const double> column, ColumnType declared,
                        std::uint32_t max_distinct = 20);

// Distinct values sorted ascending become labels 0..m-1.
DiscreteSeries relabel_discrete(std::span<const double> column);

void write_pair_csv(const std::string& path, std::span<const double> x,
                    std::span<const double> y, const std::string& x_name,
                    const std::string& y_name, char delimiter = ',');

}  // namespace cloud::io
