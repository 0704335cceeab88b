#include "cloud/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace cloud::io {
namespace {

bool parse_double(const std::string& field, double& out) {
    const char* s = field.c_str();
    char* end = nullptr;
    out = std::strtod(s, &end);
    return end != s && *end == '\0' && !field.empty();
}

// A row split by a one-character delimiter, or by runs of blanks when
// delimiter == ' '.
std::vector<std::string> split_line(const std::string& line, char delimiter) {
    std::vector<std::string> fields;
    if (delimiter == ' ') {
        std::istringstream ss(line);
        std::string f;
        while (ss >> f) fields.push_back(f);
        return fields;
    }
    std::string cur;
    for (char c : line) {
        if (c == delimiter) {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    // Trim surrounding blanks so "a, b" parses as expected.
    for (std::string& f : fields) {
        const auto b = f.find_first_not_of(" \t");
        const auto e = f.find_last_not_of(" \t");
        f = b == std::string::npos ? std::string() : f.substr(b, e - b + 1);
    }
    return fields;
}

bool blank(const std::string& line) {
    return std::all_of(line.begin(), line.end(),
                       [](unsigned char c) { return std::isspace(c); });
}

char detect_delimiter(const std::string& line) {
    if (line.find('\t') != std::string::npos) return '\t';
    if (line.find(',') != std::string::npos) return ',';
    if (line.find(';') != std::string::npos) return ';';
    return ' ';
}

}  // namespace

CsvData read_table(const std::string& path, char delimiter) {
    std::ifstream in(path);
    if (!in) throw io_error(path + ": cannot open");

    CsvData data;
    std::string line;
    std::uint64_t line_no = 0;
    bool first_content = true;
    std::size_t width = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (blank(line)) continue;

        if (first_content && delimiter == '\0') delimiter = detect_delimiter(line);
        std::vector<std::string> fields = split_line(line, delimiter);

        if (first_content) {
            first_content = false;
            width = fields.size();
            if (width < 1) throw io_error(path + ": no columns");
            bool numeric = true;
            double v;
            for (const std::string& f : fields) {
                if (!parse_double(f, v)) {
                    numeric = false;
                    break;
                }
            }
            data.columns.resize(width);
            if (!numeric) {
                data.column_names = std::move(fields);
                continue;   // header row consumed
            }
        }

        if (fields.size() != width) {
            throw io_error(path + ":" + std::to_string(line_no) + ": expected " +
                           std::to_string(width) + " fields, got " +
                           std::to_string(fields.size()));
        }
        for (std::size_t c = 0; c < width; ++c) {
            double v;
            if (!parse_double(fields[c], v) || !std::isfinite(v)) {
                throw io_error(path + ":" + std::to_string(line_no) + ": column " +
                               std::to_string(c + 1) + ": '" + fields[c] +
                               "' is not numeric");
            }
            data.columns[c].push_back(v);
        }
        ++data.rows;
    }
    if (data.columns.empty()) throw io_error(path + ": empty file");
    return data;
}

std::size_t resolve_column(const CsvData& data, const std::string& ref) {
    for (std::size_t i = 0; i < data.column_names.size(); ++i) {
        if (data.column_names[i] == ref) return i;
    }
    char* end = nullptr;
    const long idx = std::strtol(ref.c_str(), &end, 10);
    if (end != ref.c_str() && *end == '\0' && idx >= 0 &&
        std::size_t(idx) < data.columns.size()) {
        return std::size_t(idx);
    }
    throw io_error("column '" + ref + "' not found (use a header name or 0-based index)");
}

ColumnType resolve_type(std::span<const double> column, ColumnType declared,
                        std::uint32_t max_distinct) {
    if (declared != ColumnType::Auto) return declared;
    for (double v : column) {
        if (v != std::floor(v) || std::abs(v) > 0x1.0p53) return ColumnType::Continuous;
    }
    std::vector<double> d(column.begin(), column.end());
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    return d.size() <= max_distinct ? ColumnType::Discrete : ColumnType::Continuous;
}

DiscreteSeries relabel_discrete(std::span<const double> column) {
    std::vector<double> d(column.begin(), column.end());
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    DiscreteSeries out;
    out.m = std::uint32_t(d.size());
    out.labels.resize(column.size());
    for (std::size_t i = 0; i < column.size(); ++i) {
        out.labels[i] = std::uint32_t(std::lower_bound(d.begin(), d.end(), column[i]) - d.begin());
    }
    return out;
}

void write_pair_csv(const std::string& path, std::span<const double> x,
                    std::span<const double> y, const std::string& x_name,
                    const std::string& y_name, char delimiter) {
    std::ofstream out(path);
    if (!out) throw io_error(path + ": cannot write");
    out << x_name << delimiter << y_name << "\n";
    char buf[64];
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", x[i]);
        out << buf << delimiter;
        std::snprintf(buf, sizeof buf, "%.17g", y[i]);
        out << buf << "\n";
    }
    if (!out) throw io_error(path + ": write failed");
}

}  // namespace cloud::io
