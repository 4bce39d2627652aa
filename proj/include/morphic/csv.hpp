#pragma once

#include <string>
#include <vector>

namespace morphic {

/// Minimal CSV table; fields containing commas, quotes or newlines are quoted.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<std::string> row);
    const std::vector<std::string>& header() const { return header_; }
    const std::vector<std::vector<std::string>>& rows() const { return rows_; }

    std::string str() const;
    /// Writes to path, or to stdout when path is empty or "-".
    void write(const std::string& path) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

std::string csv_escape(const std::string& field);
/// Shortest round-trip decimal form.
std::string format_double(double v);

}  // namespace morphic
