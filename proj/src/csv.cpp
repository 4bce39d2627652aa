#include "morphic/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "morphic/errors.hpp"

namespace morphic {

void CsvTable::add_row(std::vector<std::string> row) {
    if (row.size() != header_.size()) throw Error("CSV row width does not match header");
    rows_.push_back(std::move(row));
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    for (int digits = 15; digits <= 17; ++digits) {
        std::snprintf(buf, sizeof buf, "%.*g", digits, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

std::string CsvTable::str() const {
    std::string out;
    auto emit = [&out](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += csv_escape(row[i]);
        }
        out += '\n';
    };
    emit(header_);
    for (const auto& row : rows_) emit(row);
    return out;
}

void CsvTable::write(const std::string& path) const {
    if (path.empty() || path == "-") {
        std::cout << str();
        return;
    }
    std::ofstream file(path);
    if (!file) throw InputError("cannot open '" + path + "' for writing");
    file << str();
}

}  // namespace morphic
