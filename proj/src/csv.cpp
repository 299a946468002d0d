#include "sphericity/csv.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "sphericity/errors.hpp"

namespace sphericity {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

Eigen::MatrixXd parse_csv_matrix(std::istream& in, bool skip_header) {
    std::vector<std::vector<double>> rows;
    std::string line;
    int lineno = 0;
    bool skipped = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (skip_header && !skipped) {
            skipped = true;
            continue;
        }
        if (trim(line).empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        int col = 0;
        while (std::getline(ss, cell, ',')) {
            ++col;
            const std::string t = trim(cell);
            if (t.empty()) {
                throw Error(ErrorCode::ParseError,
                            "csv: missing value at row " + std::to_string(rows.size() + 1) +
                                ", column " + std::to_string(col) + " (line " +
                                std::to_string(lineno) + ")");
            }
            char* end = nullptr;
            const double v = std::strtod(t.c_str(), &end);
            if (end != t.c_str() + t.size()) {
                throw Error(ErrorCode::ParseError,
                            "csv: cannot parse '" + t + "' at row " +
                                std::to_string(rows.size() + 1) + ", column " +
                                std::to_string(col) + " (line " + std::to_string(lineno) + ")");
            }
            row.push_back(v);
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw Error(ErrorCode::ParseError,
                        "csv: ragged row " + std::to_string(rows.size() + 1) + " has " +
                            std::to_string(row.size()) + " columns, expected " +
                            std::to_string(rows.front().size()) + " (line " +
                            std::to_string(lineno) + ")");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw Error(ErrorCode::ParseError, "csv: no data rows");
    }
    Eigen::MatrixXd m(Eigen::Index(rows.size()), Eigen::Index(rows.front().size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            m(i, j) = rows[std::size_t(i)][std::size_t(j)];
    return m;
}

Eigen::MatrixXd read_csv_matrix(const std::string& path, bool skip_header) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::FileNotFound, "csv: cannot open " + path);
    }
    return parse_csv_matrix(in, skip_header);
}

}  // namespace sphericity
