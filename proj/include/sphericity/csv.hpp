#pragma once

#include <Eigen/Dense>
#include <string>

namespace sphericity {

/// Reads a p x n matrix: one row per variable, one column per
/// observation, comma-separated decimal floats, no missing values.
/// skip_header drops the first line. Parse failures name the offending
/// row and column (1-based, counted after any skipped header).
Eigen::MatrixXd read_csv_matrix(const std::string& path, bool skip_header = false);

Eigen::MatrixXd parse_csv_matrix(std::istream& in, bool skip_header = false);

}  // namespace sphericity
