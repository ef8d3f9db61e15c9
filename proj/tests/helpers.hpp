#pragma once

#include "acyl/lattice.hpp"
#include "oracles.hpp"

#include <string>

inline oracle::Rows rows_of(const acyl::MatZ& m) {
    oracle::Rows r(m.rows(), std::vector<long long>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) r[i][j] = acyl::to_ll(m(i, j));
    return r;
}

inline std::string data_path(const std::string& rel) { return std::string(ACYL_DATA_DIR) + "/" + rel; }
