// matrix_dump.hpp — flat complex128 little-endian dump with a 24-byte header
// (8-byte magic, i64 N, i64 kind) for external inspection
#pragma once

#include <complex>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>

#include <Eigen/Dense>

#include "catgap/common.hpp"

namespace catgap::io {

inline constexpr char kMatrixMagic[8] = {'C', 'G', 'M', 'A', 'T', 'R', '0', '1'};

enum class MatrixKind : std::int64_t { Propagator = 1, Unitary = 2, Cylinder = 3, Other = 0 };

inline void dump_matrix(const std::string& path, const Eigen::MatrixXcd& M, MatrixKind kind) {
    if (M.rows() != M.cols()) throw ConfigError("dump_matrix: matrix must be square");
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("dump_matrix: cannot open '" + path + "'");
    os.write(kMatrixMagic, 8);
    const std::int64_t n = M.rows();
    const std::int64_t k = static_cast<std::int64_t>(kind);
    os.write(reinterpret_cast<const char*>(&n), 8);
    os.write(reinterpret_cast<const char*>(&k), 8);
    // column-major complex128, matching the in-memory layout
    os.write(reinterpret_cast<const char*>(M.data()), std::streamsize(16 * n * n));
}

inline Eigen::MatrixXcd load_matrix(const std::string& path, MatrixKind* kind = nullptr) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError("load_matrix: cannot open '" + path + "'");
    char magic[8];
    is.read(magic, 8);
    if (!is || std::memcmp(magic, kMatrixMagic, 8) != 0)
        throw ConfigError("load_matrix: bad magic in '" + path + "'");
    std::int64_t n = 0, k = 0;
    is.read(reinterpret_cast<char*>(&n), 8);
    is.read(reinterpret_cast<char*>(&k), 8);
    if (!is || n < 1) throw ConfigError("load_matrix: bad dimension in '" + path + "'");
    if (kind) *kind = static_cast<MatrixKind>(k);
    Eigen::MatrixXcd M(n, n);
    is.read(reinterpret_cast<char*>(M.data()), std::streamsize(16 * n * n));
    if (!is) throw ConfigError("load_matrix: truncated data in '" + path + "'");
    return M;
}

}  // namespace catgap::io
