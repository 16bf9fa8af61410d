// partition_ops.hpp — sharp position projectors from strip membership of the
// grid points j/N: an exact resolution of the identity
#pragma once

#include <vector>

#include "catgap/common.hpp"
#include "catgap/quantum/translations.hpp"

namespace catgap::qm {

struct PartitionOperators {
    int K = 0;
    int N = 0;
    std::vector<int> cellOf;  // cell index of grid point j

    PartitionOperators() = default;

    PartitionOperators(int k, int n) : K(k), N(n), cellOf(std::size_t(n)) {
        if (k < 1 || n < 1) throw ConfigError("PartitionOperators: K and N must be >= 1");
        for (int j = 0; j < n; ++j) {
            int i = int((long long)(k) * j / n);
            if (i >= k) i = k - 1;
            cellOf[std::size_t(j)] = i;
        }
    }

    // v <- pi_i v, in place
    void project(int i, Vec& v) const {
        for (int j = 0; j < N; ++j)
            if (cellOf[std::size_t(j)] != i) v(j) = Cplx(0.0, 0.0);
    }

    Vec projected(int i, const Vec& v) const {
        Vec out = v;
        project(i, out);
        return out;
    }

    Mat matrix(int i) const {
        Mat P = Mat::Zero(N, N);
        for (int j = 0; j < N; ++j)
            if (cellOf[std::size_t(j)] == i) P(j, j) = 1.0;
        return P;
    }
};

}  // namespace catgap::qm
