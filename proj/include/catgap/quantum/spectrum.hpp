// spectrum.hpp — dense non-Hermitian eigensolve of the damped propagator with
// residual control, plus an orthonormal eigenbasis for the unitary case
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "catgap/common.hpp"
#include "catgap/quantum/propagator.hpp"

namespace catgap::qm {

inline constexpr int kDenseSolverCap = 4096;

struct EigenmodeRecord {
    Cplx eigenvalue{};
    double decayRate = 0.0;  // -log|lambda|
    Vec vector;              // normalized to 1
    double residual = 0.0;   // ||M v - lambda v||
};

// All N eigenpairs of M, sorted by (decayRate, phase). Residuals are checked
// against 1e-8 * ||M||; the decay rates must sit inside the damping range.
inline std::vector<EigenmodeRecord> spectrum(const DampedPropagator& P,
                                             bool withVectors = true) {
    const int N = P.N;
    if (N > kDenseSolverCap)
        throw CapExceeded("spectrum: N exceeds the dense-solver cap " +
                          std::to_string(kDenseSolverCap));
    Mat work = P.M;
    Vec lambda(N);
    Mat V;
    int info;
    if (withVectors) {
        V.resize(N, N);
        info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'V', N, work.data(), N, lambda.data(),
                             nullptr, 1, V.data(), N);
    } else {
        info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', N, work.data(), N, lambda.data(),
                             nullptr, 1, nullptr, 1);
    }
    if (info != 0)
        throw ContractViolation("spectrum: eigensolver failed, info=" + std::to_string(info) +
                                ", N=" + std::to_string(N) +
                                ", ||M||=" + std::to_string(P.normBound()));

    const double normM = P.normBound();
    const double vmin = P.minDamping(), vmax = P.maxDamping();
    std::vector<EigenmodeRecord> modes(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
        auto& m = modes[std::size_t(i)];
        m.eigenvalue = lambda(i);
        m.decayRate = -std::log(std::abs(lambda(i)));
        if (withVectors) {
            m.vector = V.col(i).normalized();
            m.residual = (P.M * m.vector - lambda(i) * m.vector).norm();
            if (m.residual > 1e-8 * normM)
                throw ContractViolation("spectrum: residual " + std::to_string(m.residual) +
                                        " above contract at N=" + std::to_string(N));
        }
        if (m.decayRate < vmin - 1e-8 || m.decayRate > vmax + 1e-8)
            throw ContractViolation("spectrum: decay rate outside the damping range");
    }
    std::sort(modes.begin(), modes.end(), [](const EigenmodeRecord& a, const EigenmodeRecord& b) {
        if (a.decayRate != b.decayRate) return a.decayRate < b.decayRate;
        return std::arg(a.eigenvalue) < std::arg(b.eigenvalue);
    });
    return modes;
}

// Orthonormal eigenbasis of a unitary matrix via Schur form (diagonal for a
// normal matrix up to rounding), for averages over a full eigenbasis.
inline std::pair<Mat, Vec> unitary_eigenbasis(const Mat& U) {
    const int N = int(U.rows());
    Mat T = U;
    Mat Q(N, N);
    Vec w(N);
    lapack_int sdim = 0;
    const int info = LAPACKE_zgees(LAPACK_COL_MAJOR, 'V', 'N', nullptr, N, T.data(), N, &sdim,
                                   w.data(), Q.data(), N);
    if (info != 0) throw ContractViolation("unitary_eigenbasis: Schur decomposition failed");
    double offdiag = 0.0;
    for (int c = 0; c < N; ++c)
        for (int r = 0; r < c; ++r) offdiag = std::max(offdiag, std::abs(T(r, c)));
    if (offdiag > 1e-8)
        throw ContractViolation("unitary_eigenbasis: input is not normal enough, offdiag=" +
                                std::to_string(offdiag));
    return {Q, w};
}

}  // namespace catgap::qm
