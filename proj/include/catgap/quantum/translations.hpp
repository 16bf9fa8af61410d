// translations.hpp — phase-space translation operators on C^N
//
// T(n) quantizes the plane wave e^{2 pi i (n1 x + n2 p)}: a diagonal phase in
// position composed with a cyclic shift, with a symmetrizing half phase.
#pragma once

#include <complex>

#include <Eigen/Dense>

#include "catgap/common.hpp"

namespace catgap::qm {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

inline long long mod_n(long long v, int N) {
    long long m = v % N;
    return m < 0 ? m + N : m;
}

// (T(n) psi)(j) = e^{-i pi n1 n2 / N} e^{2 pi i n1 j / N} psi(j + n2 mod N)
inline Vec apply_translation(int N, int n1, int n2, const Vec& psi) {
    Vec out(N);
    const Cplx half = std::exp(Cplx(0.0, -kPi * double(n1) * double(n2) / N));
    for (int j = 0; j < N; ++j) {
        const Cplx phase = std::exp(Cplx(0.0, 2.0 * kPi * double(n1) * double(j) / N));
        out(j) = half * phase * psi(mod_n(j + n2, N));
    }
    return out;
}

inline Mat translation_operator(int N, int n1, int n2) {
    Mat T = Mat::Zero(N, N);
    const Cplx half = std::exp(Cplx(0.0, -kPi * double(n1) * double(n2) / N));
    for (int j = 0; j < N; ++j) {
        const Cplx phase = std::exp(Cplx(0.0, 2.0 * kPi * double(n1) * double(j) / N));
        T(j, int(mod_n(j + n2, N))) = half * phase;
    }
    return T;
}

}  // namespace catgap::qm
