// quantize.hpp — unitary quantization of a hyperbolic toral automorphism on
// C^N via the quadratic generating-function kernel
//
// The kernel is fixed by two enforced contracts rather than by convention
// constants: unitarity to 1e-12, and exact conjugation of the translation
// operators, U^dag T(n) U = c(n) T(A n) with |c(n)| = 1 for all |n|_inf <= 2.
// A small deterministic search over half-integer grid offsets (and the
// generating matrix read forwards or backwards) finds the convention that
// satisfies both; dimensions admitting none are rejected.
#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "catgap/common.hpp"
#include "catgap/classical/torus_map.hpp"
#include "catgap/quantum/translations.hpp"

namespace catgap::qm {

inline constexpr double kUnitarityTol = 1e-12;
inline constexpr double kEgorovTol = 1e-10;

namespace detail {

// U[j,k] ~ (N|b|)^{-1/2} sum_r exp( (pi i / N b)(d jj^2 - 2 jj k + a k^2)
//                                   + 2 pi i (alpha jj + beta k)/N ),  jj = j + rN
inline Mat generating_kernel(const std::array<std::array<long long, 2>, 2>& G, int N,
                             double alpha, double beta) {
    const double a = double(G[0][0]), b = double(G[0][1]), d = double(G[1][1]);
    const int nb = int(std::llabs(G[0][1]));
    Mat U(N, N);
    const double norm = 1.0 / std::sqrt(double(N) * nb);
    for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k) {
            Cplx s = 0.0;
            for (int r = 0; r < nb; ++r) {
                const double jj = double(j) + double(r) * N;
                const double ph = (kPi / (double(N) * b)) * (d * jj * jj - 2.0 * jj * k + a * double(k) * k) +
                                  2.0 * kPi * (alpha * jj + beta * double(k)) / N;
                s += std::exp(Cplx(0.0, ph));
            }
            U(j, k) = norm * s;
        }
    return U;
}

inline double unitarity_defect(const Mat& U) {
    const int N = int(U.rows());
    return (U.adjoint() * U - Mat::Identity(N, N)).cwiseAbs().maxCoeff();
}

// U^dag T(n) U = c T(An) with unimodular c, for all |n|_inf <= 2
inline bool egorov_exact(const Mat& U, const std::array<std::array<long long, 2>, 2>& A,
                         double* worst = nullptr) {
    const int N = int(U.rows());
    double w = 0.0;
    bool ok = true;
    for (int n1 = -2; n1 <= 2 && ok; ++n1)
        for (int n2 = -2; n2 <= 2 && ok; ++n2) {
            if (n1 == 0 && n2 == 0) continue;
            // T(n) U column by column is O(N^2); one product with U^dag remains
            Mat TU(N, N);
            for (int col = 0; col < N; ++col) TU.col(col) = apply_translation(N, n1, n2, U.col(col));
            const Mat E = U.adjoint() * TU;
            const long long m1 = A[0][0] * n1 + A[0][1] * n2;
            const long long m2 = A[1][0] * n1 + A[1][1] * n2;
            const Mat T2 = translation_operator(N, int(m1), int(m2));
            // T2 rows have a single unimodular entry; read c off the first row
            int piv = 0;
            for (int col = 0; col < N; ++col)
                if (std::abs(T2(0, col)) > 0.5) { piv = col; break; }
            const Cplx c = E(0, piv) / T2(0, piv);
            const double err = std::max((E - c * T2).cwiseAbs().maxCoeff(),
                                        std::abs(std::abs(c) - 1.0));
            w = std::max(w, err);
            if (err > kEgorovTol) ok = false;
        }
    if (worst) *worst = w;
    return ok;
}

struct KernelConvention {
    bool reversed;  // generating matrix read from the inverse
    double alpha, beta;
};

inline const std::array<KernelConvention, 8>& conventions() {
    static const std::array<KernelConvention, 8> c{{{false, 0.0, 0.0},
                                                    {false, 0.5, 0.0},
                                                    {false, 0.0, 0.5},
                                                    {false, 0.5, 0.5},
                                                    {true, 0.0, 0.0},
                                                    {true, 0.5, 0.0},
                                                    {true, 0.0, 0.5},
                                                    {true, 0.5, 0.5}}};
    return c;
}

inline std::array<std::array<long long, 2>, 2> inverse_matrix(
    const std::array<std::array<long long, 2>, 2>& A) {
    return {{{A[1][1], -A[0][1]}, {-A[1][0], A[0][0]}}};
}

}  // namespace detail

// Quantize the linear part of the map on C^N. Throws ConfigError when no
// kernel convention satisfies the contracts at this N; the message reports
// which residues of N mod 2|b| admit one, probed at small proxy dimensions.
inline Mat quantize(const dyn::TorusMap& map, int N) {
    if (N < 2) throw ConfigError("quantize: N must be >= 2");
    if (map.A[0][1] == 0)
        throw ConfigError("quantize: generating-function kernel needs a nonzero upper-right entry");
    map.validate();  // hyperbolicity, determinant

    auto try_build = [&](const std::array<std::array<long long, 2>, 2>& A, int dim) -> Mat {
        for (const auto& cv : detail::conventions()) {
            const auto G = cv.reversed ? detail::inverse_matrix(A) : A;
            if (G[0][1] == 0) continue;
            Mat U = detail::generating_kernel(G, dim, cv.alpha, cv.beta);
            if (detail::unitarity_defect(U) > kUnitarityTol) continue;
            if (detail::egorov_exact(U, A)) return U;
        }
        return Mat();
    };

    Mat U = try_build(map.A, N);
    if (U.size() != 0) return U;

    // probe which residues mod 2|b| admit a kernel, at small dimensions
    const int modulus = 2 * int(std::llabs(map.A[0][1]));
    std::string admissible;
    for (int r = 0; r < modulus; ++r) {
        int probe = 8 + ((r - 8) % modulus + modulus) % modulus;
        if (probe < 2) probe += modulus;
        if (try_build(map.A, probe).size() != 0) admissible += " " + std::to_string(r);
    }
    std::string hint;
    if (map.A[0][1] != map.A[1][0])
        hint = "; translation conjugation transforms indices by the transpose, so the literal "
               "contract needs a symmetric matrix";
    throw ConfigError("quantize: no kernel convention satisfies the unitarity and translation "
                      "contracts at N=" + std::to_string(N) + "; admissible N mod " +
                      std::to_string(modulus) + ":" +
                      (admissible.empty() ? " none found" : admissible) + hint);
}

}  // namespace catgap::qm
