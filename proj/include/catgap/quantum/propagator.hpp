// propagator.hpp — one-step damped propagator M = diag(e^{-V}) U and its
// exact inverse/adjoint applications
#pragma once

#include <cmath>
#include <utility>

#include "catgap/common.hpp"
#include "catgap/classical/damping.hpp"
#include "catgap/classical/torus_map.hpp"
#include "catgap/quantum/quantize.hpp"
#include "catgap/quantum/translations.hpp"

namespace catgap::qm {

struct DampedPropagator {
    int N = 0;
    Mat U;                   // unitary quantized map
    Eigen::VectorXd V;       // damping samples V(j/N)
    Eigen::VectorXd D;       // e^{-V(j/N)}, entries in (0,1]
    Mat M;                   // D * U

    double normBound() const { return D.maxCoeff(); }  // = sigma_max(M), exactly
    double minDamping() const { return V.minCoeff(); }
    double maxDamping() const { return V.maxCoeff(); }

    Vec apply(const Vec& v) const { return D.cast<Cplx>().asDiagonal() * (U * v); }

    // M^{-1} = U^dag diag(e^{+V})
    Vec apply_inverse(const Vec& v) const {
        Vec w = v;
        for (int j = 0; j < N; ++j) w(j) *= std::exp(V(j));
        return U.adjoint() * w;
    }

    Vec apply_adjoint(const Vec& v) const {
        Vec w = v;
        for (int j = 0; j < N; ++j) w(j) *= D(j);
        return U.adjoint() * w;
    }

    Vec apply_pow(Vec v, int t) const {
        for (int i = 0; i < std::abs(t); ++i) v = t >= 0 ? apply(v) : apply_inverse(v);
        return v;
    }
};

inline DampedPropagator damped_propagator(Mat U, const dyn::DampingProfile& V, int N) {
    if (int(U.rows()) != N || int(U.cols()) != N)
        throw ConfigError("damped_propagator: U must be N x N");
    DampedPropagator P;
    P.N = N;
    P.U = std::move(U);
    P.V.resize(N);
    P.D.resize(N);
    for (int j = 0; j < N; ++j) {
        const double v = V(double(j) / N);
        if (v < 0.0) throw ConfigError("damped_propagator: negative damping sample");
        P.V(j) = v;
        P.D(j) = std::exp(-v);
    }
    P.M = P.D.cast<Cplx>().asDiagonal() * P.U;
    return P;
}

inline DampedPropagator build_propagator(const dyn::TorusMap& map, const dyn::DampingProfile& V,
                                         int N) {
    return damped_propagator(quantize(map, N), V, N);
}

}  // namespace catgap::qm
