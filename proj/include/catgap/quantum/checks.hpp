// checks.hpp — numeric verification blocks: shift subinvariance on eigenmodes
// with its exact rewriting identity, the dispersive norm bound, and the
// almost-orthogonality defect of evolved projector sums
#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include <json.hpp>

#include "catgap/common.hpp"
#include "catgap/quantum/cylinder.hpp"
#include "catgap/quantum/spectrum.hpp"
#include "catgap/symbolic/weights.hpp"

namespace catgap::qm {

// ---------------------------- subinvariance ----------------------------------

struct SubinvarianceReport {
    double lhs = 0.0;               // Re mu([alpha])
    double rhs = 0.0;               // |lambda|^{-2p} Re mu(shift^{-p}[alpha])
    double slack = 0.0;             // rhs - lhs
    double identityResidual = 0.0;  // | mu([alpha]) - |lambda|^{-2p} sum_beta <(M^p)^* M^p Pi_{beta.alpha} psi, psi> |

    nlohmann::json to_json() const {
        return {{"lhs", lhs}, {"rhs", rhs}, {"slack", slack},
                {"identityResidual", identityResidual}};
    }
};

// mu(shift^{-p}[alpha]) = sum over |beta| = p of mu([beta.alpha]), evaluated by
// an explicit depth-first sum over beta with shared prefixes.
inline Cplx shifted_mass(const Vec& psi, const SymbolWord& alpha, int p,
                         const PartitionOperators& props, const DampedPropagator& P,
                         double kappa = kDefaultEhrenfestKappa) {
    const int n = alpha.size() + p;
    check_word_length(n, P.N, kappa);
    Vec total = Vec::Zero(P.N);
    std::function<void(int, const Vec&)> rec = [&](int depth, const Vec& v) {
        if (depth == p) {
            Vec w = depth == 0 ? props.projected(alpha[0], v)
                               : props.projected(alpha[0], P.apply(v));
            for (int t = 1; t < alpha.size(); ++t) w = props.projected(alpha[t], P.apply(w));
            total += w;
            return;
        }
        const Vec stepped = depth == 0 ? v : P.apply(v);
        for (int s = 0; s < props.K; ++s) rec(depth + 1, props.projected(s, stepped));
    };
    rec(0, psi);
    for (int t = 1; t < n; ++t) total = P.apply_inverse(total);
    return psi.dot(total);
}

// Both sides of the subinvariance comparison for an eigenmode, plus the exact
// rewriting identity behind it:
//   mu([alpha]) = |lambda|^{-2p} sum_{|beta|=p} <(M^p)^* M^p Pi_{beta.alpha} psi, psi>.
inline SubinvarianceReport subinvariance_check(const EigenmodeRecord& mode,
                                               const SymbolWord& alpha, int p,
                                               const PartitionOperators& props,
                                               const DampedPropagator& P,
                                               double kappa = kDefaultEhrenfestKappa) {
    if (mode.residual > 1e-6)
        throw ContractViolation("subinvariance_check: input is not an eigenmode (residual " +
                                std::to_string(mode.residual) + ")");
    const Vec& psi = mode.vector;
    const double absLambda = std::abs(mode.eigenvalue);
    const double scale = std::pow(absLambda, -2.0 * double(p));

    SubinvarianceReport rep;
    rep.lhs = quantum_functional(psi, alpha, props, P, kappa).real();
    rep.rhs = scale * shifted_mass(psi, alpha, p, props, P, kappa).real();
    rep.slack = rep.rhs - rep.lhs;

    // independent evaluation of the rewriting identity: for each beta, pair
    // M^p Pi_{beta.alpha} psi with M^p psi
    const Vec Mp_psi = P.apply_pow(psi, p);
    Cplx rhsIdentity(0.0, 0.0);
    std::function<void(int, const Vec&)> rec = [&](int depth, const Vec& v) {
        if (depth == p) {
            Vec w = depth == 0 ? props.projected(alpha[0], v)
                               : props.projected(alpha[0], P.apply(v));
            for (int t = 1; t < alpha.size(); ++t) w = props.projected(alpha[t], P.apply(w));
            const int n = alpha.size() + p;
            for (int t = 1; t < n; ++t) w = P.apply_inverse(w);  // Pi_{beta.alpha} psi
            rhsIdentity += Mp_psi.dot(P.apply_pow(w, p));        // <M^p Pi psi, M^p psi>
            return;
        }
        const Vec stepped = depth == 0 ? v : P.apply(v);
        for (int s = 0; s < props.K; ++s) rec(depth + 1, props.projected(s, stepped));
    };
    rec(0, psi);
    const Cplx mu = quantum_functional(psi, alpha, props, P, kappa);
    rep.identityResidual = std::abs(mu - scale * rhsIdentity);
    return rep;
}

// --------------------------- dispersive norm bound ----------------------------

struct DispersiveReport {
    double norm = 0.0;   // operator norm of the interleaved projector product
    double bound = 0.0;  // 2 sqrt(N) J_n(word)^{1/2} (1+c_eps)^n
    double ratio = 0.0;

    nlohmann::json to_json() const {
        return {{"norm", norm}, {"bound", bound}, {"ratio", ratio}};
    }
};

// largest singular value of the interleaved product, by power iteration on
// X^* X with matrix-free applications
inline double interleaved_norm(const SymbolWord& w, const PartitionOperators& props,
                               const DampedPropagator& P, int iters = 300, double tol = 1e-12) {
    const int N = P.N;
    auto applyX = [&](Vec v) {
        props.project(w[0], v);
        for (int t = 1; t < w.size(); ++t) {
            v = P.apply(v);
            props.project(w[t], v);
        }
        return v;
    };
    auto applyXadj = [&](Vec v) {
        props.project(w[w.size() - 1], v);
        for (int t = w.size() - 2; t >= 0; --t) {
            v = P.apply_adjoint(v);
            props.project(w[t], v);
        }
        return v;
    };
    // deterministic start with overlap on every coordinate
    Vec v(N);
    for (int j = 0; j < N; ++j) v(j) = Cplx(1.0 + 1e-3 * std::cos(2.0 * kPi * j / N), 1e-3 * std::sin(2.0 * kPi * (j + 1) / N));
    v.normalize();
    double s2 = 0.0;
    for (int it = 0; it < iters; ++it) {
        Vec nv = applyXadj(applyX(v));
        const double nrm = nv.norm();
        if (nrm == 0.0) return 0.0;
        nv /= nrm;
        const double diff = (nv - v).norm();
        v = nv;
        s2 = nrm;
        if (diff < tol) break;
    }
    return std::sqrt(s2);
}

// Norm of the interleaved product for the undamped propagator against
// 2 N^{1/2} J_n(word)^{1/2} (1 + c_eps)^n  (effective Planck constant
// 1/(2 pi N), one degree of freedom).
inline DispersiveReport dispersive_norm_check(const SymbolWord& w, const Mat& U,
                                              const sym::WeightTable& weights, int N,
                                              double cEps,
                                              double kappa = kDefaultEhrenfestKappa) {
    check_word_length(w.size(), N, kappa);
    DampedPropagator P;
    P.N = N;
    P.U = U;
    P.V = Eigen::VectorXd::Zero(N);
    P.D = Eigen::VectorXd::Ones(N);
    P.M = U;
    PartitionOperators props(weights.K, N);
    DispersiveReport rep;
    rep.norm = interleaved_norm(w, props, P);
    rep.bound = 2.0 * std::sqrt(double(N)) *
                std::exp(0.5 * sym::log_word_weight(w, weights)) *
                std::pow(1.0 + cEps, double(w.size()));
    rep.ratio = rep.norm / rep.bound;
    return rep;
}

// --------------------------- orthogonality defect -----------------------------

struct OrthogonalityReport {
    double normSquared = 0.0;     // || sum_alpha S_alpha psi ||^2
    double diagonalSumRe = 0.0;   // Re sum_alpha <S_alpha psi, psi>
    double diagonalSumIm = 0.0;
    double defect = 0.0;          // |normSquared - sum_alpha <S_alpha psi, psi>|
    double crossTermSum = 0.0;    // |independently accumulated cross terms|
    double routeMismatch = 0.0;   // |defect - crossTermSum|, zero up to rounding

    nlohmann::json to_json() const {
        return {{"normSquared", normSquared}, {"diagonalSumRe", diagonalSumRe},
                {"diagonalSumIm", diagonalSumIm}, {"defect", defect},
                {"crossTermSum", crossTermSum}, {"routeMismatch", routeMismatch}};
    }
};

// The evolved-projector products S_alpha = pi_{a_{n-1}} pi_{a_{n-2}}(-1) ...
// pi_{a_0}(1-n) = interleaved(alpha) M^{-(n-1)}. With sharp projectors the
// cross terms vanish identically at n = 1; at n > 1 the defect is reported
// together with an independent term-by-term evaluation of the cross sum.
inline OrthogonalityReport orthogonality_defect(const Vec& psi,
                                                const std::vector<SymbolWord>& words,
                                                const PartitionOperators& props,
                                                const DampedPropagator& P,
                                                double kappa = kDefaultEhrenfestKappa) {
    if (words.empty()) return {};
    const int n = words.front().size();
    for (const auto& w : words)
        if (w.size() != n) throw ConfigError("orthogonality_defect: mixed word lengths");
    check_word_length(n, P.N, kappa);

    Vec shifted = psi;
    for (int t = 1; t < n; ++t) shifted = P.apply_inverse(shifted);

    std::vector<Vec> Spsi;
    Spsi.reserve(words.size());
    for (const auto& w : words) Spsi.push_back(apply_interleaved(w, props, P, shifted));

    Vec total = Vec::Zero(P.N);
    for (const auto& v : Spsi) total += v;

    OrthogonalityReport rep;
    rep.normSquared = total.squaredNorm();
    Cplx diag(0.0, 0.0);
    for (const auto& v : Spsi) diag += psi.dot(v);
    rep.diagonalSumRe = diag.real();
    rep.diagonalSumIm = diag.imag();
    rep.defect = std::abs(Cplx(rep.normSquared, 0.0) - diag);

    // independent route: sum_{alpha,alpha'} <S_alpha psi, S_alpha' psi> minus
    // the diagonal pairing against psi
    Cplx cross(0.0, 0.0);
    for (const auto& a : Spsi)
        for (const auto& b : Spsi) cross += b.dot(a);
    cross -= diag;
    rep.crossTermSum = std::abs(cross);
    rep.routeMismatch = std::abs(rep.defect - rep.crossTermSum);
    return rep;
}

}  // namespace catgap::qm
