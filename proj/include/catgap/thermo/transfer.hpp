// transfer.hpp — pressure as the log spectral radius of the weighted transfer
// matrix, and the entropy-maximizing Markov measure built from its Perron data
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "catgap/common.hpp"
#include "catgap/symbolic/alphabet.hpp"
#include "catgap/thermo/markov.hpp"

namespace catgap::thermo {

// Strong connectivity check; throws naming the offending symbols.
inline void require_irreducible(const Alphabet& alpha) {
    const int K = alpha.K;
    auto reach = [&](bool forward) {
        std::vector<char> seen(std::size_t(K), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            const int a = stack.back();
            stack.pop_back();
            for (int b = 0; b < K; ++b) {
                const bool edge = forward ? alpha.admissible(a, b) : alpha.admissible(b, a);
                if (edge && !seen[std::size_t(b)]) {
                    seen[std::size_t(b)] = 1;
                    stack.push_back(b);
                }
            }
        }
        return seen;
    };
    const auto fwd = reach(true), bwd = reach(false);
    std::string bad;
    for (int a = 0; a < K; ++a)
        if (!fwd[std::size_t(a)] || !bwd[std::size_t(a)]) bad += " " + std::to_string(a);
    if (!bad.empty())
        throw ConfigError("adjacency is not irreducible; unreachable symbols:" + bad);
}

namespace detail {

struct PerronData {
    double rho;                 // spectral radius of the transfer matrix
    std::vector<double> right;  // right Perron vector, positive
    std::vector<double> left;   // left Perron vector, positive
};

// Perron data of L[a][b] = adjacency * e^{phi(a,b)} by power iteration.
// A diagonal shift makes the matrix primitive so the iteration cannot cycle;
// the shift is removed from the reported eigenvalue. Deterministic all-ones
// start; the Perron root is simple so this is safe.
inline PerronData perron(const Alphabet& alpha, const Potential& phi, double tol = 1e-14,
                         long maxIter = 1000000) {
    require_irreducible(alpha);
    const int K = alpha.K;
    std::vector<double> L(std::size_t(K) * K, 0.0);
    double maxEntry = 0.0;
    for (int a = 0; a < K; ++a)
        for (int b = 0; b < K; ++b)
            if (alpha.admissible(a, b)) {
                L[std::size_t(a) * K + b] = std::exp(phi.at(a, b));
                maxEntry = std::max(maxEntry, L[std::size_t(a) * K + b]);
            }
    const double shift = maxEntry;

    auto iterate = [&](bool transpose) {
        std::vector<double> v(static_cast<std::size_t>(K), 1.0), nv(static_cast<std::size_t>(K));
        double lambda = 0.0;
        for (long it = 0; it < maxIter; ++it) {
            for (int a = 0; a < K; ++a) {
                double s = shift * v[std::size_t(a)];
                for (int b = 0; b < K; ++b)
                    s += (transpose ? L[std::size_t(b) * K + a] : L[std::size_t(a) * K + b]) *
                         v[std::size_t(b)];
                nv[std::size_t(a)] = s;
            }
            double norm = 0.0;
            for (const double x : nv) norm = std::max(norm, x);
            double diff = 0.0;
            for (int a = 0; a < K; ++a) {
                nv[std::size_t(a)] /= norm;
                diff = std::max(diff, std::abs(nv[std::size_t(a)] - v[std::size_t(a)]));
            }
            v.swap(nv);
            lambda = norm;
            if (diff < tol) break;
        }
        return std::pair<double, std::vector<double>>(lambda - shift, v);
    };

    auto [rhoR, right] = iterate(false);
    auto [rhoL, left] = iterate(true);
    // two-sided Rayleigh quotient: second-order accurate in the vector error
    double num = 0.0, den = 0.0;
    for (int a = 0; a < K; ++a) {
        double Lr = 0.0;
        for (int b = 0; b < K; ++b) Lr += L[std::size_t(a) * K + b] * right[std::size_t(b)];
        num += left[std::size_t(a)] * Lr;
        den += left[std::size_t(a)] * right[std::size_t(a)];
    }
    (void)rhoR;
    (void)rhoL;
    return PerronData{num / den, std::move(right), std::move(left)};
}

}  // namespace detail

// Topological pressure of the subshift with potential phi: log of the Perron
// root of the weighted transfer matrix.
inline double transfer_pressure(const Alphabet& alpha, const Potential& phi) {
    return std::log(detail::perron(alpha, phi).rho);
}

// The Gibbs/maximizing Markov measure: P[a][b] = L[a][b] r[b] / (rho r[a]),
// stationary vector proportional to left[a] * right[a].
inline MarkovMeasure parry_measure(const Alphabet& alpha, const Potential& phi) {
    const auto pd = detail::perron(alpha, phi);
    const int K = alpha.K;
    MarkovMeasure mu;
    mu.K = K;
    mu.transition.assign(std::size_t(K) * K, 0.0);
    mu.stationary.assign(std::size_t(K), 0.0);
    for (int a = 0; a < K; ++a) {
        double rowSum = 0.0;
        for (int b = 0; b < K; ++b)
            if (alpha.admissible(a, b)) {
                const double v = std::exp(phi.at(a, b)) * pd.right[std::size_t(b)] /
                                 (pd.rho * pd.right[std::size_t(a)]);
                mu.transition[std::size_t(a) * K + b] = v;
                rowSum += v;
            }
        for (int b = 0; b < K; ++b) mu.transition[std::size_t(a) * K + b] /= rowSum;
    }
    double piSum = 0.0;
    for (int a = 0; a < K; ++a) {
        mu.stationary[std::size_t(a)] = pd.left[std::size_t(a)] * pd.right[std::size_t(a)];
        piSum += mu.stationary[std::size_t(a)];
    }
    for (auto& x : mu.stationary) x /= piSum;
    // polish stationarity: a few exact multiplications remove residual drift
    mu.stationary = stationary_vector(mu.transition, K);
    mu.validate(&alpha);
    return mu;
}

}  // namespace catgap::thermo
