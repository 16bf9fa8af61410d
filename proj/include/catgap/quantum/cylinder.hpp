// cylinder.hpp — cylinder operators built from evolved projectors, the matrix
// elements they assign to symbol words, and family sums with shared prefixes
//
// Two equivalent presentations are kept explicit:
//   interleaved(word) = pi_{a_{n-1}} M pi_{a_{n-2}} M ... M pi_{a_0}
//   heisenberg(word)  = pi_{a_{n-1}}(n-1) ... pi_{a_1}(1) pi_{a_0},
// with X(t) = M^{-t} X M^t, related by heisenberg = M^{-(n-1)} interleaved.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "catgap/common.hpp"
#include "catgap/quantum/partition_ops.hpp"
#include "catgap/quantum/propagator.hpp"
#include "catgap/symbolic/alphabet.hpp"
#include "catgap/symbolic/families.hpp"

namespace catgap::qm {

using sym::CylinderFamily;
using sym::SymbolWord;

enum class CylinderConvention { Heisenberg, Interleaved };

inline constexpr double kDefaultEhrenfestKappa = 2.0;

inline void check_word_length(int n, int N, double kappa) {
    if (n < 1) throw ConfigError("cylinder: word length must be >= 1");
    if (double(n) > std::max(1.0, kappa * std::log(double(N))) + 1e-9)
        throw CapExceeded("cylinder: word length " + std::to_string(n) +
                          " exceeds the Ehrenfest cap kappa*log N");
}

// interleaved product applied to a vector
inline Vec apply_interleaved(const SymbolWord& w, const PartitionOperators& props,
                             const DampedPropagator& P, Vec v) {
    props.project(w[0], v);
    for (int t = 1; t < w.size(); ++t) {
        v = P.apply(v);
        props.project(w[t], v);
    }
    return v;
}

// Full cylinder operator as a dense matrix.
inline Mat cylinder_operator(const SymbolWord& w, const PartitionOperators& props,
                             const DampedPropagator& P,
                             CylinderConvention convention = CylinderConvention::Heisenberg,
                             double kappa = kDefaultEhrenfestKappa) {
    check_word_length(w.size(), P.N, kappa);
    const int N = P.N;
    Mat X = props.matrix(w[0]);
    for (int t = 1; t < w.size(); ++t) {
        X = P.M * X;
        for (int col = 0; col < N; ++col) {
            Vec c = X.col(col);
            props.project(w[t], c);
            X.col(col) = c;
        }
    }
    if (convention == CylinderConvention::Interleaved) return X;
    for (int t = 1; t < w.size(); ++t) {
        // left-multiply by M^{-1} = U^dag diag(e^{+V})
        for (int j = 0; j < N; ++j) X.row(j) *= std::exp(P.V(j));
        X = P.U.adjoint() * X;
    }
    return X;
}

// mu([word]) = <Pi_word psi, psi>
inline Cplx quantum_functional(const Vec& psi, const SymbolWord& w,
                               const PartitionOperators& props, const DampedPropagator& P,
                               double kappa = kDefaultEhrenfestKappa) {
    check_word_length(w.size(), P.N, kappa);
    Vec v = apply_interleaved(w, props, P, psi);
    for (int t = 1; t < w.size(); ++t) v = P.apply_inverse(v);
    return psi.dot(v);  // Eigen dot conjugates the left argument
}

namespace detail {

// sum of interleaved(word) psi over a lexicographically sorted word list,
// sharing common prefixes
inline Vec interleaved_family_sum(const std::vector<const SymbolWord*>& words, int lo, int hi,
                                  int depth, const PartitionOperators& props,
                                  const DampedPropagator& P, const Vec& v) {
    const int n = words[std::size_t(lo)]->size();
    Vec out = Vec::Zero(P.N);
    int i = lo;
    while (i < hi) {
        const int letter = (*words[std::size_t(i)])[depth];
        int j = i;
        while (j < hi && (*words[std::size_t(j)])[depth] == letter) ++j;
        Vec branch = props.projected(letter, v);
        if (depth + 1 == n) {
            out += branch;
        } else {
            branch = P.apply(branch);
            out += interleaved_family_sum(words, i, j, depth + 1, props, P, branch);
        }
        i = j;
    }
    return out;
}

}  // namespace detail

// sum over the family of mu([word]); one shared inverse chain at the end
inline Cplx family_mass(const Vec& psi, const CylinderFamily& family,
                        const PartitionOperators& props, const DampedPropagator& P,
                        double kappa = kDefaultEhrenfestKappa) {
    if (family.empty()) return Cplx(0.0, 0.0);
    check_word_length(family.wordLength, P.N, kappa);
    std::vector<const SymbolWord*> words;
    words.reserve(family.size());
    for (const auto& w : family.members) words.push_back(&w);
    Vec s = detail::interleaved_family_sum(words, 0, int(words.size()), 0, props, P, psi);
    for (int t = 1; t < family.wordLength; ++t) s = P.apply_inverse(s);
    return psi.dot(s);
}

// sum of all length-n cylinder operators (a partition-of-identity check path)
inline Mat sum_all_cylinders(const PartitionOperators& props, const DampedPropagator& P, int n,
                             CylinderConvention convention = CylinderConvention::Heisenberg,
                             double kappa = kDefaultEhrenfestKappa) {
    check_word_length(n, P.N, kappa);
    const int N = P.N;
    // depth-first over words, sharing prefixes of the interleaved products
    Mat total = Mat::Zero(N, N);
    std::function<void(int, const Mat&)> rec = [&](int depth, const Mat& X) {
        if (depth == n) {
            total += X;
            return;
        }
        Mat stepped = depth == 0 ? Mat(Mat::Identity(N, N)) : Mat(P.M * X);
        for (int s = 0; s < props.K; ++s) {
            Mat branch = stepped;
            for (int col = 0; col < N; ++col) {
                Vec c = branch.col(col);
                props.project(s, c);
                branch.col(col) = c;
            }
            rec(depth + 1, branch);
        }
    };
    rec(0, Mat());
    if (convention == CylinderConvention::Heisenberg) {
        for (int t = 1; t < n; ++t) {
            for (int j = 0; j < N; ++j) total.row(j) *= std::exp(P.V(j));
            total = P.U.adjoint() * total;
        }
    }
    return total;
}

// mass of the high-hit-fraction refinement: sum over Sigma_n(W,tau) of
// mu([alpha]), evaluated by a dynamic program over (last letters, hit count)
// carrying partial interleaved sums as vectors.
inline Cplx sigma_tau_mass(const Vec& psi, const CylinderFamily& W, double tau, int n,
                           const PartitionOperators& props, const DampedPropagator& P,
                           double kappa = kDefaultEhrenfestKappa) {
    const int n0 = W.wordLength;
    const int K = props.K;
    if (n < n0) throw ConfigError("sigma_tau_mass: n must be >= family word length");
    check_word_length(n, P.N, kappa);

    const auto codes = sym::detail::encode_family(W, K);
    const int maxHits = n - n0 + 1;
    std::uint64_t suffixCount = 1;
    const int L = n0 > 1 ? n0 - 1 : 1;
    for (int i = 0; i < L; ++i) suffixCount *= std::uint64_t(K);

    auto key = [&](std::uint64_t suffix, int hits) {
        return suffix * std::uint64_t(maxHits + 1) + std::uint64_t(hits);
    };
    std::unordered_map<std::uint64_t, Vec> cur;

    // seed: depth-first over all n0-words, sharing prefixes
    std::vector<int> letters(std::size_t(n0), 0);
    std::function<void(int, const Vec&)> seed = [&](int depth, const Vec& v) {
        if (depth == n0) {
            std::uint64_t wcode = 0, suffix = 0;
            for (int i = 0; i < n0; ++i) wcode = wcode * std::uint64_t(K) + std::uint64_t(letters[std::size_t(i)]);
            for (int i = n0 - L; i < n0; ++i)
                suffix = suffix * std::uint64_t(K) + std::uint64_t(letters[std::size_t(i)]);
            const int hits = codes.count(wcode) ? 1 : 0;
            auto [it, inserted] = cur.try_emplace(key(suffix, hits), v);
            if (!inserted) it->second += v;
            return;
        }
        const Vec stepped = depth == 0 ? v : P.apply(v);
        for (int s = 0; s < K; ++s) {
            letters[std::size_t(depth)] = s;
            seed(depth + 1, props.projected(s, stepped));
        }
    };
    seed(0, psi);

    const std::uint64_t suffixMod = suffixCount / std::uint64_t(K);
    for (int pos = n0; pos < n; ++pos) {
        std::unordered_map<std::uint64_t, Vec> nxt;
        for (const auto& [k, v] : cur) {
            const std::uint64_t suffix = k / std::uint64_t(maxHits + 1);
            const int hits = int(k % std::uint64_t(maxHits + 1));
            const Vec stepped = P.apply(v);
            for (int x = 0; x < K; ++x) {
                std::uint64_t wcode;
                if (n0 > 1)
                    wcode = suffix * std::uint64_t(K) + std::uint64_t(x);
                else
                    wcode = std::uint64_t(x);
                const int hit = codes.count(wcode) ? 1 : 0;
                const std::uint64_t nsuffix = (suffix % suffixMod) * std::uint64_t(K) + std::uint64_t(x);
                Vec branch = props.projected(x, stepped);
                auto it = nxt.find(key(nsuffix, hits + hit));
                if (it == nxt.end())
                    nxt.emplace(key(nsuffix, hits + hit), std::move(branch));
                else
                    it->second += branch;
            }
        }
        cur.swap(nxt);
    }

    const double needed = tau * double(maxHits);
    Vec total = Vec::Zero(P.N);
    for (const auto& [k, v] : cur) {
        const int hits = int(k % std::uint64_t(maxHits + 1));
        if (double(hits) >= needed) total += v;
    }
    for (int t = 1; t < n; ++t) total = P.apply_inverse(total);
    return psi.dot(total);
}

}  // namespace catgap::qm
