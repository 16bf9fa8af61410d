// counting.hpp — the counting bound on weighted sums over high-hit-fraction
// word families, and an exact log-space evaluation of those sums
#pragma once

#include <cmath>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "catgap/common.hpp"
#include "catgap/symbolic/alphabet.hpp"
#include "catgap/symbolic/families.hpp"
#include "catgap/symbolic/weights.hpp"

namespace catgap::sym {

// Upper bound for sum_{Sigma_p(W,tau)} J_p^{1/2} under the family hypothesis
// sum_W J_{n0}^{1/2} <= e^{-n0 P0/2}. Two forms:
//   simplified:      e^{-pP0/8 + p(1-tau)(lambda0+log K)} (e^{lambda0} K)^{n0} e^{n0 P0/2}
//   presimplified:   binom(p,[p/n0])^2 (e^{lambda0} K)^{(1-tau)p+n0} e^{n0 P0/2} e^{-pP0/4}
// The simplified form additionally assumes binom(p,[p/n0]) <= e^{pP0/16}; that
// hypothesis is checked per instance and reported instead of assumed.
// lambda0 must be a nonnegative upper bound on all log J(a,b).
struct CountingBound {
    double logSimplified;
    double logPresimplified;
    bool binomHypothesisHolds;

    double simplified() const { return std::exp(logSimplified); }
    double presimplified() const { return std::exp(logPresimplified); }
};

inline CountingBound counting_bound(int p, int n0, double tau, int K, double lambda0, double P0) {
    if (n0 < 1 || p < n0) throw ConfigError("counting_bound: require p >= n0 >= 1");
    if (tau < 0.5 || tau > 1.0) throw ConfigError("counting_bound: tau must be in [1/2,1]");
    const double logK = std::log(double(K));
    CountingBound b{};
    b.logSimplified = -double(p) * P0 / 8.0 + double(p) * (1.0 - tau) * (lambda0 + logK) +
                      double(n0) * (lambda0 + logK) + double(n0) * P0 / 2.0;
    const double logBinom = log_binomial(p, p / n0);
    b.logPresimplified = 2.0 * logBinom + ((1.0 - tau) * double(p) + double(n0)) * (lambda0 + logK) +
                         double(n0) * P0 / 2.0 - double(p) * P0 / 4.0;
    b.binomHypothesisHolds = logBinom <= double(p) * P0 / 16.0 + 1e-12;
    return b;
}

// log of sum_{[alpha] in Sigma_p(W,tau)} J_p(alpha)^s, exact, without
// enumerating Sigma_p. Dynamic program over (last letters, window hit count);
// cross-checked against direct enumeration in the test suite.
inline double log_sigma_tau_weight_sum(const CylinderFamily& W, double tau, int p,
                                       const Alphabet& alpha, const WeightTable& table,
                                       double s) {
    const int n0 = W.wordLength;
    const int K = alpha.K;
    if (p < n0) throw ConfigError("sigma_tau_weight_sum: p must be >= family word length");

    const int L = n0 > 1 ? n0 - 1 : 1;  // tracked suffix length
    std::uint64_t suffixCount = 1;
    for (int i = 0; i < L; ++i) {
        suffixCount *= std::uint64_t(K);
        if (suffixCount > (1ull << 22))
            throw CapExceeded("sigma_tau_weight_sum: suffix state space too large");
    }
    const int maxHits = p - n0 + 1;
    const auto codes = detail::encode_family(W, K);

    auto key = [&](std::uint64_t suffix, int hits) {
        return suffix * std::uint64_t(maxHits + 1) + std::uint64_t(hits);
    };
    std::vector<double> cur(suffixCount * std::uint64_t(maxHits + 1), kLogZero);

    // seed with all admissible words of length n0
    enumerate_words(alpha, n0, [&](const SymbolWord& w) {
        const int hits = codes.count(detail::encode_window(w, 0, n0, K)) ? 1 : 0;
        std::uint64_t suffix = 0;
        for (int i = n0 - L; i < n0; ++i) suffix = suffix * std::uint64_t(K) + w[i];
        const double lw = s * log_word_weight(w, table);
        auto& slot = cur[key(suffix, hits)];
        slot = log_add(slot, lw);
    });

    // extend one letter at a time
    std::vector<double> nxt(cur.size());
    const std::uint64_t suffixMod = suffixCount / std::uint64_t(K);  // drop the oldest letter
    for (int pos = n0; pos < p; ++pos) {
        std::fill(nxt.begin(), nxt.end(), kLogZero);
        for (std::uint64_t suffix = 0; suffix < suffixCount; ++suffix) {
            const int last = int(suffix % std::uint64_t(K));
            for (int hits = 0; hits <= maxHits; ++hits) {
                const double v = cur[key(suffix, hits)];
                if (v == kLogZero) continue;
                for (int x = 0; x < K; ++x) {
                    if (!alpha.admissible(last, x)) continue;
                    // window ending at this letter: last n0-1 tracked letters + x
                    std::uint64_t wcode = 0;
                    if (n0 > 1) {
                        std::uint64_t tail = suffix;  // exactly the last n0-1 letters
                        wcode = tail * std::uint64_t(K) + std::uint64_t(x);
                    } else {
                        wcode = std::uint64_t(x);
                    }
                    const int hit = codes.count(wcode) ? 1 : 0;
                    const std::uint64_t nsuffix =
                        (suffix % suffixMod) * std::uint64_t(K) + std::uint64_t(x);
                    auto& slot = nxt[key(nsuffix, hits + hit)];
                    slot = log_add(slot, v + s * table.log_at(last, x));
                }
            }
        }
        cur.swap(nxt);
    }

    const double needed = tau * double(maxHits);
    double total = kLogZero;
    for (std::uint64_t suffix = 0; suffix < suffixCount; ++suffix)
        for (int hits = 0; hits <= maxHits; ++hits)
            if (double(hits) >= needed) total = log_add(total, cur[key(suffix, hits)]);
    return total;
}

}  // namespace catgap::sym
