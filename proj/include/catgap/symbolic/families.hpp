// families.hpp — cylinder families, weighted family sums, and the
// high-hit-fraction refinement of a family to longer words
#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <string>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>
#include <vector>

#include "catgap/common.hpp"
#include "catgap/symbolic/alphabet.hpp"
#include "catgap/symbolic/weights.hpp"

namespace catgap::sym {

// A set of cylinders, all of one word length.
struct CylinderFamily {
    int wordLength = 0;
    std::set<SymbolWord> members;

    CylinderFamily() = default;
    explicit CylinderFamily(int n) : wordLength(n) {}

    CylinderFamily(int n, std::vector<SymbolWord> ws) : wordLength(n) {
        for (auto& w : ws) insert(std::move(w));
    }

    std::size_t size() const { return members.size(); }
    bool empty() const { return members.empty(); }
    bool contains(const SymbolWord& w) const { return members.count(w) != 0; }

    void insert(SymbolWord w) {
        if (w.size() != wordLength)
            throw ConfigError("CylinderFamily: member length mismatch");
        members.insert(std::move(w));
    }

    static CylinderFamily all(const Alphabet& alpha, int n,
                              std::uint64_t cap = kDefaultEnumerationCap) {
        CylinderFamily f(n);
        enumerate_words(alpha, n, [&](const SymbolWord& w) { f.members.insert(w); }, cap);
        return f;
    }

    // Line-oriented text format: header "K=<K> n=<n>", then one word per line,
    // symbols as base-10 integers separated by '.'.
    void write(std::ostream& os, int K) const {
        os << "K=" << K << " n=" << wordLength << "\n";
        for (const auto& w : members) os << w.str() << "\n";
    }

    static CylinderFamily read(std::istream& is, int* K_out = nullptr) {
        std::string header;
        if (!std::getline(is, header)) throw ConfigError("family: missing header");
        int K = 0, n = -1;
        if (std::sscanf(header.c_str(), "K=%d n=%d", &K, &n) != 2 || K < 1 || n < 0)
            throw ConfigError("family: bad header '" + header + "'");
        if (K_out) *K_out = K;
        CylinderFamily f(n);
        std::string line;
        while (std::getline(is, line)) {
            if (line.empty()) continue;
            SymbolWord w;
            std::stringstream ss(line);
            std::string tok;
            while (std::getline(ss, tok, '.')) {
                const int v = std::stoi(tok);
                if (v < 0 || v >= K) throw ConfigError("family: symbol out of range in '" + line + "'");
                w.letters.push_back(Symbol(v));
            }
            if (w.size() != n) throw ConfigError("family: word length mismatch in '" + line + "'");
            f.insert(std::move(w));
        }
        return f;
    }
};

// sum over the family of J_n(word)^s; empty family -> 0.
// Summed in linear space from log-space weights (members are few by the time
// they matter; the exponent does the underflow control).
inline double pressure_sum(const CylinderFamily& family, const WeightTable& t, double s) {
    double total = 0.0;
    for (const auto& w : family.members) total += std::exp(s * log_word_weight(w, t));
    return total;
}

inline double log_pressure_sum(const CylinderFamily& family, const WeightTable& t, double s) {
    double acc = kLogZero;
    for (const auto& w : family.members) acc = log_add(acc, s * log_word_weight(w, t));
    return acc;
}

namespace detail {

// encode a window of n0 symbols as an integer < K^n0
inline std::uint64_t encode_window(const SymbolWord& w, int begin, int n0, int K) {
    std::uint64_t code = 0;
    for (int i = 0; i < n0; ++i) code = code * std::uint64_t(K) + w[begin + i];
    return code;
}

inline std::unordered_set<std::uint64_t> encode_family(const CylinderFamily& W, int K) {
    std::unordered_set<std::uint64_t> codes;
    for (const auto& w : W.members) codes.insert(encode_window(w, 0, W.wordLength, K));
    return codes;
}

// number of length-n0 windows of a length-p word hitting W
inline int window_hits(const SymbolWord& w, const std::unordered_set<std::uint64_t>& codes,
                       int n0, int K) {
    int hits = 0;
    for (int j = 0; j + n0 <= w.size(); ++j)
        hits += codes.count(encode_window(w, j, n0, K)) ? 1 : 0;
    return hits;
}

}  // namespace detail

// Fraction-of-windows refinement: the length-p words whose fraction of
// length-n0 windows landing in W is at least tau. Windows start at
// j in [0, p-n0]; the fraction denominator is p-n0+1.
inline CylinderFamily sigma_p_tau(const CylinderFamily& W, double tau, int p,
                                  const Alphabet& alpha,
                                  std::uint64_t cap = kDefaultEnumerationCap) {
    const int n0 = W.wordLength;
    if (p < n0) throw ConfigError("sigma_p_tau: p must be >= the family word length");
    const auto codes = detail::encode_family(W, alpha.K);
    const double needed = tau * double(p - n0 + 1);
    CylinderFamily out(p);
    enumerate_words(alpha, p, [&](const SymbolWord& w) {
        if (double(detail::window_hits(w, codes, n0, alpha.K)) >= needed) out.members.insert(w);
    }, cap);
    return out;
}

}  // namespace catgap::sym
