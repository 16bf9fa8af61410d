// alphabet.hpp — symbol alphabets with transition constraints, admissible words,
// lexicographic streaming enumeration
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "catgap/common.hpp"

namespace catgap::sym {

using Symbol = std::uint8_t;

// Alphabet {0,...,K-1} with an adjacency matrix of admissible transitions.
// All-true adjacency is the full shift.
struct Alphabet {
    int K = 0;
    std::vector<std::uint8_t> adjacency;  // row-major K*K, 0/1

    Alphabet() = default;

    explicit Alphabet(int k) : K(k), adjacency(std::size_t(k) * k, 1) { validate(); }

    Alphabet(int k, std::vector<std::uint8_t> adj) : K(k), adjacency(std::move(adj)) { validate(); }

    static Alphabet full_shift(int k) { return Alphabet(k); }

    bool admissible(int a, int b) const { return adjacency[std::size_t(a) * K + b] != 0; }

    void forbid(int a, int b) { adjacency[std::size_t(a) * K + b] = 0; }

    void validate() const {
        if (K < 1 || K > 255) throw ConfigError("Alphabet: K must be in [1,255]");
        if (adjacency.size() != std::size_t(K) * K)
            throw ConfigError("Alphabet: adjacency must be K*K");
        for (int a = 0; a < K; ++a) {
            bool any = false;
            for (int b = 0; b < K; ++b) any = any || admissible(a, b);
            if (!any)
                throw ConfigError("Alphabet: symbol " + std::to_string(a) +
                                  " has no admissible successor");
        }
    }
};

// A finite admissible word over an alphabet. Length 0 is the empty word.
struct SymbolWord {
    std::vector<Symbol> letters;

    SymbolWord() = default;
    explicit SymbolWord(std::vector<Symbol> ls) : letters(std::move(ls)) {}
    SymbolWord(std::initializer_list<int> ls) {
        letters.reserve(ls.size());
        for (int v : ls) letters.push_back(Symbol(v));
    }

    int size() const { return int(letters.size()); }
    bool empty() const { return letters.empty(); }
    Symbol front() const { return letters.front(); }
    Symbol back() const { return letters.back(); }
    Symbol operator[](int i) const { return letters[std::size_t(i)]; }

    bool admissible(const Alphabet& alpha) const {
        for (const Symbol s : letters)
            if (s >= alpha.K) return false;
        for (int i = 0; i + 1 < size(); ++i)
            if (!alpha.admissible(letters[i], letters[i + 1])) return false;
        return true;
    }

    SymbolWord subword(int begin, int len) const {
        return SymbolWord(std::vector<Symbol>(letters.begin() + begin, letters.begin() + begin + len));
    }

    static SymbolWord concat(const SymbolWord& u, const SymbolWord& v) {
        SymbolWord w = u;
        w.letters.insert(w.letters.end(), v.letters.begin(), v.letters.end());
        return w;
    }

    static SymbolWord constant(Symbol s, int n) {
        return SymbolWord(std::vector<Symbol>(std::size_t(n), s));
    }

    std::string str() const {
        std::string out;
        for (int i = 0; i < size(); ++i) {
            if (i) out += '.';
            out += std::to_string(int(letters[i]));
        }
        return out;
    }

    auto operator<=>(const SymbolWord&) const = default;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 1ull << 24;

// Number of admissible words of length n (saturates at cap+1 to keep the guard cheap).
inline std::uint64_t count_words(const Alphabet& alpha, int n,
                                 std::uint64_t cap = kDefaultEnumerationCap) {
    if (n == 0) return 1;
    std::vector<std::uint64_t> cnt(std::size_t(alpha.K), 1);
    for (int step = 1; step < n; ++step) {
        std::vector<std::uint64_t> nxt(std::size_t(alpha.K), 0);
        for (int a = 0; a < alpha.K; ++a)
            for (int b = 0; b < alpha.K; ++b)
                if (alpha.admissible(a, b)) {
                    nxt[b] += cnt[std::size_t(a)];
                    if (nxt[b] > cap) nxt[b] = cap + 1;
                }
        cnt.swap(nxt);
    }
    std::uint64_t total = 0;
    for (const auto c : cnt) {
        total += c;
        if (total > cap) return cap + 1;
    }
    return total;
}

// Streams every admissible word of length n exactly once, in lexicographic order.
// Families never need full materialization: the visitor sees a reused buffer.
template <typename Visitor>
void enumerate_words(const Alphabet& alpha, int n, Visitor&& visit,
                     std::uint64_t cap = kDefaultEnumerationCap) {
    if (n < 0) throw ConfigError("enumerate_words: n must be >= 0");
    if (count_words(alpha, n, cap) > cap)
        throw CapExceeded("enumerate_words: admissible word count exceeds cap " +
                          std::to_string(cap));
    SymbolWord w;
    w.letters.assign(std::size_t(n), 0);
    std::function<void(int)> rec = [&](int depth) {
        if (depth == n) {
            visit(static_cast<const SymbolWord&>(w));
            return;
        }
        for (int s = 0; s < alpha.K; ++s) {
            if (depth > 0 && !alpha.admissible(w.letters[std::size_t(depth) - 1], s)) continue;
            w.letters[std::size_t(depth)] = Symbol(s);
            rec(depth + 1);
        }
    };
    rec(0);
}

inline std::vector<SymbolWord> all_words(const Alphabet& alpha, int n,
                                         std::uint64_t cap = kDefaultEnumerationCap) {
    std::vector<SymbolWord> out;
    enumerate_words(alpha, n, [&](const SymbolWord& w) { out.push_back(w); }, cap);
    return out;
}

}  // namespace catgap::sym
