// stopping.hpp — decomposition of a word into filler pieces and family hits
// located by an increasing sequence of stopping times
#pragma once

#include <vector>

#include "catgap/common.hpp"
#include "catgap/symbolic/alphabet.hpp"
#include "catgap/symbolic/families.hpp"

namespace catgap::sym {

// Alternating decomposition [b0; c0; ...; b_{l-1}; c_{l-1}; b_l] of a source
// word: every c piece has length n0 and belongs to the family, the b pieces
// (possibly empty) fill the gaps, and concatenating the pieces reproduces the
// source word exactly.
struct StoppingDecomposition {
    std::vector<SymbolWord> pieces;      // alternating b, c, b, c, ..., b (2l+1 entries)
    std::vector<int> stoppingTimes;      // start index of each c piece, strictly increasing

    int hit_count() const { return int(stoppingTimes.size()); }

    const SymbolWord& b(int i) const { return pieces[std::size_t(2 * i)]; }
    const SymbolWord& c(int i) const { return pieces[std::size_t(2 * i + 1)]; }

    SymbolWord reconstruct() const {
        SymbolWord w;
        for (const auto& p : pieces)
            w.letters.insert(w.letters.end(), p.letters.begin(), p.letters.end());
        return w;
    }
};

// Scans the word left to right: t0 is the first window position whose
// length-n0 window lies in W; each later stopping time is the first hit at
// least n0 past the previous one. Windows are only read at positions
// j <= p - n0. No hit at all returns the whole word as a single b piece.
inline StoppingDecomposition stopping_decomposition(const SymbolWord& word,
                                                    const CylinderFamily& W, int K) {
    const int n0 = W.wordLength;
    const int p = word.size();
    if (p < n0) throw ConfigError("stopping_decomposition: word shorter than family length");

    const auto codes = detail::encode_family(W, K);
    StoppingDecomposition out;

    int j = 0;
    int consumed = 0;  // next letter index not yet placed in a piece
    while (j <= p - n0) {
        if (codes.count(detail::encode_window(word, j, n0, K))) {
            out.pieces.push_back(word.subword(consumed, j - consumed));  // b piece, may be empty
            out.pieces.push_back(word.subword(j, n0));                   // c piece
            out.stoppingTimes.push_back(j);
            consumed = j + n0;
            j += n0;
        } else {
            ++j;
        }
    }
    out.pieces.push_back(word.subword(consumed, p - consumed));  // trailing b piece
    return out;
}

}  // namespace catgap::sym
