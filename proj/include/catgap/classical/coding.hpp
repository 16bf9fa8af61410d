// coding.hpp — from orbits to symbols: transition weight tables sampled from
// the map, survival pressure of undamped cells, coded-rectangle measures, and
// the exact Markov presentation matching the standard cat map
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "catgap/common.hpp"
#include "catgap/classical/damping.hpp"
#include "catgap/classical/partition.hpp"
#include "catgap/classical/torus_map.hpp"
#include "catgap/symbolic/alphabet.hpp"
#include "catgap/symbolic/weights.hpp"

namespace catgap::dyn {

using sym::Alphabet;
using sym::SymbolWord;
using sym::WeightTable;

namespace detail {

// deterministic midpoint subgrid of a cell
template <typename Fn>
void sample_cell(const Cell& c, int perAxis, Fn&& fn) {
    for (int i = 0; i < perAxis; ++i)
        for (int j = 0; j < perAxis; ++j) {
            const double x = c.x0 + (c.x1 - c.x0) * (i + 0.5) / perAxis;
            const double p = c.p0 + (c.p1 - c.p0) * (j + 0.5) / perAxis;
            fn(Point{wrap01(x), wrap01(p)});
        }
}

}  // namespace detail

// Pairwise table log J(a,b): sup over sampled points of the one-step backward
// expansion weight on transitions a -> b that the sampled dynamics realizes,
// floorLog on pairs never realized. The unperturbed branch is the constant
// -log lambda_max on realized pairs.
inline WeightTable weight_table_from_map(const TorusMap& map, const TorusPartition& part,
                                         int energyShellSamples = 4096,
                                         double floorLog = -50.0) {
    const int K = part.size();
    const int perAxis = std::max(2, int(std::sqrt(double(energyShellSamples))));
    std::vector<double> logJ(std::size_t(K) * K, kLogZero);
    for (int a = 0; a < K; ++a) {
        detail::sample_cell(part.cells[std::size_t(a)], perAxis, [&](const Point& z) {
            const Point w = map.step(z);
            const int b = part.cell_index(w);
            double lg;
            if (map.kappa == 0.0)
                lg = -std::log(map.lambda_max());
            else
                lg = std::log(one_step_unstable_jacobian(map, z));
            auto& slot = logJ[std::size_t(a) * K + b];
            slot = std::max(slot, lg);
        });
    }
    double cap = floorLog;
    for (auto& v : logJ) {
        if (v == kLogZero) v = floorLog;
        v = std::max(v, floorLog);
        cap = std::max(cap, v);
    }
    return WeightTable(K, std::move(logJ), floorLog, cap);
}

// adjacency of transitions that carry weight above the floor
inline Alphabet realized_alphabet(const WeightTable& t) {
    std::vector<std::uint8_t> adj(std::size_t(t.K) * t.K, 0);
    for (int a = 0; a < t.K; ++a)
        for (int b = 0; b < t.K; ++b)
            adj[std::size_t(a) * t.K + b] = t.log_at(a, b) > t.floorLog + 1e-9 ? 1 : 0;
    return Alphabet(t.K, std::move(adj));
}

// whether the profile vanishes identically on a cell (dense sample scan)
inline bool cell_undamped(const DampingProfile& V, const Cell& c, int samples = 512) {
    for (int i = 0; i < samples; ++i) {
        const double x = c.x0 + (c.x1 - c.x0) * (i + 0.5) / samples;
        if (V(wrap01(x)) > 0.0) return false;
    }
    return true;
}

// Finite-depth upper estimate of the pressure of the undamped set with respect
// to (1/2) log J: restrict the transition matrix with entries J(a,b)^{1/2} to
// the cells where V vanishes and return (1/n) log of the n-word weight sum.
// No surviving word gives -inf. The estimate lives at the resolution of the
// partition; output metadata should record the depth and cell count.
inline double undamped_pressure(const TorusMap& map, const TorusPartition& part,
                                const DampingProfile& V, int n,
                                int energyShellSamples = 4096) {
    if (n < 2) throw ConfigError("undamped_pressure: n must be >= 2");
    const WeightTable table = weight_table_from_map(map, part, energyShellSamples);
    const Alphabet realized = realized_alphabet(table);
    const int K = part.size();

    std::vector<char> undamped(std::size_t(K), 0);
    for (int i = 0; i < K; ++i)
        undamped[std::size_t(i)] = cell_undamped(V, part.cells[std::size_t(i)]) ? 1 : 0;

    // scaled transfer-matrix powers of M[a][b] = J(a,b)^{1/2} on surviving cells
    std::vector<double> M(std::size_t(K) * K, 0.0);
    for (int a = 0; a < K; ++a)
        for (int b = 0; b < K; ++b)
            if (undamped[std::size_t(a)] && undamped[std::size_t(b)] && realized.admissible(a, b))
                M[std::size_t(a) * K + b] = std::exp(0.5 * table.log_at(a, b));

    std::vector<double> v(std::size_t(K), 0.0);
    bool any = false;
    for (int a = 0; a < K; ++a)
        if (undamped[std::size_t(a)]) {
            v[std::size_t(a)] = 1.0;
            any = true;
        }
    if (!any) return kLogZero;

    double logScale = 0.0;
    for (int t = 0; t + 1 < n; ++t) {
        std::vector<double> nv(std::size_t(K), 0.0);
        for (int a = 0; a < K; ++a) {
            double s = 0.0;
            for (int b = 0; b < K; ++b) s += M[std::size_t(a) * K + b] * v[std::size_t(b)];
            nv[std::size_t(a)] = s;
        }
        double mx = 0.0;
        for (const double x : nv) mx = std::max(mx, x);
        if (mx == 0.0) return kLogZero;
        for (auto& x : nv) x /= mx;
        logScale += std::log(mx);
        v.swap(nv);
    }
    double total = 0.0;
    for (int a = 0; a < K; ++a)
        if (undamped[std::size_t(a)]) total += v[std::size_t(a)];
    if (total == 0.0) return kLogZero;
    return (logScale + std::log(total)) / double(n);
}

// Fraction of a G x G midpoint grid whose forward itinerary matches the word.
inline double coded_rectangle_measure(const TorusMap& map, const TorusPartition& part,
                                      const SymbolWord& word, int grid = 2048) {
    const int n = word.size();
    long long hits = 0;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            Point z{(i + 0.5) / grid, (j + 0.5) / grid};
            bool ok = true;
            for (int t = 0; t < n && ok; ++t) {
                ok = part.cell_index(z) == int(word[t]);
                z = map.step(z);
            }
            if (ok) ++hits;
        }
    return double(hits) / (double(grid) * double(grid));
}

// Three-symbol presentation of the square of the golden-mean shift: symbols
// are the admissible two-letter blocks {00, 01, 10}, transitions by
// concatenation. Its Perron root is (3+sqrt(5))/2, the expansion rate of the
// standard cat map, so it serves as the exact symbolic Markov model for that
// map: the maximal-entropy measure attains entropy log lambda_max.
inline Alphabet golden_square_alphabet() {
    // order: 00 -> 0, 01 -> 1, 10 -> 2
    std::vector<std::uint8_t> adj{1, 1, 1,   // 00 -> 00, 01, 10
                                  1, 1, 0,   // 01 -> 00, 01 (01.10 contains the forbidden 11)
                                  1, 1, 1};  // 10 -> 00, 01, 10
    return Alphabet(3, std::move(adj));
}

inline WeightTable golden_square_weights(const TorusMap& map, double floorLog = -50.0) {
    return WeightTable(3, -std::log(map.lambda_max()), floorLog);
}

}  // namespace catgap::dyn
