// partition.hpp — torus partitions into strips or rectangles, and orbit
// itineraries with boundary detection
#pragma once

#include <cmath>
#include <vector>

#include "catgap/common.hpp"
#include "catgap/classical/torus_map.hpp"
#include "catgap/symbolic/alphabet.hpp"

namespace catgap::dyn {

// Axis-aligned rectangle on the torus, half-open in both coordinates.
struct Cell {
    double x0, x1;  // position interval [x0, x1)
    double p0, p1;  // momentum interval [p0, p1)

    bool contains(const Point& z) const {
        return z[0] >= x0 && z[0] < x1 && z[1] >= p0 && z[1] < p1;
    }
};

// Disjoint cells covering the torus up to boundary segments. The default
// layout is K vertical strips [i/K,(i+1)/K) x [0,1), which match the
// position-diagonal projectors on the quantum side.
struct TorusPartition {
    std::vector<Cell> cells;
    bool strips = false;  // true when cells are the canonical vertical strips

    static TorusPartition vertical_strips(int K) {
        if (K < 1) throw ConfigError("TorusPartition: K must be >= 1");
        TorusPartition part;
        part.strips = true;
        for (int i = 0; i < K; ++i)
            part.cells.push_back({double(i) / K, double(i + 1) / K, 0.0, 1.0});
        return part;
    }

    // kx * kp axis-aligned rectangles
    static TorusPartition rectangles(int kx, int kp) {
        if (kx < 1 || kp < 1) throw ConfigError("TorusPartition: cell counts must be >= 1");
        TorusPartition part;
        part.strips = (kp == 1);
        for (int i = 0; i < kx; ++i)
            for (int j = 0; j < kp; ++j)
                part.cells.push_back({double(i) / kx, double(i + 1) / kx, double(j) / kp,
                                      double(j + 1) / kp});
        return part;
    }

    int size() const { return int(cells.size()); }

    // distance from z to the nearest cell boundary line
    double boundary_distance(const Point& z) const {
        double d = 1.0;
        for (const auto& c : cells) {
            for (const double e : {c.x0, c.x1}) {
                double t = std::abs(z[0] - wrap01(e));
                d = std::min(d, std::min(t, 1.0 - t));
            }
            if (!strips)
                for (const double e : {c.p0, c.p1}) {
                    double t = std::abs(z[1] - wrap01(e));
                    d = std::min(d, std::min(t, 1.0 - t));
                }
        }
        return d;
    }

    int cell_index(const Point& z) const {
        if (strips) {
            const int K = size();
            int i = int(std::floor(z[0] * K));
            if (i >= K) i = K - 1;
            if (i < 0) i = 0;
            return i;
        }
        for (int i = 0; i < size(); ++i)
            if (cells[std::size_t(i)].contains(z)) return i;
        throw ContractViolation("TorusPartition: point not covered by any cell");
    }
};

inline constexpr double kBoundaryTolerance = 1e-12;

// letter at time t is the cell of g^t(point); trajectories grazing a cell
// boundary within tolerance are rejected so the caller can perturb the seed.
inline sym::SymbolWord itinerary(const TorusMap& map, const TorusPartition& part,
                                 const Point& start, int n) {
    sym::SymbolWord w;
    w.letters.reserve(std::size_t(n));
    Point z = start;
    for (int t = 0; t < n; ++t) {
        if (part.boundary_distance(z) < kBoundaryTolerance)
            throw BoundaryHit("itinerary: orbit within tolerance of a cell boundary at time " +
                              std::to_string(t));
        w.letters.push_back(sym::Symbol(part.cell_index(z)));
        z = map.step(z);
    }
    return w;
}

}  // namespace catgap::dyn
